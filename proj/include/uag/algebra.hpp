// Finite algebras given by operation tables, together with the basic
// machinery on them: term evaluation, homomorphisms, products, subalgebras,
// congruences and quotients.

#ifndef UAG_ALGEBRA_HPP_
#define UAG_ALGEBRA_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "uag/term.hpp"

namespace uag {

  using Elem = std::uint32_t;

  // A total operation {0..n-1}^arity -> {0..n-1}. Entries are stored row
  // major: the argument tuple (a_1, ..., a_k) lives at index
  // ((a_1 * n + a_2) * n + ...) + a_k.
  class OpTable {
   public:
    OpTable() = default;
    OpTable(std::size_t arity, std::size_t size, std::vector<Elem> entries);

    std::size_t arity() const noexcept {
      return _arity;
    }
    std::size_t size() const noexcept {
      return _size;
    }
    std::span<Elem const> entries() const noexcept {
      return _entries;
    }

    std::size_t index(std::span<Elem const> args) const noexcept {
      std::size_t result = 0;
      for (Elem a : args) {
        result = result * _size + a;
      }
      return result;
    }

    Elem operator()(std::span<Elem const> args) const noexcept {
      return _entries[index(args)];
    }

    bool operator==(OpTable const&) const = default;

   private:
    std::size_t       _arity = 0;
    std::size_t       _size  = 0;
    std::vector<Elem> _entries;
  };

  class FiniteAlgebra {
   public:
    FiniteAlgebra() = default;
    // Throws InputError unless there is one total table per symbol with the
    // right arity and every entry lies in {0..size-1}; size must be > 0.
    FiniteAlgebra(std::string          name,
                  Signature            sig,
                  std::size_t          size,
                  std::vector<OpTable> tables);

    std::string const& name() const noexcept {
      return _name;
    }
    Signature const& signature() const noexcept {
      return _sig;
    }
    std::size_t size() const noexcept {
      return _size;
    }
    OpTable const& table(std::size_t symbol) const {
      return _tables.at(symbol);
    }
    std::span<OpTable const> tables() const noexcept {
      return _tables;
    }

    Elem apply(std::size_t symbol, std::span<Elem const> args) const {
      return _tables[symbol](args);
    }

    FiniteAlgebra renamed(std::string name) const;

    // Same signature, size and tables; names are ignored.
    bool same_tables(FiniteAlgebra const& that) const noexcept {
      return _sig == that._sig && _size == that._size
             && _tables == that._tables;
    }

   private:
    std::string          _name;
    Signature            _sig;
    std::size_t          _size = 0;
    std::vector<OpTable> _tables;
  };

  // A map between carriers. Whether it is a homomorphism is a property
  // checked by is_homomorphism, not an invariant of the type.
  struct Homomorphism {
    std::vector<Elem> map;

    Elem operator()(Elem a) const {
      return map[a];
    }
    bool operator==(Homomorphism const&) const = default;
  };

  // An equivalence relation on {0..n-1} in canonical form: label(a) is the
  // index of a's block when blocks are ordered by their least element. Two
  // Congruence values are equal iff they are the same relation.
  class Congruence {
   public:
    Congruence() = default;
    // Any labelling; equal labels mean the same block.
    static Congruence from_labels(std::span<Elem const> labels);
    static Congruence from_labels(std::span<std::size_t const> labels);
    static Congruence diagonal(std::size_t n);
    static Congruence full(std::size_t n);
    // Least equivalence containing the given pairs.
    static Congruence generated_by(
        std::size_t                                n,
        std::span<std::pair<Elem, Elem> const>     pairs);

    std::size_t size() const noexcept {
      return _labels.size();
    }
    std::size_t num_blocks() const noexcept {
      return _num_blocks;
    }
    std::span<Elem const> labels() const noexcept {
      return _labels;
    }
    Elem label(Elem a) const {
      return _labels[a];
    }
    bool related(Elem a, Elem b) const {
      return _labels[a] == _labels[b];
    }
    std::vector<std::vector<Elem>> blocks() const;
    // this ⊆ that as sets of pairs
    bool refines(Congruence const& that) const;
    Congruence meet(Congruence const& that) const;
    // Transitive closure of the union.
    Congruence join(Congruence const& that) const;
    // {(a, b) : (f(a), f(b)) ∈ this}; f maps into this congruence's carrier.
    Congruence pullback(std::span<Elem const> f) const;
    bool       is_diagonal() const noexcept {
      return _num_blocks == _labels.size();
    }
    bool is_full() const noexcept {
      return _num_blocks <= 1;
    }
    // Labels joined with '.', used in fingerprints and dumps.
    std::string encode() const;

    bool operator==(Congruence const&) const = default;
    auto operator<=>(Congruence const& that) const {
      return _labels <=> that._labels;
    }

   private:
    std::vector<Elem> _labels;
    std::size_t       _num_blocks = 0;
  };

  // A subuniverse with one witness term per element over x1..x_{#seeds}.
  struct Subalgebra {
    std::vector<Elem> elements;   // discovery order
    std::vector<Term> witnesses;  // witnesses[i] evaluates to elements[i]
  };

  // Throws InputError if a variable of t is not assigned (x_i needs
  // asg.size() >= i).
  Elem eval_term(FiniteAlgebra const& A, Term const& t, std::span<Elem const> asg);

  // Throws InputError if map is not total on A or has values outside B.
  bool is_homomorphism(FiniteAlgebra const& A,
                       FiniteAlgebra const& B,
                       std::span<Elem const> map);

  // The first operation tuple violating compatibility, if any.
  struct HomViolation {
    std::size_t       symbol;
    std::vector<Elem> args;
  };
  std::optional<HomViolation> find_hom_violation(FiniteAlgebra const& A,
                                                 FiniteAlgebra const& B,
                                                 std::span<Elem const> map);

  // All homomorphisms A -> B in lexicographic order of their maps.
  std::vector<Homomorphism> hom_set(FiniteAlgebra const& A,
                                    FiniteAlgebra const& B);

  // Carrier of the product: tuples (a_1, ..., a_m) indexed mixed radix with
  // the first factor most significant. Throws InputError on an empty list
  // or mismatched signatures.
  FiniteAlgebra product_algebra(std::span<FiniteAlgebra const> factors,
                                std::string                    name = "");
  // Inverse of the product indexing.
  std::vector<Elem> product_coordinates(std::span<FiniteAlgebra const> factors,
                                        Elem index);

  // Closure of the seeds under all operations, breadth first. Each element
  // carries a minimal-depth witness over x1..x_{#seeds}, ties broken by the
  // term enumeration order. Throws InputError for an empty seed set in a
  // constant-free signature.
  Subalgebra generate_subalgebra(FiniteAlgebra const&  A,
                                 std::span<Elem const> seeds);

  bool is_congruence(FiniteAlgebra const& A, Congruence const& c);

  struct Quotient {
    FiniteAlgebra algebra;     // carrier = blocks in canonical order
    Homomorphism  projection;  // the natural epimorphism
  };
  // Throws InputError if c is not compatible with the tables.
  Quotient quotient_algebra(FiniteAlgebra const& A, Congruence const& c);

  Congruence kernel(std::span<Elem const> map);
  inline Congruence kernel(Homomorphism const& h) {
    return kernel(h.map);
  }

  // lhs = rhs under every assignment of x1..x_k, k the largest variable.
  bool satisfies_identity(FiniteAlgebra const& A,
                          Term const&          lhs,
                          Term const&          rhs);

  // First assignment falsifying lhs = rhs, if any.
  std::optional<std::vector<Elem>> falsifying_assignment(
      FiniteAlgebra const& A,
      Term const&          lhs,
      Term const&          rhs);

}  // namespace uag

#endif  // UAG_ALGEBRA_HPP_
