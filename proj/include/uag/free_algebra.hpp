// Finitely generated free algebras of a variety generated by finitely many
// finite algebras.
//
// W(X) for |X| = k is realised as the subalgebra of the product
//   prod_i A_i^(A_i^X)
// generated by the k coordinate projections. An element is therefore a value
// vector with one coordinate per pair (generator A_i, assignment X -> A_i).
// Generators are laid out in the order they were given, and the assignments
// of each generator in lexicographic order with x1 most significant. Two
// terms denote the same element iff they agree under every assignment into
// every generator.

#ifndef UAG_FREE_ALGEBRA_HPP_
#define UAG_FREE_ALGEBRA_HPP_

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "uag/algebra.hpp"
#include "uag/term.hpp"

namespace uag {

  struct Identity {
    Term lhs;
    Term rhs;
  };

  class FreeAlgebra;

  class Variety {
   public:
    static constexpr std::size_t default_cap = 20'000;

    // Throws InputError if the list is empty, the signatures differ, or a
    // declared identity fails in some generator. Identities are only
    // verified, never used to build free algebras.
    explicit Variety(std::vector<FiniteAlgebra> generators,
                     std::vector<Identity>      identities = {},
                     std::size_t                cap        = default_cap);

    Signature const& signature() const noexcept {
      return _generators.front().signature();
    }
    std::span<FiniteAlgebra const> generators() const noexcept {
      return _generators;
    }
    std::span<Identity const> identities() const noexcept {
      return _identities;
    }
    std::size_t cap() const noexcept {
      return _cap;
    }
    // Discards cached free algebras.
    void set_cap(std::size_t cap);

    // W(x1..x_rank), built once and cached. Throws CapExceeded.
    std::shared_ptr<FreeAlgebra const> free(std::size_t rank) const;

    // Stable hash of the generator tables, for dumps and certificates.
    std::string fingerprint() const;

   private:
    struct Cache {
      std::mutex                                               mutex;
      std::map<std::size_t, std::shared_ptr<FreeAlgebra const>> algebras;
    };

    std::vector<FiniteAlgebra> _generators;
    std::vector<Identity>      _identities;
    std::size_t                _cap;
    std::shared_ptr<Cache>     _cache;
  };

  class FreeAlgebra {
   public:
    // Throws CapExceeded (with the partial size reached) when the closure
    // outgrows the variety's cap, and InputError for rank 0 in a signature
    // without constants.
    static FreeAlgebra build(Variety const& v, std::size_t rank);

    std::size_t rank() const noexcept {
      return _rank;
    }
    std::size_t size() const noexcept {
      return _algebra.size();
    }
    // The induced componentwise operations on element indices.
    FiniteAlgebra const& algebra() const noexcept {
      return _algebra;
    }
    Signature const& signature() const noexcept {
      return _algebra.signature();
    }
    // Minimal-depth witness; elements are indexed in witness order.
    Term const& witness(Elem b) const {
      return _witnesses.at(b);
    }
    std::span<Term const> witnesses() const noexcept {
      return _witnesses;
    }
    // generators()[i] represents x_{i+1}. In degenerate varieties distinct
    // variables may denote the same element.
    std::span<Elem const> generators() const noexcept {
      return _generators;
    }
    std::span<Elem const> value(Elem b) const;
    std::size_t          coordinates() const noexcept {
      return _coords;
    }
    std::string const& variety_fingerprint() const noexcept {
      return _fingerprint;
    }

    // The element denoted by t, computed by evaluating t componentwise on
    // the generator value vectors. Throws InputError if t uses a variable
    // beyond the rank.
    Elem term_image(Term const& t) const;

    // The map sending x_i to images[i], computed from the witness terms.
    // No homomorphism check.
    std::vector<Elem> extend(FiniteAlgebra const& H,
                             std::span<Elem const> images) const;

    // As extend, but verifies the result is a homomorphism and throws
    // OutsideVariety otherwise (H is then not in the variety).
    Homomorphism extend_hom(FiniteAlgebra const& H,
                            std::span<Elem const> images) const;

   private:
    struct Step {
      std::size_t              symbol;  // npos for generators
      std::size_t              generator;
      std::vector<std::size_t> args;
    };

    std::size_t                                   _rank = 0;
    std::size_t                                   _coords = 0;
    FiniteAlgebra                                 _algebra;
    std::vector<Term>                             _witnesses;
    std::vector<Elem>                             _generators;
    std::vector<Elem>                             _values;  // size * coords
    std::vector<Step>                             _steps;
    std::vector<FiniteAlgebra>                    _factors;
    std::vector<std::size_t>                      _factor_of;
    std::string                                   _fingerprint;
    std::unordered_map<std::string, Elem>         _index;
  };

  inline std::shared_ptr<FreeAlgebra const> build_free(Variety const& v,
                                                       std::size_t    rank) {
    return v.free(rank);
  }

  struct RankSizes {
    std::vector<std::size_t> sizes;  // sizes[i] = |W(i + 1)|
    // Ranks r with |W(r)| == |W(r - 1)|: IBN not witnessed at this rank.
    std::vector<std::size_t> flagged;
  };
  RankSizes free_rank_sizes(Variety const& v, std::size_t up_to);

  struct MembershipOptions {
    // Refutation pass: identities among terms in `vars` variables up to
    // `depth`, at most `term_limit` terms.
    std::size_t depth      = 2;
    std::size_t vars       = 2;
    std::size_t term_limit = 2'000;
  };

  struct MembershipReport {
    bool member = false;
    // Set when the refutation pass found an identity of the generators
    // that fails in H.
    std::optional<Identity> failed_identity;
    // Set by the exact pass: the generating set of H used to build the
    // homomorphism from W(|generating_set|).
    std::vector<Elem> generating_set;
  };

  // Exact test: H is in var(generators) iff the witness-evaluation map
  // W(r) -> H extending a generating set of H of size r is a homomorphism.
  // Throws CapExceeded if W(r) is too large.
  MembershipReport check_membership(FiniteAlgebra const&     H,
                                    Variety const&           v,
                                    MembershipOptions const& opts = {});

  bool variety_membership(FiniteAlgebra const& H, Variety const& v);

  // Identities s = t over x1..x_vars with depth <= depth that hold in every
  // generator, one per pair (class representative, other member).
  std::vector<Identity> generator_identities(Variety const& v,
                                             std::size_t    vars,
                                             std::size_t    depth,
                                             std::size_t    term_limit);

  // A smallest generating set, searched by increasing size; the first
  // subset in lexicographic order wins.
  std::vector<Elem> minimal_generating_set(FiniteAlgebra const& H);

}  // namespace uag

#endif  // UAG_FREE_ALGEBRA_HPP_
