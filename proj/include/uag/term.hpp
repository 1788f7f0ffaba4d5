// Signatures and absolutely free terms over the variables x1, x2, ...
//
// Terms are immutable values with structural equality. An application node
// refers to its operation symbol by index into a Signature; the same term can
// therefore be printed against a renamed signature (for example the starred
// signature produced by Signature::starred) without being rebuilt.

#ifndef UAG_TERM_HPP_
#define UAG_TERM_HPP_

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace uag {

  struct Symbol {
    std::string name;
    std::size_t arity;

    bool operator==(Symbol const&) const = default;
  };

  class Signature {
   public:
    Signature() = default;
    // Throws InputError on duplicate or malformed names.
    explicit Signature(std::vector<Symbol> symbols);

    std::size_t size() const noexcept {
      return _symbols.size();
    }
    Symbol const& operator[](std::size_t i) const {
      return _symbols.at(i);
    }
    std::span<Symbol const> symbols() const noexcept {
      return _symbols;
    }
    std::optional<std::size_t> find(std::string_view name) const;
    std::size_t max_arity() const noexcept;
    bool has_constants() const noexcept;

    // Same arities, every name suffixed with '*'.
    Signature starred() const;

    std::string to_string() const;

    bool operator==(Signature const&) const = default;

   private:
    std::vector<Symbol> _symbols;
  };

  class Term {
   public:
    // x_index, index >= 1.
    static Term var(std::size_t index);
    // Throws InputError on unknown symbol or arity mismatch.
    static Term apply(Signature const&      sig,
                      std::size_t           symbol,
                      std::vector<Term>     args);
    // Convenience for the identity word symbol(x1, ..., x_arity).
    static Term basic(Signature const& sig, std::size_t symbol);

    bool        is_var() const noexcept;
    std::size_t var_index() const;  // only for variables
    std::size_t symbol() const;     // only for applications
    std::span<Term const> args() const noexcept;
    std::size_t           depth() const noexcept;
    std::size_t           max_var() const noexcept;  // 0 if ground

    // Same head symbol with new children; the child count must not change.
    Term with_args(std::vector<Term> args) const;

    std::string to_string(Signature const& sig) const;

    bool operator==(Term const& that) const;
    // The enumeration order: depth, then variable index (depth 0) or symbol
    // index followed by the children lexicographically.
    std::strong_ordering operator<=>(Term const& that) const;

   private:
    struct Node;
    explicit Term(std::shared_ptr<Node const> node) : _node(std::move(node)) {}
    std::shared_ptr<Node const> _node;
  };

  using Assignment = std::map<std::size_t, Term>;

  Signature parse_signature(std::string_view text);
  // Variables must satisfy 1 <= i <= num_vars.
  Term parse_term(std::string_view text,
                  Signature const& sig,
                  std::size_t      num_vars);

  // Simultaneous substitution of variables; throws InputError when a
  // variable of t is unmapped.
  Term substitute(Term const& t, Assignment const& asg);
  // Positional form: x_i -> images[i - 1].
  Term substitute(Term const& t, std::span<Term const> images);

  std::set<std::size_t> term_vars(Term const& t);

  // Advances idx as a little-endian-last odometer over [0, bound)^n in
  // lexicographic order; returns false after the last tuple (idx is then
  // all zeros).
  bool next_tuple(std::vector<std::size_t>& idx, std::size_t bound);

  // Every term over x1..x_{num_vars} of depth <= max_depth exactly once, in
  // the order of Term::operator<=>. Throws CapExceeded past `limit` terms.
  std::vector<Term> enumerate_terms(Signature const& sig,
                                    std::size_t      num_vars,
                                    std::size_t      max_depth,
                                    std::size_t      limit = 1'000'000);

  // Bottom-up replacement of every application of symbol w by
  // templates[w] with x_i standing for the i-th (already replaced) child.
  // Throws InputError if a template mentions a variable beyond the arity.
  Term replace_symbols(Term const&           t,
                       Signature const&      sig,
                       std::span<Term const> templates);

  // Symbol-to-symbol renaming into `target`; arities must agree.
  Term rename_symbols(Term const&                  t,
                      Signature const&             sig,
                      std::span<std::size_t const> mapping,
                      Signature const&             target);

}  // namespace uag

#endif  // UAG_TERM_HPP_
