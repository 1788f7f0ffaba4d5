// Word systems, bijection systems and the star algebras they induce.
//
// A word system assigns to every symbol w of arity k a term over x1..xk
// (condition Op1). It acts on any algebra H of the variety by replacing each
// operation with the verbal operation of its word, giving H*. It passes
// Op2 at rank k when the map σ: W(k) -> W(k)* extending the identity on the
// generators is an isomorphism.
//
// A bijection system holds one permutation s_B per free algebra B in scope.
// It passes B1 when conjugation by the system sends homomorphisms between
// free algebras to homomorphisms, in both directions, and B2 when every s_B
// fixes the generators.
//
// Verification is bounded: "scope" means ranks 0..n_max when the signature
// has constants and 1..n_max otherwise.

#ifndef UAG_VERBAL_HPP_
#define UAG_VERBAL_HPP_

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "uag/algebra.hpp"
#include "uag/free_algebra.hpp"
#include "uag/term.hpp"

namespace uag {

  using Permutation = std::vector<Elem>;

  class WordSystem {
   public:
    WordSystem() = default;
    // Throws InputError unless there is exactly one word per symbol.
    WordSystem(Signature sig, std::vector<Term> words);
    // w(x1, ..., xk) for every symbol w.
    static WordSystem identity(Signature const& sig);

    Signature const& signature() const noexcept {
      return _sig;
    }
    std::span<Term const> words() const noexcept {
      return _words;
    }
    Term const& word(std::size_t symbol) const {
      return _words.at(symbol);
    }
    // "name: word" entries in signature order.
    std::string to_string() const;

    // Syntactic equality. Use semantically_equal for equality in the
    // variety.
    bool operator==(WordSystem const&) const = default;

   private:
    Signature         _sig;
    std::vector<Term> _words;
  };

  std::vector<std::size_t> scope_ranks(Signature const& sig, std::size_t n_max);

  // n_max used when none is given: max(2, largest arity).
  std::size_t default_n_max(Signature const& sig);

  bool check_op1(WordSystem const& ws);

  // Same carrier, operations replaced by the verbal operations of ws.
  // Throws InputError if ws fails Op1 or the signatures differ.
  FiniteAlgebra star_algebra(FiniteAlgebra const& H, WordSystem const& ws);

  // The table of c -> s(w_C(s⁻¹(c))). Throws InputError if s is not a
  // permutation of C's carrier.
  OpTable derived_operation(FiniteAlgebra const& C,
                            Permutation const&   s,
                            std::size_t          symbol);

  Permutation inverse(Permutation const& s);
  bool        is_permutation(std::span<Elem const> s, std::size_t n);

  enum class Op2Stage { membership, not_injective, not_surjective };
  std::string to_string(Op2Stage stage);

  struct Op2Failure {
    std::size_t rank;
    Op2Stage    stage;
    std::string detail;
    // For membership failures: an identity of the variety that fails in
    // W(rank)* under the assignment x_i -> x_i.
    std::optional<Identity> identity;
  };

  struct Op2Result {
    std::size_t n_max = 0;
    // σ_B for every rank in scope (only those checked before a failure).
    std::map<std::size_t, Permutation> sigma;
    std::optional<Op2Failure>          failure;

    bool passed() const noexcept {
      return !failure.has_value();
    }
  };

  // Requires Op1 (throws InputError otherwise). Throws CapExceeded if a free
  // algebra in scope is too large.
  Op2Result check_op2(WordSystem const& ws, Variety const& v, std::size_t n_max);

  class BijectionSystem {
   public:
    // Throws InputError unless `maps` holds a permutation of W(k) for
    // every rank k in scope.
    BijectionSystem(Variety v, std::size_t n_max, std::map<std::size_t, Permutation> maps);

    Variety const& variety() const noexcept {
      return _variety;
    }
    std::size_t n_max() const noexcept {
      return _n_max;
    }
    std::vector<std::size_t> ranks() const {
      return scope_ranks(_variety.signature(), _n_max);
    }
    Permutation const& map(std::size_t rank) const;
    Permutation const& inverse_map(std::size_t rank) const;

    static BijectionSystem identity(Variety v, std::size_t n_max);

    // Pointwise equality within the common bound.
    bool operator==(BijectionSystem const& that) const {
      return _n_max == that._n_max && _maps == that._maps;
    }

   private:
    Variety                            _variety;
    std::size_t                        _n_max;
    std::map<std::size_t, Permutation> _maps;
    std::map<std::size_t, Permutation> _inverses;
  };

  // The system {σ_B} of Op2. Throws Error describing the Op2 failure.
  BijectionSystem bijections_from_words(WordSystem const& ws,
                                        Variety const&    v,
                                        std::size_t       n_max);

  // w_ω = witness of s_{A_ω}(ω(x1..xk)), A_ω = W(k). Throws InputError if
  // the bound of S does not cover some arity.
  WordSystem words_from_bijections(BijectionSystem const& S);

  struct B1B2Report {
    bool        ok = true;
    std::string counterexample;
  };
  // Exhaustive over all homomorphisms between free algebras in scope.
  B1B2Report check_b1_b2(BijectionSystem const& S);

  // Φ(α) = s_target ∘ α ∘ s_source⁻¹ for α: W(source) -> W(target).
  // Throws InputError if a rank is out of scope or α has the wrong length.
  Homomorphism strongly_stable_action(BijectionSystem const& S,
                                      std::size_t            source_rank,
                                      std::size_t            target_rank,
                                      Homomorphism const&    alpha);
  // Φ⁻¹(α) = s_target⁻¹ ∘ α ∘ s_source.
  Homomorphism strongly_stable_action_inverse(BijectionSystem const& S,
                                              std::size_t source_rank,
                                              std::size_t target_rank,
                                              Homomorphism const&    alpha);

  struct ZhitoReport {
    bool        ok = true;
    std::string mismatch;
  };
  // Verbal tables of ws on every free B in scope equal the derived tables
  // of B under σ_B. Throws Error if ws fails Op2.
  ZhitoReport verify_zhito(WordSystem const& ws, Variety const& v, std::size_t n_max);

  struct InverseWordSystem {
    // u*_ω over the starred signature (same symbol indices as ws).
    WordSystem starred;
    // The same words read over Ω: star_algebra(star_algebra(H, ws), words)
    // is H again.
    WordSystem words;
    // u*_ω with every ω* expanded through ws. Evaluated on H this is u*_ω
    // on H*, so it agrees with ω(x1..xk) in the variety.
    WordSystem expanded;
  };
  // Throws Error if ws fails Op2 at some rank up to the largest arity.
  InverseWordSystem inverse_word_system(WordSystem const& ws, Variety const& v);

  // The system inducing (H^inner)^outer: every outer word with each symbol
  // expanded by the inner word.
  WordSystem compose(WordSystem const& outer, WordSystem const& inner);

  // Reinterpret the words of ws (over any signature with the same arities)
  // as a word system over sig.
  WordSystem reinterpret(WordSystem const& ws, Signature const& sig);

  // Equal words in every A_ω = W(arity ω).
  bool semantically_equal(WordSystem const& a,
                          WordSystem const& b,
                          Variety const&    v);

  // Candidate words for one symbol: the identity word first, then every
  // other term over x1..x_arity up to max_depth in enumeration order,
  // keeping only the first term of each element of W(arity).
  std::vector<Term> candidate_words(Variety const& v,
                                    std::size_t    symbol,
                                    std::size_t    max_depth,
                                    std::size_t    term_limit = 100'000);

  // Calls fn on every combination of candidate words (first symbol most
  // significant) until fn returns false.
  void for_each_word_system(Variety const&                               v,
                            std::size_t                                  max_depth,
                            std::function<bool(WordSystem const&)> const& fn);

}  // namespace uag

#endif  // UAG_VERBAL_HPP_
