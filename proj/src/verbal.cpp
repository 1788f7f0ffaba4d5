#include "uag/verbal.hpp"

#include <algorithm>
#include <set>

#include "uag/error.hpp"

namespace uag {

  ////////////////////////////////////////////////////////////////////////
  // WordSystem
  ////////////////////////////////////////////////////////////////////////

  WordSystem::WordSystem(Signature sig, std::vector<Term> words)
      : _sig(std::move(sig)), _words(std::move(words)) {
    if (_words.size() != _sig.size()) {
      throw InputError("a word system needs one word per symbol ("
                       + std::to_string(_sig.size()) + "), got "
                       + std::to_string(_words.size()));
    }
  }

  WordSystem WordSystem::identity(Signature const& sig) {
    std::vector<Term> words;
    for (std::size_t w = 0; w < sig.size(); ++w) {
      words.push_back(Term::basic(sig, w));
    }
    return WordSystem(sig, std::move(words));
  }

  std::string WordSystem::to_string() const {
    std::string result;
    for (std::size_t w = 0; w < _sig.size(); ++w) {
      if (w != 0) {
        result += ", ";
      }
      result += _sig[w].name + ": " + _words[w].to_string(_sig);
    }
    return result;
  }

  std::vector<std::size_t> scope_ranks(Signature const& sig, std::size_t n_max) {
    std::vector<std::size_t> result;
    for (std::size_t k = sig.has_constants() ? 0 : 1; k <= n_max; ++k) {
      result.push_back(k);
    }
    return result;
  }

  std::size_t default_n_max(Signature const& sig) {
    return std::max<std::size_t>(2, sig.max_arity());
  }

  bool check_op1(WordSystem const& ws) {
    for (std::size_t w = 0; w < ws.signature().size(); ++w) {
      if (ws.word(w).max_var() > ws.signature()[w].arity) {
        return false;
      }
    }
    return true;
  }

  ////////////////////////////////////////////////////////////////////////
  // Star algebras and derived operations
  ////////////////////////////////////////////////////////////////////////

  FiniteAlgebra star_algebra(FiniteAlgebra const& H, WordSystem const& ws) {
    if (H.signature().size() != ws.signature().size()) {
      throw InputError("word system and algebra have different signatures");
    }
    for (std::size_t w = 0; w < H.signature().size(); ++w) {
      if (H.signature()[w].arity != ws.signature()[w].arity) {
        throw InputError("word system and algebra have different arities");
      }
    }
    if (!check_op1(ws)) {
      throw InputError("word system violates Op1");
    }
    std::vector<OpTable> tables;
    std::vector<Elem>    asg;
    for (std::size_t w = 0; w < H.signature().size(); ++w) {
      std::size_t const        k = H.signature()[w].arity;
      Term const&              t = ws.word(w);
      std::vector<std::size_t> idx(k, 0);
      std::vector<Elem>        entries;
      entries.reserve(H.table(w).entries().size());
      asg.resize(k);
      if (t.is_var()) {
        // projection: no evaluation needed
        do {
          entries.push_back(static_cast<Elem>(idx[t.var_index() - 1]));
        } while (next_tuple(idx, H.size()));
      } else {
        do {
          std::copy(idx.begin(), idx.end(), asg.begin());
          entries.push_back(eval_term(H, t, asg));
        } while (next_tuple(idx, H.size()));
      }
      tables.emplace_back(k, H.size(), std::move(entries));
    }
    return FiniteAlgebra(H.name() + "*", H.signature(), H.size(), std::move(tables));
  }

  bool is_permutation(std::span<Elem const> s, std::size_t n) {
    if (s.size() != n) {
      return false;
    }
    std::vector<bool> hit(n, false);
    for (Elem e : s) {
      if (e >= n || hit[e]) {
        return false;
      }
      hit[e] = true;
    }
    return true;
  }

  Permutation inverse(Permutation const& s) {
    if (!is_permutation(s, s.size())) {
      throw InputError("map is not a bijection");
    }
    Permutation result(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      result[s[i]] = static_cast<Elem>(i);
    }
    return result;
  }

  OpTable derived_operation(FiniteAlgebra const& C,
                            Permutation const&   s,
                            std::size_t          symbol) {
    if (!is_permutation(s, C.size())) {
      throw InputError("derived_operation: s is not a bijection of the carrier");
    }
    Permutation const        sinv = inverse(s);
    std::size_t const        k    = C.signature()[symbol].arity;
    std::vector<std::size_t> idx(k, 0);
    std::vector<Elem>        args(k), entries;
    do {
      for (std::size_t j = 0; j < k; ++j) {
        args[j] = sinv[idx[j]];
      }
      entries.push_back(s[C.apply(symbol, args)]);
    } while (next_tuple(idx, C.size()));
    return OpTable(k, C.size(), std::move(entries));
  }

  ////////////////////////////////////////////////////////////////////////
  // Op2
  ////////////////////////////////////////////////////////////////////////

  std::string to_string(Op2Stage stage) {
    switch (stage) {
      case Op2Stage::membership:
        return "membership";
      case Op2Stage::not_injective:
        return "not-injective";
      case Op2Stage::not_surjective:
        return "not-surjective";
    }
    return "unknown";
  }

  Op2Result check_op2(WordSystem const& ws, Variety const& v, std::size_t n_max) {
    if (!check_op1(ws)) {
      throw InputError("word system violates Op1");
    }
    Signature const& sig = v.signature();
    Op2Result        result;
    result.n_max = n_max;
    for (std::size_t k : scope_ranks(sig, n_max)) {
      auto const    B     = v.free(k);
      FiniteAlgebra Bstar = star_algebra(B->algebra(), ws);
      // If B* lies in the variety, the unique homomorphism B -> B* fixing
      // the generators is the witness evaluation; if that map fails to be a
      // homomorphism, B* is outside the variety.
      auto sigma = B->extend(Bstar, B->generators());
      if (auto bad = find_hom_violation(B->algebra(), Bstar, sigma)) {
        std::vector<Term> args;
        std::vector<Elem> elems;
        for (Elem a : bad->args) {
          args.push_back(B->witness(a));
          elems.push_back(a);
        }
        Elem value = B->algebra().apply(bad->symbol, elems);
        Identity id{B->witness(value), Term::apply(sig, bad->symbol, std::move(args))};
        result.failure = Op2Failure{
            k,
            Op2Stage::membership,
            "W(" + std::to_string(k) + ")* is outside the variety: "
                + id.lhs.to_string(sig) + " = " + id.rhs.to_string(sig)
                + " holds in the variety but fails in W(" + std::to_string(k)
                + ")*",
            id};
        return result;
      }
      std::vector<Elem> preimage(B->size(), static_cast<Elem>(-1));
      for (std::size_t b = 0; b < sigma.size(); ++b) {
        if (preimage[sigma[b]] != static_cast<Elem>(-1)) {
          result.failure = Op2Failure{
              k,
              Op2Stage::not_injective,
              "σ identifies " + B->witness(preimage[sigma[b]]).to_string(sig)
                  + " and " + B->witness(static_cast<Elem>(b)).to_string(sig),
              std::nullopt};
          return result;
        }
        preimage[sigma[b]] = static_cast<Elem>(b);
      }
      for (std::size_t c = 0; c < preimage.size(); ++c) {
        if (preimage[c] == static_cast<Elem>(-1)) {
          result.failure = Op2Failure{
              k,
              Op2Stage::not_surjective,
              "σ misses " + B->witness(static_cast<Elem>(c)).to_string(sig),
              std::nullopt};
          return result;
        }
      }
      result.sigma.emplace(k, std::move(sigma));
    }
    return result;
  }

  ////////////////////////////////////////////////////////////////////////
  // BijectionSystem
  ////////////////////////////////////////////////////////////////////////

  BijectionSystem::BijectionSystem(Variety                            v,
                                   std::size_t                        n_max,
                                   std::map<std::size_t, Permutation> maps)
      : _variety(std::move(v)), _n_max(n_max), _maps(std::move(maps)) {
    for (std::size_t k : scope_ranks(_variety.signature(), _n_max)) {
      auto it = _maps.find(k);
      if (it == _maps.end()) {
        throw InputError("bijection system has no map for rank "
                         + std::to_string(k));
      }
      if (!is_permutation(it->second, _variety.free(k)->size())) {
        throw InputError("the map for rank " + std::to_string(k)
                         + " is not a bijection of W(" + std::to_string(k)
                         + ")");
      }
      _inverses.emplace(k, inverse(it->second));
    }
    for (auto it = _maps.begin(); it != _maps.end();) {
      it = it->first > _n_max ? _maps.erase(it) : std::next(it);
    }
  }

  BijectionSystem BijectionSystem::identity(Variety v, std::size_t n_max) {
    std::map<std::size_t, Permutation> maps;
    for (std::size_t k : scope_ranks(v.signature(), n_max)) {
      Permutation id(v.free(k)->size());
      for (std::size_t i = 0; i < id.size(); ++i) {
        id[i] = static_cast<Elem>(i);
      }
      maps.emplace(k, std::move(id));
    }
    return BijectionSystem(std::move(v), n_max, std::move(maps));
  }

  Permutation const& BijectionSystem::map(std::size_t rank) const {
    auto it = _maps.find(rank);
    if (it == _maps.end()) {
      throw InputError("rank " + std::to_string(rank)
                       + " is outside the bijection system's scope");
    }
    return it->second;
  }

  Permutation const& BijectionSystem::inverse_map(std::size_t rank) const {
    auto it = _inverses.find(rank);
    if (it == _inverses.end()) {
      throw InputError("rank " + std::to_string(rank)
                       + " is outside the bijection system's scope");
    }
    return it->second;
  }

  BijectionSystem bijections_from_words(WordSystem const& ws,
                                        Variety const&    v,
                                        std::size_t       n_max) {
    auto op2 = check_op2(ws, v, n_max);
    if (!op2.passed()) {
      throw Error("Op2 fails at rank " + std::to_string(op2.failure->rank)
                  + " (" + to_string(op2.failure->stage)
                  + "): " + op2.failure->detail);
    }
    return BijectionSystem(v, n_max, std::move(op2.sigma));
  }

  WordSystem words_from_bijections(BijectionSystem const& S) {
    Signature const&  sig = S.variety().signature();
    std::vector<Term> words;
    for (std::size_t w = 0; w < sig.size(); ++w) {
      std::size_t const k = sig[w].arity;
      if (k > S.n_max()) {
        throw InputError("bijection system bound " + std::to_string(S.n_max())
                         + " does not cover the arity of \"" + sig[w].name
                         + "\"");
      }
      auto const A = S.variety().free(k);
      Elem const e = A->term_image(Term::basic(sig, w));
      words.push_back(A->witness(S.map(k)[e]));
    }
    return WordSystem(sig, std::move(words));
  }

  namespace {
    // f: W(a) -> W(b) is a homomorphism iff it agrees with the extension of
    // its generator images.
    bool is_free_hom(FreeAlgebra const&    A,
                     FreeAlgebra const&    B,
                     std::span<Elem const> f) {
      std::vector<Elem> images;
      for (Elem g : A.generators()) {
        images.push_back(f[g]);
      }
      auto ext = A.extend(B.algebra(), images);
      return std::equal(ext.begin(), ext.end(), f.begin(), f.end());
    }

    std::vector<Elem> compose3(Permutation const&    outer,
                               std::span<Elem const> middle,
                               Permutation const&    inner) {
      std::vector<Elem> result(inner.size());
      for (std::size_t i = 0; i < inner.size(); ++i) {
        result[i] = outer[middle[inner[i]]];
      }
      return result;
    }
  }  // namespace

  B1B2Report check_b1_b2(BijectionSystem const& S) {
    Signature const& sig   = S.variety().signature();
    auto const       ranks = S.ranks();
    B1B2Report       report;
    for (std::size_t k : ranks) {
      auto const B = S.variety().free(k);
      for (std::size_t i = 0; i < k; ++i) {
        Elem g = B->generators()[i];
        if (S.map(k)[g] != g) {
          report.ok             = false;
          report.counterexample = "B2: s_W(" + std::to_string(k) + ") moves x"
                                  + std::to_string(i + 1) + " to "
                                  + B->witness(S.map(k)[g]).to_string(sig);
          return report;
        }
      }
    }
    for (std::size_t a : ranks) {
      auto const A = S.variety().free(a);
      for (std::size_t b : ranks) {
        auto const               B = S.variety().free(b);
        std::vector<std::size_t> idx(a, 0);
        std::vector<Elem>        images(a);
        do {
          std::copy(idx.begin(), idx.end(), images.begin());
          auto alpha = A->extend(B->algebra(), images);
          auto fwd   = compose3(S.map(b), alpha, S.inverse_map(a));
          auto bwd   = compose3(S.inverse_map(b), alpha, S.map(a));
          for (auto const* f : {&fwd, &bwd}) {
            if (!is_free_hom(*A, *B, *f)) {
              report.ok = false;
              std::string desc;
              for (std::size_t i = 0; i < a; ++i) {
                desc += (i ? ", x" : "x") + std::to_string(i + 1) + " -> "
                        + B->witness(images[i]).to_string(sig);
              }
              report.counterexample
                  = "B1: conjugating α: W(" + std::to_string(a) + ") -> W("
                    + std::to_string(b) + ") {" + desc + "} by "
                    + (f == &fwd ? "s" : "s⁻¹")
                    + " is not a homomorphism";
              return report;
            }
          }
        } while (next_tuple(idx, B->size()));
      }
    }
    return report;
  }

  Homomorphism strongly_stable_action(BijectionSystem const& S,
                                      std::size_t            source_rank,
                                      std::size_t            target_rank,
                                      Homomorphism const&    alpha) {
    auto const& s_src_inv = S.inverse_map(source_rank);
    auto const& s_tgt     = S.map(target_rank);
    if (alpha.map.size() != s_src_inv.size()) {
      throw InputError("α has the wrong source size");
    }
    for (Elem e : alpha.map) {
      if (e >= s_tgt.size()) {
        throw InputError("α has values outside the target");
      }
    }
    return Homomorphism{compose3(s_tgt, alpha.map, s_src_inv)};
  }

  Homomorphism strongly_stable_action_inverse(BijectionSystem const& S,
                                              std::size_t source_rank,
                                              std::size_t target_rank,
                                              Homomorphism const& alpha) {
    auto const& s_src     = S.map(source_rank);
    auto const& s_tgt_inv = S.inverse_map(target_rank);
    if (alpha.map.size() != s_src.size()) {
      throw InputError("α has the wrong source size");
    }
    for (Elem e : alpha.map) {
      if (e >= s_tgt_inv.size()) {
        throw InputError("α has values outside the target");
      }
    }
    return Homomorphism{compose3(s_tgt_inv, alpha.map, s_src)};
  }

  ZhitoReport verify_zhito(WordSystem const& ws, Variety const& v, std::size_t n_max) {
    auto const       S   = bijections_from_words(ws, v, n_max);
    Signature const& sig = v.signature();
    ZhitoReport      report;
    for (std::size_t k : S.ranks()) {
      auto const    B     = v.free(k);
      FiniteAlgebra Bstar = star_algebra(B->algebra(), ws);
      for (std::size_t w = 0; w < sig.size(); ++w) {
        if (!(derived_operation(B->algebra(), S.map(k), w) == Bstar.table(w))) {
          report.ok       = false;
          report.mismatch = "rank " + std::to_string(k) + ", symbol \""
                            + sig[w].name
                            + "\": verbal and derived tables differ";
          return report;
        }
      }
    }
    return report;
  }

  InverseWordSystem inverse_word_system(WordSystem const& ws, Variety const& v) {
    Signature const& sig = v.signature();
    auto const S = bijections_from_words(ws, v, sig.max_arity());
    std::vector<Term> starred, expanded;
    for (std::size_t w = 0; w < sig.size(); ++w) {
      std::size_t const k = sig[w].arity;
      auto const        A = v.free(k);
      Elem const        e = A->term_image(Term::basic(sig, w));
      Term const&       u = A->witness(S.inverse_map(k)[e]);
      starred.push_back(u);
      expanded.push_back(replace_symbols(u, sig, ws.words()));
    }
    WordSystem words(sig, starred);
    return InverseWordSystem{WordSystem(sig.starred(), std::move(starred)),
                             std::move(words),
                             WordSystem(sig, std::move(expanded))};
  }

  WordSystem compose(WordSystem const& outer, WordSystem const& inner) {
    std::vector<Term> words;
    for (auto const& w : outer.words()) {
      words.push_back(replace_symbols(w, inner.signature(), inner.words()));
    }
    return WordSystem(inner.signature(), std::move(words));
  }

  WordSystem reinterpret(WordSystem const& ws, Signature const& sig) {
    if (ws.signature().size() != sig.size()) {
      throw InputError("reinterpret: signatures differ in size");
    }
    for (std::size_t w = 0; w < sig.size(); ++w) {
      if (ws.signature()[w].arity != sig[w].arity) {
        throw InputError("reinterpret: arities differ");
      }
    }
    return WordSystem(sig, std::vector<Term>(ws.words().begin(), ws.words().end()));
  }

  bool semantically_equal(WordSystem const& a,
                          WordSystem const& b,
                          Variety const&    v) {
    Signature const& sig = v.signature();
    for (std::size_t w = 0; w < sig.size(); ++w) {
      auto const A = v.free(sig[w].arity);
      if (A->term_image(a.word(w)) != A->term_image(b.word(w))) {
        return false;
      }
    }
    return true;
  }

  std::vector<Term> candidate_words(Variety const& v,
                                    std::size_t    symbol,
                                    std::size_t    max_depth,
                                    std::size_t    term_limit) {
    Signature const&  sig = v.signature();
    std::size_t const k   = sig[symbol].arity;
    auto const        A   = v.free(k);
    std::vector<Term> result;
    std::set<Elem>    seen;
    Term const        id = Term::basic(sig, symbol);
    result.push_back(id);
    seen.insert(A->term_image(id));
    for (auto const& t : enumerate_terms(sig, k, max_depth, term_limit)) {
      if (seen.insert(A->term_image(t)).second) {
        result.push_back(t);
      }
    }
    return result;
  }

  void for_each_word_system(Variety const&                               v,
                            std::size_t                                  max_depth,
                            std::function<bool(WordSystem const&)> const& fn) {
    Signature const&               sig = v.signature();
    std::vector<std::vector<Term>> cands;
    for (std::size_t w = 0; w < sig.size(); ++w) {
      cands.push_back(candidate_words(v, w, max_depth));
    }
    std::vector<std::size_t> idx(sig.size(), 0);
    while (true) {
      std::vector<Term> words;
      for (std::size_t w = 0; w < sig.size(); ++w) {
        words.push_back(cands[w][idx[w]]);
      }
      if (!fn(WordSystem(sig, std::move(words)))) {
        return;
      }
      std::size_t w = sig.size();
      while (w > 0) {
        --w;
        if (++idx[w] < cands[w].size()) {
          break;
        }
        idx[w] = 0;
        if (w == 0) {
          return;
        }
      }
      if (sig.size() == 0) {
        return;
      }
    }
  }

}  // namespace uag
