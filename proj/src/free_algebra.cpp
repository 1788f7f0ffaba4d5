#include "uag/free_algebra.hpp"

#include <algorithm>
#include <cstdio>

#include "closure.hpp"
#include "uag/error.hpp"

namespace uag {

  namespace {
    std::string key_of(std::span<Elem const> v) {
      return std::string(reinterpret_cast<char const*>(v.data()),
                         v.size() * sizeof(Elem));
    }

    std::size_t power(std::size_t base, std::size_t exp, std::size_t cap) {
      std::size_t result = 1;
      for (std::size_t i = 0; i < exp; ++i) {
        result *= base;
        if (result > cap) {
          throw CapExceeded("assignment space too large", result);
        }
      }
      return result;
    }

    // Elements of the subalgebra generated by seeds, as a membership mask.
    std::vector<bool> closure_mask(FiniteAlgebra const&  H,
                                   std::span<Elem const> seeds) {
      std::vector<bool> in(H.size(), false);
      std::vector<Elem> members;
      for (Elem s : seeds) {
        if (!in[s]) {
          in[s] = true;
          members.push_back(s);
        }
      }
      std::vector<Elem> args;
      bool              changed = true;
      while (changed) {
        changed = false;
        for (std::size_t w = 0; w < H.signature().size(); ++w) {
          std::size_t const        k = H.signature()[w].arity;
          std::size_t const        m = members.size();
          if (k > 0 && m == 0) {
            continue;
          }
          std::vector<std::size_t> idx(k, 0);
          args.resize(k);
          do {
            for (std::size_t j = 0; j < k; ++j) {
              args[j] = members[idx[j]];
            }
            Elem r = H.apply(w, args);
            if (!in[r]) {
              in[r] = true;
              members.push_back(r);
              changed = true;
            }
          } while (next_tuple(idx, m));
        }
      }
      return in;
    }
  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // Variety
  ////////////////////////////////////////////////////////////////////////

  Variety::Variety(std::vector<FiniteAlgebra> generators,
                   std::vector<Identity>      identities,
                   std::size_t                cap)
      : _generators(std::move(generators)),
        _identities(std::move(identities)),
        _cap(cap),
        _cache(std::make_shared<Cache>()) {
    if (_generators.empty()) {
      throw InputError("a variety needs at least one generating algebra");
    }
    if (_cap == 0) {
      throw InputError("the free algebra cap must be positive");
    }
    for (auto const& g : _generators) {
      if (!(g.signature() == signature())) {
        throw InputError("generator \"" + g.name()
                         + "\" has a different signature");
      }
    }
    for (auto const& id : _identities) {
      for (auto const& g : _generators) {
        if (!satisfies_identity(g, id.lhs, id.rhs)) {
          throw InputError("declared identity " + id.lhs.to_string(signature())
                           + " = " + id.rhs.to_string(signature())
                           + " fails in generator \"" + g.name() + "\"");
        }
      }
    }
  }

  void Variety::set_cap(std::size_t cap) {
    if (cap == 0) {
      throw InputError("the free algebra cap must be positive");
    }
    _cap   = cap;
    _cache = std::make_shared<Cache>();
  }

  std::shared_ptr<FreeAlgebra const> Variety::free(std::size_t rank) const {
    std::lock_guard<std::mutex> lock(_cache->mutex);
    auto                        it = _cache->algebras.find(rank);
    if (it != _cache->algebras.end()) {
      return it->second;
    }
    auto result = std::make_shared<FreeAlgebra const>(FreeAlgebra::build(*this, rank));
    _cache->algebras.emplace(rank, result);
    return result;
  }

  std::string Variety::fingerprint() const {
    std::uint64_t h   = 0xcbf29ce484222325ULL;
    auto          mix = [&h](std::uint64_t x) {
      for (int i = 0; i < 8; ++i) {
        h ^= (x >> (8 * i)) & 0xff;
        h *= 0x100000001b3ULL;
      }
    };
    for (auto const& s : signature().symbols()) {
      for (char c : s.name) {
        mix(static_cast<unsigned char>(c));
      }
      mix(s.arity);
    }
    for (auto const& g : _generators) {
      mix(g.size());
      for (auto const& t : g.tables()) {
        for (Elem e : t.entries()) {
          mix(e);
        }
      }
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
  }

  ////////////////////////////////////////////////////////////////////////
  // FreeAlgebra
  ////////////////////////////////////////////////////////////////////////

  FreeAlgebra FreeAlgebra::build(Variety const& v, std::size_t rank) {
    Signature const& sig = v.signature();
    if (rank == 0 && !sig.has_constants()) {
      throw InputError("the free algebra of rank 0 is empty without constants");
    }
    FreeAlgebra result;
    result._rank        = rank;
    result._fingerprint = v.fingerprint();

    // Coordinate layout and the value vectors of the generators.
    std::vector<std::size_t> factor_of;  // coordinate -> generator algebra
    std::vector<std::vector<Elem>> seeds(rank);
    for (std::size_t g = 0; g < v.generators().size(); ++g) {
      FiniteAlgebra const&     A = v.generators()[g];
      std::size_t const        m = power(A.size(), rank, 1u << 24);
      std::vector<std::size_t> asg(rank, 0);
      for (std::size_t c = 0; c < m; ++c) {
        for (std::size_t i = 0; i < rank; ++i) {
          seeds[i].push_back(static_cast<Elem>(asg[i]));
        }
        factor_of.push_back(g);
        next_tuple(asg, A.size());
      }
    }
    std::size_t const coords = factor_of.size();
    result._coords           = coords;
    result._factor_of        = factor_of;
    result._factors.assign(v.generators().begin(), v.generators().end());

    std::vector<Elem> args;
    auto              apply = [&](std::size_t w,
                     std::span<std::vector<Elem> const* const> in) {
      std::vector<Elem> out(coords);
      args.resize(in.size());
      for (std::size_t c = 0; c < coords; ++c) {
        for (std::size_t j = 0; j < in.size(); ++j) {
          args[j] = (*in[j])[c];
        }
        out[c] = v.generators()[factor_of[c]].apply(w, args);
      }
      return out;
    };

    auto closed = detail::close(sig, seeds, apply, v.cap(),
                                "free algebra of rank " + std::to_string(rank));

    std::size_t const n = closed.values.size();
    result._values.reserve(n * coords);
    for (auto const& val : closed.values) {
      result._values.insert(result._values.end(), val.begin(), val.end());
    }
    for (std::size_t i = 0; i < n; ++i) {
      result._index.emplace(key_of(closed.values[i]), static_cast<Elem>(i));
    }
    for (auto s : closed.seed_elements) {
      result._generators.push_back(static_cast<Elem>(s));
    }
    for (auto const& s : closed.steps) {
      result._steps.push_back(
          Step{s.symbol, s.seed_index, s.args});
    }
    result._witnesses = detail::witness_terms(sig, closed.steps);

    // Operation tables on element indices.
    std::vector<OpTable> tables;
    for (std::size_t w = 0; w < sig.size(); ++w) {
      std::size_t const                     k = sig[w].arity;
      std::size_t const                     entries_needed = power(n, k, std::size_t(1) << 28);
      std::vector<Elem>                     entries;
      entries.reserve(entries_needed);
      std::vector<std::size_t>              idx(k, 0);
      std::vector<std::vector<Elem> const*> in(k);
      do {
        for (std::size_t j = 0; j < k; ++j) {
          in[j] = &closed.values[idx[j]];
        }
        auto it = closed.index.find(apply(w, in));
        entries.push_back(static_cast<Elem>(it->second));
      } while (next_tuple(idx, n));
      tables.emplace_back(k, n, std::move(entries));
    }
    result._algebra = FiniteAlgebra(
        "W(" + std::to_string(rank) + ")", sig, n, std::move(tables));
    return result;
  }

  std::span<Elem const> FreeAlgebra::value(Elem b) const {
    if (b >= size()) {
      throw InputError("element index out of range");
    }
    return std::span<Elem const>(_values).subspan(b * _coords, _coords);
  }

  Elem FreeAlgebra::term_image(Term const& t) const {
    if (t.max_var() > _rank) {
      throw InputError("term uses x" + std::to_string(t.max_var())
                       + " but the free algebra has rank "
                       + std::to_string(_rank));
    }
    // Coordinate c is generator algebra _factors[_factor_of[c]] under the
    // assignment read off the generator value vectors at c.
    std::vector<Elem> out(_coords);
    std::vector<Elem> asg(_rank);
    for (std::size_t c = 0; c < _coords; ++c) {
      for (std::size_t i = 0; i < _rank; ++i) {
        asg[i] = _values[_generators[i] * _coords + c];
      }
      out[c] = eval_term(_factors[_factor_of[c]], t, asg);
    }
    auto it = _index.find(key_of(out));
    if (it == _index.end()) {
      throw Error("term_image: value vector missing from a closed free algebra");
    }
    return it->second;
  }

  std::vector<Elem> FreeAlgebra::extend(FiniteAlgebra const&  H,
                                        std::span<Elem const> images) const {
    if (images.size() != _rank) {
      throw InputError("extend: expected " + std::to_string(_rank)
                       + " generator images, got "
                       + std::to_string(images.size()));
    }
    std::vector<Elem> result(size());
    std::vector<Elem> args;
    for (std::size_t b = 0; b < _steps.size(); ++b) {
      auto const& s = _steps[b];
      if (s.symbol == detail::Step::seed) {
        if (images[s.generator] >= H.size()) {
          throw InputError("generator image outside the target carrier");
        }
        result[b] = images[s.generator];
      } else {
        args.resize(s.args.size());
        for (std::size_t j = 0; j < s.args.size(); ++j) {
          args[j] = result[s.args[j]];
        }
        result[b] = H.apply(s.symbol, args);
      }
    }
    return result;
  }

  Homomorphism FreeAlgebra::extend_hom(FiniteAlgebra const&  H,
                                       std::span<Elem const> images) const {
    auto map = extend(H, images);
    // Variables denoting the same element must receive the same image.
    for (std::size_t i = 0; i < _rank; ++i) {
      if (map[_generators[i]] != images[i]) {
        throw OutsideVariety("target \"" + H.name()
                             + "\" outside variety: generator images are "
                               "not consistent");
      }
    }
    if (auto bad = find_hom_violation(_algebra, H, map)) {
      throw OutsideVariety("target \"" + H.name()
                           + "\" outside variety: the extension of the "
                             "generator images is not a homomorphism at "
                           + signature()[bad->symbol].name);
    }
    return Homomorphism{std::move(map)};
  }

  ////////////////////////////////////////////////////////////////////////
  // Rank sizes and membership
  ////////////////////////////////////////////////////////////////////////

  RankSizes free_rank_sizes(Variety const& v, std::size_t up_to) {
    RankSizes result;
    for (std::size_t r = 1; r <= up_to; ++r) {
      result.sizes.push_back(v.free(r)->size());
      if (r >= 2 && result.sizes[r - 1] == result.sizes[r - 2]) {
        result.flagged.push_back(r);
      }
    }
    return result;
  }

  std::vector<Identity> generator_identities(Variety const& v,
                                             std::size_t    vars,
                                             std::size_t    depth,
                                             std::size_t    term_limit) {
    Signature const&  sig = v.signature();
    std::vector<Term> terms;
    while (true) {
      try {
        terms = enumerate_terms(sig, vars, depth, term_limit);
        break;
      } catch (CapExceeded const&) {
        if (depth == 0) {
          return {};
        }
        --depth;
      }
    }
    // Value vector of each term over all assignments into all generators.
    std::vector<std::vector<Elem>> assignments_per_gen;
    std::map<std::vector<Elem>, std::size_t> first;
    std::vector<Identity>                     result;
    for (auto const& t : terms) {
      std::vector<Elem> val;
      for (auto const& g : v.generators()) {
        std::vector<std::size_t> idx(vars, 0);
        std::vector<Elem>        asg(vars);
        do {
          std::copy(idx.begin(), idx.end(), asg.begin());
          val.push_back(eval_term(g, t, asg));
        } while (next_tuple(idx, g.size()));
      }
      auto [it, inserted] = first.emplace(std::move(val), result.size());
      if (inserted) {
        // representative: remembered through a self identity slot
        result.push_back({t, t});
      } else {
        result.push_back({result[it->second].lhs, t});
      }
    }
    std::vector<Identity> nontrivial;
    for (auto& id : result) {
      if (!(id.lhs == id.rhs)) {
        nontrivial.push_back(std::move(id));
      }
    }
    return nontrivial;
  }

  std::vector<Elem> minimal_generating_set(FiniteAlgebra const& H) {
    std::size_t const n          = H.size();
    std::size_t       budget     = 200'000;
    bool const        constants  = H.signature().has_constants();
    for (std::size_t r = constants ? 0 : 1; r <= n; ++r) {
      // combinations of size r in lexicographic order
      std::vector<Elem> comb(r);
      for (std::size_t i = 0; i < r; ++i) {
        comb[i] = static_cast<Elem>(i);
      }
      while (true) {
        auto mask = closure_mask(H, comb);
        if (std::all_of(mask.begin(), mask.end(), [](bool b) { return b; })) {
          return comb;
        }
        if (--budget == 0) {
          break;
        }
        std::size_t i = r;
        while (i > 0 && comb[i - 1] == n - r + i - 1) {
          --i;
        }
        if (i == 0) {
          break;
        }
        ++comb[i - 1];
        for (std::size_t j = i; j < r; ++j) {
          comb[j] = comb[j - 1] + 1;
        }
      }
      if (budget == 0) {
        break;
      }
    }
    // Greedy fallback: add every element not yet generated.
    std::vector<Elem> gens;
    std::vector<bool> mask(n, false);
    if (constants) {
      mask = closure_mask(H, gens);
    }
    for (Elem a = 0; a < n; ++a) {
      if (!mask[a]) {
        gens.push_back(a);
        mask = closure_mask(H, gens);
      }
    }
    return gens;
  }

  MembershipReport check_membership(FiniteAlgebra const&     H,
                                    Variety const&           v,
                                    MembershipOptions const& opts) {
    if (!(H.signature() == v.signature())) {
      throw InputError("algebra \"" + H.name()
                       + "\" has a different signature from the variety");
    }
    MembershipReport report;
    for (auto const& id : generator_identities(v, opts.vars, opts.depth, opts.term_limit)) {
      if (!satisfies_identity(H, id.lhs, id.rhs)) {
        report.failed_identity = id;
        return report;
      }
    }
    report.generating_set = minimal_generating_set(H);
    auto W                = v.free(report.generating_set.size());
    auto map              = W->extend(H, report.generating_set);
    bool consistent       = true;
    for (std::size_t i = 0; i < W->rank(); ++i) {
      consistent = consistent && map[W->generators()[i]] == report.generating_set[i];
    }
    report.member = consistent && is_homomorphism(W->algebra(), H, map);
    return report;
  }

  bool variety_membership(FiniteAlgebra const& H, Variety const& v) {
    return check_membership(H, v).member;
  }

}  // namespace uag
