#include "uag/equivalence.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "uag/error.hpp"

namespace uag {

  namespace {
    void require_member(FiniteAlgebra const& H, Variety const& v) {
      if (!variety_membership(H, v)) {
        throw OutsideVariety("algebra \"" + H.name()
                             + "\" is not in the variety");
      }
    }

    struct RankData {
      std::shared_ptr<PointSpace const> space;
      ClosedLattice                     lattice;
    };

    RankData rank_data(FiniteAlgebra const&      H,
                       Variety const&            v,
                       std::size_t               k,
                       EquivalenceOptions const& opts) {
      auto S = std::make_shared<PointSpace const>(v.free(k), H, opts.point_cap);
      auto L = closed_lattice(*S, opts.lattice_cap);
      return RankData{std::move(S), std::move(L)};
    }

    LatticeComparison compare(std::size_t          k,
                              ClosedLattice const& L1,
                              ClosedLattice const& L2) {
      LatticeComparison c;
      c.rank         = k;
      c.size1        = L1.size();
      c.size2        = L2.size();
      c.fingerprint1 = lattice_fingerprint(L1);
      c.fingerprint2 = lattice_fingerprint(L2);
      return c;
    }

    std::optional<GeomWitness> first_difference(std::size_t          k,
                                                ClosedLattice const& L1,
                                                ClosedLattice const& L2) {
      for (auto const& e : L1.elements) {
        if (!L2.find(e.partition)) {
          return GeomWitness{k, e.partition, true};
        }
      }
      for (auto const& e : L2.elements) {
        if (!L1.find(e.partition)) {
          return GeomWitness{k, e.partition, false};
        }
      }
      return std::nullopt;
    }

    // Geometric comparison of H2 against precomputed lattices of H1.
    GeomResult compare_with(std::vector<RankData> const& first,
                            FiniteAlgebra const&         H2,
                            Variety const&               v,
                            std::size_t                  n_max,
                            EquivalenceOptions const&    opts) {
      GeomResult result;
      result.n_max = n_max;
      for (std::size_t k = 1; k <= n_max; ++k) {
        auto const  second = rank_data(H2, v, k, opts);
        auto const& L1     = first[k - 1].lattice;
        auto        cmp    = compare(k, L1, second.lattice);
        bool        equal  = cmp.equal();
        result.lattices.push_back(std::move(cmp));
        if (!equal) {
          result.equivalent = false;
          result.witness    = first_difference(k, L1, second.lattice);
          break;
        }
      }
      return result;
    }

    std::vector<RankData> all_ranks(FiniteAlgebra const&      H,
                                    Variety const&            v,
                                    std::size_t               n_max,
                                    EquivalenceOptions const& opts) {
      std::vector<RankData> result;
      for (std::size_t k = 1; k <= n_max; ++k) {
        result.push_back(rank_data(H, v, k, opts));
      }
      return result;
    }

    std::string describe(Congruence const& c, FreeAlgebra const& B) {
      std::string result = "{";
      bool        first  = true;
      for (auto const& block : c.blocks()) {
        if (block.size() < 2) {
          continue;
        }
        result += first ? "" : ", ";
        first = false;
        result += "[";
        for (std::size_t i = 0; i < block.size(); ++i) {
          result += (i ? ", " : "") + B.witness(block[i]).to_string(B.signature());
        }
        result += "]";
      }
      return result + "}";
    }
  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // geom_equivalent
  ////////////////////////////////////////////////////////////////////////

  GeomResult geom_equivalent(FiniteAlgebra const&      H1,
                             FiniteAlgebra const&      H2,
                             Variety const&            v,
                             std::size_t               n_max,
                             EquivalenceOptions const& opts) {
    if (opts.check_membership) {
      require_member(H1, v);
      require_member(H2, v);
    }
    GeomResult result;
    result.n_max = n_max;
    for (std::size_t k = 1; k <= n_max; ++k) {
      auto const a   = rank_data(H1, v, k, opts);
      auto const b   = rank_data(H2, v, k, opts);
      auto       cmp = compare(k, a.lattice, b.lattice);
      bool       eq  = cmp.equal();
      result.lattices.push_back(std::move(cmp));
      if (!eq) {
        result.equivalent = false;
        result.witness    = first_difference(k, a.lattice, b.lattice);
        break;
      }
    }
    return result;
  }

  EquivalenceCertificate geom_certificate(FiniteAlgebra const&      H1,
                                          FiniteAlgebra const&      H2,
                                          Variety const&            v,
                                          std::size_t               n_max,
                                          EquivalenceOptions const& opts) {
    auto                   r = geom_equivalent(H1, H2, v, n_max, opts);
    EquivalenceCertificate cert;
    cert.verdict  = r.equivalent ? Verdict::geometric : Verdict::refuted_at_bounds;
    cert.n_max    = n_max;
    cert.lattices = std::move(r.lattices);
    cert.witness  = std::move(r.witness);
    return cert;
  }

  ////////////////////////////////////////////////////////////////////////
  // Transport of closed congruences
  ////////////////////////////////////////////////////////////////////////

  ClosedCongruence transport_closed(PointSpace const&  target,
                                    Permutation const& sigma,
                                    Congruence const&  T,
                                    Transport          direction) {
    std::size_t const n = target.free_algebra().size();
    if (sigma.size() != n || T.size() != n) {
      throw InputError("transport_closed: sizes do not match the free algebra");
    }
    // σ⁻¹T = {(a, b) : (σa, σb) ∈ T}
    Congruence moved = direction == Transport::forward ? T.pullback(sigma)
                                                       : T.pullback(inverse(sigma));
    auto result = closure(moved, target);
    if (!(result.partition == moved)) {
      throw Error("transported congruence is not closed for \""
                  + target.target().name() + "\" on W("
                  + std::to_string(target.free_algebra().rank()) + ")");
    }
    return result;
  }

  ////////////////////////////////////////////////////////////////////////
  // H and H*
  ////////////////////////////////////////////////////////////////////////

  HHstarReport verify_H_Hstar(FiniteAlgebra const&      H,
                              WordSystem const&         ws,
                              Variety const&            v,
                              std::size_t               n_max,
                              EquivalenceOptions const& opts) {
    auto const          S     = bijections_from_words(ws, v, n_max);
    FiniteAlgebra const Hstar = star_algebra(H, ws);
    HHstarReport        report;
    auto fail = [&](std::string msg) {
      report.ok      = false;
      report.failure = std::move(msg);
      return report;
    };

    std::vector<RankData> plain, starred;
    for (std::size_t k = 1; k <= n_max; ++k) {
      plain.push_back(rank_data(H, v, k, opts));
      starred.push_back(rank_data(Hstar, v, k, opts));
      auto const& L  = plain.back().lattice;
      auto const& Ls = starred.back().lattice;
      auto const& B  = plain.back().space->free_algebra();

      ClosureBijection bij;
      bij.rank = k;
      std::set<std::size_t> hit;
      for (auto const& T : L.elements) {
        ClosedCongruence moved;
        try {
          moved = transport_closed(*starred.back().space, S.map(k), T.partition,
                                   Transport::forward);
        } catch (Error const& e) {
          return fail(std::string(e.what()) + ": " + describe(T.partition, B));
        }
        auto j = Ls.find(moved.partition);
        if (!j) {
          return fail("W(" + std::to_string(k) + "): σ⁻¹T missing from Cl_{"
                      + Hstar.name() + "} for T = " + describe(T.partition, B));
        }
        if (!hit.insert(*j).second) {
          return fail("W(" + std::to_string(k) + "): transport is not injective");
        }
        bij.map.push_back(*j);
        // backward transport returns T
        auto back = transport_closed(*plain.back().space, S.map(k), moved.partition,
                                     Transport::backward);
        if (!(back.partition == T.partition)) {
          return fail("W(" + std::to_string(k)
                      + "): backward transport does not invert forward transport");
        }
      }
      if (hit.size() != Ls.size()) {
        return fail("W(" + std::to_string(k) + "): |Cl_" + H.name()
                    + "| = " + std::to_string(L.size()) + " but |Cl_" + Hstar.name()
                    + "| = " + std::to_string(Ls.size()));
      }
      for (std::size_t i = 0; i < L.size(); ++i) {
        for (std::size_t j = 0; j < L.size(); ++j) {
          if (L.leq(i, j) != Ls.leq(bij.map[i], bij.map[j])) {
            return fail("W(" + std::to_string(k)
                        + "): transport does not preserve the order");
          }
        }
      }
      report.bijections.push_back(std::move(bij));
    }

    // Coordination: τμ1 = τμ2 implies τ̃Φ⁻¹(μ1) = τ̃Φ⁻¹(μ2). Homomorphisms
    // μ: B1 -> B2 are grouped by τμ; within a group τ̃Φ⁻¹(μ) must agree.
    for (std::size_t k2 = 1; k2 <= n_max; ++k2) {
      auto const& B2    = plain[k2 - 1].space->free_algebra();
      auto const& L     = plain[k2 - 1].lattice;
      auto const& Ls    = starred[k2 - 1].lattice;
      auto const& bijk2 = report.bijections[k2 - 1].map;
      for (std::size_t k1 = 1; k1 <= n_max; ++k1) {
        auto const B1 = v.free(k1);
        for (std::size_t t = 0; t < L.size(); ++t) {
          auto const& T      = L.elements[t].partition;
          auto const& Ttilde = Ls.elements[bijk2[t]].partition;
          std::map<std::vector<Elem>, std::vector<Elem>> seen;
          std::vector<std::size_t> idx(k1, 0);
          std::vector<Elem>        images(k1);
          do {
            std::copy(idx.begin(), idx.end(), images.begin());
            Homomorphism mu{B1->extend(B2.algebra(), images)};
            auto         phi = strongly_stable_action_inverse(S, k1, k2, mu);
            std::vector<Elem> key(mu.map.size()), val(mu.map.size());
            for (std::size_t b = 0; b < mu.map.size(); ++b) {
              key[b] = T.label(mu.map[b]);
              val[b] = Ttilde.label(phi.map[b]);
            }
            auto [it, fresh] = seen.emplace(std::move(key), val);
            if (!fresh && it->second != val) {
              return fail("coordination fails for μ: W(" + std::to_string(k1)
                          + ") -> W(" + std::to_string(k2)
                          + ") and T = " + describe(T, B2));
            }
            ++report.coordination_checks;
          } while (next_tuple(idx, B2.size()));
        }
      }
    }
    return report;
  }

  CorrespondenceReport verify_coordinate_correspondence(
      FiniteAlgebra const&      H1,
      FiniteAlgebra const&      H2star,
      WordSystem const&         ws,
      Variety const&            v,
      std::size_t               n_max,
      EquivalenceOptions const& opts) {
    auto const           S = bijections_from_words(ws, v, n_max);
    CorrespondenceReport report;
    auto fail = [&](std::size_t k, std::string msg) {
      report.ok      = false;
      report.failure = "W(" + std::to_string(k) + "): " + std::move(msg);
      return report;
    };
    for (std::size_t k = 1; k <= n_max; ++k) {
      auto const          first  = rank_data(H1, v, k, opts);
      auto const          second = rank_data(H2star, v, k, opts);
      FreeAlgebra const&  B      = first.space->free_algebra();
      Permutation const&  sigma  = S.map(k);
      Permutation const&  sinv   = S.inverse_map(k);
      auto const          id1    = id_congruence(*first.space);
      auto const          id2    = id_congruence(*second.space);

      // (A)
      ClosedCongruence id_moved;
      try {
        id_moved = transport_closed(*second.space, sigma, id1.partition, Transport::forward);
      } catch (Error const& e) {
        return fail(k, std::string("(A) ") + e.what());
      }
      if (!(id_moved.partition == id2.partition)) {
        return fail(k, "(A) Id(" + H1.name() + ") is not sent to Id(" + H2star.name() + ")");
      }

      auto const q_id1 = quotient_algebra(B.algebra(), id1.partition);
      auto const q_id2 = quotient_algebra(B.algebra(), id2.partition);
      for (auto const& T : first.lattice.elements) {
        // (B)
        ClosedCongruence moved;
        try {
          moved = transport_closed(*second.space, sigma, T.partition, Transport::forward);
        } catch (Error const& e) {
          return fail(k, std::string("(B) ") + e.what());
        }
        // (C)
        auto const        qT      = quotient_algebra(B.algebra(), T.partition);
        auto const        qTt     = quotient_algebra(B.algebra(), moved.partition);
        Elem const        unset   = static_cast<Elem>(-1);
        std::vector<Elem> psi(qT.algebra.size(), unset);
        std::vector<Elem> tau(q_id1.algebra.size(), unset);
        std::vector<Elem> tau_t(q_id2.algebra.size(), unset);
        auto set = [&](std::vector<Elem>& f, Elem x, Elem y) {
          if (f[x] == unset) {
            f[x] = y;
          }
          return f[x] == y;
        };
        for (std::size_t b = 0; b < B.size(); ++b) {
          Elem const pb = static_cast<Elem>(sinv[b]);
          if (!set(psi, qT.projection.map[b], qTt.projection.map[pb])) {
            return fail(k, "(C) [b] -> [σ⁻¹b] is not well defined for T = "
                               + describe(T.partition, B));
          }
          if (!set(tau, q_id1.projection.map[b], qT.projection.map[b])
              || !set(tau_t, q_id2.projection.map[pb], qTt.projection.map[pb])) {
            return fail(k, "(C) Id is not below T = " + describe(T.partition, B));
          }
        }
        if (!is_permutation(psi, qTt.algebra.size())) {
          return fail(k, "(C) [b] -> [σ⁻¹b] is not a bijection for T = "
                             + describe(T.partition, B));
        }
        if (!is_homomorphism(star_algebra(qT.algebra, ws), qTt.algebra, psi)) {
          return fail(k, "(C) (W/T)* -> W/σ⁻¹T is not a homomorphism for T = "
                             + describe(T.partition, B));
        }
        for (std::size_t b = 0; b < B.size(); ++b) {
          Elem const via_first  = psi[tau[q_id1.projection.map[b]]];
          Elem const via_second = tau_t[q_id2.projection.map[sinv[b]]];
          if (via_first != via_second) {
            return fail(k, "(C) the square does not commute at "
                               + B.witness(static_cast<Elem>(b)).to_string(B.signature()));
          }
        }
      }
    }
    return report;
  }

  ////////////////////////////////////////////////////////////////////////
  // Search
  ////////////////////////////////////////////////////////////////////////

  std::string to_string(Verdict v) {
    switch (v) {
      case Verdict::geometric:
        return "geometric";
      case Verdict::automorphic:
        return "automorphic";
      case Verdict::refuted_at_bounds:
        return "refuted-at-bounds";
      case Verdict::exhausted:
        return "exhausted";
    }
    return "unknown";
  }

  EquivalenceCertificate auto_equivalent_search(FiniteAlgebra const&      H1,
                                                FiniteAlgebra const&      H2,
                                                Variety const&            v,
                                                std::size_t               depth_max,
                                                std::size_t               n_max,
                                                EquivalenceOptions const& opts) {
    if (opts.check_membership) {
      require_member(H1, v);
      require_member(H2, v);
    }
    EquivalenceCertificate cert;
    cert.n_max     = n_max;
    cert.depth_max = depth_max;

    auto const first  = all_ranks(H1, v, n_max, opts);
    auto const second = all_ranks(H2, v, n_max, opts);
    for (std::size_t k = 1; k <= n_max; ++k) {
      if (first[k - 1].lattice.size() != second[k - 1].lattice.size()) {
        cert.size_refutation_rank = k;
        cert.lattices.push_back(compare(k, first[k - 1].lattice, second[k - 1].lattice));
        break;
      }
    }

    EquivalenceOptions inner = opts;
    inner.check_membership   = false;

    // Op2-passing systems in enumeration order, for the lattice pass.
    std::vector<WordSystem> passing;
    bool                    found = false;
    for_each_word_system(v, depth_max, [&](WordSystem const& ws) {
      ++cert.candidates;
      try {
        if (!check_op2(ws, v, n_max).passed()) {
          return true;
        }
      } catch (CapExceeded const&) {
        ++cert.candidates_capped;
        return true;
      }
      ++cert.candidates_op2;
      if (star_algebra(H2, ws).same_tables(H1)) {
        found = true;
        cert.verdict     = Verdict::automorphic;
        cert.match       = "table";
        cert.word_system = ws;
        cert.lattices.clear();
        for (std::size_t k = 1; k <= n_max; ++k) {
          cert.lattices.push_back(
              compare(k, first[k - 1].lattice, first[k - 1].lattice));
        }
        return false;
      }
      passing.push_back(ws);
      return true;
    });
    if (found) {
      return cert;
    }

    if (!cert.size_refutation_rank) {
      for (auto const& ws : passing) {
        GeomResult r;
        try {
          r = compare_with(first, star_algebra(H2, ws), v, n_max, inner);
        } catch (CapExceeded const&) {
          ++cert.candidates_capped;
          continue;
        }
        if (r.equivalent) {
          cert.verdict     = Verdict::automorphic;
          cert.match       = "lattice";
          cert.word_system = ws;
          cert.lattices    = std::move(r.lattices);
          return cert;
        }
      }
    }
    cert.verdict = Verdict::exhausted;
    return cert;
  }

  ////////////////////////////////////////////////////////////////////////
  // Facts 1-3
  ////////////////////////////////////////////////////////////////////////

  FactsReport verify_equivalence_facts(std::vector<FiniteAlgebra> const& corpus,
                                       Variety const&                    v,
                                       std::size_t                       depth_max,
                                       std::size_t                       n_max,
                                       EquivalenceOptions const&         opts) {
    FactsReport       report;
    Signature const&  sig = v.signature();
    WordSystem const  id  = WordSystem::identity(sig);
    std::size_t const m   = corpus.size();
    auto pair_name = [&](std::size_t i, std::size_t j) {
      return corpus[i].name() + "," + corpus[j].name();
    };
    auto record = [&](std::string fact, std::string subject, bool ok, std::string detail) {
      report.checks.push_back(FactCheck{std::move(fact), std::move(subject), ok, std::move(detail)});
    };
    auto passes_op2 = [&](WordSystem const& ws) {
      return check_op1(ws) && check_op2(ws, v, n_max).passed();
    };

    // fact 1
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i; j < m; ++j) {
        if (!geom_equivalent(corpus[i], corpus[j], v, n_max, opts).equivalent) {
          continue;
        }
        bool ok = passes_op2(id) && star_algebra(corpus[j], id).same_tables(corpus[j])
                  && geom_equivalent(corpus[i], star_algebra(corpus[j], id), v, n_max, opts)
                         .equivalent;
        record("geometric-implies-automorphic", pair_name(i, j), ok,
               ok ? "identity system" : "identity system does not certify");
      }
    }

    // certificates for every ordered pair
    std::vector<std::vector<std::optional<WordSystem>>> cert(
        m, std::vector<std::optional<WordSystem>>(m));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        auto c = auto_equivalent_search(corpus[i], corpus[j], v, depth_max, n_max, opts);
        if (c.verdict == Verdict::automorphic) {
          cert[i][j] = c.word_system;
        }
      }
    }

    // fact 2
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        if (!cert[i][j]) {
          continue;
        }
        auto const&  ws = *cert[i][j];
        bool         ok = false;
        std::string  detail;
        try {
          auto const U = inverse_word_system(ws, v).words;
          ok = passes_op2(U)
               && star_algebra(star_algebra(corpus[j], ws), U).same_tables(corpus[j])
               && geom_equivalent(corpus[j], star_algebra(corpus[i], U), v, n_max, opts)
                      .equivalent;
          detail = U.to_string();
        } catch (Error const& e) {
          detail = e.what();
        }
        record("symmetry", pair_name(i, j), ok, detail);
      }
    }

    // fact 3
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t l = 0; l < m; ++l) {
          if (!cert[i][j] || !cert[j][l]) {
            continue;
          }
          auto const c  = compose(*cert[i][j], *cert[j][l]);
          bool       ok = false;
          std::string detail = c.to_string();
          try {
            ok = passes_op2(c)
                 && star_algebra(star_algebra(corpus[l], *cert[j][l]), *cert[i][j])
                        .same_tables(star_algebra(corpus[l], c))
                 && geom_equivalent(corpus[i], star_algebra(corpus[l], c), v, n_max, opts)
                        .equivalent;
          } catch (Error const& e) {
            detail = e.what();
          }
          record("transitivity", corpus[i].name() + "," + corpus[j].name() + ","
                                     + corpus[l].name(),
                 ok, detail);
        }
      }
    }
    return report;
  }

}  // namespace uag
