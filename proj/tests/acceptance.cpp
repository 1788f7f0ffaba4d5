// Acceptance run: one PASS/FAIL line per criterion, with timings.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <string>

#include "uag/corpus.hpp"
#include "uag/equivalence.hpp"
#include "uag/geometry.hpp"
#include "uag/verify.hpp"

using namespace uag;

namespace {

  struct Outcome {
    bool        ok = true;
    std::string detail;

    void require(bool cond, std::string const& what) {
      if (!cond && ok) {
        ok     = false;
        detail = what;
      }
    }
  };

  int failures = 0;

  void criterion(int n, std::string const& name, double limit_s,
                 std::function<Outcome()> const& fn) {
    auto    t0 = std::chrono::steady_clock::now();
    Outcome r;
    try {
      r = fn();
    } catch (std::exception const& e) {
      r.ok     = false;
      r.detail = std::string("exception: ") + e.what();
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.ok && limit_s > 0 && s > limit_s) {
      r.ok     = false;
      r.detail = "over the time limit of " + std::to_string(limit_s) + " s";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", s);
    std::cout << (r.ok ? "PASS" : "FAIL") << " AC" << n << " " << name << " (" << buf << " s)";
    if (!r.detail.empty()) {
      std::cout << ": " << r.detail;
    }
    std::cout << std::endl;
    failures += r.ok ? 0 : 1;
  }

  Variety s2v() {
    return Variety({corpus::s2()});
  }

  // all 2^9 subsets of B x B for |B| = 3
  EquationSet subset(std::size_t mask) {
    std::vector<std::pair<Elem, Elem>> ps;
    for (std::size_t i = 0; i < 9; ++i) {
      if (mask >> i & 1) {
        ps.emplace_back(static_cast<Elem>(i / 3), static_cast<Elem>(i % 3));
      }
    }
    return EquationSet(ps);
  }

  // Op2 word systems found by enumeration to depth 2, n_max 2
  std::vector<std::pair<Variety, std::vector<WordSystem>>> enumerated_systems() {
    std::vector<std::pair<Variety, std::vector<WordSystem>>> out;
    for (auto const& gen : {corpus::s2(), corpus::cyclic(2)}) {
      Variety                 v({gen});
      std::vector<WordSystem> found;
      for_each_word_system(v, 2, [&](WordSystem const& ws) {
        if (check_op2(ws, v, 2).passed()) {
          found.push_back(ws);
        }
        return true;
      });
      out.emplace_back(v, found);
    }
    return out;
  }

  std::vector<WordSystem> suite_systems(corpus::Suite const& s) {
    std::vector<WordSystem> out{WordSystem::identity(s.variety.signature())};
    auto add = [&](WordSystem const& ws) {
      for (auto const& o : out) {
        if (semantically_equal(o, ws, s.variety)) {
          return;
        }
      }
      out.push_back(ws);
    };
    for (auto const& ws : s.systems) {
      add(ws);
    }
    if (s.enumerate) {
      for_each_word_system(s.variety, s.depth, [&](WordSystem const& ws) {
        if (check_op2(ws, s.variety, s.n_max).passed()) {
          add(ws);
        }
        return true;
      });
    }
    return out;
  }

  std::string run_command(std::string const& cmd) {
    std::string out;
    FILE*       p = popen(cmd.c_str(), "r");
    if (!p) {
      return out;
    }
    std::array<char, 4096> buf;
    std::size_t            n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) {
      out.append(buf.data(), n);
    }
    pclose(p);
    return out;
  }

}  // namespace

int main(int argc, char** argv) {
  std::string cli = argc > 1 ? argv[1] : "";

  criterion(1, "closure operator laws", 1.0, [] {
    Outcome    o;
    Variety    v = s2v();
    PointSpace S(v.free(2), corpus::s2());
    std::vector<Congruence> cl;
    for (std::size_t m = 0; m < 512; ++m) {
      cl.push_back(closure(subset(m), S).partition);
    }
    for (std::size_t m = 0; m < 512; ++m) {
      o.require(subset(m).subset_of(cl[m]), "not extensive at " + std::to_string(m));
      o.require(closure(EquationSet::of(cl[m]), S).partition == cl[m],
                "not idempotent at " + std::to_string(m));
      for (std::size_t m2 = 0; m2 < 512; ++m2) {
        if ((m & m2) == m) {
          o.require(cl[m].refines(cl[m2]), "not monotone at " + std::to_string(m));
        }
      }
    }
    return o;
  });

  criterion(2, "Galois connection and closed sets are congruences", 1.0, [] {
    Outcome    o;
    Variety    v = s2v();
    PointSpace S(v.free(2), corpus::s2());
    std::size_t const points = S.size();
    for (std::size_t m = 0; m < 512; ++m) {
      auto T   = subset(m);
      auto sol = solutions(T, S);
      for (std::size_t rm = 0; rm < (std::size_t{1} << points); ++rm) {
        std::vector<std::size_t> R;
        for (std::size_t p = 0; p < points; ++p) {
          if (rm >> p & 1) {
            R.push_back(p);
          }
        }
        bool lhs = std::includes(sol.begin(), sol.end(), R.begin(), R.end());
        bool rhs = T.subset_of(point_congruence(R, S));
        o.require(lhs == rhs, "fails at T " + std::to_string(m) + ", R " + std::to_string(rm));
      }
      auto c = closure(T, S);
      o.require(is_congruence(S.free_algebra().algebra(), c.partition),
                "closure of " + std::to_string(m) + " is not a congruence");
    }
    return o;
  });

  criterion(3, "free algebra sizes", 5.0, [] {
    Outcome o;
    auto    s = free_rank_sizes(s2v(), 3).sizes;
    for (std::size_t k = 1; k <= 3; ++k) {
      o.require(s[k - 1] == (std::size_t{1} << k) - 1, "var(S2) rank " + std::to_string(k));
    }
    auto z = free_rank_sizes(Variety({corpus::cyclic(2)}), 2).sizes;
    for (std::size_t k = 1; k <= 2; ++k) {
      o.require(z[k - 1] == std::size_t{1} << k, "var(Z2) rank " + std::to_string(k));
    }
    return o;
  });

  criterion(4, "lattice of S2 on W(x1,x2)", 1.0, [] {
    Outcome     o;
    Variety     v = s2v();
    PointSpace  S(v.free(2), corpus::s2());
    auto const& B = S.free_algebra();
    auto        L = closed_lattice(S);
    o.require(L.size() == 4, "size " + std::to_string(L.size()));
    auto e = [&](char const* t) { return B.term_image(parse_term(t, B.signature(), 2)); };
    auto two = [&](char const* a, char const* b) {
      std::vector<Elem> lab(3, 1);
      lab[e(a)] = 0;
      lab[e(b)] = 0;
      return Congruence::from_labels(lab).encode();
    };
    std::set<std::string> want{Congruence::diagonal(3).encode(), two("x1", "meet(x1,x2)"),
                               two("x2", "meet(x1,x2)"), Congruence::full(3).encode()};
    std::set<std::string> got, oracle;
    for (auto const& c : L.elements) {
      got.insert(c.partition.encode());
    }
    for (std::size_t m = 0; m < (std::size_t{1} << S.size()); ++m) {
      std::vector<std::size_t> R;
      for (std::size_t p = 0; p < S.size(); ++p) {
        if (m >> p & 1) {
          R.push_back(p);
        }
      }
      oracle.insert(point_congruence(R, S).encode());
    }
    o.require(got == want, "partitions differ from the stated ones");
    o.require(got == oracle, "partitions differ from the subset-intersection oracle");
    return o;
  });

  auto const systems = enumerated_systems();

  criterion(5, "word and bijection system round trips", 120.0, [&] {
    Outcome     o;
    std::size_t n = 0;
    for (auto const& [v, list] : systems) {
      for (auto const& ws : list) {
        ++n;
        auto S = bijections_from_words(ws, v, 2);
        o.require(semantically_equal(words_from_bijections(S), ws, v),
                  "W(S(W)) != W for {" + ws.to_string() + "}");
        o.require(bijections_from_words(words_from_bijections(S), v, 2) == S,
                  "S(W(S)) != S for {" + ws.to_string() + "}");
      }
    }
    o.require(n >= 2, "too few systems found");
    if (o.ok) {
      o.detail = std::to_string(n) + " systems";
    }
    return o;
  });

  criterion(6, "verbal tables equal derived tables", 120.0, [&] {
    Outcome o;
    for (auto const& [v, list] : systems) {
      for (auto const& ws : list) {
        auto r = verify_zhito(ws, v, 2);
        o.require(r.ok, "{" + ws.to_string() + "}: " + r.mismatch);
      }
    }
    return o;
  });

  criterion(7, "closure transport for H and H*", 300.0, [] {
    Outcome o;
    Variety s2 = s2v();
    auto    a  = verify_H_Hstar(corpus::s2(), WordSystem::identity(s2.signature()), s2, 2);
    o.require(a.ok, "S2: " + a.failure);
    Variety s3({corpus::s3()});
    auto    b = verify_H_Hstar(corpus::s3(), corpus::opposite_groups(), s3, 1);
    o.require(b.ok, "S3: " + b.failure);
    o.require(a.coordination_checks > 0 && b.coordination_checks > 0, "no coordination checks");
    if (o.ok) {
      o.detail = std::to_string(a.coordination_checks + b.coordination_checks)
                 + " coordination checks";
    }
    return o;
  });

  auto const suites = corpus::builtin();

  criterion(8, "double star through the inverse system", 60.0, [&] {
    Outcome     o;
    std::size_t n = 0;
    for (auto const& s : suites) {
      for (auto const& ws : suite_systems(s)) {
        auto inv = inverse_word_system(ws, s.variety);
        for (auto const& H : s.algebras) {
          ++n;
          o.require(star_algebra(star_algebra(H, ws), inv.words).same_tables(H),
                    s.name + " " + H.name() + " {" + ws.to_string() + "}");
        }
      }
    }
    if (o.ok) {
      o.detail = std::to_string(n) + " algebra/system pairs";
    }
    return o;
  });

  criterion(9, "automorphic equivalence search", 600.0, [&] {
    Outcome o;
    Variety s3({corpus::s3()});
    auto    t = auto_equivalent_search(corpus::s3_transposed(), corpus::s3(), s3, 1, 1);
    o.require(t.verdict == Verdict::automorphic && t.word_system
                  && semantically_equal(*t.word_system, corpus::opposite_groups(), s3),
              "S3t vs S3 did not give the opposite system");
    for (auto const& s : suites) {
      for (auto const& H : s.algebras) {
        auto c = auto_equivalent_search(H, H, s.variety, s.depth, s.n_max);
        o.require(c.verdict == Verdict::automorphic && c.word_system
                      && *c.word_system == WordSystem::identity(s.variety.signature()),
                  "self search on " + H.name());
      }
    }
    Variety v = s2v();
    auto    g = geom_equivalent(corpus::s2(), corpus::trivial_semilattice(), v, 2);
    o.require(!g.equivalent && g.witness && g.witness->congruence.is_diagonal()
                  && g.witness->closed_for_first,
              "S2 vs trivial not refuted by the diagonal");
    return o;
  });

  criterion(10, "verify output is deterministic", 0, [&] {
    Outcome o;
    auto    a = to_text(run_verification(suites));
    auto    b = to_text(run_verification(corpus::builtin()));
    o.require(a == b, "in-process reports differ");
    o.require(run_verification(suites).ok(), "verify suite has failures");
    if (!cli.empty()) {
      auto x = run_command(cli + " verify");
      auto y = run_command(cli + " verify");
      o.require(!x.empty() && x == y, "CLI outputs differ");
      o.require(x == a, "CLI output differs from the in-process report");
    }
    return o;
  });

  std::cout << (10 - failures) << "/10 criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
