#include "uag/verify.hpp"

#include <algorithm>
#include <functional>

#include "uag/equivalence.hpp"
#include "uag/error.hpp"

namespace uag {

  std::size_t VerifyReport::failures() const {
    return static_cast<std::size_t>(
        std::count_if(lines.begin(), lines.end(), [](auto const& l) { return !l.ok; }));
  }

  namespace {
    struct Runner {
      corpus::Suite const& suite;
      VerifyReport&        report;

      // fn returns an empty string on success, else the failure detail.
      void check(std::string const&                 name,
                 std::string const&                 subject,
                 std::function<std::string()> const& fn) {
        CheckLine line{suite.name, name, subject, true, ""};
        try {
          line.detail = fn();
          line.ok     = line.detail.empty();
        } catch (std::exception const& e) {
          line.ok     = false;
          line.detail = std::string("exception: ") + e.what();
        }
        report.lines.push_back(std::move(line));
      }
    };

    std::string label(WordSystem const& ws) {
      return "{" + ws.to_string() + "}";
    }

    std::vector<WordSystem> systems_of(corpus::Suite const& s, Variety const& v) {
      std::vector<WordSystem> result{WordSystem::identity(v.signature())};
      auto add = [&](WordSystem const& ws) {
        for (auto const& other : result) {
          if (semantically_equal(ws, other, v)) {
            return;
          }
        }
        result.push_back(ws);
      };
      for (auto const& ws : s.systems) {
        add(ws);
      }
      if (s.enumerate) {
        for_each_word_system(v, s.depth, [&](WordSystem const& ws) {
          if (check_op2(ws, v, s.n_max).passed()) {
            add(ws);
          }
          return true;
        });
      }
      return result;
    }

    std::string tables_differ(FiniteAlgebra const& a, FiniteAlgebra const& b) {
      return a.same_tables(b) ? "" : a.name() + " and " + b.name() + " differ";
    }
  }  // namespace

  VerifyReport run_verification(std::vector<corpus::Suite> const& suites) {
    if (suites.empty()) {
      throw InputError("empty corpus");
    }
    VerifyReport report;
    for (auto const& suite : suites) {
      if (suite.algebras.empty()) {
        throw InputError("suite " + suite.name + " has no algebras");
      }
      Runner           run{suite, report};
      Variety const&   v     = suite.variety;
      std::size_t const n    = suite.n_max;
      std::size_t const n_rt = std::max(n, v.signature().max_arity());

      // membership gates everything else
      std::vector<FiniteAlgebra> members;
      for (auto const& H : suite.algebras) {
        bool ok = false;
        run.check("membership", H.name(), [&]() -> std::string {
          auto r = check_membership(H, v);
          ok     = r.member;
          if (ok) {
            return "";
          }
          if (r.failed_identity) {
            auto const& sig = v.signature();
            return "fails " + r.failed_identity->lhs.to_string(sig) + " = "
                   + r.failed_identity->rhs.to_string(sig);
          }
          return "not in the variety";
        });
        if (ok) {
          members.push_back(H);
        }
      }

      std::vector<WordSystem> systems;
      run.check("enumerate", "depth " + std::to_string(suite.depth), [&]() -> std::string {
        systems = systems_of(suite, v);
        return "";
      });

      for (auto const& ws : systems) {
        auto const name = label(ws);
        bool       op2  = false;
        run.check("op2", name, [&]() -> std::string {
          auto r = check_op2(ws, v, n_rt);
          op2    = r.passed();
          return op2 ? "" : to_string(r.failure->stage) + " at rank " + std::to_string(r.failure->rank);
        });
        if (!op2) {
          continue;
        }
        run.check("derived-equals-verbal", name, [&]() -> std::string {
          auto r = verify_zhito(ws, v, n_rt);
          return r.ok ? "" : r.mismatch;
        });
        run.check("words-round-trip", name, [&]() -> std::string {
          auto back = words_from_bijections(bijections_from_words(ws, v, n_rt));
          return semantically_equal(back, ws, v) ? "" : "got " + label(back);
        });
        run.check("bijections-round-trip", name, [&]() -> std::string {
          auto S    = bijections_from_words(ws, v, n_rt);
          auto back = bijections_from_words(words_from_bijections(S), v, n_rt);
          return back == S ? "" : "bijection systems differ";
        });
        run.check("b1-b2", name, [&]() -> std::string {
          auto r = check_b1_b2(bijections_from_words(ws, v, n));
          return r.ok ? "" : r.counterexample;
        });
        run.check("action-identity", name, [&]() -> std::string {
          auto S = bijections_from_words(ws, v, n);
          for (std::size_t k : S.ranks()) {
            Homomorphism id;
            for (std::size_t b = 0; b < v.free(k)->size(); ++b) {
              id.map.push_back(static_cast<Elem>(b));
            }
            if (!(strongly_stable_action(S, k, k, id) == id)) {
              return "Φ(id) != id on W(" + std::to_string(k) + ")";
            }
          }
          return "";
        });
        InverseWordSystem inv;
        run.check("inverse-system", name, [&]() -> std::string {
          inv = inverse_word_system(ws, v);
          if (!semantically_equal(inv.expanded, WordSystem::identity(v.signature()), v)) {
            return "expanded inverse is not the identity: " + label(inv.expanded);
          }
          return "";
        });
        for (auto const& H : members) {
          FiniteAlgebra const Hs = star_algebra(H, ws);
          run.check("star-in-variety", name + " " + H.name(), [&]() -> std::string {
            return variety_membership(Hs, v) ? "" : Hs.name() + " is outside the variety";
          });
          run.check("double-star", name + " " + H.name(), [&]() -> std::string {
            return tables_differ(star_algebra(Hs, inv.words), H);
          });
          run.check("closure-transport", name + " " + H.name(), [&]() -> std::string {
            auto r = verify_H_Hstar(H, ws, v, n);
            return r.ok ? "" : r.failure;
          });
          run.check("coordinate-correspondence", name + " " + H.name(), [&]() -> std::string {
            auto r = verify_coordinate_correspondence(H, Hs, ws, v, n);
            return r.ok ? "" : r.failure;
          });
        }
        run.check("homomorphisms-lift", name, [&]() -> std::string {
          for (auto const& H1 : members) {
            for (auto const& H2 : members) {
              auto const H1s = star_algebra(H1, ws);
              auto const H2s = star_algebra(H2, ws);
              for (auto const& h : hom_set(H1, H2)) {
                if (!is_homomorphism(H1s, H2s, h.map)) {
                  return H1.name() + " -> " + H2.name() + " does not lift";
                }
              }
              for (auto const& h : hom_set(H1s, H2s)) {
                if (!is_homomorphism(H1, H2, h.map)) {
                  return H1s.name() + " -> " + H2s.name() + " does not descend";
                }
              }
            }
          }
          return "";
        });
      }

      // geometric comparisons: a refutation witness is closed for exactly
      // one side
      for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = i + 1; j < members.size(); ++j) {
          auto const& H1 = members[i];
          auto const& H2 = members[j];
          run.check("geometric-witness", H1.name() + "," + H2.name(), [&]() -> std::string {
            auto r = geom_equivalent(H1, H2, v, n);
            if (r.equivalent) {
              return "";
            }
            auto const B = v.free(r.witness->rank);
            bool       c1 = is_closed(r.witness->congruence, PointSpace(B, H1));
            bool       c2 = is_closed(r.witness->congruence, PointSpace(B, H2));
            if (c1 == c2 || c1 != r.witness->closed_for_first) {
              return "witness " + r.witness->congruence.encode() + " is not one-sided";
            }
            return "";
          });
        }
      }

      for (auto const& H : members) {
        run.check("self-search", H.name(), [&]() -> std::string {
          auto c = auto_equivalent_search(H, H, v, suite.depth, n);
          if (c.verdict != Verdict::automorphic) {
            return "no certificate";
          }
          return *c.word_system == WordSystem::identity(v.signature())
                     ? ""
                     : "found " + label(*c.word_system);
        });
      }

      run.check("facts", "corpus", [&]() -> std::string {
        auto r = verify_equivalence_facts(members, v, suite.depth, n);
        for (auto const& c : r.checks) {
          if (!c.ok) {
            return c.fact + " " + c.subject + ": " + c.detail;
          }
        }
        return "";
      });
    }
    return report;
  }

  std::string to_text(VerifyReport const& r) {
    std::string out;
    for (auto const& l : r.lines) {
      out += (l.ok ? "PASS " : "FAIL ") + l.suite + " " + l.check + " " + l.subject;
      if (!l.detail.empty()) {
        out += ": " + l.detail;
      }
      out += "\n";
    }
    out += std::to_string(r.lines.size() - r.failures()) + "/"
           + std::to_string(r.lines.size()) + " checks passed\n";
    return out;
  }

  io::Json to_json(VerifyReport const& r) {
    io::Json lines = io::Json::array();
    for (auto const& l : r.lines) {
      io::Json j{{"suite", l.suite}, {"check", l.check}, {"subject", l.subject}, {"ok", l.ok}};
      if (!l.detail.empty()) {
        j["detail"] = l.detail;
      }
      lines.push_back(std::move(j));
    }
    return io::Json{{"ok", r.ok()},
                    {"passed", r.lines.size() - r.failures()},
                    {"total", r.lines.size()},
                    {"checks", std::move(lines)}};
  }

}  // namespace uag
