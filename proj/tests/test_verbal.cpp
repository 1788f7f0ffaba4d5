#include "doctest.h"

#include <set>

#include "uag/corpus.hpp"
#include "uag/error.hpp"
#include "uag/verbal.hpp"

using namespace uag;

namespace {
  WordSystem words(Signature const& sig, std::vector<std::string> const& ts) {
    std::vector<Term> ws;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      ws.push_back(parse_term(ts[i], sig, sig[i].arity));
    }
    return WordSystem(sig, ws);
  }

  // mirror image of a group word: the oracle for the opposite system
  Term reversed(Term const& t, Signature const& sig) {
    if (t.is_var() || t.args().empty()) {
      return t;
    }
    std::vector<Term> args(t.args().begin(), t.args().end());
    for (auto& a : args) {
      a = reversed(a, sig);
    }
    if (args.size() == 2) {
      std::swap(args[0], args[1]);
    }
    return Term::apply(sig, t.symbol(), args);
  }

  Variety const& s3v() {
    static Variety v({corpus::s3()});
    return v;
  }
}  // namespace

TEST_CASE("star_algebra examples") {
  auto g = corpus::group_signature();
  auto z3 = corpus::cyclic(3);
  CHECK(star_algebra(z3, WordSystem::identity(g)).same_tables(z3.renamed(z3.name() + "*")));
  auto op = corpus::opposite_groups();
  CHECK(star_algebra(z3, op).same_tables(z3.renamed(z3.name() + "*")));
  auto s3  = corpus::s3();
  auto s3s = star_algebra(s3, op);
  CHECK(s3s.name() == "S3*");
  for (Elem a = 0; a < 6; ++a) {
    for (Elem b = 0; b < 6; ++b) {
      std::vector<Elem> ab{a, b}, ba{b, a};
      CHECK(s3s.apply(0, ab) == s3.apply(0, ba));
    }
  }
  CHECK(s3s.same_tables(corpus::s3_transposed().renamed("S3*")));
  std::vector<Term> bad{parse_term("mul(x1,x2)", g, 2), parse_term("mul(x1,x2)", g, 2),
                        parse_term("e", g, 0)};
  CHECK_THROWS_AS(star_algebra(s3, WordSystem(g, bad)), InputError);
}

TEST_CASE("derived_operation") {
  auto z2 = corpus::cyclic(2);
  auto id = derived_operation(z2, Permutation{0, 1}, 0);
  CHECK(std::vector<Elem>(id.entries().begin(), id.entries().end())
        == std::vector<Elem>(z2.table(0).entries().begin(), z2.table(0).entries().end()));
  auto sw = derived_operation(z2, Permutation{1, 0}, 0);
  // s(s(a) + s(b)) = a + b + 1
  CHECK(std::vector<Elem>(sw.entries().begin(), sw.entries().end())
        == std::vector<Elem>{1, 0, 0, 1});
  auto e = derived_operation(z2, Permutation{1, 0}, 2);
  CHECK(e.entries()[0] == 1);
  CHECK_THROWS_AS(derived_operation(z2, Permutation{0, 0}, 0), InputError);

  // deriving by s then by s⁻¹ gives the original table back
  auto       s3 = corpus::s3();
  Permutation s{3, 5, 0, 1, 4, 2};
  auto        once = derived_operation(s3, s, 0);
  FiniteAlgebra c("C", s3.signature(), 6,
                  {once, derived_operation(s3, s, 1), derived_operation(s3, s, 2)});
  CHECK(c.renamed("S3").same_tables(s3) == false);
  auto back = derived_operation(c, inverse(s), 0);
  CHECK(std::vector<Elem>(back.entries().begin(), back.entries().end())
        == std::vector<Elem>(s3.table(0).entries().begin(), s3.table(0).entries().end()));
}

TEST_CASE("check_op1") {
  auto g = corpus::group_signature();
  CHECK(check_op1(corpus::opposite_groups()));
  std::vector<Term> bad{parse_term("mul(x2,x1)", g, 2), parse_term("mul(x1,x2)", g, 2),
                        parse_term("e", g, 0)};
  CHECK_FALSE(check_op1(WordSystem(g, bad)));
  CHECK(check_op1(WordSystem::identity(g)));
}

TEST_CASE("check_op2 examples") {
  Variety s2v({corpus::s2()});
  auto    id = check_op2(WordSystem::identity(s2v.signature()), s2v, 2);
  REQUIRE(id.passed());
  for (auto const& [k, s] : id.sigma) {
    for (std::size_t b = 0; b < s.size(); ++b) {
      CHECK(s[b] == b);
    }
  }

  auto proj = check_op2(words(s2v.signature(), {"x1"}), s2v, 2);
  REQUIRE_FALSE(proj.passed());
  CHECK(proj.failure->rank == 2);
  CHECK(proj.failure->stage == Op2Stage::membership);
  REQUIRE(proj.failure->identity);
  auto const& sig = s2v.signature();
  std::set<std::string> sides{proj.failure->identity->lhs.to_string(sig),
                              proj.failure->identity->rhs.to_string(sig)};
  CHECK(sides == std::set<std::string>{"meet(x1,x2)", "meet(x2,x1)"});

  auto op = check_op2(corpus::opposite_groups(), s3v(), 2);
  CHECK(op.passed());
  CHECK(op.sigma.size() == 3);  // ranks 0, 1, 2
}

TEST_CASE("opposite system: σ is word reversal") {
  auto const& v  = s3v();
  auto        r  = check_op2(corpus::opposite_groups(), v, 2);
  REQUIRE(r.passed());
  for (std::size_t k : {1, 2}) {
    auto B = v.free(k);
    auto const& s = r.sigma.at(k);
    for (std::size_t b = 0; b < B->size(); ++b) {
      CHECK(s[b] == B->term_image(reversed(B->witness(b), v.signature())));
    }
    for (auto g : B->generators()) {
      CHECK(s[g] == g);
    }
  }
}

TEST_CASE("bijections and words round trip") {
  auto const& v  = s3v();
  auto        op = corpus::opposite_groups();
  auto        S  = bijections_from_words(op, v, 2);
  CHECK(words_from_bijections(S) == op);
  CHECK(bijections_from_words(words_from_bijections(S), v, 2) == S);

  auto I = BijectionSystem::identity(v, 2);
  CHECK(words_from_bijections(I) == WordSystem::identity(v.signature()));
  CHECK(bijections_from_words(WordSystem::identity(v.signature()), v, 2) == I);

  // reversal maps built directly
  std::map<std::size_t, Permutation> rev;
  for (std::size_t k : scope_ranks(v.signature(), 2)) {
    auto        B = v.free(k);
    Permutation p(B->size());
    for (std::size_t b = 0; b < B->size(); ++b) {
      p[b] = B->term_image(reversed(B->witness(b), v.signature()));
    }
    rev[k] = p;
  }
  BijectionSystem R(v, 2, rev);
  CHECK(words_from_bijections(R) == op);
  CHECK(bijections_from_words(words_from_bijections(R), v, 2) == R);
  // exhaustive B1 over W(2) -> W(2) is too slow here; rank 1 covers it
  rev.erase(2);
  CHECK(check_b1_b2(BijectionSystem(v, 1, rev)).ok);

  Variety s2v({corpus::s2()});
  CHECK_THROWS_AS(bijections_from_words(words(s2v.signature(), {"x1"}), s2v, 2), Error);
  CHECK_THROWS_AS(words_from_bijections(BijectionSystem::identity(s2v, 1)), InputError);
}

TEST_CASE("round trips over every Op2 system found by enumeration") {
  std::vector<Variety> vs{Variety({corpus::s2()}), Variety({corpus::cyclic(2)})};
  for (auto const& v : vs) {
    std::size_t found = 0;
    for_each_word_system(v, 2, [&](WordSystem const& ws) {
      if (!check_op2(ws, v, 2).passed()) {
        return true;
      }
      ++found;
      auto S = bijections_from_words(ws, v, 2);
      CHECK(semantically_equal(words_from_bijections(S), ws, v));
      CHECK(bijections_from_words(words_from_bijections(S), v, 2) == S);
      CHECK(check_b1_b2(S).ok);
      CHECK(verify_zhito(ws, v, 2).ok);
      return true;
    });
    CHECK(found >= 1);
  }
}

TEST_CASE("check_b1_b2") {
  Variety s2v({corpus::s2()});
  CHECK(check_b1_b2(BijectionSystem::identity(s2v, 2)).ok);
  auto        B = s2v.free(2);
  Permutation swap(B->size());
  for (std::size_t b = 0; b < B->size(); ++b) {
    swap[b] = static_cast<Elem>(b);
  }
  std::swap(swap[B->generators()[0]], swap[B->generators()[1]]);
  auto r = check_b1_b2(BijectionSystem(s2v, 2, {{1, Permutation{0}}, {2, swap}}));
  CHECK_FALSE(r.ok);
  CHECK(r.counterexample.find("B2") != std::string::npos);

  // fixes generators but breaks B1: swap e and x1x2 in W(2) of var(Z2)
  Variety z2v({corpus::cyclic(2)});
  auto    Z   = z2v.free(2);
  auto    sig = z2v.signature();
  Elem    e   = Z->term_image(parse_term("e", sig, 0));
  Elem    xy  = Z->term_image(parse_term("mul(x1,x2)", sig, 2));
  Permutation p(Z->size());
  for (std::size_t b = 0; b < Z->size(); ++b) {
    p[b] = static_cast<Elem>(b);
  }
  std::swap(p[e], p[xy]);
  auto z = check_b1_b2(BijectionSystem(
      z2v, 2, {{0, Permutation{0}}, {1, Permutation{0, 1}}, {2, p}}));
  CHECK_FALSE(z.ok);
  CHECK(z.counterexample.find("B1") != std::string::npos);

  CHECK_THROWS_AS(BijectionSystem(s2v, 2, {{1, Permutation{0}}}), InputError);
  CHECK_THROWS_AS(BijectionSystem(s2v, 2, {{1, Permutation{0}}, {2, Permutation{0, 0, 1}}}),
                  InputError);
}

TEST_CASE("strongly stable action") {
  auto const& v   = s3v();
  auto        S   = bijections_from_words(corpus::opposite_groups(), v, 2);
  auto        B1  = v.free(1);
  auto        B2  = v.free(2);
  auto const& sig = v.signature();
  auto alpha = B1->extend_hom(B2->algebra(),
                              std::vector<Elem>{B2->term_image(parse_term("mul(x1,x2)", sig, 2))});
  auto phi   = strongly_stable_action(S, 1, 2, alpha);
  CHECK(phi(B1->generators()[0]) == B2->term_image(parse_term("mul(x2,x1)", sig, 2)));
  CHECK(is_homomorphism(B1->algebra(), B2->algebra(), phi.map));
  CHECK(strongly_stable_action_inverse(S, 1, 2, phi).map == alpha.map);

  // identity system acts trivially
  auto I = BijectionSystem::identity(v, 2);
  CHECK(strongly_stable_action(I, 1, 2, alpha).map == alpha.map);

  // functoriality and bijectivity on W(1) -> W(1)
  auto homs = hom_set(B1->algebra(), B1->algebra());
  CHECK(homs.size() == 6);
  std::set<std::vector<Elem>> images;
  for (auto const& a : homs) {
    images.insert(strongly_stable_action(S, 1, 1, a).map);
    for (auto const& b : homs) {
      Homomorphism ba;
      for (auto x : a.map) {
        ba.map.push_back(b(x));
      }
      Homomorphism pa = strongly_stable_action(S, 1, 1, a);
      Homomorphism pb = strongly_stable_action(S, 1, 1, b);
      Homomorphism comp;
      for (auto x : pa.map) {
        comp.map.push_back(pb(x));
      }
      CHECK(strongly_stable_action(S, 1, 1, ba).map == comp.map);
    }
  }
  CHECK(images.size() == homs.size());

  // W(1) -> W(2): functorial against post-composition too
  for (std::size_t g = 0; g < B2->size(); g += 97) {
    auto h = B1->extend_hom(B2->algebra(), std::vector<Elem>{static_cast<Elem>(g)});
    auto p = strongly_stable_action(S, 1, 2, h);
    CHECK(is_homomorphism(B1->algebra(), B2->algebra(), p.map));
  }
  CHECK_THROWS_AS(strongly_stable_action(S, 3, 1, alpha), InputError);
}

TEST_CASE("verify_zhito") {
  CHECK(verify_zhito(corpus::opposite_groups(), s3v(), 2).ok);
  Variety s2v({corpus::s2()});
  CHECK(verify_zhito(WordSystem::identity(s2v.signature()), s2v, 2).ok);
  CHECK_THROWS_AS(verify_zhito(words(s2v.signature(), {"x1"}), s2v, 2), Error);
}

TEST_CASE("inverse_word_system") {
  auto const& v   = s3v();
  auto const& sig = v.signature();
  auto        id  = inverse_word_system(WordSystem::identity(sig), v);
  CHECK(semantically_equal(id.words, WordSystem::identity(sig), v));

  auto op  = corpus::opposite_groups();
  auto inv = inverse_word_system(op, v);
  CHECK(inv.starred.to_string().find("mul*(x2,x1)") != std::string::npos);
  CHECK(semantically_equal(inv.words, op, v));
  CHECK(semantically_equal(inv.expanded, WordSystem::identity(sig), v));
  for (auto const& H : {corpus::s3(), corpus::s3_transposed(), corpus::cyclic(3)}) {
    CHECK(star_algebra(star_algebra(H, op), inv.words).same_tables(H));
  }
  Variety s2v({corpus::s2()});
  CHECK_THROWS_AS(inverse_word_system(words(s2v.signature(), {"x1"}), s2v), Error);
}

TEST_CASE("star algebras stay in the variety and homomorphisms lift") {
  auto const& v  = s3v();
  auto        op = corpus::opposite_groups();
  std::vector<FiniteAlgebra> hs{corpus::s3(), corpus::cyclic(2), corpus::cyclic(3),
                                corpus::trivial_group()};
  for (auto const& H : hs) {
    CHECK(variety_membership(star_algebra(H, op), v));
  }
  for (auto const& H1 : hs) {
    for (auto const& H2 : hs) {
      auto a = star_algebra(H1, op);
      auto b = star_algebra(H2, op);
      for (auto const& h : hom_set(H1, H2)) {
        CHECK(is_homomorphism(a, b, h.map));
      }
      CHECK(hom_set(H1, H2).size() == hom_set(a, b).size());
    }
  }
}

TEST_CASE("candidate words and enumeration order") {
  Variety s2v({corpus::s2()});
  auto    c = candidate_words(s2v, 0, 2);
  REQUIRE(!c.empty());
  CHECK(c[0].to_string(s2v.signature()) == "meet(x1,x2)");
  CHECK(c.size() == 3);  // one per element of W(2)
  std::vector<std::string> seen;
  for_each_word_system(s2v, 2, [&](WordSystem const& ws) {
    seen.push_back(ws.to_string());
    return true;
  });
  CHECK(seen.size() == 3);
  CHECK(seen[0] == WordSystem::identity(s2v.signature()).to_string());

  std::size_t n = 0;
  for_each_word_system(s3v(), 1, [&](WordSystem const& ws) {
    if (n++ == 0) {
      CHECK(ws == WordSystem::identity(ws.signature()));
    }
    return n < 5;
  });
  CHECK(n == 5);
}

TEST_CASE("compose") {
  auto op = corpus::opposite_groups();
  auto const& v = s3v();
  auto twice = compose(op, op);
  CHECK(semantically_equal(twice, WordSystem::identity(v.signature()), v));
  auto H = corpus::s3();
  CHECK(star_algebra(H, twice).same_tables(star_algebra(star_algebra(H, op), op)));
}
