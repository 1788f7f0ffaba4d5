#include "doctest.h"

#include "uag/algebra.hpp"
#include "uag/corpus.hpp"
#include "uag/error.hpp"
#include "uag/free_algebra.hpp"

using namespace uag;

namespace {
  FiniteAlgebra nand() {
    auto sig = parse_signature("nand/2");
    return FiniteAlgebra("NAND", sig, 2, {OpTable(2, 2, {1, 1, 1, 0})});
  }
  Elem eval(FiniteAlgebra const& A, std::string const& t, std::vector<Elem> asg) {
    return eval_term(A, parse_term(t, A.signature(), asg.size()), asg);
  }
}  // namespace

TEST_CASE("FiniteAlgebra validation") {
  auto sig = parse_signature("f/1");
  CHECK_THROWS_AS(FiniteAlgebra("A", sig, 2, {OpTable(1, 2, {0, 2})}), InputError);
  CHECK_THROWS_AS(FiniteAlgebra("A", sig, 2, {OpTable(1, 2, {0})}), InputError);
  CHECK_THROWS_AS(FiniteAlgebra("A", sig, 0, {OpTable(1, 0, {})}), InputError);
  CHECK_THROWS_AS(FiniteAlgebra("A", sig, 2, {}), InputError);
}

TEST_CASE("eval_term") {
  CHECK(eval(corpus::cyclic(2), "mul(x1,x1)", {1}) == 0);
  CHECK(eval(corpus::s2(), "meet(x1,meet(x1,x2))", {1, 0}) == 0);
  CHECK(eval(nand(), "nand(x1,x1)", {0}) == 1);
  CHECK(eval(corpus::s3(), "mul(x1,inv(x1))", {4}) == 0);
}

TEST_CASE("is_homomorphism") {
  auto z2 = corpus::cyclic(2);
  CHECK(is_homomorphism(z2, z2, std::vector<Elem>{0, 1}));
  CHECK(is_homomorphism(z2, z2, std::vector<Elem>{0, 0}));
  CHECK_FALSE(is_homomorphism(z2, z2, std::vector<Elem>{1, 1}));
  auto s2 = corpus::s2();
  CHECK_FALSE(is_homomorphism(s2, s2, std::vector<Elem>{1, 0}));
  CHECK_THROWS_AS(is_homomorphism(s2, s2, std::vector<Elem>{0}), InputError);
}

TEST_CASE("hom_set") {
  auto s2 = corpus::s2();
  auto hs = hom_set(s2, s2);
  REQUIRE(hs.size() == 3);
  CHECK(hs[0].map == std::vector<Elem>{0, 0});
  CHECK(hs[1].map == std::vector<Elem>{0, 1});
  CHECK(hs[2].map == std::vector<Elem>{1, 1});
  auto z2 = corpus::cyclic(2);
  auto hz = hom_set(z2, z2);
  REQUIRE(hz.size() == 2);
  CHECK(hz[0].map == std::vector<Elem>{0, 0});
  CHECK(hz[1].map == std::vector<Elem>{0, 1});
  CHECK(hom_set(corpus::s3(), corpus::trivial_group()).size() == 1);
  CHECK(hom_set(s2, corpus::trivial_semilattice()).size() == 1);
}

TEST_CASE("hom_set agrees with brute force") {
  auto S3 = corpus::s3();
  auto Z2 = corpus::cyclic(2);
  std::size_t              brute = 0;
  std::vector<std::size_t> idx(S3.size(), 0);
  do {
    std::vector<Elem> m(idx.begin(), idx.end());
    brute += is_homomorphism(S3, Z2, m) ? 1 : 0;
  } while (next_tuple(idx, Z2.size()));
  CHECK(hom_set(S3, Z2).size() == brute);
  CHECK(brute == 2);  // trivial and sign
  CHECK(hom_set(S3, S3).size() == 10);  // 6 automorphisms, 3 onto Z2 images, trivial
}

TEST_CASE("product_algebra") {
  auto p = corpus::s2_squared();
  CHECK(p.size() == 4);
  // (a,b) = 2a + b
  CHECK(p.apply(0, std::vector<Elem>{1, 2}) == 0);
  CHECK(p.apply(0, std::vector<Elem>{3, 2}) == 2);
  FiniteAlgebra one[] = {corpus::s3()};
  CHECK(product_algebra(one).same_tables(corpus::s3().renamed(product_algebra(one).name())));
  FiniteAlgebra zz[] = {corpus::cyclic(2), corpus::cyclic(2)};
  auto          z    = product_algebra(zz);
  CHECK(z.table(2).entries()[0] == 0);
  CHECK(product_coordinates(zz, 3) == std::vector<Elem>{1, 1});
  CHECK_THROWS_AS(product_algebra(std::span<FiniteAlgebra const>{}), InputError);
}

TEST_CASE("generate_subalgebra") {
  FiniteAlgebra zz[] = {corpus::cyclic(2), corpus::cyclic(2)};
  auto          z    = product_algebra(zz);
  auto          sub  = generate_subalgebra(z, std::vector<Elem>{3});
  CHECK(std::set<Elem>(sub.elements.begin(), sub.elements.end()) == std::set<Elem>{0, 3});
  CHECK(generate_subalgebra(corpus::s2(), std::vector<Elem>{0}).elements
        == std::vector<Elem>{0});
  auto s = generate_subalgebra(corpus::s2_squared(), std::vector<Elem>{1, 2});
  CHECK(std::set<Elem>(s.elements.begin(), s.elements.end()) == std::set<Elem>{0, 1, 2});
  for (std::size_t i = 0; i < s.elements.size(); ++i) {
    std::vector<Elem> seeds{1, 2};
    CHECK(eval_term(corpus::s2_squared(), s.witnesses[i], seeds) == s.elements[i]);
  }
  CHECK_THROWS_AS(generate_subalgebra(corpus::s2(), std::vector<Elem>{}), InputError);
  // constants make the empty seed set legal
  CHECK(generate_subalgebra(corpus::s3(), std::vector<Elem>{}).elements.size() == 1);
}

TEST_CASE("quotient_algebra and kernel") {
  auto s3 = corpus::s3();
  auto q  = quotient_algebra(s3, Congruence::diagonal(6));
  CHECK(q.algebra.size() == 6);
  CHECK(is_homomorphism(s3, q.algebra, q.projection.map));
  CHECK(quotient_algebra(s3, Congruence::full(6)).algebra.size() == 1);

  auto p  = corpus::s2_squared();
  auto k  = kernel(std::vector<Elem>{0, 0, 1, 1});  // first coordinate
  CHECK(k.num_blocks() == 2);
  auto qp = quotient_algebra(p, k);
  CHECK(qp.algebra.same_tables(corpus::s2().renamed(qp.algebra.name())));
  CHECK(kernel(std::vector<Elem>{0, 1, 2}).is_diagonal());
  CHECK(kernel(std::vector<Elem>{1, 1, 1}).is_full());
  // 1 ~ 3 but 1∧2 = 0 and 3∧2 = 2
  auto bad = Congruence::from_labels(std::vector<Elem>{0, 1, 2, 1});
  CHECK_FALSE(is_congruence(p, bad));
  CHECK_THROWS_AS(quotient_algebra(p, bad), InputError);
}

TEST_CASE("Congruence canonical form") {
  auto c = Congruence::from_labels(std::vector<Elem>{5, 3, 5, 7});
  CHECK(c.encode() == "0.1.0.2");
  CHECK(c.blocks() == std::vector<std::vector<Elem>>{{0, 2}, {1}, {3}});
  auto d = Congruence::from_labels(std::vector<Elem>{0, 0, 1, 1});
  CHECK(c.meet(d).encode() == "0.1.2.3");
  CHECK(c.join(d).encode() == "0.0.0.0");
  CHECK(c.meet(d).refines(c));
}

TEST_CASE("satisfies_identity") {
  auto m = corpus::semilattice_signature();
  CHECK(satisfies_identity(corpus::s2(), parse_term("meet(x1,x2)", m, 2),
                           parse_term("meet(x2,x1)", m, 2)));
  CHECK_FALSE(satisfies_identity(corpus::left_zero(), parse_term("meet(x1,x2)", m, 2),
                                 parse_term("meet(x2,x1)", m, 2)));
  auto fa = falsifying_assignment(corpus::left_zero(), parse_term("meet(x1,x2)", m, 2),
                                  parse_term("meet(x2,x1)", m, 2));
  REQUIRE(fa);
  CHECK(*fa == std::vector<Elem>{0, 1});
  auto g = corpus::group_signature();
  CHECK(satisfies_identity(corpus::cyclic(2), parse_term("mul(x1,x1)", g, 1),
                           parse_term("e", g, 0)));
}

TEST_CASE("variety_membership") {
  Variety s2v({corpus::s2()});
  CHECK(variety_membership(corpus::s2_squared(), s2v));
  CHECK(variety_membership(corpus::trivial_semilattice(), s2v));
  auto r = check_membership(corpus::left_zero(), s2v);
  CHECK_FALSE(r.member);
  CHECK(r.failed_identity.has_value());

  Variety s3v({corpus::s3()});
  CHECK(variety_membership(corpus::cyclic(2), s3v));
  CHECK(variety_membership(corpus::cyclic(3), s3v));
  CHECK(variety_membership(corpus::s3_transposed(), s3v));
  CHECK_FALSE(variety_membership(corpus::cyclic(4), s3v));  // exponent 6 fails
  Variety z2v({corpus::cyclic(2)});
  CHECK_FALSE(variety_membership(corpus::cyclic(3), z2v));
  CHECK_FALSE(variety_membership(corpus::s3(), z2v));
}

TEST_CASE("variety_membership rejects a non-associative table") {
  auto m = corpus::semilattice_signature();
  // rock-paper-scissors: commutative, idempotent, not associative
  FiniteAlgebra rps("RPS", m, 3, {OpTable(2, 3, {0, 0, 2, 0, 1, 1, 2, 1, 2})});
  Variety       s2v({corpus::s2()});
  CHECK_FALSE(variety_membership(rps, s2v));
}
