#include "doctest.h"

#include <set>

#include "uag/corpus.hpp"
#include "uag/error.hpp"
#include "uag/free_algebra.hpp"

using namespace uag;

namespace {
  Elem img(FreeAlgebra const& B, std::string const& t) {
    return B.term_image(parse_term(t, B.signature(), B.rank()));
  }
}  // namespace

TEST_CASE("build_free examples") {
  Variety s2v({corpus::s2()});
  CHECK(s2v.free(1)->size() == 1);
  auto B = s2v.free(2);
  REQUIRE(B->size() == 3);
  std::set<std::string> ws;
  for (auto const& t : B->witnesses()) {
    ws.insert(t.to_string(B->signature()));
  }
  CHECK(ws == std::set<std::string>{"x1", "x2", "meet(x1,x2)"});

  Variety z2v({corpus::cyclic(2)});
  auto    Z = z2v.free(1);
  REQUIRE(Z->size() == 2);
  CHECK(img(*Z, "e") != img(*Z, "x1"));
}

TEST_CASE("free_rank_sizes against closed forms") {
  Variety s2v({corpus::s2()});
  auto    r = free_rank_sizes(s2v, 4);
  for (std::size_t k = 1; k <= 4; ++k) {
    CHECK(r.sizes[k - 1] == (std::size_t{1} << k) - 1);  // nonempty subsets
  }
  CHECK(r.flagged.empty());

  Variety z2v({corpus::cyclic(2)});
  auto    z = free_rank_sizes(z2v, 3);
  CHECK(z.sizes == std::vector<std::size_t>{2, 4, 8});

  Variety t({corpus::trivial_semilattice()});
  auto    tr = free_rank_sizes(t, 2);
  CHECK(tr.sizes == std::vector<std::size_t>{1, 1});
  CHECK(tr.flagged == std::vector<std::size_t>{2});

  // Z3: free of rank k is Z3^k
  Variety z3v({corpus::cyclic(3)});
  CHECK(free_rank_sizes(z3v, 2).sizes == std::vector<std::size_t>{3, 9});
}

TEST_CASE("var(S3) free algebra of rank 1") {
  Variety s3v({corpus::s3()});
  CHECK(s3v.free(1)->size() == 6);  // x^0..x^5
}

TEST_CASE("rank 0 needs constants") {
  Variety s2v({corpus::s2()});
  CHECK_THROWS_AS(s2v.free(0), InputError);
  Variety z2v({corpus::cyclic(2)});
  CHECK(z2v.free(0)->size() == 1);
}

TEST_CASE("cap exceeded reports the partial size") {
  Variety s3v({corpus::s3()}, {}, 50);
  try {
    (void)s3v.free(2);
    FAIL("expected CapExceeded");
  } catch (CapExceeded const& e) {
    CHECK(e.reached() > 50);
  }
}

TEST_CASE("term_image examples") {
  Variety s2v({corpus::s2()});
  auto    B = s2v.free(2);
  CHECK(img(*B, "meet(x2,x1)") == img(*B, "meet(x1,x2)"));
  CHECK(img(*B, "meet(x1,meet(x1,x2))") == img(*B, "meet(x1,x2)"));
  CHECK(img(*B, "meet(x1,x1)") == img(*B, "x1"));
  Variety z2v({corpus::cyclic(2)});
  auto    Z = z2v.free(1);
  CHECK(img(*Z, "mul(x1,x1)") == img(*Z, "e"));
  CHECK_THROWS_AS(B->term_image(parse_term("x3", B->signature(), 3)), InputError);
}

TEST_CASE("witnesses re-evaluate to their elements") {
  std::vector<std::pair<Variety, std::size_t>> vs;
  vs.emplace_back(Variety({corpus::s2()}), 3);
  vs.emplace_back(Variety({corpus::cyclic(2)}), 2);
  vs.emplace_back(Variety({corpus::cyclic(3)}), 2);
  vs.emplace_back(Variety({corpus::s3()}), 1);
  for (auto const& [v, up_to] : vs) {
    for (std::size_t k = 1; k <= up_to; ++k) {
      auto B = v.free(k);
      for (std::size_t b = 0; b < B->size(); ++b) {
        CHECK(B->term_image(B->witness(b)) == b);
      }
      for (std::size_t i = 0; i < k; ++i) {
        CHECK(B->witness(B->generators()[i]) == Term::var(i + 1));
      }
      // witnesses have nondecreasing depth
      for (std::size_t b = 1; b < B->size(); ++b) {
        CHECK(B->witness(b - 1).depth() <= B->witness(b).depth());
      }
    }
  }
}

TEST_CASE("term_image commutes with operations") {
  Variety s3v({corpus::s3()});
  auto    B   = s3v.free(1);
  auto    sig = B->signature();
  auto    ts  = enumerate_terms(sig, 1, 2);
  for (auto const& a : ts) {
    for (auto const& b : ts) {
      auto t = Term::apply(sig, 0, {a, b});
      std::vector<Elem> args{B->term_image(a), B->term_image(b)};
      CHECK(B->term_image(t) == B->algebra().apply(0, args));
    }
  }
}

TEST_CASE("extend_hom examples") {
  Variety s2v({corpus::s2()});
  auto    B = s2v.free(2);
  auto    g = B->generators();
  auto    id = B->extend_hom(B->algebra(), g);
  for (std::size_t b = 0; b < B->size(); ++b) {
    CHECK(id.map[b] == b);
  }
  auto h = B->extend_hom(corpus::s2(), std::vector<Elem>{1, 0});
  CHECK(h(img(*B, "x1")) == 1);
  CHECK(h(img(*B, "x2")) == 0);
  CHECK(h(img(*B, "meet(x1,x2)")) == 0);

  Variety z2v({corpus::cyclic(2)});
  auto    Z  = z2v.free(1);
  auto    hz = Z->extend_hom(corpus::cyclic(2), std::vector<Elem>{1});
  CHECK(hz(img(*Z, "e")) == 0);
  CHECK(hz(img(*Z, "x1")) == 1);

  CHECK_THROWS_AS(B->extend_hom(corpus::left_zero(), std::vector<Elem>{0, 1}), OutsideVariety);
}

TEST_CASE("universal property: hom_set is exactly the extensions") {
  Variety s2v({corpus::s2()});
  auto    B = s2v.free(2);
  for (auto const& H : {corpus::s2(), corpus::trivial_semilattice()}) {
    auto hs = hom_set(B->algebra(), H);
    CHECK(hs.size() == H.size() * H.size());
    std::vector<std::size_t> idx(2, 0);
    do {
      std::vector<Elem> images(idx.begin(), idx.end());
      auto              h = B->extend_hom(H, images);
      CHECK(is_homomorphism(B->algebra(), H, h.map));
      bool found = false;
      for (auto const& x : hs) {
        found = found || x.map == h.map;
      }
      CHECK(found);
    } while (next_tuple(idx, H.size()));
  }
  // a 3-element chain is also in var(S2)
  FiniteAlgebra c3("C3", corpus::semilattice_signature(), 3,
                   {OpTable(2, 3, {0, 0, 0, 0, 1, 1, 0, 1, 2})});
  CHECK(hom_set(B->algebra(), c3).size() == 9);
}

TEST_CASE("declared identities are verified") {
  auto m = corpus::semilattice_signature();
  Identity comm{parse_term("meet(x1,x2)", m, 2), parse_term("meet(x2,x1)", m, 2)};
  CHECK_NOTHROW(Variety({corpus::s2()}, {comm}));
  CHECK_THROWS_AS(Variety({corpus::left_zero()}, {comm}), InputError);
  CHECK_THROWS_AS(Variety({}), InputError);
  CHECK_THROWS_AS(Variety({corpus::s2(), corpus::cyclic(2)}), InputError);
}
