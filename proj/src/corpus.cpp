#include "uag/corpus.hpp"

#include <algorithm>
#include <array>

namespace uag::corpus {

  Signature semilattice_signature() {
    return parse_signature("meet/2");
  }

  Signature group_signature() {
    return parse_signature("mul/2, inv/1, e/0");
  }

  namespace {
    FiniteAlgebra binary(std::string name, std::size_t n, auto f) {
      std::vector<Elem> entries;
      for (Elem a = 0; a < n; ++a) {
        for (Elem b = 0; b < n; ++b) {
          entries.push_back(static_cast<Elem>(f(a, b)));
        }
      }
      return FiniteAlgebra(std::move(name), semilattice_signature(), n,
                           {OpTable(2, n, std::move(entries))});
    }

    FiniteAlgebra group(std::string name, std::size_t n, auto mul, auto inv, Elem e) {
      std::vector<Elem> m, i;
      for (Elem a = 0; a < n; ++a) {
        for (Elem b = 0; b < n; ++b) {
          m.push_back(static_cast<Elem>(mul(a, b)));
        }
        i.push_back(static_cast<Elem>(inv(a)));
      }
      return FiniteAlgebra(std::move(name), group_signature(), n,
                           {OpTable(2, n, std::move(m)), OpTable(1, n, std::move(i)),
                            OpTable(0, n, {e})});
    }

    using Perm = std::array<Elem, 3>;

    std::vector<Perm> s3_elements() {
      std::vector<Perm> result;
      Perm              p{0, 1, 2};
      do {
        result.push_back(p);
      } while (std::next_permutation(p.begin(), p.end()));
      return result;
    }

    Elem index_of(std::vector<Perm> const& ps, Perm const& p) {
      return static_cast<Elem>(std::find(ps.begin(), ps.end(), p) - ps.begin());
    }
  }  // namespace

  FiniteAlgebra s2() {
    return binary("S2", 2, [](Elem a, Elem b) { return std::min(a, b); });
  }

  FiniteAlgebra s2_squared() {
    FiniteAlgebra f[] = {s2(), s2()};
    return product_algebra(f, "S2xS2");
  }

  FiniteAlgebra trivial_semilattice() {
    return binary("T1", 1, [](Elem, Elem) { return 0; });
  }

  FiniteAlgebra left_zero() {
    return binary("LZ2", 2, [](Elem a, Elem) { return a; });
  }

  FiniteAlgebra cyclic(std::size_t n) {
    return group(
        "Z" + std::to_string(n), n,
        [n](Elem a, Elem b) { return (a + b) % n; },
        [n](Elem a) { return (n - a) % n; },
        0);
  }

  FiniteAlgebra trivial_group() {
    auto g = cyclic(1);
    return g.renamed("E1");
  }

  FiniteAlgebra s3() {
    auto const ps = s3_elements();
    return group(
        "S3", ps.size(),
        [&](Elem a, Elem b) {
          Perm r;
          for (std::size_t i = 0; i < 3; ++i) {
            r[i] = ps[a][ps[b][i]];
          }
          return index_of(ps, r);
        },
        [&](Elem a) {
          Perm r;
          for (Elem i = 0; i < 3; ++i) {
            r[ps[a][i]] = i;
          }
          return index_of(ps, r);
        },
        0);
  }

  FiniteAlgebra s3_transposed() {
    auto const        g = s3();
    std::vector<Elem> m;
    for (Elem a = 0; a < g.size(); ++a) {
      for (Elem b = 0; b < g.size(); ++b) {
        m.push_back(g.table(0)(std::vector<Elem>{b, a}));
      }
    }
    return FiniteAlgebra("S3t", g.signature(), g.size(),
                         {OpTable(2, g.size(), std::move(m)), g.table(1), g.table(2)});
  }

  WordSystem opposite_groups() {
    auto const sig = group_signature();
    return WordSystem(sig,
                      {parse_term("mul(x2,x1)", sig, 2), parse_term("inv(x1)", sig, 1),
                       parse_term("e", sig, 0)});
  }

  std::vector<Suite> builtin() {
    std::vector<Suite> result;
    result.push_back(Suite{"var(S2)",
                           Variety({s2()}),
                           {s2(), s2_squared(), trivial_semilattice()},
                           2,
                           2,
                           {},
                           true});
    result.push_back(Suite{"var(Z2)",
                           Variety({cyclic(2)}),
                           {cyclic(2), [] {
                              FiniteAlgebra f[] = {cyclic(2), cyclic(2)};
                              return product_algebra(f, "Z2xZ2");
                            }(),
                            trivial_group()},
                           2,
                           2,
                           {},
                           true});
    result.push_back(Suite{"var(Z3)",
                           Variety({cyclic(3)}),
                           {cyclic(3), trivial_group()},
                           2,
                           1,
                           {},
                           true});
    result.push_back(Suite{"var(S3)",
                           Variety({s3()}),
                           {s3(), s3_transposed(), cyclic(2), cyclic(3), trivial_group()},
                           1,
                           1,
                           {opposite_groups()},
                           false});
    return result;
  }

}  // namespace uag::corpus
