// Small algebras used by the verification suite and the tests.
//
// Group signature: mul/2, inv/1, e/0. Semilattice signature: meet/2.

#ifndef UAG_CORPUS_HPP_
#define UAG_CORPUS_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "uag/algebra.hpp"
#include "uag/free_algebra.hpp"
#include "uag/verbal.hpp"

namespace uag::corpus {

  Signature semilattice_signature();
  Signature group_signature();

  // ({0, 1}, min)
  FiniteAlgebra s2();
  FiniteAlgebra s2_squared();
  FiniteAlgebra trivial_semilattice();
  // x y = x on {0, 1}; not a semilattice.
  FiniteAlgebra left_zero();

  // Z_n under addition.
  FiniteAlgebra cyclic(std::size_t n);
  FiniteAlgebra trivial_group();
  // Permutations of {0, 1, 2} in lexicographic order of their images,
  // (p q)(i) = p(q(i)).
  FiniteAlgebra s3();
  // S3 with the multiplication table transposed.
  FiniteAlgebra s3_transposed();

  // mul -> mul(x2, x1), inv -> inv(x1), e -> e
  WordSystem opposite_groups();

  struct Suite {
    std::string                name;
    Variety                    variety;
    std::vector<FiniteAlgebra> algebras;
    std::size_t                n_max;
    std::size_t                depth;
    // Extra word systems checked besides those found by enumeration.
    std::vector<WordSystem> systems;
    // Enumerate every word system up to `depth` passing Op2.
    bool enumerate = true;
  };

  // var(S2), var(Z2), var(Z3), var(S3).
  std::vector<Suite> builtin();

}  // namespace uag::corpus

#endif  // UAG_CORPUS_HPP_
