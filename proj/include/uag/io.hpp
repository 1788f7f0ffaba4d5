// JSON and DOT input/output.
//
// Algebra file:
//   {"signature": [{"name": "meet", "arity": 2}],
//    "algebras": [{"name": "S2", "size": 2, "ops": {"meet": [[0,0],[0,1]]}}],
//    "identities": ["meet(x1,x2) = meet(x2,x1)"]}          (optional)
// Tables are nested row-major arrays indexed in argument order; constants
// are scalars. A variety file has the same shape, its algebras being the
// generators.
//
// Word system file:
//   {"words": {"mul": "mul(x2,x1)", "inv": "inv(x1)", "e": "e"}}

#ifndef UAG_IO_HPP_
#define UAG_IO_HPP_

#include <string>
#include <vector>

#include "json.hpp"

#include "uag/algebra.hpp"
#include "uag/equivalence.hpp"
#include "uag/free_algebra.hpp"
#include "uag/geometry.hpp"
#include "uag/verbal.hpp"

namespace uag::io {

  using Json = nlohmann::ordered_json;

  struct AlgebraFile {
    Signature                  signature;
    std::vector<FiniteAlgebra> algebras;
    std::vector<Identity>      identities;
  };

  // All throw InputError (ParseError for bad terms) with a message naming
  // the offending entry.
  AlgebraFile parse_algebra_file(std::string const& text);
  AlgebraFile read_algebra_file(std::string const& path);
  Variety     read_variety(std::string const& path, std::size_t cap = Variety::default_cap);
  WordSystem  parse_words(std::string const& text, Signature const& sig);
  WordSystem  read_words(std::string const& path, Signature const& sig);

  Json to_json(FiniteAlgebra const& A);
  Json algebra_file_json(Signature const&                  sig,
                         std::vector<FiniteAlgebra> const& algebras);
  Json to_json(WordSystem const& ws);
  Json to_json(FreeAlgebra const& B);
  Json to_json(Congruence const& c, FreeAlgebra const& B);
  Json lattice_json(ClosedLattice const& L, PointSpace const& S);
  std::string lattice_dot(ClosedLattice const& L, PointSpace const& S);
  Json to_json(EquivalenceCertificate const& cert, Variety const& v);
  Json to_json(Op2Result const& r, WordSystem const& ws, Variety const& v);

  // Two-space indented, trailing newline.
  std::string dump(Json const& j);

}  // namespace uag::io

#endif  // UAG_IO_HPP_
