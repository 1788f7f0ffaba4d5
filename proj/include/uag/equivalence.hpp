// Geometric and automorphic equivalence at bounded rank.
//
// All checks here run over the free algebras W(1)..W(n_max); rank 0 is never
// used for lattices. A positive answer means "no difference found up to
// n_max".

#ifndef UAG_EQUIVALENCE_HPP_
#define UAG_EQUIVALENCE_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "uag/algebra.hpp"
#include "uag/free_algebra.hpp"
#include "uag/geometry.hpp"
#include "uag/verbal.hpp"

namespace uag {

  struct LatticeComparison {
    std::size_t              rank = 0;
    std::size_t              size1 = 0;
    std::size_t              size2 = 0;
    std::vector<std::string> fingerprint1;
    std::vector<std::string> fingerprint2;

    bool equal() const {
      return fingerprint1 == fingerprint2;
    }
  };

  // A congruence on W(rank) that is closed for exactly one of the two
  // algebras.
  struct GeomWitness {
    std::size_t rank = 0;
    Congruence  congruence;
    bool        closed_for_first = false;
  };

  struct GeomResult {
    bool                           equivalent = true;
    std::size_t                    n_max      = 0;
    std::vector<LatticeComparison> lattices;
    std::optional<GeomWitness>     witness;
  };

  struct EquivalenceOptions {
    std::size_t point_cap   = Variety::default_cap;
    std::size_t lattice_cap = 1'000'000;
    // Run variety_membership on the inputs first.
    bool check_membership = true;
  };

  // Throws OutsideVariety if an algebra is not in v, CapExceeded on caps.
  GeomResult geom_equivalent(FiniteAlgebra const&      H1,
                             FiniteAlgebra const&      H2,
                             Variety const&            v,
                             std::size_t               n_max,
                             EquivalenceOptions const& opts = {});

  enum class Transport { forward, backward };

  // forward: T closed for H on B, returns σ⁻¹T (closed for H*).
  // backward: T closed for H*, returns σT (closed for H).
  // `target` is the point space of the algebra the result must be closed
  // for. Throws Error if the result is not closed there.
  ClosedCongruence transport_closed(PointSpace const&  target,
                                    Permutation const& sigma,
                                    Congruence const&  T,
                                    Transport          direction);

  struct ClosureBijection {
    std::size_t rank = 0;
    // index into Cl_H(W(rank)) -> index into Cl_{H*}(W(rank))
    std::vector<std::size_t> map;
  };

  struct HHstarReport {
    bool                          ok = true;
    std::string                   failure;
    std::vector<ClosureBijection> bijections;
    // homomorphism pairs (μ1, μ2, T) with τμ1 = τμ2 that were checked
    std::size_t coordination_checks = 0;
  };

  // Throws Error if ws fails Op2 up to n_max.
  HHstarReport verify_H_Hstar(FiniteAlgebra const&      H,
                              WordSystem const&         ws,
                              Variety const&            v,
                              std::size_t               n_max,
                              EquivalenceOptions const& opts = {});

  struct CorrespondenceReport {
    bool        ok = true;
    std::string failure;
  };

  // Conditions A-C for the transport T -> σ⁻¹T from Cl_{H1} to Cl_{H2star}:
  // (A) Id(H1) goes to Id(H2star), (B) every closed congruence goes to a
  // closed one, (C) [b]_T -> [σ⁻¹b]_{σ⁻¹T} is a well defined isomorphism
  // (W/T)* -> W/σ⁻¹T commuting with the natural epimorphisms from the Id
  // quotients.
  CorrespondenceReport verify_coordinate_correspondence(
      FiniteAlgebra const&      H1,
      FiniteAlgebra const&      H2star,
      WordSystem const&         ws,
      Variety const&            v,
      std::size_t               n_max,
      EquivalenceOptions const& opts = {});

  enum class Verdict { geometric, automorphic, refuted_at_bounds, exhausted };
  std::string to_string(Verdict v);

  struct EquivalenceCertificate {
    Verdict                   verdict = Verdict::exhausted;
    std::optional<WordSystem> word_system;
    std::size_t               n_max     = 0;
    std::size_t               depth_max = 0;
    // "table" when H2* equals H1 table by table, "lattice" when only the
    // closed congruence lattices agree.
    std::string                    match;
    std::vector<LatticeComparison> lattices;
    std::optional<GeomWitness>     witness;
    // First rank where |Cl_H1| != |Cl_H2|. No word system can repair this.
    std::optional<std::size_t> size_refutation_rank;
    std::size_t                candidates     = 0;
    std::size_t                candidates_op2 = 0;
    // candidates skipped because a free algebra or point cap was hit
    std::size_t candidates_capped = 0;
  };

  EquivalenceCertificate geom_certificate(FiniteAlgebra const&      H1,
                                          FiniteAlgebra const&      H2,
                                          Variety const&            v,
                                          std::size_t               n_max,
                                          EquivalenceOptions const& opts = {});

  // Search word systems W (per symbol: candidate_words to depth_max,
  // combined lexicographically, first symbol most significant) passing
  // Op1/Op2 up to n_max such that H1 is geometrically equivalent to H2^W.
  // Systems making H2^W equal to H1 table by table are preferred over
  // systems matching only by lattices.
  EquivalenceCertificate auto_equivalent_search(
      FiniteAlgebra const&      H1,
      FiniteAlgebra const&      H2,
      Variety const&            v,
      std::size_t               depth_max,
      std::size_t               n_max,
      EquivalenceOptions const& opts = {});

  struct FactCheck {
    std::string fact;
    std::string subject;
    bool        ok = true;
    std::string detail;
  };

  struct FactsReport {
    std::vector<FactCheck> checks;

    bool ok() const {
      for (auto const& c : checks) {
        if (!c.ok) {
          return false;
        }
      }
      return true;
    }
  };

  // Facts 1-3 (geometric implies automorphic, symmetry, transitivity) over
  // all pairs and triples of the corpus, every certificate re-verified.
  FactsReport verify_equivalence_facts(std::vector<FiniteAlgebra> const& corpus,
                                       Variety const&                    v,
                                       std::size_t                       depth_max,
                                       std::size_t                       n_max,
                                       EquivalenceOptions const&         opts = {});

}  // namespace uag

#endif  // UAG_EQUIVALENCE_HPP_
