// The Galois correspondence between equation sets T ⊆ B² on a free algebra B
// and point sets R ⊆ Hom(B, H):
//
//   T' = {μ : T ⊆ ker μ}          (solutions)
//   R' = ⋂_{μ ∈ R} ker μ          (point_congruence; R = ∅ gives B²)
//   T'' = (T')'                   (closure)
//
// A point is identified with its tuple of generator images in H^k; points
// are indexed by the lexicographic order of these tuples (x1 most
// significant), which is also the lexicographic order of the maps.

#ifndef UAG_GEOMETRY_HPP_
#define UAG_GEOMETRY_HPP_

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "uag/algebra.hpp"
#include "uag/free_algebra.hpp"

namespace uag {

  // Finite set of pairs of elements of B, each stored with the smaller
  // element first, sorted and without repetition.
  class EquationSet {
   public:
    EquationSet() = default;
    explicit EquationSet(std::vector<std::pair<Elem, Elem>> pairs);
    static EquationSet of(Congruence const& c);

    std::span<std::pair<Elem, Elem> const> pairs() const noexcept {
      return _pairs;
    }
    std::size_t size() const noexcept {
      return _pairs.size();
    }
    bool contains(Elem a, Elem b) const;
    bool subset_of(Congruence const& c) const;

    bool operator==(EquationSet const&) const = default;

   private:
    std::vector<std::pair<Elem, Elem>> _pairs;
  };

  // Hom(B, H) with the image of every element under every point.
  class PointSpace {
   public:
    // Throws CapExceeded if |H|^rank > point_cap, and OutsideVariety if some
    // extension of generator images fails to be a homomorphism (then H is
    // not in the variety of B).
    PointSpace(std::shared_ptr<FreeAlgebra const> B,
               FiniteAlgebra                      H,
               std::size_t                        point_cap = Variety::default_cap,
               bool                               verify    = true);

    FreeAlgebra const& free_algebra() const noexcept {
      return *_B;
    }
    std::shared_ptr<FreeAlgebra const> const& free_algebra_ptr() const noexcept {
      return _B;
    }
    FiniteAlgebra const& target() const noexcept {
      return _H;
    }
    std::size_t size() const noexcept {
      return _num_points;
    }
    std::vector<Elem>     tuple(std::size_t point) const;
    std::span<Elem const> image(std::size_t point) const {
      return std::span<Elem const>(_images).subspan(point * _B->size(), _B->size());
    }
    Congruence kernel(std::size_t point) const {
      return uag::kernel(image(point));
    }

   private:
    std::shared_ptr<FreeAlgebra const> _B;
    FiniteAlgebra                      _H;
    std::size_t                        _num_points = 0;
    std::vector<Elem>                  _images;
  };

  // An H-closed congruence. Equality is equality of the closed point sets.
  struct ClosedCongruence {
    std::vector<std::size_t>   points;     // T', sorted
    Congruence                 partition;  // T'' = R'
    std::optional<EquationSet> generated_by;

    bool operator==(ClosedCongruence const& that) const {
      return points == that.points;
    }
  };

  std::vector<std::size_t> solutions(EquationSet const& T, PointSpace const& S);
  // Points whose kernel contains c.
  std::vector<std::size_t> solutions(Congruence const& c, PointSpace const& S);

  Congruence point_congruence(std::span<std::size_t const> points,
                              PointSpace const&            S);

  ClosedCongruence closure(EquationSet const& T, PointSpace const& S);
  ClosedCongruence closure(Congruence const& c, PointSpace const& S);

  // T = T'' as subsets of B² (so T must contain the diagonal and be
  // symmetric to qualify).
  bool is_closed(EquationSet const& T, PointSpace const& S);
  bool is_closed(Congruence const& c, PointSpace const& S);

  struct ClosedLattice {
    // Finest first (most blocks), ties by label vector; elements.front() is
    // Id(H, X) and elements.back() is B².
    std::vector<ClosedCongruence> elements;

    std::size_t size() const noexcept {
      return elements.size();
    }
    std::optional<std::size_t> find(Congruence const& c) const;
    // i ≤ j iff elements[i].partition ⊆ elements[j].partition
    bool leq(std::size_t i, std::size_t j) const {
      return elements[i].partition.refines(elements[j].partition);
    }
  };

  // All intersections of point kernels, including B² for the empty family.
  // Throws CapExceeded if the lattice grows beyond `cap` elements.
  ClosedLattice closed_lattice(PointSpace const& S,
                               std::size_t       cap = 1'000'000);

  // Covering pairs (lower, upper) of the refinement order.
  std::vector<std::pair<std::size_t, std::size_t>> hasse_edges(
      ClosedLattice const& L);

  // Id(H, X): the intersection of the kernels of all points.
  ClosedCongruence id_congruence(PointSpace const& S);

  // Canonical encodings of the partitions, sorted.
  std::vector<std::string> lattice_fingerprint(ClosedLattice const& L);

}  // namespace uag

#endif  // UAG_GEOMETRY_HPP_
