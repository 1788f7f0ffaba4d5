#include "uag/geometry.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "uag/error.hpp"

namespace uag {

  ////////////////////////////////////////////////////////////////////////
  // EquationSet
  ////////////////////////////////////////////////////////////////////////

  EquationSet::EquationSet(std::vector<std::pair<Elem, Elem>> pairs)
      : _pairs(std::move(pairs)) {
    for (auto& [a, b] : _pairs) {
      if (b < a) {
        std::swap(a, b);
      }
    }
    std::sort(_pairs.begin(), _pairs.end());
    _pairs.erase(std::unique(_pairs.begin(), _pairs.end()), _pairs.end());
  }

  EquationSet EquationSet::of(Congruence const& c) {
    std::vector<std::pair<Elem, Elem>> pairs;
    for (auto const& block : c.blocks()) {
      for (std::size_t i = 0; i < block.size(); ++i) {
        for (std::size_t j = i; j < block.size(); ++j) {
          pairs.emplace_back(block[i], block[j]);
        }
      }
    }
    return EquationSet(std::move(pairs));
  }

  bool EquationSet::contains(Elem a, Elem b) const {
    if (b < a) {
      std::swap(a, b);
    }
    return std::binary_search(_pairs.begin(), _pairs.end(), std::make_pair(a, b));
  }

  bool EquationSet::subset_of(Congruence const& c) const {
    return std::all_of(_pairs.begin(), _pairs.end(), [&](auto const& p) {
      return c.related(p.first, p.second);
    });
  }

  ////////////////////////////////////////////////////////////////////////
  // PointSpace
  ////////////////////////////////////////////////////////////////////////

  PointSpace::PointSpace(std::shared_ptr<FreeAlgebra const> B,
                         FiniteAlgebra                      H,
                         std::size_t                        point_cap,
                         bool                               verify)
      : _B(std::move(B)), _H(std::move(H)) {
    if (!(_B->signature() == _H.signature())) {
      throw InputError("algebra \"" + _H.name()
                       + "\" has a different signature from the variety");
    }
    std::size_t const k = _B->rank();
    _num_points         = 1;
    for (std::size_t i = 0; i < k; ++i) {
      _num_points *= _H.size();
      if (_num_points > point_cap) {
        throw CapExceeded("too many points in Hom(W(" + std::to_string(k)
                              + "), " + _H.name() + ")",
                          _num_points);
      }
    }
    _images.reserve(_num_points * _B->size());
    std::vector<std::size_t> idx(k, 0);
    std::vector<Elem>        images(k);
    for (std::size_t p = 0; p < _num_points; ++p) {
      std::copy(idx.begin(), idx.end(), images.begin());
      std::vector<Elem> map;
      if (verify) {
        map = _B->extend_hom(_H, images).map;
      } else {
        map = _B->extend(_H, images);
      }
      _images.insert(_images.end(), map.begin(), map.end());
      next_tuple(idx, _H.size());
    }
  }

  std::vector<Elem> PointSpace::tuple(std::size_t point) const {
    std::vector<Elem> result(_B->rank());
    for (std::size_t i = result.size(); i-- > 0;) {
      result[i] = static_cast<Elem>(point % _H.size());
      point /= _H.size();
    }
    return result;
  }

  ////////////////////////////////////////////////////////////////////////
  // The Galois maps
  ////////////////////////////////////////////////////////////////////////

  std::vector<std::size_t> solutions(EquationSet const& T, PointSpace const& S) {
    std::vector<std::size_t> result;
    for (std::size_t p = 0; p < S.size(); ++p) {
      auto img = S.image(p);
      if (std::all_of(T.pairs().begin(), T.pairs().end(), [&](auto const& e) {
            return img[e.first] == img[e.second];
          })) {
        result.push_back(p);
      }
    }
    return result;
  }

  std::vector<std::size_t> solutions(Congruence const& c, PointSpace const& S) {
    // μ is a solution iff μ is constant on every block; compare each element
    // with the least element of its block.
    std::vector<Elem> rep(c.num_blocks());
    for (std::size_t i = c.size(); i-- > 0;) {
      rep[c.label(i)] = static_cast<Elem>(i);
    }
    std::vector<std::size_t> result;
    for (std::size_t p = 0; p < S.size(); ++p) {
      auto img = S.image(p);
      bool ok  = true;
      for (std::size_t i = 0; i < c.size() && ok; ++i) {
        ok = img[i] == img[rep[c.label(i)]];
      }
      if (ok) {
        result.push_back(p);
      }
    }
    return result;
  }

  Congruence point_congruence(std::span<std::size_t const> points,
                              PointSpace const&            S) {
    std::size_t const n      = S.free_algebra().size();
    Congruence        result = Congruence::full(n);
    for (auto p : points) {
      if (p >= S.size()) {
        throw InputError("point index out of range");
      }
      result = result.meet(S.kernel(p));
    }
    return result;
  }

  ClosedCongruence closure(EquationSet const& T, PointSpace const& S) {
    for (auto const& [a, b] : T.pairs()) {
      if (b >= S.free_algebra().size()) {
        throw InputError("equation mentions an element outside B");
      }
    }
    ClosedCongruence result;
    result.points       = solutions(T, S);
    result.partition    = point_congruence(result.points, S);
    result.generated_by = T;
    return result;
  }

  ClosedCongruence closure(Congruence const& c, PointSpace const& S) {
    ClosedCongruence result;
    result.points    = solutions(c, S);
    result.partition = point_congruence(result.points, S);
    return result;
  }

  bool is_closed(EquationSet const& T, PointSpace const& S) {
    return EquationSet::of(closure(T, S).partition) == T;
  }

  bool is_closed(Congruence const& c, PointSpace const& S) {
    return closure(c, S).partition == c;
  }

  ////////////////////////////////////////////////////////////////////////
  // Lattices
  ////////////////////////////////////////////////////////////////////////

  namespace {
    struct LabelHash {
      std::size_t operator()(std::vector<Elem> const& v) const noexcept {
        std::size_t h = 0xcbf29ce484222325ULL;
        for (Elem e : v) {
          h ^= e;
          h *= 0x100000001b3ULL;
        }
        return h;
      }
    };
  }  // namespace

  ClosedLattice closed_lattice(PointSpace const& S, std::size_t cap) {
    std::size_t const n = S.free_algebra().size();
    std::vector<Congruence> found;
    std::unordered_set<std::vector<Elem>, LabelHash> seen;
    auto add = [&](Congruence c) {
      std::vector<Elem> key(c.labels().begin(), c.labels().end());
      if (seen.insert(std::move(key)).second) {
        if (found.size() >= cap) {
          throw CapExceeded("closed congruence lattice too large", found.size());
        }
        found.push_back(std::move(c));
      }
    };
    add(Congruence::full(n));
    for (std::size_t p = 0; p < S.size(); ++p) {
      add(S.kernel(p));
    }
    // Close under pairwise intersection; every new element is met with
    // everything found before it.
    for (std::size_t i = 0; i < found.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        add(found[i].meet(found[j]));
      }
    }
    std::sort(found.begin(), found.end(), [](auto const& a, auto const& b) {
      if (a.num_blocks() != b.num_blocks()) {
        return a.num_blocks() > b.num_blocks();
      }
      return a < b;
    });
    ClosedLattice L;
    for (auto& c : found) {
      ClosedCongruence cc;
      cc.points    = solutions(c, S);
      cc.partition = std::move(c);
      L.elements.push_back(std::move(cc));
    }
    return L;
  }

  std::optional<std::size_t> ClosedLattice::find(Congruence const& c) const {
    for (std::size_t i = 0; i < elements.size(); ++i) {
      if (elements[i].partition == c) {
        return i;
      }
    }
    return std::nullopt;
  }

  std::vector<std::pair<std::size_t, std::size_t>> hasse_edges(
      ClosedLattice const& L) {
    std::size_t const              m = L.size();
    std::vector<std::vector<bool>> less(m, std::vector<bool>(m, false));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        less[i][j] = i != j && L.leq(i, j);
      }
    }
    std::vector<std::pair<std::size_t, std::size_t>> result;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        if (!less[i][j]) {
          continue;
        }
        bool covered = true;
        for (std::size_t k = 0; k < m && covered; ++k) {
          covered = !(less[i][k] && less[k][j]);
        }
        if (covered) {
          result.emplace_back(i, j);
        }
      }
    }
    return result;
  }

  ClosedCongruence id_congruence(PointSpace const& S) {
    std::vector<std::size_t> all(S.size());
    for (std::size_t p = 0; p < all.size(); ++p) {
      all[p] = p;
    }
    ClosedCongruence result;
    result.partition = point_congruence(all, S);
    result.points    = solutions(result.partition, S);
    return result;
  }

  std::vector<std::string> lattice_fingerprint(ClosedLattice const& L) {
    std::vector<std::string> result;
    for (auto const& e : L.elements) {
      result.push_back(e.partition.encode());
    }
    std::sort(result.begin(), result.end());
    return result;
  }

}  // namespace uag
