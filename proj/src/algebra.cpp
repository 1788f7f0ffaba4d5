#include "uag/algebra.hpp"

#include <algorithm>
#include <numeric>

#include "closure.hpp"
#include "uag/error.hpp"

namespace uag {

  namespace {
    std::size_t checked_power(std::size_t base, std::size_t exp) {
      std::size_t result = 1;
      for (std::size_t i = 0; i < exp; ++i) {
        if (base != 0 && result > (std::size_t(1) << 40) / base) {
          throw CapExceeded("operation table too large", result);
        }
        result *= base;
      }
      return result;
    }
  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // OpTable / FiniteAlgebra
  ////////////////////////////////////////////////////////////////////////

  OpTable::OpTable(std::size_t arity, std::size_t size, std::vector<Elem> entries)
      : _arity(arity), _size(size), _entries(std::move(entries)) {
    if (_entries.size() != checked_power(size, arity)) {
      throw InputError("operation table of arity " + std::to_string(arity)
                       + " on " + std::to_string(size) + " elements needs "
                       + std::to_string(checked_power(size, arity))
                       + " entries, got " + std::to_string(_entries.size()));
    }
    for (Elem e : _entries) {
      if (e >= size) {
        throw InputError("table entry " + std::to_string(e)
                         + " outside the carrier of size "
                         + std::to_string(size));
      }
    }
  }

  FiniteAlgebra::FiniteAlgebra(std::string          name,
                               Signature            sig,
                               std::size_t          size,
                               std::vector<OpTable> tables)
      : _name(std::move(name)),
        _sig(std::move(sig)),
        _size(size),
        _tables(std::move(tables)) {
    if (_size == 0) {
      throw InputError("algebra \"" + _name + "\" has an empty carrier");
    }
    if (_tables.size() != _sig.size()) {
      throw InputError("algebra \"" + _name + "\" has "
                       + std::to_string(_tables.size())
                       + " tables for a signature of "
                       + std::to_string(_sig.size()) + " symbols");
    }
    for (std::size_t w = 0; w < _sig.size(); ++w) {
      if (_tables[w].arity() != _sig[w].arity || _tables[w].size() != _size) {
        throw InputError("algebra \"" + _name + "\": table for \""
                         + _sig[w].name + "\" has the wrong shape");
      }
    }
  }

  FiniteAlgebra FiniteAlgebra::renamed(std::string name) const {
    FiniteAlgebra result = *this;
    result._name         = std::move(name);
    return result;
  }

  ////////////////////////////////////////////////////////////////////////
  // Congruence
  ////////////////////////////////////////////////////////////////////////

  namespace {
    template <typename T>
    std::pair<std::vector<Elem>, std::size_t> canonical(std::span<T const> in) {
      std::vector<Elem> out(in.size());
      // first-occurrence relabelling; labels can be arbitrary so use a map
      std::vector<std::pair<T, Elem>> seen;
      std::size_t                     next = 0;
      // Labels are usually small; fall back to sorting for large ones.
      T const max_label = in.empty() ? T(0) : *std::max_element(in.begin(), in.end());
      if (static_cast<std::size_t>(max_label) < 4 * in.size() + 16) {
        std::vector<Elem> relabel(static_cast<std::size_t>(max_label) + 1,
                                  static_cast<Elem>(-1));
        for (std::size_t i = 0; i < in.size(); ++i) {
          auto& r = relabel[static_cast<std::size_t>(in[i])];
          if (r == static_cast<Elem>(-1)) {
            r = static_cast<Elem>(next++);
          }
          out[i] = r;
        }
      } else {
        std::unordered_map<T, Elem> relabel;
        for (std::size_t i = 0; i < in.size(); ++i) {
          auto [it, inserted] = relabel.emplace(in[i], static_cast<Elem>(next));
          if (inserted) {
            ++next;
          }
          out[i] = it->second;
        }
      }
      return {std::move(out), next};
    }

    // Union-find with path halving.
    struct UnionFind {
      explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
      }
      std::size_t find(std::size_t a) {
        while (parent[a] != a) {
          parent[a] = parent[parent[a]];
          a         = parent[a];
        }
        return a;
      }
      void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a < b) {
          parent[b] = a;
        } else if (b < a) {
          parent[a] = b;
        }
      }
      std::vector<std::size_t> parent;
    };
  }  // namespace

  Congruence Congruence::from_labels(std::span<Elem const> labels) {
    Congruence c;
    std::tie(c._labels, c._num_blocks) = canonical(labels);
    return c;
  }

  Congruence Congruence::from_labels(std::span<std::size_t const> labels) {
    Congruence c;
    std::tie(c._labels, c._num_blocks) = canonical(labels);
    return c;
  }

  Congruence Congruence::diagonal(std::size_t n) {
    Congruence c;
    c._labels.resize(n);
    std::iota(c._labels.begin(), c._labels.end(), 0);
    c._num_blocks = n;
    return c;
  }

  Congruence Congruence::full(std::size_t n) {
    Congruence c;
    c._labels.assign(n, 0);
    c._num_blocks = n == 0 ? 0 : 1;
    return c;
  }

  Congruence Congruence::generated_by(
      std::size_t                            n,
      std::span<std::pair<Elem, Elem> const> pairs) {
    UnionFind uf(n);
    for (auto [a, b] : pairs) {
      if (a >= n || b >= n) {
        throw InputError("pair element outside the carrier");
      }
      uf.unite(a, b);
    }
    std::vector<std::size_t> roots(n);
    for (std::size_t i = 0; i < n; ++i) {
      roots[i] = uf.find(i);
    }
    return from_labels(std::span<std::size_t const>(roots));
  }

  std::vector<std::vector<Elem>> Congruence::blocks() const {
    std::vector<std::vector<Elem>> result(_num_blocks);
    for (std::size_t i = 0; i < _labels.size(); ++i) {
      result[_labels[i]].push_back(static_cast<Elem>(i));
    }
    return result;
  }

  bool Congruence::refines(Congruence const& that) const {
    if (size() != that.size()) {
      throw InputError("comparing congruences on different carriers");
    }
    // this ⊆ that iff each block of this lies in one block of that
    std::vector<Elem> image(_num_blocks, static_cast<Elem>(-1));
    for (std::size_t i = 0; i < _labels.size(); ++i) {
      Elem& img = image[_labels[i]];
      if (img == static_cast<Elem>(-1)) {
        img = that._labels[i];
      } else if (img != that._labels[i]) {
        return false;
      }
    }
    return true;
  }

  Congruence Congruence::meet(Congruence const& that) const {
    if (size() != that.size()) {
      throw InputError("meet of congruences on different carriers");
    }
    std::vector<std::size_t> pair_label(_labels.size());
    std::size_t const        stride = std::max<std::size_t>(that._num_blocks, 1);
    for (std::size_t i = 0; i < _labels.size(); ++i) {
      pair_label[i] = _labels[i] * stride + that._labels[i];
    }
    return from_labels(std::span<std::size_t const>(pair_label));
  }

  Congruence Congruence::join(Congruence const& that) const {
    if (size() != that.size()) {
      throw InputError("join of congruences on different carriers");
    }
    UnionFind                uf(size());
    std::vector<std::size_t> first_this(_num_blocks, size());
    std::vector<std::size_t> first_that(that._num_blocks, size());
    for (std::size_t i = 0; i < size(); ++i) {
      auto& f = first_this[_labels[i]];
      if (f == size()) {
        f = i;
      } else {
        uf.unite(f, i);
      }
      auto& g = first_that[that._labels[i]];
      if (g == size()) {
        g = i;
      } else {
        uf.unite(g, i);
      }
    }
    std::vector<std::size_t> roots(size());
    for (std::size_t i = 0; i < size(); ++i) {
      roots[i] = uf.find(i);
    }
    return from_labels(std::span<std::size_t const>(roots));
  }

  Congruence Congruence::pullback(std::span<Elem const> f) const {
    std::vector<Elem> labels(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
      labels[i] = _labels.at(f[i]);
    }
    return from_labels(std::span<Elem const>(labels));
  }

  std::string Congruence::encode() const {
    std::string result;
    for (std::size_t i = 0; i < _labels.size(); ++i) {
      if (i != 0) {
        result += '.';
      }
      result += std::to_string(_labels[i]);
    }
    return result;
  }

  ////////////////////////////////////////////////////////////////////////
  // Evaluation and homomorphisms
  ////////////////////////////////////////////////////////////////////////

  Elem eval_term(FiniteAlgebra const&  A,
                 Term const&           t,
                 std::span<Elem const> asg) {
    if (t.is_var()) {
      if (t.var_index() > asg.size()) {
        throw InputError("unmapped variable x" + std::to_string(t.var_index()));
      }
      Elem a = asg[t.var_index() - 1];
      if (a >= A.size()) {
        throw InputError("assignment value outside the carrier");
      }
      return a;
    }
    auto args = t.args();
    if (args.size() <= 4) {
      Elem vals[4];
      for (std::size_t i = 0; i < args.size(); ++i) {
        vals[i] = eval_term(A, args[i], asg);
      }
      return A.apply(t.symbol(), std::span<Elem const>(vals, args.size()));
    }
    std::vector<Elem> vals(args.size());
    for (std::size_t i = 0; i < args.size(); ++i) {
      vals[i] = eval_term(A, args[i], asg);
    }
    return A.apply(t.symbol(), vals);
  }

  namespace {
    void check_map(FiniteAlgebra const& A,
                   FiniteAlgebra const& B,
                   std::span<Elem const> map) {
      if (map.size() != A.size()) {
        throw InputError("map has " + std::to_string(map.size())
                         + " entries but the source has "
                         + std::to_string(A.size()) + " elements");
      }
      if (!(A.signature() == B.signature())) {
        throw InputError("algebras have different signatures");
      }
      for (Elem e : map) {
        if (e >= B.size()) {
          throw InputError("map value outside the target carrier");
        }
      }
    }
  }  // namespace

  std::optional<HomViolation> find_hom_violation(FiniteAlgebra const&  A,
                                                 FiniteAlgebra const&  B,
                                                 std::span<Elem const> map) {
    check_map(A, B, map);
    std::vector<Elem> image;
    for (std::size_t w = 0; w < A.signature().size(); ++w) {
      OpTable const&           ta = A.table(w);
      OpTable const&           tb = B.table(w);
      std::size_t const        k  = ta.arity();
      std::vector<std::size_t> idx(k, 0);
      image.resize(k);
      std::size_t flat = 0;
      do {
        for (std::size_t j = 0; j < k; ++j) {
          image[j] = map[idx[j]];
        }
        if (map[ta.entries()[flat]] != tb(image)) {
          std::vector<Elem> args(idx.begin(), idx.end());
          return HomViolation{w, std::move(args)};
        }
        ++flat;
      } while (next_tuple(idx, A.size()));
    }
    return std::nullopt;
  }

  bool is_homomorphism(FiniteAlgebra const&  A,
                       FiniteAlgebra const&  B,
                       std::span<Elem const> map) {
    return !find_hom_violation(A, B, map).has_value();
  }

  std::vector<Homomorphism> hom_set(FiniteAlgebra const& A,
                                    FiniteAlgebra const& B) {
    if (!(A.signature() == B.signature())) {
      throw InputError("algebras have different signatures");
    }
    // Depth-first over map[0], map[1], ... checking every table entry as
    // soon as all of its arguments and its value are assigned.
    std::size_t const         n = A.size(), m = B.size();
    std::vector<Homomorphism> result;
    std::vector<Elem>         map(n, 0);
    std::vector<Elem>         args, image;

    // checks[i] = (symbol, flat index) pairs whose max(args, value) == i
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> checks(n);
    for (std::size_t w = 0; w < A.signature().size(); ++w) {
      OpTable const&           t = A.table(w);
      std::vector<std::size_t> idx(t.arity(), 0);
      std::size_t              flat = 0;
      do {
        std::size_t hi = t.entries()[flat];
        for (auto i : idx) {
          hi = std::max(hi, i);
        }
        checks[hi].emplace_back(w, flat);
        ++flat;
      } while (next_tuple(idx, n));
    }

    auto consistent = [&](std::size_t upto) {
      for (auto [w, flat] : checks[upto]) {
        OpTable const& t = A.table(w);
        std::size_t    k = t.arity();
        image.resize(k);
        std::size_t rest = flat;
        for (std::size_t j = k; j-- > 0;) {
          image[j] = map[rest % n];
          rest /= n;
        }
        if (map[t.entries()[flat]] != B.table(w)(image)) {
          return false;
        }
      }
      return true;
    };

    std::size_t pos = 0;
    map[0]          = 0;
    while (true) {
      if (consistent(pos)) {
        if (pos + 1 == n) {
          result.push_back(Homomorphism{map});
        } else {
          ++pos;
          map[pos] = 0;
          continue;
        }
      }
      // advance
      while (true) {
        if (++map[pos] < m) {
          break;
        }
        if (pos == 0) {
          return result;
        }
        --pos;
      }
    }
  }

  ////////////////////////////////////////////////////////////////////////
  // Products, subalgebras, quotients
  ////////////////////////////////////////////////////////////////////////

  std::vector<Elem> product_coordinates(std::span<FiniteAlgebra const> factors,
                                        Elem                           index) {
    std::vector<Elem> result(factors.size());
    std::size_t       rest = index;
    for (std::size_t i = factors.size(); i-- > 0;) {
      result[i] = static_cast<Elem>(rest % factors[i].size());
      rest /= factors[i].size();
    }
    return result;
  }

  FiniteAlgebra product_algebra(std::span<FiniteAlgebra const> factors,
                                std::string                    name) {
    if (factors.empty()) {
      throw InputError("product of an empty list of algebras");
    }
    Signature const& sig  = factors[0].signature();
    std::size_t      size = 1;
    for (auto const& f : factors) {
      if (!(f.signature() == sig)) {
        throw InputError("product factors have different signatures");
      }
      size = checked_power(size, 1) * f.size();
    }
    if (name.empty()) {
      for (std::size_t i = 0; i < factors.size(); ++i) {
        name += (i == 0 ? "" : "x") + factors[i].name();
      }
    }
    auto index_of = [&](std::span<Elem const> coords) {
      std::size_t r = 0;
      for (std::size_t i = 0; i < factors.size(); ++i) {
        r = r * factors[i].size() + coords[i];
      }
      return static_cast<Elem>(r);
    };

    std::vector<OpTable> tables;
    for (std::size_t w = 0; w < sig.size(); ++w) {
      std::size_t const              k = sig[w].arity;
      std::vector<Elem>              entries;
      std::vector<std::size_t>       idx(k, 0);
      std::vector<std::vector<Elem>> coords(k);
      std::vector<Elem>              args(k), out(factors.size());
      entries.reserve(checked_power(size, k));
      do {
        for (std::size_t j = 0; j < k; ++j) {
          coords[j] = product_coordinates(factors, static_cast<Elem>(idx[j]));
        }
        for (std::size_t f = 0; f < factors.size(); ++f) {
          for (std::size_t j = 0; j < k; ++j) {
            args[j] = coords[j][f];
          }
          out[f] = factors[f].apply(w, args);
        }
        entries.push_back(index_of(out));
      } while (next_tuple(idx, size));
      tables.emplace_back(k, size, std::move(entries));
    }
    return FiniteAlgebra(std::move(name), sig, size, std::move(tables));
  }

  Subalgebra generate_subalgebra(FiniteAlgebra const&  A,
                                 std::span<Elem const> seeds) {
    Signature const& sig = A.signature();
    if (seeds.empty() && !sig.has_constants()) {
      throw InputError("empty seed set in a signature without constants");
    }
    std::vector<std::vector<Elem>> seed_values;
    for (Elem s : seeds) {
      if (s >= A.size()) {
        throw InputError("seed outside the carrier");
      }
      seed_values.push_back({s});
    }
    std::vector<Elem> args;
    auto              r = detail::close(
        sig,
        seed_values,
        [&](std::size_t w, std::span<std::vector<Elem> const* const> in) {
          args.resize(in.size());
          for (std::size_t j = 0; j < in.size(); ++j) {
            args[j] = (*in[j])[0];
          }
          return std::vector<Elem>{A.apply(w, args)};
        },
        A.size() + 1,
        "subalgebra");
    Subalgebra result;
    for (auto const& v : r.values) {
      result.elements.push_back(v[0]);
    }
    result.witnesses = detail::witness_terms(sig, r.steps);
    return result;
  }

  bool is_congruence(FiniteAlgebra const& A, Congruence const& c) {
    if (c.size() != A.size()) {
      return false;
    }
    // Compatibility: replacing one argument by a related element keeps the
    // value in the same block. It suffices to compare each tuple with the
    // tuple of block representatives.
    std::vector<Elem> rep(c.num_blocks(), 0);
    std::vector<bool> seen(c.num_blocks(), false);
    for (std::size_t i = 0; i < A.size(); ++i) {
      if (!seen[c.label(i)]) {
        seen[c.label(i)] = true;
        rep[c.label(i)]  = static_cast<Elem>(i);
      }
    }
    std::vector<Elem> rep_args;
    for (std::size_t w = 0; w < A.signature().size(); ++w) {
      OpTable const&           t = A.table(w);
      std::vector<std::size_t> idx(t.arity(), 0);
      rep_args.resize(t.arity());
      std::size_t flat = 0;
      do {
        for (std::size_t j = 0; j < idx.size(); ++j) {
          rep_args[j] = rep[c.label(static_cast<Elem>(idx[j]))];
        }
        if (!c.related(t.entries()[flat], t(rep_args))) {
          return false;
        }
        ++flat;
      } while (next_tuple(idx, A.size()));
    }
    return true;
  }

  Quotient quotient_algebra(FiniteAlgebra const& A, Congruence const& c) {
    if (!is_congruence(A, c)) {
      throw InputError("partition is not a congruence of \"" + A.name() + "\"");
    }
    std::size_t const n = c.num_blocks();
    std::vector<Elem> rep(n);
    for (std::size_t i = A.size(); i-- > 0;) {
      rep[c.label(i)] = static_cast<Elem>(i);
    }
    std::vector<OpTable> tables;
    std::vector<Elem>    args;
    for (std::size_t w = 0; w < A.signature().size(); ++w) {
      std::size_t const        k = A.signature()[w].arity;
      std::vector<std::size_t> idx(k, 0);
      std::vector<Elem>        entries;
      args.resize(k);
      do {
        for (std::size_t j = 0; j < k; ++j) {
          args[j] = rep[idx[j]];
        }
        entries.push_back(c.label(A.apply(w, args)));
      } while (next_tuple(idx, n));
      tables.emplace_back(k, n, std::move(entries));
    }
    Homomorphism projection{std::vector<Elem>(c.labels().begin(), c.labels().end())};
    return Quotient{
        FiniteAlgebra(A.name() + "/~", A.signature(), n, std::move(tables)),
        std::move(projection)};
  }

  Congruence kernel(std::span<Elem const> map) {
    return Congruence::from_labels(map);
  }

  ////////////////////////////////////////////////////////////////////////
  // Identities
  ////////////////////////////////////////////////////////////////////////

  std::optional<std::vector<Elem>> falsifying_assignment(FiniteAlgebra const& A,
                                                         Term const&          lhs,
                                                         Term const&          rhs) {
    std::size_t const        k = std::max(lhs.max_var(), rhs.max_var());
    std::vector<std::size_t> idx(k, 0);
    std::vector<Elem>        asg(k);
    do {
      std::copy(idx.begin(), idx.end(), asg.begin());
      if (eval_term(A, lhs, asg) != eval_term(A, rhs, asg)) {
        return asg;
      }
    } while (next_tuple(idx, A.size()));
    return std::nullopt;
  }

  bool satisfies_identity(FiniteAlgebra const& A,
                          Term const&          lhs,
                          Term const&          rhs) {
    return !falsifying_assignment(A, lhs, rhs).has_value();
  }

}  // namespace uag
