// Breadth-first closure of a set of seed values under the operations of a
// signature. Shared by subalgebra generation and free algebra construction.
//
// Elements are discovered level by level: level 0 holds the seeds, level
// d + 1 the new values produced by applying a symbol to a tuple of known
// elements containing at least one element of level d. Symbols are tried in
// signature order and argument tuples in lexicographic order of element
// index, so the element list stays sorted by the enumeration order of the
// witness terms and each witness is the least term (depth first) that
// evaluates to its element.

#ifndef UAG_SRC_CLOSURE_HPP_
#define UAG_SRC_CLOSURE_HPP_

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "uag/algebra.hpp"
#include "uag/error.hpp"
#include "uag/term.hpp"

namespace uag::detail {

  struct VecHash {
    std::size_t operator()(std::vector<Elem> const& v) const noexcept {
      std::size_t h = 0xcbf29ce484222325ULL;
      for (Elem e : v) {
        h ^= e;
        h *= 0x100000001b3ULL;
      }
      return h;
    }
  };

  // How an element was first reached.
  struct Step {
    static constexpr std::size_t seed = std::numeric_limits<std::size_t>::max();
    std::size_t              symbol = seed;  // seed for level 0
    std::size_t              seed_index = 0;
    std::vector<std::size_t> args;  // element indices
  };

  struct ClosureResult {
    std::vector<std::vector<Elem>> values;
    std::vector<Step>              steps;
    // seed_elements[i] = element index of seed i (seeds may coincide)
    std::vector<std::size_t> seed_elements;
    std::unordered_map<std::vector<Elem>, std::size_t, VecHash> index;
  };

  // apply(symbol, args) must return the value of symbol at the given
  // element values. Throws CapExceeded once more than `cap` elements exist.
  using ApplyFn = std::function<std::vector<Elem>(
      std::size_t,
      std::span<std::vector<Elem> const* const>)>;

  ClosureResult close(Signature const&                     sig,
                      std::vector<std::vector<Elem>> const& seeds,
                      ApplyFn const&                        apply,
                      std::size_t                           cap,
                      std::string const&                    what);

  std::vector<Term> witness_terms(Signature const&         sig,
                                  std::span<Step const>    steps);

}  // namespace uag::detail

#endif  // UAG_SRC_CLOSURE_HPP_
