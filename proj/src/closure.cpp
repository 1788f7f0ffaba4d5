#include "closure.hpp"

#include <algorithm>

namespace uag::detail {

  ClosureResult close(Signature const&                      sig,
                      std::vector<std::vector<Elem>> const& seeds,
                      ApplyFn const&                        apply,
                      std::size_t                           cap,
                      std::string const&                    what) {
    ClosureResult r;
    auto          add = [&](std::vector<Elem> value, Step step) {
      auto [it, inserted] = r.index.emplace(value, r.values.size());
      if (inserted) {
        if (r.values.size() >= cap) {
          throw CapExceeded(what + " exceeds the cap of "
                                + std::to_string(cap) + " elements",
                            r.values.size() + 1);
        }
        r.values.push_back(std::move(value));
        r.steps.push_back(std::move(step));
      }
      return it->second;
    };

    for (std::size_t i = 0; i < seeds.size(); ++i) {
      Step s;
      s.seed_index = i;
      r.seed_elements.push_back(add(seeds[i], std::move(s)));
    }

    std::size_t level_start = 0;
    bool        first       = true;
    while (true) {
      std::size_t const prev = r.values.size();
      if (!first && level_start == prev) {
        break;
      }
      for (std::size_t w = 0; w < sig.size(); ++w) {
        std::size_t const arity = sig[w].arity;
        if (arity == 0) {
          if (first) {
            Step s;
            s.symbol = w;
            add(apply(w, {}), std::move(s));
          }
          continue;
        }
        if (prev == 0) {
          continue;
        }
        std::vector<std::size_t>              idx(arity, 0);
        std::vector<std::vector<Elem> const*> args(arity);
        // Tuples with at least one argument in [level_start, prev). On the
        // first pass every tuple qualifies.
        std::size_t const fresh_from = first ? 0 : level_start;
        do {
          bool fresh = std::any_of(idx.begin(), idx.end(), [&](auto i) {
            return i >= fresh_from;
          });
          if (!fresh) {
            // Jump the last coordinate straight into the fresh range.
            idx.back() = fresh_from;
          }
          for (std::size_t j = 0; j < arity; ++j) {
            args[j] = &r.values[idx[j]];
          }
          Step s;
          s.symbol = w;
          s.args   = idx;
          auto value = apply(w, args);
          add(std::move(value), std::move(s));
        } while (next_tuple(idx, prev));
      }
      first       = false;
      level_start = prev;
    }
    return r;
  }

  std::vector<Term> witness_terms(Signature const&      sig,
                                  std::span<Step const> steps) {
    std::vector<Term> result;
    result.reserve(steps.size());
    for (auto const& s : steps) {
      if (s.symbol == Step::seed) {
        result.push_back(Term::var(s.seed_index + 1));
      } else {
        std::vector<Term> args;
        for (auto i : s.args) {
          args.push_back(result[i]);
        }
        result.push_back(Term::apply(sig, s.symbol, std::move(args)));
      }
    }
    return result;
  }

}  // namespace uag::detail
