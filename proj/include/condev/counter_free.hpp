#pragma once

#include <condev/machine.hpp>

#include <cstdint>
#include <deque>
#include <set>
#include <vector>

namespace condev {

namespace detail {

using transform = std::vector<std::uint32_t>;

inline transform compose(const transform& f, const transform& g) {
  // (f then g): q -> g[f[q]]
  transform h(f.size());
  for (std::size_t q = 0; q < f.size(); ++q)
    h[q] = g[f[q]];
  return h;
}

/// t is aperiodic iff t^n = t^{n+1} where n = |Q|; equivalently its
/// functional graph has only trivial cycles.
inline bool transform_aperiodic(const transform& t) {
  const std::size_t n = t.size();
  transform p = t;
  for (std::size_t k = 1; k < n; ++k)
    p = compose(p, t);
  return compose(p, t) == p;
}

} // namespace detail

/// True iff no word cyclically permutes two or more states; checked as
/// aperiodicity of every element of the transition monoid (the closure of
/// the per-atom transformations under composition).
inline bool is_counter_free(const moore_machine& m, std::size_t monoid_cap = 1000000) {
  const std::size_t atoms = m.events.atom_count();
  std::vector<detail::transform> generators;
  for (atom_t a = 0; a < atoms; ++a) {
    detail::transform t(m.state_count());
    for (std::size_t q = 0; q < m.state_count(); ++q)
      t[q] = m.next[q][a];
    generators.push_back(std::move(t));
  }

  std::set<detail::transform> seen;
  std::deque<detail::transform> queue;
  for (const auto& g : generators)
    if (seen.insert(g).second)
      queue.push_back(g);

  while (!queue.empty()) {
    detail::transform t = std::move(queue.front());
    queue.pop_front();
    if (!detail::transform_aperiodic(t))
      return false;
    for (const auto& g : generators) {
      auto h = detail::compose(t, g);
      if (seen.insert(h).second) {
        if (seen.size() > monoid_cap)
          throw cap_exceeded("transition monoid exceeds the configured cap");
        queue.push_back(std::move(h));
      }
    }
  }
  return true;
}

} // namespace condev
