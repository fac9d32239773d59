#pragma once

#include <condev/machine.hpp>
#include <condev/three_valued.hpp>

#include <deque>
#include <map>
#include <utility>

namespace condev {

/// Synchronous product: runs both machines and combines their outputs with
/// t. Only the reachable part of Q1 x Q2 is kept; not minimized.
inline moore_machine product_with_table(const truth_table3& t, const moore_machine& m1,
                                        const moore_machine& m2) {
  if (!(m1.events == m2.events))
    throw validation_error("product requires machines over the same event set");
  const std::size_t atoms = m1.events.atom_count();

  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> index;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  auto intern = [&](std::uint32_t p, std::uint32_t q) {
    auto [it, inserted] = index.emplace(std::make_pair(p, q), static_cast<std::uint32_t>(pairs.size()));
    if (inserted)
      pairs.emplace_back(p, q);
    return it->second;
  };

  moore_machine out;
  out.events = m1.events;
  out.initial = intern(m1.initial, m2.initial);
  for (std::uint32_t i = 0; i < pairs.size(); ++i) {
    const auto [p, q] = pairs[i];
    out.output.push_back(t.apply(m1.output[p], m2.output[q]));
    out.next.emplace_back(atoms);
    for (atom_t a = 0; a < atoms; ++a)
      out.next[i][a] = intern(m1.next[p][a], m2.next[q][a]);
  }
  return out;
}

} // namespace condev
