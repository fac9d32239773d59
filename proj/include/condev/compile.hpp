#pragma once

#include <condev/eval.hpp>
#include <condev/machine.hpp>
#include <condev/parser.hpp>

#include <deque>
#include <map>
#include <numeric>
#include <vector>

namespace condev {

namespace detail {

/// Restricts to states reachable from the initial one, renumbering them in
/// BFS discovery order with atoms scanned in increasing bitmask order. This
/// is the canonical numbering used everywhere.
inline moore_machine bfs_canonicalize(const moore_machine& m) {
  const std::size_t atoms = m.events.atom_count();
  std::vector<std::uint32_t> id(m.state_count(), UINT32_MAX);
  std::vector<std::uint32_t> order;
  std::deque<std::uint32_t> queue{m.initial};
  id[m.initial] = 0;
  order.push_back(m.initial);
  while (!queue.empty()) {
    const auto q = queue.front();
    queue.pop_front();
    for (atom_t a = 0; a < atoms; ++a) {
      const auto to = m.next[q][a];
      if (id[to] == UINT32_MAX) {
        id[to] = static_cast<std::uint32_t>(order.size());
        order.push_back(to);
        queue.push_back(to);
      }
    }
  }
  moore_machine out;
  out.events = m.events;
  out.initial = 0;
  out.output.resize(order.size());
  out.next.assign(order.size(), std::vector<std::uint32_t>(atoms));
  for (std::size_t i = 0; i < order.size(); ++i) {
    out.output[i] = m.output[order[i]];
    for (atom_t a = 0; a < atoms; ++a)
      out.next[i][a] = id[m.next[order[i]][a]];
  }
  return out;
}

} // namespace detail

/// Coarsest output-respecting bisimulation quotient: partition refinement
/// seeded by the output map, unreachable states dropped, BFS numbering.
inline moore_machine minimize(const moore_machine& m) {
  const moore_machine r = detail::bfs_canonicalize(m);
  const std::size_t n = r.state_count();
  const std::size_t atoms = r.events.atom_count();

  std::vector<std::uint32_t> block(n);
  for (std::size_t q = 0; q < n; ++q)
    block[q] = static_cast<std::uint32_t>(r.output[q]);

  std::size_t block_count = 3;
  for (;;) {
    std::map<std::vector<std::uint32_t>, std::uint32_t> sig_index;
    std::vector<std::uint32_t> next_block(n);
    for (std::size_t q = 0; q < n; ++q) {
      std::vector<std::uint32_t> sig;
      sig.reserve(atoms + 1);
      sig.push_back(block[q]);
      for (atom_t a = 0; a < atoms; ++a)
        sig.push_back(block[r.next[q][a]]);
      auto [it, inserted] =
          sig_index.emplace(std::move(sig), static_cast<std::uint32_t>(sig_index.size()));
      next_block[q] = it->second;
    }
    // Each round refines the partition, so an unchanged block count means a
    // fixed point.
    const bool done = sig_index.size() == block_count;
    block_count = sig_index.size();
    block = std::move(next_block);
    if (done)
      break;
  }

  const std::uint32_t blocks = static_cast<std::uint32_t>(block_count);
  moore_machine q;
  q.events = r.events;
  q.initial = block[r.initial];
  q.output.resize(blocks);
  q.next.assign(blocks, std::vector<std::uint32_t>(atoms));
  for (std::size_t s = 0; s < n; ++s) {
    q.output[block[s]] = r.output[s];
    for (atom_t a = 0; a < atoms; ++a)
      q.next[block[s]][a] = block[r.next[s][a]];
  }
  return detail::bfs_canonicalize(q);
}

/// Compiles a conditional pair into a minimized Moore machine whose trace on
/// every word equals trace_conditional. States are the joint values of the
/// temporal subformulas at the last consumed position together with the
/// current output, plus a pre-initial state for the empty history (output
/// displayed as undefined; it only matters when it survives minimization).
inline moore_machine compile(const cond& c, const event_set& events) {
  const formula phi = expand(c.consequent);
  const formula psi = expand(c.antecedent);
  if (std::max(phi.min_event_count(), psi.min_event_count()) > events.size())
    throw validation_error("formula references events outside the declared set");

  const detail::stepper st({phi, psi});
  const std::size_t atoms = events.atom_count();

  struct key_t {
    std::vector<bool> memory;
    tri out;
    bool operator<(const key_t& o) const {
      return std::tie(memory, out) < std::tie(o.memory, o.out);
    }
  };

  std::map<key_t, std::uint32_t> index;
  std::vector<key_t> states;
  std::vector<std::vector<std::uint32_t>> next;

  // State 0 is pre-initial: no letter consumed yet.
  states.push_back({{}, tri::undef});
  next.emplace_back(atoms);

  std::vector<bool> values;
  for (std::uint32_t q = 0; q < states.size(); ++q) {
    const bool first = q == 0;
    for (atom_t a = 0; a < atoms; ++a) {
      std::vector<bool> memory = states[q].memory;
      st.step(a, first, memory, values);
      const bool v_phi = st.root_value(0, values);
      const bool v_psi = st.root_value(1, values);
      key_t key{std::move(memory), v_psi ? tri_of(v_phi) : tri::undef};
      auto it = index.find(key);
      std::uint32_t to;
      if (it == index.end()) {
        to = static_cast<std::uint32_t>(states.size());
        index.emplace(key, to);
        states.push_back(key);
        next.emplace_back(atoms);
      } else {
        to = it->second;
      }
      next[q][a] = to;
    }
  }

  moore_machine m;
  m.events = events;
  m.initial = 0;
  m.output.reserve(states.size());
  for (const auto& s : states)
    m.output.push_back(s.out);
  m.next = std::move(next);
  return minimize(m);
}

inline moore_machine compile(const cond& c) {
  const std::size_t need = std::max(c.consequent.min_event_count(), c.antecedent.min_event_count());
  std::vector<std::string> names;
  for (std::size_t i = 0; i < need; ++i)
    names.push_back("e" + std::to_string(i));
  return compile(c, event_set(std::move(names)));
}

} // namespace condev
