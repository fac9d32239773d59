#pragma once

#include <condev/events.hpp>
#include <condev/three_valued.hpp>

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace condev {

/// Deterministic finite-state transducer with a per-state output in 3.
/// The transition table is dense: next[q][atom] for every atom in 2^E.
struct moore_machine {
  event_set events;
  std::vector<tri> output;
  std::vector<std::vector<std::uint32_t>> next;
  std::uint32_t initial = 0;

  std::size_t state_count() const { return output.size(); }

  std::uint32_t step(std::uint32_t q, atom_t a) const { return next[q][a]; }

  /// Extended transition function from the initial state.
  std::uint32_t run(const word& w) const {
    std::uint32_t q = initial;
    for (atom_t a : w)
      q = next[q][a];
    return q;
  }
};

inline void validate(const moore_machine& m) {
  const std::size_t n = m.state_count();
  const std::size_t atoms = m.events.atom_count();
  if (m.next.size() != n)
    throw validation_error("transition table does not match the state count");
  if (m.initial >= n)
    throw validation_error("initial state out of range");
  for (const auto& row : m.next) {
    if (row.size() != atoms)
      throw validation_error("transition table must be total over all atoms");
    for (auto q : row)
      if (q >= n)
        throw validation_error("transition target out of range");
  }
}

/// Output sequence along w; position i is the output after consuming the
/// i-th letter, so the result has the same length as w.
inline std::vector<tri> run_trace(const moore_machine& m, const word& w) {
  std::vector<tri> out;
  out.reserve(w.size());
  std::uint32_t q = m.initial;
  for (atom_t a : w) {
    q = m.next[q][a];
    out.push_back(m.output[q]);
  }
  return out;
}

inline nlohmann::json to_json(const moore_machine& m) {
  nlohmann::json j;
  j["events"] = m.events.names();
  j["states"] = nlohmann::json::array();
  for (std::size_t q = 0; q < m.state_count(); ++q)
    j["states"].push_back({{"id", q}, {"output", to_token(m.output[q])}});
  j["initial"] = m.initial;
  j["transitions"] = nlohmann::json::array();
  for (std::size_t q = 0; q < m.state_count(); ++q)
    for (atom_t a = 0; a < m.events.atom_count(); ++a)
      j["transitions"].push_back(
          {{"from", q}, {"atom", atom_names(a, m.events)}, {"to", m.next[q][a]}});
  return j;
}

inline moore_machine machine_from_json(const nlohmann::json& j) {
  moore_machine m;
  m.events = event_set(j.at("events").get<std::vector<std::string>>());
  const auto& states = j.at("states");
  m.output.resize(states.size());
  for (const auto& s : states) {
    const auto id = s.at("id").get<std::size_t>();
    if (id >= m.output.size())
      throw validation_error("state id out of range in machine JSON");
    m.output[id] = tri_from_token(s.at("output").get<std::string>());
  }
  m.initial = j.at("initial").get<std::uint32_t>();
  m.next.assign(m.output.size(), std::vector<std::uint32_t>(m.events.atom_count(), 0));
  std::vector<std::vector<bool>> seen(m.output.size(),
                                      std::vector<bool>(m.events.atom_count(), false));
  for (const auto& t : j.at("transitions")) {
    atom_t a = 0;
    for (const auto& name : t.at("atom")) {
      auto idx = m.events.index_of(name.get<std::string>());
      if (!idx)
        throw validation_error("unknown event in machine JSON atom");
      a |= atom_t{1} << *idx;
    }
    const auto from = t.at("from").get<std::uint32_t>();
    const auto to = t.at("to").get<std::uint32_t>();
    if (from >= m.output.size())
      throw validation_error("transition source out of range in machine JSON");
    m.next[from][a] = to;
    seen[from][a] = true;
  }
  for (const auto& row : seen)
    for (bool b : row)
      if (!b)
        throw validation_error("machine JSON is missing transitions for some atoms");
  validate(m);
  return m;
}

/// One edge per (from,to) pair, labelled with the atoms that follow it.
inline std::string to_dot(const moore_machine& m) {
  std::string out = "digraph moore {\n  rankdir=LR;\n  node [shape=circle];\n";
  out += "  init [shape=point];\n";
  out += "  init -> q" + std::to_string(m.initial) + ";\n";
  for (std::size_t q = 0; q < m.state_count(); ++q)
    out += "  q" + std::to_string(q) + " [label=\"" + to_symbol(m.output[q]) + "\"];\n";
  for (std::size_t q = 0; q < m.state_count(); ++q) {
    std::map<std::uint32_t, std::vector<atom_t>> grouped;
    for (atom_t a = 0; a < m.events.atom_count(); ++a)
      grouped[m.next[q][a]].push_back(a);
    for (const auto& [to, atoms] : grouped) {
      std::string label;
      for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (i)
          label += ", ";
        label += atom_to_string(atoms[i], m.events);
      }
      out += "  q" + std::to_string(q) + " -> q" + std::to_string(to) + " [label=\"" + label +
             "\"];\n";
    }
  }
  out += "}\n";
  return out;
}

} // namespace condev
