#pragma once

#include <condev/events.hpp>
#include <condev/rational.hpp>

#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

namespace condev {

/// An exact probability assignment on the atoms of 2^E.
struct dist {
  event_set events;
  std::vector<rat> prob; // indexed by atom bitmask

  const rat& of(atom_t a) const { return prob[a]; }
};

inline void validate(const dist& d) {
  if (d.prob.size() != d.events.atom_count())
    throw validation_error("distribution does not cover all atoms");
  rat sum = 0;
  for (const auto& p : d.prob) {
    if (p < 0 || p > 1)
      throw validation_error("atom probability outside [0,1]: " + to_string(p));
    sum += p;
  }
  if (sum != 1)
    throw validation_error("atom probabilities sum to " + to_string(sum) + ", expected 1");
}

/// Product measure from per-event marginals.
inline dist independent_dist(const event_set& es, const std::vector<rat>& event_prob) {
  if (event_prob.size() != es.size())
    throw validation_error("independent distribution needs one probability per event");
  for (const auto& p : event_prob)
    if (p < 0 || p > 1)
      throw validation_error("event probability outside [0,1]: " + to_string(p));
  dist d;
  d.events = es;
  d.prob.resize(es.atom_count());
  for (atom_t a = 0; a < es.atom_count(); ++a) {
    rat p = 1;
    for (std::size_t i = 0; i < es.size(); ++i)
      p *= (a >> i) & 1u ? event_prob[i] : 1 - event_prob[i];
    d.prob[a] = p;
  }
  validate(d);
  return d;
}

/// Explicit atom probabilities; unlisted atoms get probability 0.
inline dist atoms_dist(const event_set& es, const std::vector<std::pair<atom_t, rat>>& entries) {
  dist d;
  d.events = es;
  d.prob.assign(es.atom_count(), rat(0));
  std::vector<bool> assigned(es.atom_count(), false);
  for (const auto& [a, p] : entries) {
    if (assigned[a])
      throw validation_error("atom " + atom_to_string(a, es) + " listed twice");
    assigned[a] = true;
    d.prob[a] = p;
  }
  validate(d);
  return d;
}

/// Line-oriented format with '#' comments:
///   events a b
///   mode independent        |  mode atoms
///   a = 1/2                 |  {a b} = 1/4
///   b = 1/3                 |  {} = 3/4
inline dist parse_dist(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  event_set es;
  bool have_events = false;
  std::string mode;
  std::vector<std::pair<std::string, std::string>> entries;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first))
      continue;
    if (first == "events") {
      std::vector<std::string> names;
      std::string tok;
      while (ls >> tok)
        names.push_back(tok);
      es = event_set(std::move(names));
      have_events = true;
    } else if (first == "mode") {
      if (!(ls >> mode) || (mode != "independent" && mode != "atoms"))
        throw validation_error("mode must be 'independent' or 'atoms'");
    } else {
      // "<key> = <rational>"; in atoms mode the key may contain spaces.
      auto eq = line.find('=');
      if (eq == std::string::npos)
        throw validation_error("expected '<name> = <value>' line: '" + line + "'");
      auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t");
        const auto e = s.find_last_not_of(" \t");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
      };
      entries.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
  }
  if (!have_events)
    throw validation_error("distribution file must declare 'events ...'");
  if (mode.empty())
    throw validation_error("distribution file must declare 'mode independent' or 'mode atoms'");

  if (mode == "independent") {
    std::vector<rat> marginals(es.size());
    std::vector<bool> seen(es.size(), false);
    for (const auto& [key, value] : entries) {
      auto idx = es.index_of(key);
      if (!idx)
        throw validation_error("unknown event '" + key + "' in distribution");
      if (seen[*idx])
        throw validation_error("event '" + key + "' assigned twice");
      seen[*idx] = true;
      marginals[*idx] = parse_rational(value);
    }
    for (std::size_t i = 0; i < es.size(); ++i)
      if (!seen[i])
        throw validation_error("event '" + es.name(i) + "' has no probability");
    return independent_dist(es, marginals);
  }

  std::vector<std::pair<atom_t, rat>> atom_entries;
  for (const auto& [key, value] : entries)
    atom_entries.emplace_back(parse_atom(key, es), parse_rational(value));
  return atoms_dist(es, atom_entries);
}

inline dist parse_dist(const std::string& text, const event_set& expected) {
  dist d = parse_dist(text);
  if (!(d.events == expected))
    throw validation_error("distribution events do not match the declared event set");
  return d;
}

/// Stable FNV-1a digest of the canonical serialization, for reports.
inline std::string digest(const dist& d) {
  std::string canon;
  for (const auto& n : d.events.names())
    canon += n + ";";
  for (atom_t a = 0; a < d.events.atom_count(); ++a)
    canon += to_string(d.prob[a]) + ";";
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : canon) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

inline nlohmann::json to_json(const dist& d) {
  nlohmann::json j;
  j["events"] = d.events.names();
  j["atoms"] = nlohmann::json::array();
  for (atom_t a = 0; a < d.events.atom_count(); ++a)
    j["atoms"].push_back({{"atom", atom_names(a, d.events)}, {"prob", to_string(d.prob[a])}});
  return j;
}

} // namespace condev
