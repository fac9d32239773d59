#pragma once

#include <condev/rational.hpp>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace condev {

/// An atom is a complete truth assignment to the basic events, packed as a
/// bitmask: bit i set iff event i holds.
using atom_t = std::uint32_t;

/// A model: nonempty finite sequence of atoms.
using word = std::vector<atom_t>;

inline bool is_identifier(std::string_view s) {
  if (s.empty())
    return false;
  if (!std::isalpha(static_cast<unsigned char>(s.front())))
    return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_';
  });
}

/// The declared basic events; indices define atom bit positions.
class event_set {
public:
  static constexpr std::size_t max_size = 16;

  event_set() = default;

  explicit event_set(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.size() > max_size)
      throw validation_error("at most 16 events are supported");
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (!is_identifier(names_[i]))
        throw validation_error("invalid event name '" + names_[i] + "'");
      for (std::size_t j = i + 1; j < names_.size(); ++j)
        if (names_[i] == names_[j])
          throw validation_error("duplicate event name '" + names_[i] + "'");
    }
  }

  /// Whitespace-separated list, e.g. "a b c".
  static event_set from_string(std::string_view text) {
    std::istringstream is{std::string(text)};
    std::vector<std::string> names;
    std::string tok;
    while (is >> tok)
      names.push_back(tok);
    return event_set(std::move(names));
  }

  std::size_t size() const { return names_.size(); }
  std::size_t atom_count() const { return std::size_t{1} << names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }

  std::optional<std::size_t> index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name)
        return i;
    return std::nullopt;
  }

  bool operator==(const event_set& other) const = default;

private:
  std::vector<std::string> names_;
};

/// Event names contained in an atom, in declaration order.
inline std::vector<std::string> atom_names(atom_t a, const event_set& es) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < es.size(); ++i)
    if (a & (atom_t{1} << i))
      out.push_back(es.name(i));
  return out;
}

inline std::string atom_to_string(atom_t a, const event_set& es) {
  std::string out = "{";
  bool first = true;
  for (const auto& n : atom_names(a, es)) {
    if (!first)
      out += ' ';
    out += n;
    first = false;
  }
  out += '}';
  return out;
}

/// Parses "{a b}" into a bitmask; "{}" is the empty atom.
inline atom_t parse_atom(std::string_view text, const event_set& es) {
  auto l = text.find('{');
  auto r = text.rfind('}');
  if (l == std::string_view::npos || r == std::string_view::npos || r < l)
    throw validation_error("atom must be written as {name ...}: '" + std::string(text) + "'");
  std::istringstream is{std::string(text.substr(l + 1, r - l - 1))};
  atom_t a = 0;
  std::string tok;
  while (is >> tok) {
    auto idx = es.index_of(tok);
    if (!idx)
      throw validation_error("unknown event '" + tok + "' in atom");
    a |= atom_t{1} << *idx;
  }
  return a;
}

/// Parses a word written as semicolon-separated atoms: "{a b};{};{b}".
inline word parse_word(std::string_view text, const event_set& es) {
  word w;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto next = text.find(';', pos);
    auto piece = text.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos);
    if (!piece.empty())
      w.push_back(parse_atom(piece, es));
    if (next == std::string_view::npos)
      break;
    pos = next + 1;
  }
  if (w.empty())
    throw validation_error("a word must contain at least one atom");
  return w;
}

inline std::string word_to_string(const word& w, const event_set& es) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i)
      out += ';';
    out += atom_to_string(w[i], es);
  }
  return out;
}

} // namespace condev
