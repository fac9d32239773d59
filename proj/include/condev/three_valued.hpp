#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace condev {

/// Truth values: 0 (false), 1 (true), bottom (undefined).
enum class tri : std::uint8_t {
  zero = 0,
  one = 1,
  undef = 2,
};

inline constexpr tri tri_of(bool b) { return b ? tri::one : tri::zero; }

inline constexpr bool is_defined(tri v) { return v != tri::undef; }

/// Display symbol, as drawn on machine states.
inline std::string to_symbol(tri v) {
  switch (v) {
  case tri::zero: return "0";
  case tri::one: return "1";
  default: return "⊥";
  }
}

/// ASCII token used in JSON and file formats.
inline std::string to_token(tri v) {
  switch (v) {
  case tri::zero: return "0";
  case tri::one: return "1";
  default: return "bot";
  }
}

inline tri tri_from_token(const std::string& s) {
  if (s == "0")
    return tri::zero;
  if (s == "1")
    return tri::one;
  if (s == "bot" || s == "⊥")
    return tri::undef;
  throw std::runtime_error("unknown truth value token '" + s + "'");
}

/// A binary connective on truth values, given pointwise.
struct truth_table3 {
  std::array<std::array<tri, 3>, 3> cell;

  constexpr tri apply(tri x, tri y) const {
    return cell[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
  }
};

inline tri apply_pointwise(const truth_table3& t, tri x, tri y) { return t.apply(x, y); }

} // namespace condev
