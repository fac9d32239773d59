#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace condev {

using bigint = boost::multiprecision::cpp_int;
using rat = boost::multiprecision::cpp_rational;

class validation_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class cap_exceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class internal_error : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Parses "p/q" or a plain integer; q must be positive.
inline rat parse_rational(std::string_view text) {
  auto is_int = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+'))
      s.remove_prefix(1);
    if (s.empty())
      return false;
    for (char c : s)
      if (c < '0' || c > '9')
        return false;
    return true;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    if (!is_int(text))
      throw validation_error("not a rational: '" + std::string(text) + "'");
    return rat(bigint(std::string(text)));
  }
  const auto num = text.substr(0, slash);
  const auto den = text.substr(slash + 1);
  if (!is_int(num) || !is_int(den))
    throw validation_error("not a rational: '" + std::string(text) + "'");
  bigint d{std::string(den)};
  if (d <= 0)
    throw validation_error("denominator must be positive in '" + std::string(text) + "'");
  return rat(bigint(std::string(num)), d);
}

inline std::string to_string(const rat& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

inline double to_double(const rat& r) { return r.convert_to<double>(); }

} // namespace condev
