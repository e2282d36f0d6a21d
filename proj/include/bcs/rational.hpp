#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

namespace bcs {

// Exact rational scalar used for every coordinate and every predicate in the
// library.  There is deliberately no floating-point fallback anywhere in the
// geometry; doubles appear only when rendering SVG.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

// Accepts "17", "-3", "3/4", "-3/4".  Anything else (including a zero
// denominator) yields nullopt rather than an exception so parsers can report
// line numbers themselves.
inline std::optional<Rational> parse_rational(const std::string& tok) {
  if (tok.empty()) return std::nullopt;
  std::size_t i = 0;
  if (tok[i] == '-' || tok[i] == '+') ++i;
  bool digits = false, slash = false;
  for (; i < tok.size(); ++i) {
    const char c = tok[i];
    if (c >= '0' && c <= '9') {
      digits = true;
    } else if (c == '/' && digits && !slash) {
      slash = true;
      digits = false;  // require digits after the slash too
    } else {
      return std::nullopt;
    }
  }
  if (!digits) return std::nullopt;
  try {
    Rational q(tok);
    return q;
  } catch (const std::exception&) {
    return std::nullopt;  // e.g. denominator 0
  }
}

}  // namespace bcs
