#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace qh {

using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline double to_double(double r) { return r; }

// Parses "p", "-p/q" or a plain decimal like "0.25".
inline Rational parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::size_t frac_len = s.size() - dot - 1;
    Rational num(digits);
    Rational den = 1;
    for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
    return num / den;
  }
  return Rational(s);
}

inline std::string to_string(const Rational& r) { return r.str(); }

}  // namespace qh
