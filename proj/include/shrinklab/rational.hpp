#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace shrinklab {

using Rational = mpq_class;

// num/den in lowest terms. mpq_class(num, den) alone does not reduce.
inline Rational make_rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational q{mpz_class(num), mpz_class(den)};
  q.canonicalize();
  return q;
}

// Accepts "a", "a/b" or "-a/b"; the result is canonical.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty() || s.find_first_not_of("0123456789/-") != std::string::npos ||
      s.find('/') != s.rfind('/') || s.front() == '/' || s.back() == '/') {
    throw std::invalid_argument("bad rational '" + s + "'");
  }
  Rational q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational '" + s + "'");
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

// "num/den", or just "num" when the denominator is 1.
inline std::string format_rational(const Rational& q) { return q.get_str(); }

// Always "num/den", for fixed-column outputs.
inline std::string format_fraction(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace shrinklab
