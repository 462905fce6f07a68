#ifndef CONDLAB_RATIONAL_HPP
#define CONDLAB_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "condlab/error.hpp"

namespace condlab {

/// Arbitrary-precision rational; every probability in the library is one of these.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Parses "p/q", "p" or "-p/q". Whitespace is not accepted.
inline Rational parse_rational(std::string_view text) {
  if (text.empty()) throw Error(ErrorCode::Parse, "empty rational");
  auto valid_int = [](std::string_view s) {
    if (s.empty()) return false;
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) return false;
    for (std::size_t k = start; k < s.size(); ++k) {
      if (s[k] < '0' || s[k] > '9') return false;
    }
    return true;
  };
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+') {
    throw Error(ErrorCode::Parse, "malformed rational '" + std::string(text) + "'");
  }
  std::string num_s(num[0] == '+' ? num.substr(1) : num);
  mpz_class n(num_s, 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw Error(ErrorCode::Parse, "zero denominator in '" + std::string(text) + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

/// Always "p/q" (integers become "k/1") so the wire form is uniform.
inline std::string to_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

}  // namespace condlab

#endif  // CONDLAB_RATIONAL_HPP
