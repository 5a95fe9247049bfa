#pragma once

#include <gmpxx.h>

#include <cctype>
#include <stdexcept>
#include <string>

namespace weyl {

using Rational = mpq_class;
using Integer = mpz_class;

// Accepts "p" or "p/q" with optional leading minus; decimals are rejected.
inline Rational parse_rational(const std::string& text) {
  auto digits = [](const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  std::string body = text;
  bool neg = false;
  if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
    neg = body[0] == '-';
    body.erase(0, 1);
  }
  auto slash = body.find('/');
  std::string num = body.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : body.substr(slash + 1);
  if (!digits(num) || !digits(den))
    throw std::invalid_argument("malformed rational '" + text + "' (expected p or p/q)");
  Integer d(den);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
  Rational q(Integer(num), d);
  q.canonicalize();
  return neg ? Rational(-q) : q;
}

inline std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline int sign_of(const Rational& q) { return sgn(q); }

}  // namespace weyl
