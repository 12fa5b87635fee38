#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace turb {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

using Vec = std::vector<Rational>;
using IntVec = std::vector<Integer>;
using Matrix = std::vector<Vec>;
using IntMatrix = std::vector<IntVec>;

inline Integer numer(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denom(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integral(const Rational& q) { return denom(q) == 1; }

inline bool is_integral(const Vec& v) {
  for (const auto& x : v)
    if (!is_integral(x)) return false;
  return true;
}

inline Integer gcd_of(const IntVec& v) {
  Integer g = 0;
  for (const auto& x : v) g = boost::multiprecision::gcd(g, x);
  return g;
}

// Divides by the gcd so the entries are coprime; the zero vector is returned unchanged.
inline IntVec primitive(IntVec v) {
  Integer g = gcd_of(v);
  if (g > 1)
    for (auto& x : v) x /= g;
  return v;
}

// Scales a nonzero rational vector to the primitive integer vector on the same ray.
inline Vec primitive_ray(const Vec& v) {
  Integer l = 1;
  for (const auto& x : v) l = boost::multiprecision::lcm(l, denom(x));
  IntVec iv;
  iv.reserve(v.size());
  for (const auto& x : v) iv.push_back(numer(x * Rational(l)));
  iv = primitive(std::move(iv));
  Vec out;
  out.reserve(iv.size());
  for (auto& x : iv) out.emplace_back(x);
  return out;
}

inline Vec to_rational(const IntVec& v) {
  Vec out;
  out.reserve(v.size());
  for (const auto& x : v) out.emplace_back(x);
  return out;
}

inline IntVec to_integer(const Vec& v) {
  IntVec out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(numer(x));
  return out;
}

inline Vec to_rational(const std::vector<int>& v) {
  Vec out;
  out.reserve(v.size());
  for (int x : v) out.emplace_back(x);
  return out;
}

inline std::string to_string(const Rational& q) { return q.str(); }
inline std::string to_string(const Integer& z) { return z.str(); }

// Accepts "n" or "n/d" with optional leading minus; throws std::invalid_argument otherwise.
inline Rational parse_rational(const std::string& s) {
  auto valid_int = [](const std::string& t) {
    std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i >= t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  auto slash = s.find('/');
  std::string n = s.substr(0, slash);
  std::string d = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(n) || !valid_int(d)) throw std::invalid_argument("not a rational: " + s);
  Integer nn(n[0] == '+' ? n.substr(1) : n), dd(d[0] == '+' ? d.substr(1) : d);
  if (dd == 0) throw std::invalid_argument("zero denominator: " + s);
  return Rational(nn, dd);
}

}  // namespace turb
