#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace tropglue {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

// thrown when an operation's precondition on the mathematical input fails
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Integer gcd(const Integer &a, const Integer &b) {
  return boost::multiprecision::gcd(a, b);
}

inline Integer lcm(const Integer &a, const Integer &b) {
  if (a == 0 || b == 0)
    return 0;
  return abs(a / gcd(a, b) * b);
}

inline Integer numerator(const Rational &q) {
  return boost::multiprecision::numerator(q);
}
inline Integer denominator(const Rational &q) {
  return boost::multiprecision::denominator(q);
}

inline std::string to_string(const Integer &x) { return x.str(); }

// "p/q", or "p" when q == 1
inline std::string to_string(const Rational &q) {
  Integer d = denominator(q);
  if (d == 1)
    return numerator(q).str();
  return numerator(q).str() + "/" + d.str();
}

inline Integer parse_integer(const std::string &s) {
  if (s.empty())
    throw std::invalid_argument("empty integer literal");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size())
    throw std::invalid_argument("bad integer literal: " + s);
  for (std::size_t j = i; j < s.size(); ++j)
    if (s[j] < '0' || s[j] > '9')
      throw std::invalid_argument("bad integer literal: " + s);
  return Integer(s);
}

inline Rational parse_rational(const std::string &s) {
  auto slash = s.find('/');
  if (slash == std::string::npos)
    return Rational(parse_integer(s));
  Integer p = parse_integer(s.substr(0, slash));
  Integer q = parse_integer(s.substr(slash + 1));
  if (q == 0)
    throw std::invalid_argument("zero denominator: " + s);
  return Rational(p, q);
}

inline Integer vector_index(const IntVector &v) {
  Integer g = 0;
  for (auto &x : v)
    g = gcd(g, x);
  return g;
}

inline bool is_zero(const IntVector &v) {
  for (auto &x : v)
    if (x != 0)
      return false;
  return true;
}

inline IntVector primitive(const IntVector &v) {
  Integer g = vector_index(v);
  if (g == 0)
    return v;
  IntVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    r[i] = v[i] / g;
  return r;
}

inline Integer dot(const IntVector &a, const IntVector &b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    s += a[i] * b[i];
  return s;
}

inline IntVector operator+(const IntVector &a, const IntVector &b) {
  IntVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    r[i] = a[i] + b[i];
  return r;
}

inline IntVector operator-(const IntVector &a, const IntVector &b) {
  IntVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    r[i] = a[i] - b[i];
  return r;
}

inline IntVector operator-(const IntVector &a) {
  IntVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    r[i] = -a[i];
  return r;
}

inline IntVector operator*(const Integer &c, const IntVector &a) {
  IntVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    r[i] = c * a[i];
  return r;
}

inline IntVector int_vector(std::initializer_list<long long> xs) {
  IntVector v;
  for (auto x : xs)
    v.emplace_back(x);
  return v;
}

// clears denominators of a rational vector, result primitive unless zero
inline IntVector clear_denominators(const RatVector &v) {
  Integer l = 1;
  for (auto &x : v)
    l = lcm(l, denominator(x));
  IntVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    r[i] = numerator(v[i] * l);
  return primitive(r);
}

} // namespace tropglue
