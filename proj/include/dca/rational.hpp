#pragma once

#include <gmpxx.h>

#include <cmath>
#include <stdexcept>
#include <string>

namespace dca {

// Exact rational scalar used by all structural computations.
using Rat = mpq_class;

inline bool is_zero(const Rat& q) { return sgn(q) == 0; }

inline Rat rat_abs(const Rat& q) { return sgn(q) < 0 ? Rat(-q) : q; }

// Accepts "p", "p/q", or a plain decimal like "-1.25".
Rat rat_from_string(const std::string& s);

// Emits "p" or "p/q" (canonical form).
std::string rat_to_string(const Rat& q);

// Quadratic extension Q[x]/(x^2 - S - T x).
//   CycQ:   x = zeta (primitive cube root of unity), zeta^2 = -1 - zeta
//   Sqrt3Q: x = sqrt(3)
template <long S, long T>
struct QuadExt {
  Rat a, b;  // a + b*x

  QuadExt() : a(0), b(0) {}
  QuadExt(Rat a_) : a(std::move(a_)), b(0) {}
  QuadExt(Rat a_, Rat b_) : a(std::move(a_)), b(std::move(b_)) {}
  QuadExt(int a_) : a(a_), b(0) {}

  static QuadExt root() { return QuadExt(Rat(0), Rat(1)); }

  bool operator==(const QuadExt& o) const { return a == o.a && b == o.b; }
  bool operator!=(const QuadExt& o) const { return !(*this == o); }

  QuadExt operator+(const QuadExt& o) const { return {a + o.a, b + o.b}; }
  QuadExt operator-(const QuadExt& o) const { return {a - o.a, b - o.b}; }
  QuadExt operator-() const { return {-a, -b}; }

  QuadExt operator*(const QuadExt& o) const {
    // (a + b x)(c + d x) = ac + bd*S + (ad + bc + bd*T) x
    Rat bd = b * o.b;
    return {a * o.a + bd * S, a * o.b + b * o.a + bd * T};
  }

  // Conjugate root is T - x; norm (a + b x)(a + bT - b x) = a^2 + abT - b^2 S.
  Rat norm() const { return a * a + a * b * T - b * b * S; }

  QuadExt inverse() const {
    Rat n = norm();
    if (is_zero(n)) throw std::domain_error("QuadExt: division by zero");
    return {(a + b * T) / n, -b / n};
  }
  QuadExt operator/(const QuadExt& o) const { return *this * o.inverse(); }

  QuadExt& operator+=(const QuadExt& o) { a += o.a; b += o.b; return *this; }
  QuadExt& operator-=(const QuadExt& o) { a -= o.a; b -= o.b; return *this; }
  QuadExt& operator*=(const QuadExt& o) { *this = *this * o; return *this; }

  // Numeric value given a floating approximation of the root.
  double approx(double root_value) const {
    return a.get_d() + b.get_d() * root_value;
  }
};

template <long S, long T>
inline bool is_zero(const QuadExt<S, T>& q) { return is_zero(q.a) && is_zero(q.b); }

using CycQ = QuadExt<-1, -1>;  // Q(zeta), zeta^3 = 1
using Sqrt3Q = QuadExt<3, 0>;  // Q(sqrt 3)

inline Rat rat_from_string_impl_decimal(const std::string& s) {
  auto dot = s.find('.');
  std::string head = s.substr(0, dot);
  std::string tail = s.substr(dot + 1);
  bool neg = !head.empty() && head[0] == '-';
  if (!head.empty() && (head[0] == '-' || head[0] == '+')) head = head.substr(1);
  if (head.empty()) head = "0";
  mpz_class num(head + tail);
  mpz_class den(1);
  for (size_t i = 0; i < tail.size(); ++i) den *= 10;
  Rat r(num, den);
  r.canonicalize();
  return neg ? Rat(-r) : r;
}

inline Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  if (s.find('e') != std::string::npos || s.find('E') != std::string::npos) {
    // scientific notation falls back through double; only used for float CSVs
    return Rat(std::stod(s));
  }
  if (s.find('.') != std::string::npos) return rat_from_string_impl_decimal(s);
  Rat r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
  r.canonicalize();
  return r;
}

inline std::string rat_to_string(const Rat& q) { return q.get_str(); }

}  // namespace dca
