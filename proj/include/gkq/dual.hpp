// SPDX-License-Identifier: Apache-2.0
#ifndef GKQ_DUAL_HPP
#define GKQ_DUAL_HPP

#include <cmath>
#include <type_traits>

namespace gkq {

/// Forward-mode dual number a + b*eps with eps^2 = 0.  Nesting Dual<Dual<T>>
/// gives mixed second derivatives; the field layer uses up to three levels.
template <class T>
struct Dual {
  T re{};
  T eps{};

  constexpr Dual() = default;
  constexpr Dual(double v) : re(v), eps(0.0) {}  // NOLINT(google-explicit-constructor)
  constexpr Dual(T r, T e) : re(r), eps(e) {}

  Dual& operator+=(const Dual& o) { re += o.re; eps += o.eps; return *this; }
  Dual& operator-=(const Dual& o) { re -= o.re; eps -= o.eps; return *this; }
  Dual& operator*=(const Dual& o) { eps = eps * o.re + re * o.eps; re *= o.re; return *this; }
  Dual& operator/=(const Dual& o) { *this = *this / o; return *this; }
  Dual operator-() const { return {-re, -eps}; }

  friend Dual operator+(Dual a, const Dual& b) { return a += b; }
  friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
  friend Dual operator*(const Dual& a, const Dual& b) { return {a.re * b.re, a.eps * b.re + a.re * b.eps}; }
  friend Dual operator/(const Dual& a, const Dual& b) {
    T inv = T(1.0) / b.re;
    return {a.re * inv, (a.eps - a.re * b.eps * inv) * inv};
  }
  friend Dual operator+(Dual a, double b) { a.re += b; return a; }
  friend Dual operator+(double a, Dual b) { b.re += a; return b; }
  friend Dual operator-(Dual a, double b) { a.re -= b; return a; }
  friend Dual operator-(double a, const Dual& b) { return {a - b.re, -b.eps}; }
  friend Dual operator*(const Dual& a, double b) { return {a.re * b, a.eps * b}; }
  friend Dual operator*(double a, const Dual& b) { return {a * b.re, a * b.eps}; }
  friend Dual operator/(const Dual& a, double b) { return {a.re / b, a.eps / b}; }
  friend Dual operator/(double a, const Dual& b) { return Dual(a) / b; }
};

using D1 = Dual<double>;
using D2 = Dual<D1>;
using D3 = Dual<D2>;

template <class S>
struct ad_depth : std::integral_constant<int, 0> {};
template <class T>
struct ad_depth<Dual<T>> : std::integral_constant<int, 1 + ad_depth<T>::value> {};
template <class S>
inline constexpr int ad_depth_v = ad_depth<S>::value;

inline double value_of(double x) { return x; }
template <class T>
double value_of(const Dual<T>& x) {
  return value_of(x.re);
}

template <class T>
Dual<T> sin(const Dual<T>& x) {
  using std::cos;
  using std::sin;
  return {sin(x.re), cos(x.re) * x.eps};
}
template <class T>
Dual<T> cos(const Dual<T>& x) {
  using std::cos;
  using std::sin;
  return {cos(x.re), -(sin(x.re) * x.eps)};
}
template <class T>
Dual<T> exp(const Dual<T>& x) {
  using std::exp;
  T e = exp(x.re);
  return {e, e * x.eps};
}
template <class T>
Dual<T> log(const Dual<T>& x) {
  using std::log;
  return {log(x.re), x.eps / x.re};
}
template <class T>
Dual<T> sqrt(const Dual<T>& x) {
  using std::sqrt;
  T s = sqrt(x.re);
  return {s, x.eps / (2.0 * s)};
}

/// Integer power by repeated multiplication; exact for polynomial fields.
template <class S>
S ipow(const S& x, int n) {
  S r(1.0);
  for (int i = 0; i < n; ++i) r = r * x;
  return r;
}

}  // namespace gkq

#endif  // GKQ_DUAL_HPP
