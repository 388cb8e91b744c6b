#pragma once

#include <cmath>
#include <complex>
#include <type_traits>

namespace trigfun {

/// Forward-mode dual number val + der*epsilon, epsilon^2 = 0.
template <class T>
struct Dual {
  T val{};
  T der{};

  Dual() = default;
  Dual(T v) : val(v) {}  // NOLINT(google-explicit-constructor)
  Dual(T v, T d) : val(v), der(d) {}

  Dual& operator+=(const Dual& o) {
    val += o.val;
    der += o.der;
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    val -= o.val;
    der -= o.der;
    return *this;
  }
  Dual& operator*=(const Dual& o) {
    der = der * o.val + val * o.der;
    val *= o.val;
    return *this;
  }
  Dual& operator/=(const Dual& o) {
    der = (der * o.val - val * o.der) / (o.val * o.val);
    val /= o.val;
    return *this;
  }
};

template <class T> Dual<T> operator+(Dual<T> a, const Dual<T>& b) { return a += b; }
template <class T> Dual<T> operator-(Dual<T> a, const Dual<T>& b) { return a -= b; }
template <class T> Dual<T> operator*(Dual<T> a, const Dual<T>& b) { return a *= b; }
template <class T> Dual<T> operator/(Dual<T> a, const Dual<T>& b) { return a /= b; }
template <class T> Dual<T> operator-(const Dual<T>& a) { return {-a.val, -a.der}; }

// Mixed operations with plain scalars (double, or T itself).
template <class S, class T>
concept DualScalar = std::is_convertible_v<S, T> && !std::is_same_v<std::remove_cvref_t<S>, Dual<T>>;

template <class T, DualScalar<T> S> Dual<T> operator+(Dual<T> a, const S& b) { return a += Dual<T>(T(b)); }
template <class T, DualScalar<T> S> Dual<T> operator+(const S& a, Dual<T> b) { return b += Dual<T>(T(a)); }
template <class T, DualScalar<T> S> Dual<T> operator-(Dual<T> a, const S& b) { return a -= Dual<T>(T(b)); }
template <class T, DualScalar<T> S> Dual<T> operator-(const S& a, const Dual<T>& b) { return Dual<T>(T(a)) - b; }
template <class T, DualScalar<T> S> Dual<T> operator*(Dual<T> a, const S& b) { return {a.val * T(b), a.der * T(b)}; }
template <class T, DualScalar<T> S> Dual<T> operator*(const S& a, Dual<T> b) { return {T(a) * b.val, T(a) * b.der}; }
template <class T, DualScalar<T> S> Dual<T> operator/(Dual<T> a, const S& b) { return {a.val / T(b), a.der / T(b)}; }
template <class T, DualScalar<T> S> Dual<T> operator/(const S& a, const Dual<T>& b) { return Dual<T>(T(a)) / b; }

template <class T> Dual<T> exp(const Dual<T>& a) {
  using std::exp;
  const T e = exp(a.val);
  return {e, e * a.der};
}
template <class T> Dual<T> log(const Dual<T>& a) {
  using std::log;
  return {log(a.val), a.der / a.val};
}
template <class T> Dual<T> sin(const Dual<T>& a) {
  using std::cos, std::sin;
  return {sin(a.val), cos(a.val) * a.der};
}
template <class T> Dual<T> cos(const Dual<T>& a) {
  using std::cos, std::sin;
  return {cos(a.val), -sin(a.val) * a.der};
}
template <class T> Dual<T> tan(const Dual<T>& a) {
  using std::tan;
  const T t = tan(a.val);
  return {t, (T(1) + t * t) * a.der};
}
template <class T> Dual<T> tanh(const Dual<T>& a) {
  using std::tanh;
  const T t = tanh(a.val);
  return {t, (T(1) - t * t) * a.der};
}
template <class T> Dual<T> sqrt(const Dual<T>& a) {
  using std::sqrt;
  const T s = sqrt(a.val);
  return {s, a.der / (T(2) * s)};
}

/// |x| for real-valued duals: d|x| = sign(x) dx. Complex values use the
/// real part of the direction.
template <class T> Dual<T> abs(const Dual<T>& a) {
  using std::abs;
  const auto m = abs(a.val);
  if (m == 0) return {T(0), T(0)};
  if constexpr (std::is_floating_point_v<T>) {
    return {T(m), a.val > 0 ? a.der : -a.der};
  } else {
    return {T(m), T(std::real(std::conj(a.val) * a.der) / m)};
  }
}

/// a^b with a general exponent: exp(b log a).
template <class T> Dual<T> pow(const Dual<T>& a, const Dual<T>& b) {
  using std::log, std::pow;
  if (b.der == T(0)) {
    const T p = pow(a.val, b.val);
    if (a.val == T(0)) return {p, b.val == T(1) ? a.der : T(0)};
    return {p, b.val * pow(a.val, b.val - T(1)) * a.der};
  }
  return exp(b * log(a));
}

}  // namespace trigfun
