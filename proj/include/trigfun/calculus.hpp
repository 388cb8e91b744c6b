#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <vector>

#include "trigfun/constructor.hpp"
#include "trigfun/detail/fft.hpp"
#include "trigfun/detail/rootfinding.hpp"
#include "trigfun/error.hpp"
#include "trigfun/trigpoly.hpp"

namespace trigfun {

namespace detail {

inline void require_same_interval(const TrigPoly& p, const TrigPoly& q, const char* op) {
  if (!(p.interval() == q.interval()))
    throw DomainError(std::string(op) + ": operands are defined on different intervals");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Arithmetic. Every result is rounded by `simplify`, the continuous analogue
// of rounding a floating point operation.

inline TrigPoly add(const TrigPoly& p, const TrigPoly& q) {
  detail::require_same_interval(p, q, "add");
  const int n = std::max(p.degree(), q.degree());
  std::vector<Complex> c(2 * static_cast<std::size_t>(n) + 1);
  for (int k = -n; k <= n; ++k) c[static_cast<std::size_t>(k + n)] = p.coeff(k) + q.coeff(k);
  const double scale = std::max(p.max_abs_coeff(), q.max_abs_coeff());
  return simplify(TrigPoly(std::move(c), p.interval(), p.is_real() && q.is_real()), 0x1p-52, scale);
}

inline TrigPoly scale(const TrigPoly& p, Complex s) {
  std::vector<Complex> c(p.data().begin(), p.data().end());
  for (auto& v : c) v *= s;
  if (s == 0.0) return TrigPoly::zero(p.interval());
  return TrigPoly(std::move(c), p.interval(), p.is_real() && s.imag() == 0);
}

inline TrigPoly add_constant(const TrigPoly& p, Complex s) {
  return add(p, TrigPoly::constant(s, p.interval()));
}

/// Product via a cyclic convolution of the coefficient sequences on a
/// power-of-two grid of at least N_p + N_q - 1 points, so nothing aliases.
inline TrigPoly multiply(const TrigPoly& p, const TrigPoly& q) {
  detail::require_same_interval(p, q, "multiply");
  const int np = p.degree(), nq = q.degree();
  const int n = np + nq;
  const std::size_t m = detail::next_power_of_two(2 * static_cast<std::size_t>(n) + 1);
  std::vector<Complex> a(m, 0.0), b(m, 0.0);
  for (int k = -np; k <= np; ++k) a[detail::wrap_index(k, m)] = p.coeff(k);
  for (int k = -nq; k <= nq; ++k) b[detail::wrap_index(k, m)] = q.coeff(k);
  detail::fft(a, +1);
  detail::fft(b, +1);
  for (std::size_t j = 0; j < m; ++j) a[j] *= b[j];
  detail::fft(a, -1);
  const double inv = 1.0 / static_cast<double>(m);
  std::vector<Complex> c(2 * static_cast<std::size_t>(n) + 1);
  for (int k = -n; k <= n; ++k) c[static_cast<std::size_t>(k + n)] = a[detail::wrap_index(k, m)] * inv;
  return simplify(TrigPoly(std::move(c), p.interval(), p.is_real() && q.is_real()));
}

inline TrigPoly operator+(const TrigPoly& p, const TrigPoly& q) { return add(p, q); }
inline TrigPoly operator-(const TrigPoly& p) { return scale(p, -1.0); }
inline TrigPoly operator-(const TrigPoly& p, const TrigPoly& q) { return add(p, -q); }
inline TrigPoly operator*(const TrigPoly& p, const TrigPoly& q) { return multiply(p, q); }
inline TrigPoly operator*(Complex s, const TrigPoly& p) { return scale(p, s); }
inline TrigPoly operator*(const TrigPoly& p, Complex s) { return scale(p, s); }
inline TrigPoly operator*(double s, const TrigPoly& p) { return scale(p, s); }
inline TrigPoly operator*(const TrigPoly& p, double s) { return scale(p, s); }
inline TrigPoly operator+(const TrigPoly& p, Complex s) { return add_constant(p, s); }
inline TrigPoly operator+(Complex s, const TrigPoly& p) { return add_constant(p, s); }
inline TrigPoly operator+(const TrigPoly& p, double s) { return add_constant(p, s); }
inline TrigPoly operator+(double s, const TrigPoly& p) { return add_constant(p, s); }
inline TrigPoly operator-(const TrigPoly& p, double s) { return add_constant(p, -s); }
inline TrigPoly operator-(double s, const TrigPoly& p) { return add_constant(-p, s); }

/// Complex conjugate function.
inline TrigPoly conj(const TrigPoly& p) {
  const TrigPoly q = p.to_odd();
  const int n = q.degree();
  std::vector<Complex> c(q.length());
  for (int k = -n; k <= n; ++k) c[static_cast<std::size_t>(k + n)] = std::conj(q.coeff(-k));
  return TrigPoly(std::move(c), p.interval(), p.is_real());
}

inline TrigPoly real_part(const TrigPoly& p) {
  if (p.is_real()) return p;
  return simplify(enforce_real_symmetry(scale(add(p, conj(p)), 0.5)));
}

// ---------------------------------------------------------------------------
// Calculus.

namespace detail {

inline TrigPoly differentiate_unrounded(const TrigPoly& p, int order) {
  const TrigPoly q = p.to_odd();
  const int n = q.degree();
  const double omega = q.interval().omega();
  const Complex i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  std::vector<Complex> c(q.length());
  for (int k = -n; k <= n; ++k) {
    const double mag = std::pow(k * omega, order);
    c[static_cast<std::size_t>(k + n)] = q.coeff(k) * (i_pow[order % 4] * mag);
  }
  return TrigPoly(std::move(c), q.interval(), q.is_real());
}

}  // namespace detail

/// m-th derivative: c_k -> (i*k*omega)^m c_k. Even lengths are promoted to
/// the odd length N+1 first.
inline TrigPoly differentiate(const TrigPoly& p, int order = 1) {
  if (order < 0) throw DomainError("differentiate: order must be non-negative");
  if (order == 0) return p;
  return simplify(detail::differentiate_unrounded(p, order));
}

/// Definite integral over one period, L * c_0.
inline Complex integral(const TrigPoly& p) { return p.interval().length() * p.coeff(0); }

/// 2-norm over one period by Parseval.
inline double norm2(const TrigPoly& p) {
  double s = 0;
  for (int k = -p.degree(); k <= p.degree(); ++k) s += std::norm(p.coeff(k));
  return std::sqrt(p.interval().length() * s);
}

/// Estimate of max |p| from values on an oversampled equispaced grid.
inline double sup_norm_sampled(const TrigPoly& p, std::size_t oversample = 8) {
  const std::size_t m = std::max<std::size_t>(64, oversample * p.length());
  double mx = 0;
  for (const auto& v : values_on_grid(p, m)) mx = std::max(mx, std::abs(v));
  return mx;
}

namespace detail {

// Up to three Newton steps on t, keeping an iterate only if |p| decreases.
inline double polish_root(const TrigPoly& p, const TrigPoly& dp, double t) {
  double best = t;
  double best_res = std::abs(p(t));
  for (int it = 0; it < 3 && best_res > 0; ++it) {
    const Complex d = dp(best);
    if (d == 0.0) break;
    const double cand = best - (p(best) / d).real();
    const double res = std::abs(p(cand));
    if (!(res < best_res)) break;
    best = cand;
    best_res = res;
  }
  return best;
}

inline std::vector<double> root_candidates_companion(const TrigPoly& q) {
  const int n = q.degree();
  std::vector<Complex> d(2 * static_cast<std::size_t>(n) + 1);
  for (int k = -n; k <= n; ++k) d[static_cast<std::size_t>(k + n)] = q.coeff(k);
  const double omega = q.interval().omega();
  std::vector<double> out;
  for (const Complex& z : companion_roots(std::move(d))) {
    if (std::abs(std::abs(z) - 1.0) <= 1e-6) out.push_back(std::arg(z) / omega);
  }
  return out;
}

// Piecewise Chebyshev interpolation on subintervals short enough that the
// local oscillation stays below ~8 radians, then colleague eigenvalues.
inline void piece_roots(const TrigPoly& q, double lo, double hi, double scale, int depth, std::vector<double>& out) {
  constexpr int kDegree = 40;
  static const std::vector<double> xs = chebyshev_points(kDegree);
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  std::vector<Complex> f(xs.size());
  for (std::size_t j = 0; j < xs.size(); ++j) f[j] = q(mid + half * xs[j]);
  const auto a = chebyshev_coeffs(f);
  const double tail = std::max({std::abs(a[kDegree]), std::abs(a[kDegree - 1]), std::abs(a[kDegree - 2])});
  if (tail > 1e-13 * scale && depth < 12) {
    piece_roots(q, lo, mid, scale, depth + 1, out);
    piece_roots(q, mid, hi, scale, depth + 1, out);
    return;
  }
  for (const Complex& x : colleague_roots(a)) {
    if (std::abs(x.imag()) <= 1e-6 && std::abs(x.real()) <= 1 + 1e-6) out.push_back(mid + half * x.real());
  }
}

inline std::vector<double> root_candidates_subdivision(const TrigPoly& q) {
  const Interval& iv = q.interval();
  const int n = q.degree();
  const int pieces = std::max(2, static_cast<int>(std::ceil(std::numbers::pi * n / 8.0)));
  const double h = iv.length() / pieces;
  const double scale = q.sum_abs_coeffs();
  std::vector<double> out;
  for (int j = 0; j < pieces; ++j) {
    const double lo = iv.a() + j * h;
    const double hi = (j + 1 == pieces) ? iv.b() : iv.a() + (j + 1) * h;
    piece_roots(q, lo, hi, scale, 0, out);
  }
  return out;
}

// Degrees above this use subdivision; the dense companion eigensolve is
// O(n^3) and becomes the bottleneck beyond it.
inline constexpr int kCompanionMaxDegree = 64;

}  // namespace detail

/// Real roots in [a, b) of a trigonometric polynomial (real or complex
/// valued), sorted ascending. Small degrees use the companion matrix of
/// z^n p(z), z = exp(i*omega*t); larger degrees use piecewise Chebyshev
/// colleague matrices. Every root is Newton-polished and verified.
inline std::vector<double> roots(const TrigPoly& p) {
  if (p.is_zero()) throw DomainError("roots: the zero function vanishes everywhere");
  const TrigPoly q = p.to_odd();
  const int n = q.degree();
  if (n == 0) return {};
  const Interval& iv = q.interval();
  const TrigPoly dq = detail::differentiate_unrounded(q, 1);

  const auto candidates =
      n <= detail::kCompanionMaxDegree ? detail::root_candidates_companion(q) : detail::root_candidates_subdivision(q);

  const double eps = std::numeric_limits<double>::epsilon();
  const double accept = 16 * static_cast<double>(q.length()) * eps * q.sum_abs_coeffs() + 1e-12 * q.max_abs_coeff();
  std::vector<double> found;
  for (double t0 : candidates) {
    const double t = iv.reduce(detail::polish_root(q, dq, iv.reduce(t0)));
    if (std::abs(q(t)) <= accept) found.push_back(t);
  }
  std::sort(found.begin(), found.end());

  const double merge = 1e-10 * iv.length();
  std::vector<double> out;
  for (double t : found) {
    if (!out.empty() && t - out.back() <= merge) {
      if (std::abs(q(t)) < std::abs(q(out.back()))) out.back() = t;
      continue;
    }
    out.push_back(t);
  }
  // Cyclic duplicate across the seam b ~ a.
  if (out.size() >= 2 && (out.front() + iv.length()) - out.back() <= merge) {
    if (std::abs(q(out.back())) < std::abs(q(out.front()))) out.front() = out.back();
    out.pop_back();
  }
  return out;
}

struct Extrema {
  double max_value;
  double argmax;
  double min_value;
  double argmin;
};

/// Global maximum and minimum over the period, found among the roots of
/// the derivative.
inline Extrema extrema(const TrigPoly& p) {
  if (!p.is_real()) throw RealnessError("extrema: function is complex valued");
  const Interval& iv = p.interval();
  const TrigPoly dp = differentiate(p);
  if (dp.is_zero()) {
    const double c = p.coeff(0).real();
    return {c, iv.a(), c, iv.a()};
  }
  std::vector<double> candidates = roots(dp);
  if (candidates.empty()) candidates.push_back(iv.a());
  Extrema e{-std::numeric_limits<double>::infinity(), iv.a(), std::numeric_limits<double>::infinity(), iv.a()};
  for (double t : candidates) {
    const double v = p(t).real();
    if (v > e.max_value) e.max_value = v, e.argmax = t;
    if (v < e.min_value) e.min_value = v, e.argmin = t;
  }
  return e;
}

/// Circular convolution (f*g)(t) = int_period g(s) f(t-s) ds:
/// coefficientwise product times the period.
inline TrigPoly circconv(const TrigPoly& f, const TrigPoly& g) {
  detail::require_same_interval(f, g, "circconv");
  const int n = std::min(f.degree(), g.degree());
  const double len = f.interval().length();
  std::vector<Complex> c(2 * static_cast<std::size_t>(n) + 1);
  for (int k = -n; k <= n; ++k) c[static_cast<std::size_t>(k + n)] = len * f.coeff(k) * g.coeff(k);
  return simplify(TrigPoly(std::move(c), f.interval(), f.is_real() && g.is_real()));
}

/// fn(p(t)) rebuilt adaptively from samples.
template <class Fn>
TrigPoly compose(const TrigPoly& p, Fn&& fn, const BuildOptions& opts = {}) {
  return build_adaptive([&](double t) { return Complex(fn(p(t))); }, p.interval(), opts);
}

/// Pointwise quotient p/q rebuilt adaptively from samples.
inline TrigPoly divide(const TrigPoly& p, const TrigPoly& q, const BuildOptions& opts = {}) {
  detail::require_same_interval(p, q, "divide");
  return build_adaptive([&](double t) { return p(t) / q(t); }, p.interval(), opts);
}

}  // namespace trigfun
