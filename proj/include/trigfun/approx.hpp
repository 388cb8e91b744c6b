#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "trigfun/calculus.hpp"
#include "trigfun/constructor.hpp"
#include "trigfun/error.hpp"
#include "trigfun/trigpoly.hpp"

namespace trigfun {

// ---------------------------------------------------------------------------
// Decay and error bounds for 2*pi-periodic functions, stated on [0, 2*pi].
// Used as oracles: measured coefficients and errors must stay below them.

struct DecayBoundParams {
  enum class Variant { bounded_variation, analytic };

  Variant variant = Variant::analytic;
  int nu = 0;          ///< f is nu times differentiable ...
  double V = 1;        ///< ... and f^(nu) has total variation V.
  double alpha = 1;    ///< f analytic in the strip |Im t| < alpha ...
  double M = 1;        ///< ... with |f| <= M there.

  static DecayBoundParams bounded_variation(int nu, double V) {
    if (nu < 0 || !(V > 0)) throw DomainError("bounded-variation bound needs nu >= 0 and V > 0");
    DecayBoundParams p;
    p.variant = Variant::bounded_variation;
    p.nu = nu;
    p.V = V;
    return p;
  }
  static DecayBoundParams analytic(double alpha, double M) {
    if (!(alpha > 0) || !(M > 0)) throw DomainError("analytic bound needs alpha > 0 and M > 0");
    DecayBoundParams p;
    p.variant = Variant::analytic;
    p.alpha = alpha;
    p.M = M;
    return p;
  }
  bool is_bv() const noexcept { return variant == Variant::bounded_variation; }
};

/// |c_k| <= V / (2 pi |k|^(nu+1))  or  |c_k| <= M exp(-alpha |k|).
inline double coeff_bound(long k, const DecayBoundParams& p) {
  if (p.is_bv()) {
    if (k == 0) throw DomainError("coeff_bound: k = 0 has no bounded-variation bound");
    return p.V / (2 * std::numbers::pi * std::pow(std::abs(static_cast<double>(k)), p.nu + 1));
  }
  return p.M * std::exp(-p.alpha * std::abs(static_cast<double>(k)));
}

enum class ApproxKind { projection, interpolant };

/// Sup-norm error bound for the degree-n projection or interpolant; the
/// interpolant bound is twice the projection bound.
inline double approx_error_bound(int n, ApproxKind kind, const DecayBoundParams& p) {
  if (n <= 0) throw DomainError("approx_error_bound: degree must be positive");
  const double factor = kind == ApproxKind::interpolant ? 2.0 : 1.0;
  if (p.is_bv()) {
    if (p.nu < 1) throw DomainError("approx_error_bound: bounded-variation bound needs nu >= 1");
    return factor * p.V / (std::numbers::pi * p.nu * std::pow(static_cast<double>(n), p.nu));
  }
  return factor * 2 * p.M * std::exp(-p.alpha * n) / std::expm1(p.alpha);
}

/// Error bound for the N-point periodic trapezoidal rule over [0, 2*pi].
inline double trap_error_bound(long n_points, const DecayBoundParams& p) {
  if (n_points < 1) throw InvalidSizeError("trap_error_bound: need at least one point");
  const auto n = static_cast<double>(n_points);
  if (p.is_bv()) {
    if (p.nu < 1) throw DomainError("trap_error_bound: bounded-variation bound needs nu >= 1");
    return 4 * p.V / std::pow(n, p.nu + 1);
  }
  return 4 * std::numbers::pi * p.M / std::expm1(p.alpha * n);
}

// ---------------------------------------------------------------------------
// Barycentric trigonometric interpolation in arbitrary distinct points.

/// Interpolant through (t_j, f_j) at distinct points modulo the period.
/// Odd counts interpolate in the full degree-(N-1)/2 space with csc-type
/// weights; even counts use cot-type weights, whose span is the modes
/// |k| < N/2 plus one top mode fixed by the node positions.
class TrigInterpolant {
 public:
  TrigInterpolant(std::span<const double> points, std::span<const Complex> values, const Interval& interval)
      : interval_(interval) {
    if (points.size() != values.size()) throw ShapeError("interp_nonuniform: points and values differ in length");
    if (points.empty()) throw InvalidSizeError("interp_nonuniform: need at least one point");
    for (double t : points) points_.push_back(interval.reduce(t));
    values_.assign(values.begin(), values.end());
    check_distinct();
    compute_weights();
  }

  std::size_t size() const noexcept { return points_.size(); }
  const Interval& interval() const noexcept { return interval_; }

  Complex operator()(double t) const {
    const std::size_t n = points_.size();
    if (n == 1) return values_[0];
    const double tr = interval_.reduce(t);
    const double half_omega = interval_.omega() / 2;
    const bool odd = n % 2 == 1;
    Complex num = 0.0;
    double den = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (tr == points_[j]) return values_[j];
      const double arg = half_omega * (tr - points_[j]);
      const double s = std::sin(arg);
      if (s == 0) return values_[j];
      const double k = odd ? weights_[j] / s : weights_[j] * std::cos(arg) / s;
      num += k * values_[j];
      den += k;
    }
    return num / den;
  }

  /// The interpolant as a coefficient polynomial of odd length
  /// 2*floor(N/2) + 1, recovered exactly from equispaced samples.
  TrigPoly to_trigpoly() const {
    const std::size_t m = 2 * (points_.size() / 2) + 1;
    const auto t = trig_points(m, interval_);
    std::vector<Complex> v(m);
    for (std::size_t j = 0; j < m; ++j) v[j] = (*this)(t[j]);
    return interp_coeffs(std::span<const Complex>(v), interval_);
  }

 private:
  void check_distinct() const {
    std::vector<double> sorted = points_;
    std::sort(sorted.begin(), sorted.end());
    const double tol = 1e-14 * interval_.length();
    for (std::size_t j = 1; j < sorted.size(); ++j)
      if (sorted[j] - sorted[j - 1] <= tol) throw DuplicateNodeError("interp_nonuniform: coincident nodes");
    if (sorted.size() > 1 && sorted.front() + interval_.length() - sorted.back() <= tol)
      throw DuplicateNodeError("interp_nonuniform: nodes coincide modulo the period");
  }

  // w_j = 1 / prod_{m != j} sin(omega (t_j - t_m) / 2), accumulated in logs
  // and rescaled by a common factor.
  void compute_weights() {
    const std::size_t n = points_.size();
    const double half_omega = interval_.omega() / 2;
    std::vector<double> log_mag(n, 0.0);
    std::vector<int> sign(n, 1);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t m = 0; m < n; ++m) {
        if (m == j) continue;
        const double s = std::sin(half_omega * (points_[j] - points_[m]));
        log_mag[j] -= std::log(std::abs(s));
        if (s < 0) sign[j] = -sign[j];
      }
    }
    const double top = *std::max_element(log_mag.begin(), log_mag.end());
    weights_.resize(n);
    for (std::size_t j = 0; j < n; ++j) weights_[j] = sign[j] * std::exp(log_mag[j] - top);
  }

  Interval interval_;
  std::vector<double> points_;
  std::vector<Complex> values_;
  std::vector<double> weights_;
};

inline TrigInterpolant interp_nonuniform(std::span<const double> points, std::span<const Complex> values,
                                         const Interval& interval) {
  return TrigInterpolant(points, values, interval);
}

inline TrigInterpolant interp_nonuniform(std::span<const double> points, std::span<const double> values,
                                         const Interval& interval) {
  std::vector<Complex> v(values.begin(), values.end());
  return TrigInterpolant(points, std::span<const Complex>(v), interval);
}

// ---------------------------------------------------------------------------
// Best approximation in the sup norm (Remez exchange).

struct RemezOptions {
  int max_iterations = 50;
  /// Converged once the reference errors agree to this relative spread.
  double spread_tol = 1e-10;
  /// Spread still accepted when the iteration budget runs out.
  double accept_tol = 1e-6;
  int oversample = 16;
};

struct RemezResult {
  TrigPoly best;
  double level = 0;
  std::vector<double> reference;
  std::vector<int> signs;
  int iterations = 0;
  /// Set when a black-box input could not be resolved adaptively and was
  /// replaced by its interpolant on 2^14 points.
  bool sampled_fallback = false;
};

namespace detail {

struct ErrorPoint {
  double t;
  double e;
};

// Local extrema of a real error curve: dense grid search, then Newton on e'
// kept inside the neighbouring grid cells, else a parabolic vertex.
inline std::vector<ErrorPoint> error_extrema(const TrigPoly& e, std::size_t min_grid, int oversample) {
  const Interval& iv = e.interval();
  const std::size_t g = next_power_of_two(static_cast<std::size_t>(oversample) * std::max(e.length(), min_grid));
  const auto vals = values_on_grid(e, g);
  const TrigPoly de = detail::differentiate_unrounded(e, 1);
  const TrigPoly d2e = detail::differentiate_unrounded(e, 2);
  const double h = iv.length() / static_cast<double>(g);

  std::vector<ErrorPoint> out;
  for (std::size_t i = 0; i < g; ++i) {
    const double prev = vals[(i + g - 1) % g].real(), cur = vals[i].real(), next = vals[(i + 1) % g].real();
    const bool is_max = cur >= prev && cur > next;
    const bool is_min = cur <= prev && cur < next;
    if (!is_max && !is_min) continue;
    const double t_grid = iv.a() + static_cast<double>(i) * h;

    double t = t_grid;
    bool ok = true;
    for (int it = 0; it < 8; ++it) {
      const double curv = d2e(t).real();
      if (curv == 0) {
        ok = false;
        break;
      }
      const double step = de(t).real() / curv;
      t -= step;
      if (std::abs(t - t_grid) > h) {
        ok = false;
        break;
      }
      if (std::abs(step) <= 1e-15 * (1 + std::abs(t))) break;
    }
    if (!ok) {
      const double denom = prev - 2 * cur + next;
      t = denom == 0 ? t_grid : t_grid + 0.5 * h * (prev - next) / denom;
    }
    double ev = e(t).real();
    if (std::abs(ev) < std::abs(cur)) {
      t = t_grid;
      ev = cur;
    }
    out.push_back({iv.reduce(t), ev});
  }
  std::sort(out.begin(), out.end(), [](const ErrorPoint& x, const ErrorPoint& y) { return x.t < y.t; });
  return out;
}

// Reduces local extrema to an alternating cyclic sequence of `target` points
// that keeps the largest errors.
inline std::vector<ErrorPoint> select_alternating(std::vector<ErrorPoint> ext, std::size_t target) {
  const auto sgn = [](double v) { return v >= 0 ? 1 : -1; };
  std::vector<ErrorPoint> alt;
  for (const auto& p : ext) {
    if (!alt.empty() && sgn(alt.back().e) == sgn(p.e)) {
      if (std::abs(p.e) > std::abs(alt.back().e)) alt.back() = p;
    } else {
      alt.push_back(p);
    }
  }
  while (alt.size() > 1 && sgn(alt.front().e) == sgn(alt.back().e)) {
    if (std::abs(alt.back().e) > std::abs(alt.front().e)) alt.front() = alt.back();
    alt.pop_back();
  }
  while (alt.size() > target) {
    const std::size_t n = alt.size();
    std::size_t i = 0;
    for (std::size_t j = 1; j < n; ++j)
      if (std::abs(alt[j].e) < std::abs(alt[i].e)) i = j;
    const std::size_t prev = (i + n - 1) % n, next = (i + 1) % n;
    const std::size_t j = std::abs(alt[prev].e) < std::abs(alt[next].e) ? prev : next;
    const std::size_t hi = std::max(i, j), lo = std::min(i, j);
    alt.erase(alt.begin() + static_cast<std::ptrdiff_t>(hi));
    alt.erase(alt.begin() + static_cast<std::ptrdiff_t>(lo));
  }
  return alt;
}

}  // namespace detail

/// Best sup-norm approximation of degree n to a real periodic function.
/// The error of the result equioscillates on `reference` (2n+2 points).
inline RemezResult trigremez(const TrigPoly& f, int n, const RemezOptions& opts = {}) {
  if (!f.is_real()) throw RealnessError("trigremez: function must be real valued");
  if (n < 0) throw DomainError("trigremez: degree must be non-negative");
  const Interval& iv = f.interval();
  const std::size_t nref = 2 * static_cast<std::size_t>(n) + 2;
  const double omega = iv.omega();

  RemezResult result;
  result.reference = trig_points(nref, iv);
  result.signs.resize(nref);
  for (std::size_t i = 0; i < nref; ++i) result.signs[i] = i % 2 == 0 ? 1 : -1;

  if (f.degree() <= n) {
    result.best = simplify(f);
    result.level = 0;
    return result;
  }

  const auto dim = static_cast<Eigen::Index>(nref);
  double spread = std::numeric_limits<double>::infinity();
  for (int iter = 1; iter <= opts.max_iterations; ++iter) {
    Eigen::MatrixXd a(dim, dim);
    Eigen::VectorXd rhs(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      const double r = result.reference[static_cast<std::size_t>(i)];
      a(i, 0) = 1.0;
      for (int k = 1; k <= n; ++k) {
        a(i, k) = std::cos(k * omega * r);
        a(i, n + k) = std::sin(k * omega * r);
      }
      a(i, dim - 1) = (i % 2 == 0) ? 1.0 : -1.0;
      rhs(i) = f(r).real();
    }
    const Eigen::VectorXd x = a.partialPivLu().solve(rhs);
    std::vector<double> ac(static_cast<std::size_t>(n) + 1), bc(static_cast<std::size_t>(n));
    for (int k = 0; k <= n; ++k) ac[static_cast<std::size_t>(k)] = x(k);
    for (int k = 1; k <= n; ++k) bc[static_cast<std::size_t>(k - 1)] = x(n + k);
    const TrigPoly p = cos_sin_to_exp(std::span<const double>(ac), std::span<const double>(bc), iv);

    std::vector<Complex> ec(f.to_odd().length());
    const int nf = f.to_odd().degree();
    for (int k = -nf; k <= nf; ++k) ec[static_cast<std::size_t>(k + nf)] = f.coeff(k) - p.coeff(k);
    const TrigPoly err(std::move(ec), iv, true);

    auto ext = detail::select_alternating(detail::error_extrema(err, nref, opts.oversample), nref);
    result.best = p;
    result.iterations = iter;
    if (ext.size() < nref) {
      // Error curve alternates fewer times than the reference needs: the
      // levelled error vanished, so p already interpolates f to rounding.
      double mx = 0;
      for (const auto& q : ext) mx = std::max(mx, std::abs(q.e));
      if (mx <= 1e-13 * f.max_abs_coeff() * static_cast<double>(f.length())) {
        result.level = mx;
        return result;
      }
      throw ConvergenceError("trigremez: error curve lost alternation");
    }
    double mx = 0, mn = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < nref; ++i) {
      result.reference[i] = ext[i].t;
      result.signs[i] = ext[i].e >= 0 ? 1 : -1;
      mx = std::max(mx, std::abs(ext[i].e));
      mn = std::min(mn, std::abs(ext[i].e));
    }
    result.level = mx;
    spread = (mx - mn) / mx;
    if (spread <= opts.spread_tol) return result;
  }
  if (spread <= opts.accept_tol) return result;
  throw ConvergenceError("trigremez: exchange stagnated after " + std::to_string(opts.max_iterations) +
                         " iterations (relative spread " + std::to_string(spread) + ")");
}

/// Black-box variant: f is resolved adaptively first; if that fails, its
/// interpolant on 2^14 points is used and the result is flagged.
template <class F>
RemezResult trigremez(F&& f, const Interval& interval, int n, const RemezOptions& opts = {}) {
  TrigPoly fp;
  bool fallback = false;
  try {
    fp = build_adaptive(f, interval);
  } catch (const ResolutionError&) {
    fp = build_fixed(f, interval, std::size_t{1} << 14);
    fallback = true;
  }
  RemezResult r = trigremez(fp, n, opts);
  r.sampled_fallback = fallback;
  return r;
}

}  // namespace trigfun
