#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "trigfun/error.hpp"
#include "trigfun/interval.hpp"
#include "trigfun/trigpoly.hpp"

namespace trigfun {

struct BuildOptions {
  double rel_tol = 0x1p-52;
  std::size_t max_length = 65536;
  std::optional<std::size_t> forced_length;
};

namespace detail {

inline void validate(const BuildOptions& opts) {
  if (!(opts.rel_tol > 0 && opts.rel_tol < 1))
    throw DomainError("BuildOptions: rel_tol must lie in (0, 1)");
  if (opts.max_length < 16 || !is_power_of_two(opts.max_length))
    throw InvalidSizeError("BuildOptions: max_length must be a power of two >= 16");
  if (opts.forced_length && *opts.forced_length == 0)
    throw InvalidSizeError("BuildOptions: forced_length must be positive");
}

template <class F>
Complex sample(F& f, double t) {
  const Complex v = Complex(f(t));
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw NumericalError("function returned a non-finite value at t = " + std::to_string(t));
  return v;
}

inline constexpr double kSampleNoise = 4 * std::numeric_limits<double>::epsilon();

// Realness is decided from samples only: max |Im f| <= 8 eps max |f|.
inline bool samples_look_real(std::span<const Complex> v) {
  double max_abs = 0, max_imag = 0;
  for (const auto& x : v) {
    max_abs = std::max(max_abs, std::abs(x));
    max_imag = std::max(max_imag, std::abs(x.imag()));
  }
  return max_imag <= 8 * std::numeric_limits<double>::epsilon() * max_abs;
}

inline TrigPoly from_samples(std::vector<Complex> samples, const Interval& interval) {
  if (samples_look_real(samples))
    for (auto& v : samples) v = Complex(v.real(), 0.0);
  return interp_coeffs(std::span<const Complex>(samples), interval);
}

// Off-grid check that catches modes aliased onto a coarse grid.
template <class F>
bool passes_sample_test(F& f, const TrigPoly& p, double tol) {
  constexpr double fractions[] = {0.2718281828459045, 0.5772156649015329, 0.8414709848078965};
  const Interval& iv = p.interval();
  for (double frac : fractions) {
    const double t = iv.a() + frac * iv.length();
    if (std::abs(sample(f, t) - p(t)) > tol) return false;
  }
  return true;
}

// Envelope e_m = max(|c_m|, |c_-m|) over the stored coefficients of p.
inline std::vector<double> mode_envelope(std::span<const Complex> coeffs) {
  const std::size_t n_pts = coeffs.size();
  const std::size_t half = n_pts / 2;
  std::vector<double> env(half + 1, 0.0);
  for (std::size_t j = 0; j < n_pts; ++j) {
    const auto k = static_cast<long>(j) - static_cast<long>(half);
    const auto m = static_cast<std::size_t>(std::labs(k));
    env[m] = std::max(env[m], std::abs(coeffs[j]));
  }
  return env;
}

}  // namespace detail

/// Decides whether a coefficient sequence (canonical ascending order, as
/// produced on a power-of-two grid) has converged, and returns the chopped
/// degree n. n is the smallest degree with every |c_k|, |k| > n, at or below
/// rel_tol * max(max_k |c_k|, scale); convergence additionally needs at
/// least max(3, N/8) below-threshold entries at the top of the spectrum.
/// rel_tol is floored at kSampleNoise, the rounding level of a transform.
inline std::optional<int> chop_tail(std::span<const Complex> coeffs, double rel_tol, double scale = 0) {
  if (coeffs.empty()) throw InvalidSizeError("chop_tail: empty coefficient sequence");
  const auto env = detail::mode_envelope(coeffs);
  const double max_c = *std::max_element(env.begin(), env.end());
  if (max_c == 0) return 0;
  const double threshold = std::max(rel_tol, detail::kSampleNoise) * std::max(max_c, scale);
  int n = 0;
  for (std::size_t m = env.size(); m-- > 0;) {
    if (env[m] > threshold) {
      n = static_cast<int>(m);
      break;
    }
  }
  const auto len = static_cast<long>(coeffs.size());
  const long tail = len - (2 * static_cast<long>(n) + 1);
  const long needed = std::max(3L, len / 8);
  if (tail < needed) return std::nullopt;
  return n;
}

/// Drops trailing modes whose coefficients are at or below
/// rel_tol * max(max|c_k|, scale). No plateau is required; this is the
/// rounding step applied after arithmetic. A fully negligible polynomial
/// becomes the zero function of length 1.
inline TrigPoly simplify(const TrigPoly& p, double rel_tol = 0x1p-52, double scale = 0) {
  const auto env = detail::mode_envelope(p.data());
  const double max_c = *std::max_element(env.begin(), env.end());
  const double threshold = rel_tol * std::max(max_c, scale);
  int keep = -1;
  for (std::size_t m = env.size(); m-- > 0;) {
    if (env[m] > threshold) {
      keep = static_cast<int>(m);
      break;
    }
  }
  if (keep < 0) return TrigPoly::zero(p.interval());
  if (keep == p.degree()) return p;
  std::vector<Complex> c(2 * static_cast<std::size_t>(keep) + 1);
  for (int k = -keep; k <= keep; ++k) c[static_cast<std::size_t>(k + keep)] = p.coeff(k);
  return TrigPoly(std::move(c), p.interval(), p.is_real());
}

/// Interpolant through f sampled at exactly n points (no adaptivity).
/// Even n gives an even-length polynomial.
template <class F>
TrigPoly build_fixed(F&& f, const Interval& interval, std::size_t n) {
  if (n == 0) throw InvalidSizeError("build_fixed: need at least one point");
  const auto t = trig_points(n, interval);
  std::vector<Complex> samples(n);
  for (std::size_t j = 0; j < n; ++j) samples[j] = detail::sample(f, t[j]);
  return detail::from_samples(std::move(samples), interval);
}

namespace detail {

// build_adaptive with the chop threshold measured against at least
// abs_scale; used where f is a correction that may be tiny.
template <class F>
TrigPoly build_adaptive_scaled(F& f, const Interval& interval, const BuildOptions& opts, double abs_scale) {
  std::vector<Complex> samples;
  for (std::size_t n_pts = 16; n_pts <= opts.max_length; n_pts *= 2) {
    const auto t = trig_points(n_pts, interval);
    std::vector<Complex> next(n_pts);
    for (std::size_t j = 0; j < n_pts; ++j) {
      // Even points coincide bitwise with the previous grid.
      if (!samples.empty() && j % 2 == 0)
        next[j] = samples[j / 2];
      else
        next[j] = detail::sample(f, t[j]);
    }
    samples = std::move(next);

    double max_abs = 0;
    for (const auto& v : samples) max_abs = std::max(max_abs, std::abs(v));
    if (max_abs <= 1e-300) return TrigPoly::zero(interval);
    const double ref = std::max(max_abs, abs_scale);

    const TrigPoly p = detail::from_samples(samples, interval);
    // Samples carry a few ulps of max|f| rounding; never ask the tail to
    // sit below that floor.
    const double noise_scale = std::max(kSampleNoise * ref / std::max(opts.rel_tol, kSampleNoise), abs_scale);
    const auto n = chop_tail(p.data(), opts.rel_tol, noise_scale);
    if (!n) continue;

    const int half = p.degree();
    std::vector<Complex> c(2 * static_cast<std::size_t>(*n) + 1);
    for (int k = -*n; k <= *n; ++k) c[static_cast<std::size_t>(k + *n)] = p.data()[static_cast<std::size_t>(k + half)];
    TrigPoly candidate(std::move(c), interval, p.is_real());
    if (!passes_sample_test(f, candidate, std::sqrt(std::max(opts.rel_tol, kSampleNoise)) * ref))
      continue;
    return candidate;
  }

  std::string msg = "Function not resolved using " + std::to_string(opts.max_length) + " pts.";
  const Complex fa = samples.front();
  const Complex fb = Complex(f(interval.b()));
  double scale = 0;
  for (const auto& v : samples) scale = std::max(scale, std::abs(v));
  if (std::abs(fb - fa) > 1e-8 * scale) msg += " The endpoint values differ, so the function is not periodic.";
  throw ResolutionError(msg, opts.max_length);
}

}  // namespace detail

/// Adaptive construction: samples f on grids of 16, 32, 64, ... points until
/// the discrete Fourier coefficients converge to rel_tol, then chops to an
/// odd length. The chop threshold is floored at 4 eps max|f(t_j)|, the
/// rounding level of the samples. Throws ResolutionError at max_length.
template <class F>
TrigPoly build_adaptive(F&& f, const Interval& interval, const BuildOptions& opts = {}) {
  detail::validate(opts);
  if (opts.forced_length) return build_fixed(f, interval, *opts.forced_length);
  return detail::build_adaptive_scaled(f, interval, opts, 0.0);
}

/// Polynomial from explicit coefficients in canonical order. Flagged real
/// exactly when the coefficients are conjugate symmetric.
inline TrigPoly build_from_coeffs(std::vector<Complex> coeffs, const Interval& interval) {
  if (coeffs.empty()) throw InvalidSizeError("build_from_coeffs: empty coefficient sequence");
  const std::size_t len = coeffs.size();
  const auto n = static_cast<long>(len / 2);
  const long top = len % 2 == 0 ? n - 1 : n;
  const auto at = [&](long k) { return coeffs[static_cast<std::size_t>(k + n)]; };
  bool real = at(0).imag() == 0 && (len % 2 == 1 || coeffs[0].imag() == 0);
  for (long k = 1; real && k <= top; ++k) real = at(-k) == std::conj(at(k));
  return TrigPoly(std::move(coeffs), interval, real);
}

}  // namespace trigfun
