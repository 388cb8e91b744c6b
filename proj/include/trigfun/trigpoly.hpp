#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "trigfun/detail/fft.hpp"
#include "trigfun/error.hpp"
#include "trigfun/interval.hpp"

namespace trigfun {

using Complex = std::complex<double>;

namespace detail {

// exp(i*k*omega*x) for the interval's omega, computed from the fractional
// number of periods so that large k*x keeps its phase.
inline Complex mode_phase(std::int64_t k, double x, const Interval& interval) {
  const double cycles = static_cast<double>(k) * (x / interval.length());
  const double frac = cycles - std::floor(cycles);
  const double theta = 2 * std::numbers::pi * frac;
  return {std::cos(theta), std::sin(theta)};
}

inline std::size_t wrap_index(std::int64_t k, std::size_t n) {
  const auto nn = static_cast<std::int64_t>(n);
  std::int64_t r = k % nn;
  if (r < 0) r += nn;
  return static_cast<std::size_t>(r);
}

}  // namespace detail

/// A trigonometric polynomial on a periodic interval, stored by its
/// exp(i*k*omega*t) coefficients in ascending order of k.
///
/// Odd length N = 2n+1 holds c_{-n}..c_n. Even length N = 2n holds
/// c_{-n+1}..c_{n-1} in slots 1..N-1, and slot 0 holds the amplitude A of a
/// top mode A*cos(n*omega*(t-a)); this is the storage an FFT produces for
/// equispaced data and makes the sawtooth (-1)^j interpolate to a cosine.
///
/// When is_real() is set, c_{-k} == conj(c_k) holds exactly.
class TrigPoly {
 public:
  /// The zero function on the default interval [-1, 1].
  TrigPoly() : coeffs_{Complex(0)}, real_(true) {}

  TrigPoly(std::vector<Complex> coeffs, Interval interval, bool is_real = false)
      : coeffs_(std::move(coeffs)), interval_(interval), real_(is_real) {
    if (coeffs_.empty()) throw InvalidSizeError("trigonometric polynomial needs at least one coefficient");
    if (real_) symmetrize();
  }

  static TrigPoly constant(Complex value, Interval interval) {
    return TrigPoly({value}, interval, value.imag() == 0);
  }
  static TrigPoly zero(Interval interval) { return constant(0.0, interval); }

  std::size_t length() const noexcept { return coeffs_.size(); }
  /// n such that the polynomial lies in span{exp(i*k*omega*t) : |k| <= n}.
  int degree() const noexcept { return static_cast<int>(coeffs_.size() / 2); }
  bool is_even_length() const noexcept { return coeffs_.size() % 2 == 0; }
  bool is_real() const noexcept { return real_; }
  const Interval& interval() const noexcept { return interval_; }

  /// Raw storage, ascending k; see the class comment for the even layout.
  std::span<const Complex> data() const noexcept { return coeffs_; }

  /// Lowest stored index, -floor(N/2).
  int min_index() const noexcept { return -degree(); }

  /// Exponential-basis coefficient c_k (absolute coordinates). For even
  /// length the top cosine is split into its two exponential halves.
  Complex coeff(int k) const {
    const int n = degree();
    if (k < -n || k > n) return 0.0;
    if (!is_even_length()) return coeffs_[static_cast<std::size_t>(k + n)];
    if (k > -n && k < n) return coeffs_[static_cast<std::size_t>(k + n)];
    const Complex half = coeffs_[0] * 0.5;
    return k == n ? half * detail::mode_phase(-n, interval_.a(), interval_)
                  : half * detail::mode_phase(n, interval_.a(), interval_);
  }

  /// Equivalent odd-length polynomial (identity for odd lengths).
  TrigPoly to_odd() const {
    if (!is_even_length()) return *this;
    const int n = degree();
    std::vector<Complex> c(2 * static_cast<std::size_t>(n) + 1);
    for (int k = -n; k <= n; ++k) c[static_cast<std::size_t>(k + n)] = coeff(k);
    TrigPoly out;
    out.coeffs_ = std::move(c);
    out.interval_ = interval_;
    out.real_ = real_;
    if (real_) out.symmetrize();
    return out;
  }

  /// Evaluation by Horner's rule in z = exp(i*omega*t) and conj(z).
  /// Any real t is valid; the polynomial is periodic.
  Complex operator()(double t) const {
    const double tr = interval_.reduce(t);
    const double theta = interval_.omega() * tr;
    const Complex z(std::cos(theta), std::sin(theta));
    const int n = degree();
    const int top = is_even_length() ? n - 1 : n;
    const auto at = [&](int k) { return coeffs_[static_cast<std::size_t>(k + n)]; };

    Complex pos = 0.0;
    if (top >= 1) {
      Complex acc = at(top);
      for (int k = top - 1; k >= 1; --k) acc = acc * z + at(k);
      pos = acc * z;
    }
    Complex value;
    if (real_) {
      value = Complex(at(0).real() + 2 * pos.real(), 0.0);
    } else {
      Complex neg = 0.0;
      if (top >= 1) {
        const Complex zc = std::conj(z);
        Complex acc = at(-top);
        for (int k = top - 1; k >= 1; --k) acc = acc * zc + at(-k);
        neg = acc * zc;
      }
      value = at(0) + pos + neg;
    }
    if (is_even_length() && n >= 1) {
      const double s = tr - interval_.a();
      const double phase = 2 * std::numbers::pi * (static_cast<double>(n) * s / interval_.length());
      value += coeffs_[0] * std::cos(phase);
    }
    return value;
  }

  std::vector<Complex> operator()(std::span<const double> ts) const {
    std::vector<Complex> out;
    out.reserve(ts.size());
    for (double t : ts) out.push_back((*this)(t));
    return out;
  }

  double max_abs_coeff() const {
    double m = 0;
    for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
  }

  double sum_abs_coeffs() const {
    double s = 0;
    for (const auto& c : coeffs_) s += std::abs(c);
    return s;
  }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Complex& c) { return c == 0.0; });
  }

 private:
  void symmetrize() {
    const int n = degree();
    const std::size_t len = coeffs_.size();
    const auto idx = [n](int k) { return static_cast<std::size_t>(k + n); };
    const int top = (len % 2 == 0) ? n - 1 : n;
    for (int k = 1; k <= top; ++k) {
      const Complex avg = 0.5 * (coeffs_[idx(k)] + std::conj(coeffs_[idx(-k)]));
      coeffs_[idx(k)] = avg;
      coeffs_[idx(-k)] = std::conj(avg);
    }
    coeffs_[idx(0)] = Complex(coeffs_[idx(0)].real(), 0.0);
    if (len % 2 == 0) coeffs_[0] = Complex(coeffs_[0].real(), 0.0);
  }

  std::vector<Complex> coeffs_;
  Interval interval_;
  bool real_ = false;
};

/// N equispaced points a + k*L/N, k = 0..N-1; the right endpoint is excluded.
inline std::vector<double> trig_points(std::size_t n, const Interval& interval) {
  if (n == 0) throw InvalidSizeError("trig_points: need at least one point");
  const double h = interval.length() / static_cast<double>(n);
  std::vector<double> t(n);
  for (std::size_t k = 0; k < n; ++k) t[k] = interval.a() + static_cast<double>(k) * h;
  return t;
}

/// Interpolating trigonometric polynomial through values sampled at
/// trig_points(N). Even N follows the top-cosine convention. Exactly real
/// data yields a polynomial flagged real.
inline TrigPoly interp_coeffs(std::span<const Complex> values, const Interval& interval) {
  const std::size_t n_pts = values.size();
  if (n_pts == 0) throw InvalidSizeError("interp_coeffs: empty sample vector");
  std::vector<Complex> dft(values.begin(), values.end());
  detail::fft(dft, -1);
  const double inv = 1.0 / static_cast<double>(n_pts);
  const auto half = static_cast<std::int64_t>(n_pts / 2);
  const bool even = n_pts % 2 == 0;

  std::vector<Complex> c(n_pts);
  for (std::int64_t k = -half; k < static_cast<std::int64_t>(n_pts) - half; ++k) {
    const Complex local = dft[detail::wrap_index(k, n_pts)] * inv;
    const auto slot = static_cast<std::size_t>(k + half);
    if (even && k == -half)
      c[slot] = local;  // top cosine amplitude, kept in local coordinates
    else
      c[slot] = local * detail::mode_phase(-k, interval.a(), interval);
  }
  const bool real = std::all_of(values.begin(), values.end(), [](const Complex& v) { return v.imag() == 0; });
  return TrigPoly(std::move(c), interval, real);
}

inline TrigPoly interp_coeffs(std::span<const double> values, const Interval& interval) {
  std::vector<Complex> v(values.begin(), values.end());
  return interp_coeffs(std::span<const Complex>(v), interval);
}

/// Values of p at trig_points(m) via one inverse FFT. Any m >= 1 is valid;
/// modes beyond the grid fold onto their aliases, which is exact at the
/// grid points.
inline std::vector<Complex> values_on_grid(const TrigPoly& p, std::size_t m) {
  if (m == 0) throw InvalidSizeError("values_on_grid: need at least one point");
  const TrigPoly q = p.to_odd();
  const Interval& iv = q.interval();
  const int n = q.degree();
  std::vector<Complex> buf(m, 0.0);
  for (int k = -n; k <= n; ++k) {
    const Complex local = q.coeff(k) * detail::mode_phase(k, iv.a(), iv);
    buf[detail::wrap_index(k, m)] += local;
  }
  detail::fft(buf, +1);
  if (q.is_real())
    for (auto& v : buf) v = Complex(v.real(), 0.0);
  return buf;
}

/// Cosine/sine view: f = sum a_k cos(k*omega*t) + sum b_k sin(k*omega*t).
/// a holds a_0..a_n, b holds b_1..b_n.
struct CosSinCoeffs {
  std::vector<Complex> a;
  std::vector<Complex> b;
};

inline CosSinCoeffs exp_to_cos_sin(const TrigPoly& p) {
  const TrigPoly q = p.to_odd();
  const int n = q.degree();
  CosSinCoeffs out;
  out.a.resize(static_cast<std::size_t>(n) + 1);
  out.b.resize(static_cast<std::size_t>(n));
  out.a[0] = q.coeff(0);
  const Complex i(0, 1);
  for (int k = 1; k <= n; ++k) {
    const Complex ck = q.coeff(k);
    const Complex cmk = q.coeff(-k);
    out.a[static_cast<std::size_t>(k)] = ck + cmk;
    out.b[static_cast<std::size_t>(k - 1)] = i * (ck - cmk);
  }
  return out;
}

/// Inverse of exp_to_cos_sin. b may carry n entries (b_1..b_n) or n+1 with
/// an unused leading slot.
inline TrigPoly cos_sin_to_exp(std::span<const Complex> a, std::span<const Complex> b, const Interval& interval) {
  if (a.empty()) throw ShapeError("cos_sin_to_exp: a must hold at least a_0");
  const std::size_t n = a.size() - 1;
  std::span<const Complex> bk;
  if (b.size() == n)
    bk = b;
  else if (b.size() == n + 1)
    bk = b.subspan(1);
  else
    throw ShapeError("cos_sin_to_exp: expected len(b) == len(a)-1 (or len(a) with a padding slot), got " +
                     std::to_string(b.size()) + " vs " + std::to_string(a.size()));
  std::vector<Complex> c(2 * n + 1);
  c[n] = a[0];
  const Complex two_i(0, 2);
  for (std::size_t k = 1; k <= n; ++k) {
    c[n + k] = a[k] / 2.0 + bk[k - 1] / two_i;
    c[n - k] = a[k] / 2.0 - bk[k - 1] / two_i;
  }
  const auto real_part = [](const Complex& v) { return v.imag() == 0; };
  const bool real = std::all_of(a.begin(), a.end(), real_part) && std::all_of(bk.begin(), bk.end(), real_part);
  return TrigPoly(std::move(c), interval, real);
}

inline TrigPoly cos_sin_to_exp(std::span<const double> a, std::span<const double> b, const Interval& interval) {
  std::vector<Complex> ac(a.begin(), a.end()), bc(b.begin(), b.end());
  return cos_sin_to_exp(std::span<const Complex>(ac), std::span<const Complex>(bc), interval);
}

/// Barycentric trigonometric interpolation through values at trig_points(N):
/// csc weights for odd N, cot weights for even N. O(N) per point. Exact grid
/// hits return the stored value.
inline Complex eval_barycentric(std::span<const Complex> values, const Interval& interval, double t) {
  const std::size_t n = values.size();
  if (n == 0) throw InvalidSizeError("eval_barycentric: empty sample vector");
  if (n == 1) return values[0];
  const double tr = interval.reduce(t);
  const double h = interval.length() / static_cast<double>(n);
  const auto nearest = static_cast<std::size_t>(std::llround((tr - interval.a()) / h)) % n;
  if (interval.a() + static_cast<double>(nearest) * h == tr) return values[nearest];

  const bool odd = n % 2 == 1;
  const double half_omega = interval.omega() / 2;
  Complex num = 0.0;
  double den = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double arg = half_omega * (tr - (interval.a() + static_cast<double>(k) * h));
    const double s = std::sin(arg);
    if (s == 0) return values[k];
    double w = odd ? 1.0 / s : std::cos(arg) / s;
    if (k % 2 == 1) w = -w;
    num += w * values[k];
    den += w;
  }
  return num / den;
}

inline Complex eval_barycentric(std::span<const double> values, const Interval& interval, double t) {
  std::vector<Complex> v(values.begin(), values.end());
  return eval_barycentric(std::span<const Complex>(v), interval, t);
}

/// Index in [-n, n] that mode k aliases to on an odd grid of N = 2n+1 points.
inline std::int64_t alias_index(std::int64_t k, std::int64_t n_points) {
  if (n_points <= 0 || n_points % 2 == 0)
    throw InvalidSizeError("alias_index: grid size must be a positive odd number");
  const std::int64_t n = (n_points - 1) / 2;
  std::int64_t r = (k + n) % n_points;
  if (r < 0) r += n_points;
  return r - n;
}

/// Averages each pair c_{-k}, conj(c_k), zeroes Im c_0 and flags the result real.
inline TrigPoly enforce_real_symmetry(const TrigPoly& p) {
  return TrigPoly(std::vector<Complex>(p.data().begin(), p.data().end()), p.interval(), true);
}

/// Carries p to another interval with the basis held fixed in absolute
/// coordinates: g(t) = p(a + (t - a') * L/L'). A pure translation by
/// delta multiplies c_k by exp(-i*k*omega*delta).
inline TrigPoly transplant(const TrigPoly& p, const Interval& target) {
  const Interval& src = p.interval();
  const int n = p.degree();
  std::vector<Complex> c(p.data().begin(), p.data().end());
  const int first = p.is_even_length() ? -n + 1 : -n;
  for (int k = first; k <= n - (p.is_even_length() ? 1 : 0); ++k) {
    const Complex phase = detail::mode_phase(k, src.a(), src) * detail::mode_phase(-k, target.a(), target);
    c[static_cast<std::size_t>(k + n)] *= phase;
  }
  return TrigPoly(std::move(c), target, p.is_real());
}

}  // namespace trigfun
