#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls into the library: DFTs are direct sums, roots come from sign changes,
// integrals from long-double trapezoid sums.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;
using LComplex = std::complex<long double>;

inline constexpr long double kPi = 3.141592653589793238462643383279502884L;

/// Trigonometric interpolant through f at a + jL/N, evaluated by direct
/// O(N) sums per coefficient. Even N splits the top mode into a cosine.
class DirectInterpolant {
 public:
  DirectInterpolant(const std::vector<Complex>& values, double a, double length)
      : a_(a), length_(length), n_pts_(static_cast<long>(values.size())) {
    const long n = n_pts_ / 2;
    const long hi = n_pts_ % 2 == 0 ? n - 1 : n;
    for (long k = -n; k <= hi; ++k) {
      LComplex s = 0;
      for (long j = 0; j < n_pts_; ++j) {
        const long double ang = -2 * kPi * static_cast<long double>(k * j % n_pts_) / static_cast<long double>(n_pts_);
        s += LComplex(values[static_cast<std::size_t>(j)]) * LComplex(std::cos(ang), std::sin(ang));
      }
      coeffs_.push_back(s / static_cast<long double>(n_pts_));
    }
  }

  Complex operator()(double t) const {
    const long n = n_pts_ / 2;
    const long double x = 2 * kPi * (static_cast<long double>(t) - a_) / length_;
    LComplex s = 0;
    const bool even = n_pts_ % 2 == 0;
    for (std::size_t idx = 0; idx < coeffs_.size(); ++idx) {
      const long k = -n + static_cast<long>(idx);
      if (even && k == -n) {
        s += coeffs_[idx] * std::cos(static_cast<long double>(n) * x);
        continue;
      }
      s += coeffs_[idx] * LComplex(std::cos(k * x), std::sin(k * x));
    }
    return Complex(s);
  }

  /// Raw discrete coefficient d_k (local coordinates, k relative to a).
  Complex raw(long k) const { return Complex(coeffs_.at(static_cast<std::size_t>(k + n_pts_ / 2))); }

 private:
  long double a_, length_;
  long n_pts_;
  std::vector<LComplex> coeffs_;
};

/// Exact Fourier coefficient of f on [0, 2 pi) by an M-point long-double
/// trapezoid sum (M large enough that aliasing is negligible).
inline Complex fourier_coeff(const std::function<Complex(long double)>& f, long k, long m = 4096) {
  LComplex s = 0;
  for (long j = 0; j < m; ++j) {
    const long double t = 2 * kPi * static_cast<long double>(j) / static_cast<long double>(m);
    s += LComplex(f(t)) * LComplex(std::cos(k * t), -std::sin(k * t));
  }
  return Complex(s / static_cast<long double>(m));
}

/// Periodic trapezoid sum (L/N) sum_j f(a + jL/N) in long double.
inline long double trapezoid(const std::function<long double(long double)>& f, long double a, long double length,
                             long n) {
  long double s = 0;
  for (long j = 0; j < n; ++j) s += f(a + length * static_cast<long double>(j) / static_cast<long double>(n));
  return s * length / static_cast<long double>(n);
}

/// Modified Bessel I_0(x) from its power series.
inline long double bessel_i0(long double x) {
  long double term = 1, sum = 1;
  for (int k = 1; k < 60; ++k) {
    term *= (x / 2) * (x / 2) / (static_cast<long double>(k) * k);
    sum += term;
  }
  return sum;
}

/// Roots of a real function on [a, b) from sign changes on an M-point grid
/// refined by bisection.
inline std::vector<double> sign_change_roots(const std::function<double(double)>& f, double a, double b, long m) {
  std::vector<double> out;
  const double h = (b - a) / static_cast<double>(m);
  double x0 = a, f0 = f(a);
  for (long j = 1; j <= m; ++j) {
    const double x1 = a + h * static_cast<double>(j);
    const double f1 = f(x1);
    if (f0 == 0) {
      out.push_back(x0);
    } else if ((f0 < 0) != (f1 < 0) && f1 != 0) {
      double lo = x0, hi = x1, flo = f0;
      for (int it = 0; it < 200 && hi - lo > 0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double fm = f(mid);
        if ((fm < 0) == (flo < 0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      out.push_back(0.5 * (lo + hi));
    }
    x0 = x1;
    f0 = f1;
  }
  return out;
}

/// Largest |f| over an M-point grid.
inline double grid_sup(const std::function<double(double)>& f, double a, double b, long m) {
  double s = 0;
  for (long j = 0; j < m; ++j) s = std::max(s, std::abs(f(a + (b - a) * static_cast<double>(j) / static_cast<double>(m))));
  return s;
}

/// Mathieu characteristic values: -u'' + 2q cos(2t) u = lambda u on
/// [0, 2 pi), from the Hill matrix in the basis e^{ikt}, |k| <= K.
inline std::vector<double> mathieu_hill(double q, int kmax) {
  const int n = 2 * kmax + 1;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const int k = i - kmax;
    h(i, i) = static_cast<double>(k) * k;
    if (i + 2 < n) {
      h(i, i + 2) = q;
      h(i + 2, i) = q;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
  std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + n);
  return out;
}

}  // namespace oracle
