#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace trigfun::detail {

using Complex = std::complex<double>;

// Parlett-Reinsch balancing with 1-norms, scaling by powers of two so that no
// rounding is introduced.
template <class Matrix>
void balance(Matrix& m) {
  const Eigen::Index n = m.rows();
  constexpr double gamma = 0.95;
  bool changed = true;
  while (changed) {
    changed = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double row = m.row(i).template lpNorm<1>() - std::abs(m(i, i));
      const double col = m.col(i).template lpNorm<1>() - std::abs(m(i, i));
      if (row == 0 || col == 0) continue;
      int exponent = 0;
      std::frexp(row / col, &exponent);
      exponent /= 2;
      if (exponent == 0) continue;
      const double new_col = std::ldexp(col, exponent);
      const double new_row = std::ldexp(row, -exponent);
      if (new_col + new_row < gamma * (col + row)) {
        changed = true;
        m.row(i) *= std::ldexp(1.0, -exponent);
        m.col(i) *= std::ldexp(1.0, exponent);
      }
    }
  }
}

// Roots of sum_j d_j z^j. Exact zeros at either end are stripped first.
inline std::vector<Complex> companion_roots(std::vector<Complex> d) {
  while (!d.empty() && d.back() == 0.0) d.pop_back();
  std::size_t low = 0;
  while (low < d.size() && d[low] == 0.0) ++low;
  d.erase(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(low));
  if (d.size() < 2) return {};
  const auto deg = static_cast<Eigen::Index>(d.size() - 1);
  if (deg == 1) return {-d[0] / d[1]};

  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(deg, deg);
  for (Eigen::Index i = 1; i < deg; ++i) c(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < deg; ++i) c(i, deg - 1) = -d[static_cast<std::size_t>(i)] / d.back();
  balance(c);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(c, false);
  std::vector<Complex> out(static_cast<std::size_t>(deg));
  for (Eigen::Index i = 0; i < deg; ++i) out[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
  return out;
}

// Second-kind Chebyshev points cos(pi*j/d), j = 0..d, on [-1, 1].
inline std::vector<double> chebyshev_points(int d) {
  std::vector<double> x(static_cast<std::size_t>(d) + 1);
  for (int j = 0; j <= d; ++j) x[static_cast<std::size_t>(j)] = std::cos(std::numbers::pi * j / d);
  return x;
}

// Chebyshev coefficients of the degree-d interpolant through values at
// chebyshev_points(d); direct O(d^2) cosine sums.
inline std::vector<Complex> chebyshev_coeffs(const std::vector<Complex>& f) {
  const int d = static_cast<int>(f.size()) - 1;
  std::vector<Complex> a(f.size());
  for (int k = 0; k <= d; ++k) {
    Complex s = 0.0;
    for (int j = 0; j <= d; ++j) {
      const double w = (j == 0 || j == d) ? 0.5 : 1.0;
      s += w * f[static_cast<std::size_t>(j)] * std::cos(std::numbers::pi * j * k / d);
    }
    a[static_cast<std::size_t>(k)] = s * (2.0 / d);
  }
  a[0] *= 0.5;
  a[static_cast<std::size_t>(d)] *= 0.5;
  return a;
}

// Roots of sum_k a_k T_k(x) as eigenvalues of the colleague matrix.
inline std::vector<Complex> colleague_roots(std::vector<Complex> a) {
  double scale = 0;
  for (const auto& c : a) scale = std::max(scale, std::abs(c));
  if (scale == 0) return {};
  while (a.size() > 1 && std::abs(a.back()) <= 1e-15 * scale) a.pop_back();
  const auto deg = static_cast<Eigen::Index>(a.size() - 1);
  if (deg < 1) return {};
  if (deg == 1) return {-a[0] / a[1]};

  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(deg, deg);
  c(0, 1) = 1.0;
  for (Eigen::Index i = 1; i < deg; ++i) {
    c(i, i - 1) = 0.5;
    if (i + 1 < deg) c(i, i + 1) = 0.5;
  }
  const Complex lead = a.back();
  for (Eigen::Index j = 0; j < deg; ++j) c(deg - 1, j) -= a[static_cast<std::size_t>(j)] / (2.0 * lead);
  balance(c);

  const bool real = std::all_of(a.begin(), a.end(), [](const Complex& v) { return v.imag() == 0; });
  std::vector<Complex> out(static_cast<std::size_t>(deg));
  if (real) {
    Eigen::EigenSolver<Eigen::MatrixXd> solver(c.real(), false);
    for (Eigen::Index i = 0; i < deg; ++i) out[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
  } else {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(c, false);
    for (Eigen::Index i = 0; i < deg; ++i) out[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
  }
  return out;
}

}  // namespace trigfun::detail
