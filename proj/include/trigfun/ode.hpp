#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "trigfun/calculus.hpp"
#include "trigfun/constructor.hpp"
#include "trigfun/dual.hpp"
#include "trigfun/error.hpp"
#include "trigfun/trigpoly.hpp"

namespace trigfun {

namespace detail {

// First column of the order-m spectral differentiation matrix on N (odd)
// points: d_r = (1/N) sum_{|k|<=n} (i k omega)^m e^{2 pi i k r / N}.
inline std::vector<double> diff_stencil(std::size_t n_pts, const Interval& interval, int order) {
  const auto n = static_cast<std::int64_t>(n_pts / 2);
  std::vector<Complex> buf(n_pts, 0.0);
  for (std::int64_t k = -n; k <= n; ++k) buf[wrap_index(k, n_pts)] = std::pow(Complex(0, static_cast<double>(k) * interval.omega()), order);
  fft(buf, +1);
  std::vector<double> d(n_pts);
  for (std::size_t r = 0; r < n_pts; ++r) d[r] = buf[r].real() / static_cast<double>(n_pts);
  return d;
}

inline void require_odd_grid(std::size_t n_pts, const char* who) {
  if (n_pts % 2 == 0) throw ParityError(std::string(who) + ": grid size must be odd");
  if (n_pts < 3) throw InvalidSizeError(std::string(who) + ": grid size must be at least 3");
}

}  // namespace detail

/// Order-m Fourier differentiation matrix on trig_points(N), N odd. The
/// matrix is circulant: D(j, k) = d((j - k) mod N).
inline Eigen::MatrixXd diff_matrix(std::size_t n_pts, const Interval& interval, int order = 1) {
  detail::require_odd_grid(n_pts, "diff_matrix");
  if (order < 1) throw DomainError("diff_matrix: order must be at least 1");
  const auto d = detail::diff_stencil(n_pts, interval, order);
  const auto n = static_cast<Eigen::Index>(n_pts);
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k) m(j, k) = d[static_cast<std::size_t>((j - k + n) % n)];
  return m;
}

/// L u = a_0 u + a_1 u' + ... + a_m u^(m) with periodic coefficient functions.
class LinearPeriodicOp {
 public:
  explicit LinearPeriodicOp(std::vector<TrigPoly> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw InvalidSizeError("LinearPeriodicOp: need at least a_0");
    for (const auto& a : coeffs_)
      if (!(a.interval() == coeffs_.front().interval()))
        throw DomainError("LinearPeriodicOp: coefficients live on different intervals");
    if (coeffs_.back().is_zero()) throw DomainError("LinearPeriodicOp: leading coefficient vanishes identically");
  }

  int order() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  const Interval& interval() const noexcept { return coeffs_.front().interval(); }
  const TrigPoly& coeff(int j) const { return coeffs_.at(static_cast<std::size_t>(j)); }
  const std::vector<TrigPoly>& coeffs() const noexcept { return coeffs_; }
  bool is_real() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const TrigPoly& a) { return a.is_real(); });
  }

  TrigPoly apply(const TrigPoly& u) const {
    if (!(u.interval() == interval())) throw DomainError("LinearPeriodicOp::apply: interval mismatch");
    TrigPoly out = coeffs_[0] * u;
    for (int j = 1; j <= order(); ++j) out = out + coeffs_[static_cast<std::size_t>(j)] * differentiate(u, j);
    return out;
  }

 private:
  std::vector<TrigPoly> coeffs_;
};

/// Collocation matrix sum_j diag(a_j(t)) D^(j) on N (odd) points.
template <class Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> collocation_matrix(const LinearPeriodicOp& op,
                                                                         std::size_t n_pts) {
  detail::require_odd_grid(n_pts, "collocation_matrix");
  if constexpr (std::is_same_v<Scalar, double>) {
    if (!op.is_real()) throw RealnessError("collocation_matrix: complex coefficients need a complex matrix");
  }
  const auto n = static_cast<Eigen::Index>(n_pts);
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, n);
  for (int j = 0; j <= op.order(); ++j) {
    const auto vals = values_on_grid(op.coeff(j), n_pts);
    const auto cast = [&](Eigen::Index r) {
      if constexpr (std::is_same_v<Scalar, double>)
        return vals[static_cast<std::size_t>(r)].real();
      else
        return vals[static_cast<std::size_t>(r)];
    };
    if (j == 0) {
      for (Eigen::Index r = 0; r < n; ++r) a(r, r) += cast(r);
      continue;
    }
    const auto d = detail::diff_stencil(n_pts, op.interval(), j);
    for (Eigen::Index c = 0; c < n; ++c)
      for (Eigen::Index r = 0; r < n; ++r) a(r, c) += cast(r) * d[static_cast<std::size_t>((r - c + n) % n)];
  }
  return a;
}

struct LinearSolveOptions {
  /// Chop tolerance for the solution coefficients, relative to
  /// max(max|c_k|, scale).
  double rel_tol = 1e-13;
  double scale = 0;
  std::size_t min_grid = 33;
  std::size_t max_grid = 8193;
};

namespace detail {

template <class Scalar>
std::vector<Complex> collocation_solve(const LinearPeriodicOp& op, const TrigPoly& rhs, std::size_t n_pts) {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  Matrix a = collocation_matrix<Scalar>(op, n_pts);
  const auto f = values_on_grid(rhs, n_pts);
  Vector b(static_cast<Eigen::Index>(n_pts));
  for (std::size_t r = 0; r < n_pts; ++r) {
    if constexpr (std::is_same_v<Scalar, double>)
      b(static_cast<Eigen::Index>(r)) = f[r].real();
    else
      b(static_cast<Eigen::Index>(r)) = f[r];
  }
  Eigen::PartialPivLU<Eigen::Ref<Matrix>> lu(a);
  if (!(lu.rcond() > 1e-14))
    throw SingularOperatorError("solve_linear: collocation matrix is singular to working precision (N = " +
                                std::to_string(n_pts) + ")");
  const Vector x = lu.solve(b);
  std::vector<Complex> out(n_pts);
  for (std::size_t r = 0; r < n_pts; ++r) out[r] = Complex(x(static_cast<Eigen::Index>(r)));
  return out;
}

inline TrigPoly chop_to(const TrigPoly& p, int n) {
  std::vector<Complex> c(2 * static_cast<std::size_t>(n) + 1);
  for (int k = -n; k <= n; ++k) c[static_cast<std::size_t>(k + n)] = p.coeff(k);
  return TrigPoly(std::move(c), p.interval(), p.is_real());
}

}  // namespace detail

/// Solves L u = f on odd grids 33, 65, 129, ... until the coefficients of
/// the collocation solution have a converged tail, and returns them chopped.
inline TrigPoly solve_linear(const LinearPeriodicOp& op, const TrigPoly& rhs, const LinearSolveOptions& opts = {}) {
  if (!(rhs.interval() == op.interval())) throw DomainError("solve_linear: rhs lives on a different interval");
  const bool real = op.is_real() && rhs.is_real();
  for (std::size_t n_pts = opts.min_grid; n_pts <= opts.max_grid; n_pts = 2 * n_pts - 1) {
    const auto values =
        real ? detail::collocation_solve<double>(op, rhs, n_pts) : detail::collocation_solve<Complex>(op, rhs, n_pts);
    TrigPoly u = interp_coeffs(std::span<const Complex>(values), op.interval());
    if (real) u = enforce_real_symmetry(u);
    const auto n = chop_tail(u.data(), opts.rel_tol, opts.scale);
    if (n) return detail::chop_to(u, *n);
  }
  throw ResolutionError("solve_linear: solution not resolved on " + std::to_string(opts.max_grid) + " points",
                        opts.max_grid);
}

template <class F>
  requires(std::invocable<F&, double> && !std::same_as<std::remove_cvref_t<F>, TrigPoly>)
TrigPoly solve_linear(const LinearPeriodicOp& op, F&& rhs, const LinearSolveOptions& opts = {}) {
  return solve_linear(op, build_adaptive(rhs, op.interval()), opts);
}

// ---------------------------------------------------------------------------
// Eigenvalue problems L u = lambda u.

enum class EigWhich { smallest_real, smallest_magnitude };

struct EigOptions {
  EigWhich which = EigWhich::smallest_real;
  std::size_t min_grid = 33;
  std::size_t max_grid = 2049;
  /// Grid convergence: |lambda_N - lambda_2N| <= tol (1 + |lambda|).
  double tol = 1e-8;
};

struct EigResult {
  std::vector<Complex> values;
  std::vector<TrigPoly> functions;
  std::size_t grid = 0;
};

namespace detail {

struct EigPair {
  Complex value;
  Eigen::VectorXcd vector;
};

inline std::vector<EigPair> dense_eigenpairs(const LinearPeriodicOp& op, std::size_t n_pts) {
  std::vector<EigPair> out;
  if (op.is_real()) {
    const Eigen::MatrixXd a = collocation_matrix<double>(op, n_pts);
    const double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
    if (asym <= 1e-12 * a.cwiseAbs().maxCoeff()) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(0.5 * (a + a.transpose()));
      for (Eigen::Index i = 0; i < a.rows(); ++i)
        out.push_back({solver.eigenvalues()(i), solver.eigenvectors().col(i).cast<Complex>()});
      return out;
    }
    Eigen::EigenSolver<Eigen::MatrixXd> solver(a);
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      out.push_back({solver.eigenvalues()(i), solver.eigenvectors().col(i)});
    return out;
  }
  const Eigen::MatrixXcd a = collocation_matrix<Complex>(op, n_pts);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(a);
  for (Eigen::Index i = 0; i < a.rows(); ++i) out.push_back({solver.eigenvalues()(i), solver.eigenvectors().col(i)});
  return out;
}

inline void sort_eigenpairs(std::vector<EigPair>& pairs, EigWhich which) {
  const auto key = [which](const Complex& z) {
    return which == EigWhich::smallest_real ? z.real() : std::abs(z);
  };
  std::stable_sort(pairs.begin(), pairs.end(), [&](const EigPair& x, const EigPair& y) {
    const double kx = key(x.value), ky = key(y.value);
    if (kx != ky) return kx < ky;
    return x.value.imag() < y.value.imag();
  });
}

// Chopped eigenfunction with unit sup norm; the phase puts the
// largest-magnitude grid value on the positive real axis.
inline TrigPoly eigenfunction(const Eigen::VectorXcd& v, const Interval& interval, bool real_op, bool real_value,
                              double rel_tol) {
  Eigen::Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  const Complex phase = std::abs(v(imax)) / v(imax);
  std::vector<Complex> vals(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) vals[static_cast<std::size_t>(i)] = v(i) * phase;
  const bool real = real_op && real_value;
  if (real)
    for (auto& x : vals) x = Complex(x.real(), 0.0);
  TrigPoly p = interp_coeffs(std::span<const Complex>(vals), interval);
  if (const auto n = chop_tail(p.data(), rel_tol)) p = chop_to(p, *n);
  const double s = sup_norm_sampled(p);
  return s > 0 ? scale(p, 1.0 / s) : p;
}

}  // namespace detail

/// The k eigenvalues of L selected by `which`, with eigenfunctions, on the
/// first odd grid where doubling no longer moves them beyond tol.
inline EigResult eigs(const LinearPeriodicOp& op, std::size_t k, const EigOptions& opts = {}) {
  if (k == 0) throw InvalidSizeError("eigs: k must be at least 1");
  if (k > opts.max_grid - 2)
    throw InvalidSizeError("eigs: k = " + std::to_string(k) + " exceeds N - 2 on the largest grid");
  std::vector<Complex> previous;
  std::size_t n_pts = opts.min_grid;
  while (n_pts - 2 < 2 * k) n_pts = 2 * n_pts - 1;
  for (; n_pts <= opts.max_grid; n_pts = 2 * n_pts - 1) {
    auto pairs = detail::dense_eigenpairs(op, n_pts);
    detail::sort_eigenpairs(pairs, opts.which);
    std::vector<Complex> current(k);
    for (std::size_t i = 0; i < k; ++i) current[i] = pairs[i].value;
    bool converged = !previous.empty();
    for (std::size_t i = 0; converged && i < k; ++i)
      converged = std::abs(current[i] - previous[i]) <= opts.tol * (1 + std::abs(current[i]));
    if (converged) {
      EigResult r;
      r.grid = n_pts;
      r.values = current;
      for (std::size_t i = 0; i < k; ++i) {
        const bool real_value = std::abs(current[i].imag()) <= 1e-12 * (1 + std::abs(current[i]));
        r.functions.push_back(detail::eigenfunction(pairs[i].vector, op.interval(), op.is_real(), real_value, 1e-13));
      }
      return r;
    }
    previous = std::move(current);
  }
  throw ResolutionError("eigs: eigenvalues not converged on " + std::to_string(opts.max_grid) + " points",
                        opts.max_grid);
}

// ---------------------------------------------------------------------------
// Nonlinear problems N(u) = F(t, u, u', ..., u^(m)) = rhs by Newton's method
// in function space.

/// Raised when damped Newton keeps failing to reduce the residual.
class DivergenceError : public NumericalError {
 public:
  DivergenceError(const std::string& what, TrigPoly last_iterate)
      : NumericalError(what), last_(std::move(last_iterate)) {}
  const TrigPoly& last_iterate() const noexcept { return last_; }

 private:
  TrigPoly last_;
};

struct NonlinearProblem {
  using Residual = std::function<Complex(double t, std::span<const Complex> derivs)>;
  using Partials = std::function<void(double t, std::span<const Complex> derivs, std::span<Complex> out)>;

  Interval interval;
  int order = 0;
  /// F(t, {u, u', ..., u^(m)}).
  Residual residual;
  /// dF/du^(j), j = 0..m, written to `out`. Left empty, the partials come
  /// from forward differences.
  Partials partials;
  TrigPoly rhs;
  std::optional<TrigPoly> guess;
};

/// Problem whose pointwise residual is a generic callable F(t, d) accepting
/// both Complex and Dual<Complex> derivative arrays; partials come from
/// forward-mode differentiation.
template <class F>
NonlinearProblem make_pointwise_problem(const Interval& interval, int order, F fn, TrigPoly rhs) {
  NonlinearProblem p;
  p.interval = interval;
  p.order = order;
  p.rhs = std::move(rhs);
  p.residual = [fn](double t, std::span<const Complex> d) { return Complex(fn(t, d)); };
  p.partials = [fn](double t, std::span<const Complex> d, std::span<Complex> out) {
    std::vector<Dual<Complex>> x(d.size());
    for (std::size_t j = 0; j < d.size(); ++j) {
      for (std::size_t i = 0; i < d.size(); ++i) x[i] = Dual<Complex>(d[i], i == j ? 1.0 : 0.0);
      out[j] = fn(t, std::span<const Dual<Complex>>(x)).der;
    }
  };
  return p;
}

struct NewtonOptions {
  int max_iterations = 25;
  int max_halvings = 10;
  int max_growth_steps = 8;
  /// Stop once the applied step, or the error left after it as estimated
  /// from the contraction of successive steps, is below step_tol * max|u|.
  double step_tol = 1e-10;
  /// Accept the result when ||N(u) - rhs|| <= residual_tol * scale.
  double residual_tol = 1e-6;
  LinearSolveOptions linear;
};

struct NonlinearResult {
  TrigPoly u;
  int iterations = 0;
  double residual = 0;
  std::vector<double> residual_history;
};

namespace detail {

// Values of u, u', ..., u^(m) on trig_points(g).
inline std::vector<std::vector<Complex>> derivative_samples(const TrigPoly& u, int order, std::size_t g) {
  std::vector<std::vector<Complex>> out;
  for (int j = 0; j <= order; ++j) out.push_back(values_on_grid(differentiate_unrounded(u, j), g));
  return out;
}

// Samples the pointwise functions produced by `eval` on doubling grids until
// each component has a converged tail (threshold floored at abs_scale).
template <class Eval>
std::vector<TrigPoly> build_pointwise(Eval&& eval, std::size_t count, const TrigPoly& u, int order,
                                      std::size_t start_len, double abs_scale) {
  const Interval& iv = u.interval();
  std::vector<std::optional<TrigPoly>> done(count);
  for (std::size_t g = std::max<std::size_t>(16, next_power_of_two(2 * start_len)); g <= 65536; g *= 2) {
    const auto d = derivative_samples(u, order, g);
    const auto t = trig_points(g, iv);
    std::vector<std::vector<Complex>> vals(count, std::vector<Complex>(g));
    std::vector<Complex> point(static_cast<std::size_t>(order) + 1), res(count);
    for (std::size_t r = 0; r < g; ++r) {
      for (int j = 0; j <= order; ++j) point[static_cast<std::size_t>(j)] = d[static_cast<std::size_t>(j)][r];
      eval(t[r], r, g, std::span<const Complex>(point), std::span<Complex>(res));
      for (std::size_t c = 0; c < count; ++c) vals[c][r] = res[c];
    }
    bool all = true;
    for (std::size_t c = 0; c < count; ++c) {
      if (done[c]) continue;
      double max_abs = 0;
      for (const auto& v : vals[c]) max_abs = std::max(max_abs, std::abs(v));
      if (max_abs == 0) {
        done[c] = TrigPoly::zero(iv);
        continue;
      }
      const TrigPoly p = from_samples(vals[c], iv);
      const double floor_scale = std::max(kSampleNoise * max_abs, abs_scale) / kSampleNoise;
      if (const auto n = chop_tail(p.data(), kSampleNoise, floor_scale))
        done[c] = chop_to(p, *n);
      else
        all = false;
    }
    if (all) {
      std::vector<TrigPoly> out;
      for (auto& p : done) out.push_back(std::move(*p));
      return out;
    }
  }
  throw ResolutionError("solve_nonlinear: linearization not resolved using 65536 pts.", 65536);
}

}  // namespace detail

/// Damped Newton iteration u <- u + lambda du with J(u) du = rhs - N(u),
/// where J is the Frechet derivative sum_j dF/du^(j) d^j/dt^j and lambda is
/// halved until the residual decreases.
inline NonlinearResult solve_nonlinear(const NonlinearProblem& prob, const NewtonOptions& opts = {}) {
  if (!prob.residual) throw DomainError("solve_nonlinear: residual is not set");
  if (prob.order < 0) throw DomainError("solve_nonlinear: order must be non-negative");
  if (!(prob.rhs.interval() == prob.interval)) throw DomainError("solve_nonlinear: rhs interval mismatch");
  const int m = prob.order;
  const auto count = static_cast<std::size_t>(m) + 1;
  TrigPoly u = prob.guess ? *prob.guess : TrigPoly::zero(prob.interval);
  if (!(u.interval() == prob.interval)) throw DomainError("solve_nonlinear: guess interval mismatch");

  std::vector<Complex> rhs_cache;
  const auto rhs_at = [&](std::size_t r, std::size_t g) -> Complex {
    if (rhs_cache.size() != g) rhs_cache = values_on_grid(prob.rhs, g);
    return rhs_cache[r];
  };

  const auto residual_norm = [&](const TrigPoly& v) {
    const std::size_t g = detail::next_power_of_two(4 * std::max({v.length(), prob.rhs.length(), std::size_t{64}}));
    const auto d = detail::derivative_samples(v, m, g);
    const auto t = trig_points(g, prob.interval);
    const auto f = values_on_grid(prob.rhs, g);
    std::vector<Complex> point(count);
    double norm = 0;
    for (std::size_t r = 0; r < g; ++r) {
      for (std::size_t j = 0; j < count; ++j) point[j] = d[j][r];
      norm = std::max(norm, std::abs(prob.residual(t[r], point) - f[r]));
    }
    return norm;
  };

  const double rhs_norm = sup_norm_sampled(prob.rhs);
  const auto problem_scale = [&](const TrigPoly& v) {
    const double s = std::max(rhs_norm, sup_norm_sampled(v));
    return s > 0 ? s : 1.0;
  };

  NonlinearResult result;
  double res = residual_norm(u);
  result.residual_history.push_back(res);
  int growth_streak = 0;
  double prev_step = 0;

  for (int iter = 1; iter <= opts.max_iterations; ++iter) {
    const std::size_t start = std::max(u.length(), prob.rhs.length());

    const double h_fd = 1e-7 * (1 + sup_norm_sampled(u));
    auto jac = detail::build_pointwise(
        [&](double t, std::size_t, std::size_t, std::span<const Complex> d, std::span<Complex> out) {
          if (prob.partials) {
            prob.partials(t, d, out);
            return;
          }
          const Complex f0 = prob.residual(t, d);
          std::vector<Complex> x(d.begin(), d.end());
          for (std::size_t j = 0; j < x.size(); ++j) {
            x[j] += h_fd;
            out[j] = (prob.residual(t, x) - f0) / h_fd;
            x[j] = d[j];
          }
        },
        count, u, m, start, 0.0);

    // Size of the individual terms a_j u^(j); the residual cannot be
    // resolved below their rounding level.
    double terms = rhs_norm;
    {
      const std::size_t g = detail::next_power_of_two(2 * std::max(start, jac.front().length()));
      const auto d = detail::derivative_samples(u, m, g);
      std::vector<std::vector<Complex>> a;
      for (const auto& aj : jac) a.push_back(values_on_grid(aj, g));
      for (std::size_t r = 0; r < g; ++r) {
        double s = 0;
        for (std::size_t j = 0; j < count; ++j) s += std::abs(a[j][r]) * std::abs(d[j][r]);
        terms = std::max(terms, s);
      }
    }
    const TrigPoly r_poly = detail::build_pointwise(
        [&](double t, std::size_t r, std::size_t g, std::span<const Complex> d, std::span<Complex> out) {
          out[0] = prob.residual(t, d) - rhs_at(r, g);
        },
        1, u, m, start, 32 * std::numeric_limits<double>::epsilon() * terms)[0];
    if (jac.back().is_zero()) {
      // Leading coefficient vanished: fall back to the highest nonzero one.
      while (jac.size() > 1 && jac.back().is_zero()) jac.pop_back();
    }
    const LinearPeriodicOp op(std::move(jac));

    LinearSolveOptions lin = opts.linear;
    lin.scale = std::max(lin.scale, u.max_abs_coeff());
    const TrigPoly du = solve_linear(op, -r_poly, lin);

    double lambda = 1;
    TrigPoly trial = u + du;
    double trial_res = residual_norm(trial);
    int halvings = 0;
    while (!(trial_res < res) && halvings < opts.max_halvings) {
      lambda *= 0.5;
      ++halvings;
      trial = u + lambda * du;
      trial_res = residual_norm(trial);
    }
    growth_streak = (halvings > 0 && !(trial_res < res)) ? growth_streak + 1 : 0;

    const double step = lambda * sup_norm_sampled(du);
    u = trial;
    res = trial_res;
    result.iterations = iter;
    result.residual_history.push_back(res);
    if (growth_streak >= opts.max_growth_steps)
      throw DivergenceError("solve_nonlinear: residual grew for " + std::to_string(growth_streak) +
                                " consecutive damped steps",
                            u);
    // Remaining error after a contracting step: step * c / (1 - c).
    const double contraction = prev_step > 0 ? step / prev_step : 1.0;
    const double remaining = contraction < 1 ? step * contraction / (1 - contraction) : step;
    prev_step = step;
    const double u_norm = std::max(sup_norm_sampled(u), 1e-300);
    // A residual at the level of the linear solve's chop cannot improve further.
    const double floor_tol = std::max(64 * std::numeric_limits<double>::epsilon(), 16 * opts.linear.rel_tol);
    if (res <= floor_tol * std::max(terms, problem_scale(u))) break;
    if (step <= opts.step_tol * u_norm || (lambda == 1 && remaining <= opts.step_tol * u_norm)) break;
  }

  result.u = u;
  result.residual = res;
  if (!(res <= opts.residual_tol * problem_scale(u)))
    throw ConvergenceError("solve_nonlinear: residual " + std::to_string(res) + " after " +
                           std::to_string(result.iterations) + " Newton steps");
  return result;
}

}  // namespace trigfun
