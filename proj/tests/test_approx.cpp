#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "trigfun/trigfun.hpp"

using namespace trigfun;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST(Bounds, CoeffBound) {
  EXPECT_NEAR(coeff_bound(3, DecayBoundParams::bounded_variation(0, 4)), 4 / (2 * kPi * 3), 1e-15);
  EXPECT_NEAR(coeff_bound(-3, DecayBoundParams::bounded_variation(0, 4)), 4 / (2 * kPi * 3), 1e-15);
  EXPECT_NEAR(coeff_bound(10, DecayBoundParams::analytic(1, std::exp(1.0))), std::exp(1.0) * std::exp(-10.0), 1e-18);
  EXPECT_THROW(coeff_bound(0, DecayBoundParams::bounded_variation(0, 4)), DomainError);
  EXPECT_THROW(DecayBoundParams::bounded_variation(-1, 1), DomainError);
  EXPECT_THROW(DecayBoundParams::analytic(0, 1), DomainError);
}

TEST(Bounds, SquareWaveCoefficientsBelowBound) {
  // Square wave sign(sin t): total variation 4 over one period.
  const std::size_t n = 1024;
  std::vector<double> v;
  for (double t : trig_points(n, two_pi_interval())) {
    const double s = std::sin(t);
    v.push_back(std::abs(s) < 1e-12 ? 0.0 : (s > 0 ? 1.0 : -1.0));
  }
  const TrigPoly p = interp_coeffs(std::span<const double>(v), two_pi_interval());
  const auto params = DecayBoundParams::bounded_variation(0, 4);
  for (int k = 1; k < static_cast<int>(n / 2); ++k) EXPECT_LE(std::abs(p.coeff(k)), coeff_bound(k, params)) << k;
}

TEST(Bounds, ApproxErrorBound) {
  EXPECT_NEAR(approx_error_bound(10, ApproxKind::interpolant, DecayBoundParams::bounded_variation(1, kPi)), 0.2, 1e-15);
  EXPECT_NEAR(approx_error_bound(5, ApproxKind::projection, DecayBoundParams::analytic(1, 1)),
              2 * std::exp(-5.0) / (std::exp(1.0) - 1), 1e-16);
  EXPECT_THROW(approx_error_bound(0, ApproxKind::projection, DecayBoundParams::analytic(1, 1)), DomainError);
  EXPECT_THROW(approx_error_bound(3, ApproxKind::projection, DecayBoundParams::bounded_variation(0, 1)), DomainError);
}

TEST(Bounds, ExpSinApproximationErrors) {
  // |exp(sin t)| <= exp(cosh(alpha)) in the strip |Im t| < alpha.
  const double alpha = 1.0;
  const auto params = DecayBoundParams::analytic(alpha, std::exp(std::cosh(alpha)));
  const auto fn = [](double t) { return std::exp(std::sin(t)); };
  for (int n = 5; n <= 13; ++n) {
    const auto p = build_fixed(fn, two_pi_interval(), 2 * static_cast<std::size_t>(n) + 1);
    const double err = oracle::grid_sup([&](double t) { return p(t).real() - fn(t); }, 0, 2 * kPi, 5000);
    EXPECT_LE(err, approx_error_bound(n, ApproxKind::interpolant, params)) << n;
  }
}

TEST(Bounds, TrapErrorBound) {
  EXPECT_NEAR(trap_error_bound(10, DecayBoundParams::bounded_variation(1, 1)), 0.04, 1e-16);
  EXPECT_NEAR(trap_error_bound(20, DecayBoundParams::analytic(1, 1)), 4 * kPi / (std::exp(20.0) - 1), 1e-20);
  EXPECT_THROW(trap_error_bound(0, DecayBoundParams::analytic(1, 1)), InvalidSizeError);
}

TEST(Bounds, Monotone) {
  const auto bv = DecayBoundParams::bounded_variation(2, 3);
  const auto an = DecayBoundParams::analytic(0.5, 2);
  for (int n = 1; n < 50; ++n) {
    EXPECT_GT(coeff_bound(n, bv), coeff_bound(n + 1, bv));
    EXPECT_GT(coeff_bound(n, an), coeff_bound(n + 1, an));
    EXPECT_GT(approx_error_bound(n, ApproxKind::projection, bv), approx_error_bound(n + 1, ApproxKind::projection, bv));
    EXPECT_GT(approx_error_bound(n, ApproxKind::interpolant, an),
              approx_error_bound(n + 1, ApproxKind::interpolant, an));
    EXPECT_GT(trap_error_bound(n, bv), trap_error_bound(n + 1, bv));
    EXPECT_GT(trap_error_bound(n, an), trap_error_bound(n + 1, an));
  }
}

TEST(Nonuniform, AbsoluteValueNinePoints) {
  const Interval iv(-kPi, kPi);
  const std::vector<double> pts{-3, -2, -1, 0, .5, 1, 1.5, 2, 2.5};
  std::vector<double> vals;
  for (double t : pts) vals.push_back(std::abs(t));
  const auto p = interp_nonuniform(pts, vals, iv);
  for (std::size_t j = 0; j < pts.size(); ++j) EXPECT_EQ(p(pts[j]).real(), vals[j]);
  const TrigPoly q = p.to_trigpoly();
  EXPECT_EQ(q.degree(), 4);
  for (std::size_t j = 0; j < pts.size(); ++j) EXPECT_NEAR(q(pts[j]).real(), vals[j], 1e-13);
  for (double t : {-2.7, 0.2, 3.0}) EXPECT_NEAR(std::abs(q(t) - p(t)), 0, 1e-13);
}

TEST(Nonuniform, SinglePointIsConstant) {
  const std::vector<double> pts{0.4};
  const std::vector<double> vals{2.5};
  const auto p = interp_nonuniform(pts, vals, two_pi_interval());
  for (double t : {0.0, 1.0, 5.0}) EXPECT_EQ(p(t), Complex(2.5));
}

TEST(Nonuniform, EquispacedMatchesBarycentric) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1, 1);
  const Interval iv(0, 3);
  for (std::size_t n : {7u, 8u}) {
    const auto pts = trig_points(n, iv);
    std::vector<double> vals(n);
    for (auto& v : vals) v = u(rng);
    const auto p = interp_nonuniform(pts, vals, iv);
    for (int j = 0; j < 30; ++j) {
      const double t = 1.5 * (u(rng) + 1);
      EXPECT_NEAR(std::abs(p(t) - eval_barycentric(std::span<const double>(vals), iv, t)), 0, 1e-13);
    }
  }
}

TEST(Nonuniform, ReproducesOwnSpace) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0, 1);
  const Interval iv(-1, 1);
  for (std::size_t n : {1u, 3u, 11u, 25u, 41u}) {
    // Random member of the degree-(n-1)/2 space and random distinct nodes.
    std::vector<Complex> c(n);
    for (auto& x : c) x = Complex(u(rng) - 0.5, u(rng) - 0.5);
    const TrigPoly f(c, iv);
    std::vector<double> pts;
    for (std::size_t j = 0; j < n; ++j) pts.push_back(-1 + 2 * (static_cast<double>(j) + 0.2 + 0.6 * u(rng)) / static_cast<double>(n));
    std::vector<Complex> vals;
    for (double t : pts) vals.push_back(f(t));
    const auto p = interp_nonuniform(std::span<const double>(pts), std::span<const Complex>(vals), iv);
    const double scale = f.sum_abs_coeffs();
    for (int j = 0; j < 50; ++j) {
      const double t = -1 + 2 * u(rng);
      EXPECT_LE(std::abs(p(t) - f(t)), 1e-12 * scale) << "N=" << n;
    }
  }
}

TEST(Nonuniform, Errors) {
  const Interval iv(0, 1);
  const std::vector<double> pts{0.1, 0.3, 1.1};
  const std::vector<double> vals{1, 2, 3};
  EXPECT_THROW(interp_nonuniform(pts, vals, iv), DuplicateNodeError);
  const std::vector<double> two{1, 2};
  EXPECT_THROW(interp_nonuniform(pts, two, iv), ShapeError);
  EXPECT_THROW(interp_nonuniform(std::vector<double>{}, std::vector<double>{}, iv), InvalidSizeError);
}

TEST(Remez, PaperExample) {
  const auto f = [](double t) { return 1.0 / (1.01 - std::sin(t - 2)); };
  const auto r = trigremez(f, two_pi_interval(), 10);
  EXPECT_NEAR(r.level, 12.1095909, 1e-4);
  ASSERT_EQ(r.reference.size(), 22u);
  ASSERT_EQ(r.signs.size(), 22u);
  EXPECT_EQ(r.best.degree(), 10);
  double lo = INFINITY, hi = 0;
  for (std::size_t i = 0; i < r.reference.size(); ++i) {
    const double e = f(r.reference[i]) - r.best(r.reference[i]).real();
    EXPECT_EQ(e > 0 ? 1 : -1, r.signs[i]);
    if (i > 0) { EXPECT_EQ(r.signs[i], -r.signs[i - 1]); }
    lo = std::min(lo, std::abs(e));
    hi = std::max(hi, std::abs(e));
  }
  EXPECT_LE(hi - lo, 1e-6 * r.level);
  // The level is the sup of the error, not just its value on the reference.
  const double sup = oracle::grid_sup([&](double t) { return f(t) - r.best(t).real(); }, 0, 2 * kPi, 20000);
  EXPECT_NEAR(sup, r.level, 1e-6 * r.level);
}

TEST(Remez, AlreadyInSpace) {
  const auto f = build_adaptive([](double t) { return 1 + std::cos(2 * t) - 0.5 * std::sin(t); }, two_pi_interval());
  const auto r = trigremez(f, 3);
  EXPECT_EQ(r.level, 0.0);
  for (double t : {0.1, 2.0, 4.0}) EXPECT_NEAR(std::abs(r.best(t) - f(t)), 0, 1e-15);
}

TEST(Remez, PureHighMode) {
  const int n = 6;
  const auto f = build_adaptive([](double t) { return std::cos((n + 1) * t); }, two_pi_interval());
  const auto r = trigremez(f, n);
  EXPECT_NEAR(r.level, 1.0, 1e-10);
  EXPECT_GE(r.reference.size(), static_cast<std::size_t>(2 * n + 2));
  EXPECT_LE(r.best.max_abs_coeff(), 1e-10);
}

TEST(Remez, RejectsComplex) {
  const auto z = build_adaptive([](double t) { return std::exp(Complex(0, t)); }, two_pi_interval());
  EXPECT_THROW(trigremez(z, 0), RealnessError);
}

TEST(Remez, GeneralInterval) {
  const Interval iv(-1, 1);
  const auto f = [](double t) { return std::exp(std::cos(kPi * t)); };
  const auto r = trigremez(f, iv, 3);
  EXPECT_EQ(r.reference.size(), 8u);
  const double sup = oracle::grid_sup([&](double t) { return f(t) - r.best(t).real(); }, -1, 1, 20000);
  EXPECT_NEAR(sup, r.level, 1e-6 * r.level);
  // Interpolation at 7 points is a competitor; the best error must not exceed it.
  const auto p = build_fixed(f, iv, 7);
  const double interp_err = oracle::grid_sup([&](double t) { return f(t) - p(t).real(); }, -1, 1, 20000);
  EXPECT_LE(r.level, interp_err);
}
