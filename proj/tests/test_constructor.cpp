#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "oracles.hpp"
#include "trigfun/trigfun.hpp"

using namespace trigfun;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<Complex> grid_coeffs(const std::function<double(double)>& f, std::size_t n) {
  const TrigPoly p = build_fixed(f, two_pi_interval(), n);
  return std::vector<Complex>(p.data().begin(), p.data().end());
}

}  // namespace

TEST(BuildAdaptive, PaperLengths) {
  const Interval iv = two_pi_interval();
  const auto f = build_adaptive([](double t) { return std::cos(t) + std::sin(3 * t) / 2; }, iv);
  EXPECT_EQ(f.length(), 7u);
  EXPECT_TRUE(f.is_real());
  const auto g = build_adaptive([](double t) { return std::exp(std::sin(t)); }, iv);
  EXPECT_GE(g.length(), 25u);
  EXPECT_LE(g.length(), 29u);
  EXPECT_EQ(g.length() % 2, 1u);
}

TEST(BuildAdaptive, ProbeErrorExpSin) {
  const auto g = build_adaptive([](double t) { return std::exp(std::sin(t)); }, two_pi_interval());
  const double err = oracle::grid_sup([&](double t) { return g(t).real() - std::exp(std::sin(t)); }, 0, 2 * kPi, 10000);
  EXPECT_LE(err, 1e-14);
}

TEST(BuildAdaptive, CoefficientsMatchExactFourierCoefficients) {
  // exp(cos t) has c_k = I_k(1); compare against a long-double quadrature.
  const auto g = build_adaptive([](double t) { return std::exp(std::cos(t)); }, two_pi_interval());
  for (int k = 0; k <= g.degree(); ++k) {
    const Complex ref = oracle::fourier_coeff([](long double t) { return Complex(std::exp(std::cos(static_cast<double>(t)))); }, k, 256);
    EXPECT_NEAR(std::abs(g.coeff(k) - ref), 0, 1e-15) << "k=" << k;
  }
}

TEST(BuildAdaptive, UnresolvedRaisesWithGridSize) {
  try {
    build_adaptive([](double t) { return std::exp(t); }, two_pi_interval());
    FAIL() << "expected ResolutionError";
  } catch (const ResolutionError& e) {
    EXPECT_EQ(e.last_size(), 65536u);
    EXPECT_NE(std::string(e.what()).find("65536"), std::string::npos);
  }
}

TEST(BuildAdaptive, HighModeNotAliased) {
  const auto f = build_adaptive([](double t) { return std::cos(11 * t); }, two_pi_interval());
  EXPECT_EQ(f.degree(), 11);
  EXPECT_NEAR(f(0.3).real(), std::cos(3.3), 1e-14);
}

TEST(BuildAdaptive, ComplexFunction) {
  const auto z = build_adaptive([](double t) { return std::exp(Complex(0, t)); }, two_pi_interval());
  EXPECT_FALSE(z.is_real());
  EXPECT_EQ(z.length(), 3u);
  EXPECT_NEAR(std::abs(z.coeff(1) - 1.0), 0, 1e-15);
}

TEST(BuildAdaptive, ZeroFunction) {
  const auto z = build_adaptive([](double) { return 0.0; }, Interval(0, 1));
  EXPECT_EQ(z.length(), 1u);
  EXPECT_TRUE(z.is_zero());
}

TEST(BuildAdaptive, GeneralInterval) {
  const Interval iv(-1, 1);
  const auto f = build_adaptive([](double t) { return std::sin(kPi * t) + 0.25; }, iv);
  EXPECT_EQ(f.length(), 3u);
  EXPECT_NEAR(f(0.5).real(), 1.25, 1e-15);
}

TEST(BuildAdaptive, Options) {
  BuildOptions o;
  o.rel_tol = 0;
  EXPECT_THROW(build_adaptive([](double t) { return t; }, two_pi_interval(), o), DomainError);
  o = {};
  o.max_length = 100;
  EXPECT_THROW(build_adaptive([](double t) { return t; }, two_pi_interval(), o), InvalidSizeError);
  o = {};
  o.forced_length = 10;
  const auto f = build_adaptive([](double t) { return std::cos(t); }, two_pi_interval(), o);
  EXPECT_EQ(f.length(), 10u);
  o = {};
  o.rel_tol = 1e-6;
  const auto g = build_adaptive([](double t) { return std::exp(std::sin(t)); }, two_pi_interval(), o);
  EXPECT_LT(g.length(), 27u);
  EXPECT_LE(oracle::grid_sup([&](double t) { return g(t).real() - std::exp(std::sin(t)); }, 0, 2 * kPi, 1000), 1e-4);
}

TEST(BuildAdaptive, NonFiniteSamples) {
  EXPECT_THROW(build_adaptive([](double t) { return 1.0 / (t - 1.0); }, Interval(0, 2)), NumericalError);
}

TEST(BuildAdaptive, Idempotent) {
  const auto p = build_adaptive([](double t) { return 1.0 / (2 + std::cos(t)); }, two_pi_interval());
  const auto q = build_adaptive([&](double t) { return p(t); }, two_pi_interval());
  EXPECT_LE(q.length(), p.length() + 2);
  EXPECT_LE(oracle::grid_sup([&](double t) { return std::abs(p(t) - q(t)); }, 0, 2 * kPi, 2000),
            1e-14 * extrema(p).max_value);
}

TEST(BuildAdaptive, DegreeStableUnderRefinement) {
  const auto fn = [](double t) { return std::exp(std::sin(t)); };
  const auto p = build_adaptive(fn, two_pi_interval());
  int prev = -1;
  for (std::size_t n : {64u, 128u, 256u}) {
    // Same noise floor as the constructor: 4 eps relative to max|f| = e.
    const auto deg = chop_tail(grid_coeffs(fn, n), 0x1p-52, std::exp(1.0));
    ASSERT_TRUE(deg.has_value());
    if (prev >= 0) { EXPECT_LE(std::abs(*deg - prev), 1); }
    EXPECT_LE(std::abs(*deg - p.degree()), 1);
    prev = *deg;
  }
}

TEST(ChopTail, Examples) {
  const auto c = grid_coeffs([](double t) { return std::cos(t) + std::sin(3 * t) / 2; }, 16);
  EXPECT_EQ(chop_tail(c, 0x1p-52), std::optional<int>(3));
  const std::vector<Complex> ones(32, 1.0);
  EXPECT_EQ(chop_tail(ones, 0x1p-52), std::nullopt);
  std::vector<Complex> single(33, 0.0);
  single[16] = 2.0;
  EXPECT_EQ(chop_tail(single, 0x1p-52), std::optional<int>(0));
  const std::vector<Complex> zeros(16, 0.0);
  EXPECT_EQ(chop_tail(zeros, 0x1p-52), std::optional<int>(0));
  EXPECT_THROW(chop_tail(std::vector<Complex>{}, 0.1), InvalidSizeError);
}

TEST(ChopTail, PlateauRequired) {
  // c_k = 10^(-|k|/2) on 33 entries; the plateau must be at least 4 long.
  std::vector<Complex> c(33);
  for (int k = -16; k <= 16; ++k) c[static_cast<std::size_t>(k + 16)] = std::pow(10.0, -std::abs(k) / 2.0);
  EXPECT_EQ(chop_tail(c, 2e-8), std::nullopt);
  EXPECT_EQ(chop_tail(c, 5e-8), std::optional<int>(14));
  EXPECT_EQ(chop_tail(c, 2e-5), std::optional<int>(9));
}

TEST(BuildFixed, MatchesAdaptive) {
  const auto fn = [](double t) { return std::exp(std::sin(t)); };
  const auto a = build_adaptive(fn, two_pi_interval());
  const auto f = build_fixed(fn, two_pi_interval(), a.length());
  ASSERT_EQ(f.length(), a.length());
  for (int k = f.min_index(); k <= f.degree(); ++k) EXPECT_NEAR(std::abs(f.coeff(k) - a.coeff(k)), 0, 1e-15);
}

TEST(BuildFixed, EvenTopModeIsCosine) {
  const auto f = build_fixed([](double t) { return std::cos(8 * t); }, two_pi_interval(), 16);
  ASSERT_EQ(f.length(), 16u);
  EXPECT_NEAR(f.data()[0].real(), 1.0, 1e-14);
  EXPECT_EQ(f.data()[0].imag(), 0.0);
  const auto cs = exp_to_cos_sin(f);
  EXPECT_NEAR(std::abs(cs.b[7]), 0, 1e-15);
  EXPECT_NEAR(cs.a[8].real(), 1.0, 1e-14);
}

TEST(BuildFixed, InterpolatesNoisySamples) {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> noise(0, 0.01);
  const auto pts = trig_points(201, two_pi_interval());
  std::vector<double> vals;
  for (double t : pts) vals.push_back(std::exp(std::sin(t)) + noise(rng));
  std::size_t idx = 0;
  const auto f = build_fixed([&](double) { return vals[idx++]; }, two_pi_interval(), 201);
  ASSERT_EQ(f.length(), 201u);
  for (std::size_t j = 0; j < pts.size(); ++j) EXPECT_NEAR(f(pts[j]).real(), vals[j], 1e-13);
}

TEST(BuildFromCoeffs, Examples) {
  const Interval iv(0, 4);
  const auto f = build_from_coeffs({0.5, 0.0, 0.5}, iv);
  for (double t : {0.0, 0.7, 3.1}) EXPECT_NEAR(f(t).real(), std::cos(kPi / 2 * t), 1e-15);
  EXPECT_THROW(build_from_coeffs({}, iv), InvalidSizeError);
  const auto z = build_from_coeffs({0.0}, iv);
  EXPECT_TRUE(z.is_zero());
}

TEST(BuildFromCoeffs, DumpRoundTripIsBitExact) {
  const auto f = build_adaptive([](double t) { return std::exp(std::sin(t)) / (2 + std::cos(t)); }, two_pi_interval());
  const std::string dump = coeffs_to_string(f);
  std::istringstream is(dump);
  const auto g = build_from_coeffs(read_coeffs(is), f.interval());
  EXPECT_EQ(coeffs_to_string(g), dump);
}

TEST(Simplify, DropsNegligibleTail) {
  const Interval iv = two_pi_interval();
  const TrigPoly p({1e-20, 0.0, 1.0, 0.0, 1e-20}, iv, true);
  EXPECT_EQ(simplify(p).length(), 1u);
  EXPECT_EQ(simplify(p - p).length(), 1u);
}
