// Norm of the resolvent ||(zI - A)^{-1}|| of a 4x4 matrix along the unit
// circle z = exp(it), and its maximum.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdio>

#include "trigfun/trigfun.hpp"

int main() {
  using namespace trigfun;
  const Complex i(0, 1);
  Eigen::Matrix4cd a;
  a << 2., -2. * i, 1., 1., 2. * i, -2., 0., 2., -2., 0., 1., 2., 0., i, 0., 2.;
  a /= 3.0;

  const auto resolvent = [&](double t) {
    const Eigen::Matrix4cd m = std::exp(i * t) * Eigen::Matrix4cd::Identity() - a;
    return 1.0 / Eigen::JacobiSVD<Eigen::Matrix4cd>(m).singularValues()(3);
  };
  const TrigPoly r = build_adaptive(resolvent, two_pi_interval());
  const Extrema e = extrema(r);
  std::printf("resolvent norm on |z| = 1: degree %d\n", r.degree());
  std::printf("maximum %.10f at z = exp(%.8f i)\n", e.max_value, e.argmax);
  std::printf("minimum %.10f at z = exp(%.8f i)\n", e.min_value, e.argmin);
  return 0;
}
