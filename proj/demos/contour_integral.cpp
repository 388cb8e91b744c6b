// Zeros of an analytic function inside the unit disk by contour integrals
// over the periodic parametrization z = exp(it).

#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>

#include "trigfun/trigfun.hpp"

int main() {
  using namespace trigfun;
  const Complex i(0, 1);
  const double two_pi = 2 * std::numbers::pi;

  const TrigPoly z = build_adaptive([&](double t) { return std::exp(i * t); }, two_pi_interval());
  const TrigPoly f = compose(z, [](Complex w) { return std::cos(w); }) - z;
  // f'(z) dz = (df/dt) dt, so the integrands only need the t-derivative.
  const TrigPoly q = divide(differentiate(f), f);

  const Complex m = integral(q) / (two_pi * i);
  const Complex z0 = integral(z * q) / (two_pi * i);
  std::printf("f = cos(z) - z on |z| = 1: length %zu\n", f.length());
  std::printf("number of zeros   m  = %.15f\n", m.real());
  std::printf("zero location     z0 = %.15f %+.1e i\n", z0.real(), z0.imag());
  return 0;
}
