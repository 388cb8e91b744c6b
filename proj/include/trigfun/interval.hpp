#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "trigfun/error.hpp"

namespace trigfun {

/// Periodic domain [a, b). The basis on an interval of length L is
/// exp(2*pi*i*k*t/L) in the absolute coordinate t, so translating the
/// interval does not translate the basis functions.
class Interval {
 public:
  constexpr Interval() = default;
  Interval(double a, double b) : a_(a), b_(b) {
    if (!(std::isfinite(a) && std::isfinite(b)) || !(b > a)) {
      throw DomainError("interval requires finite endpoints with b > a, got [" +
                        std::to_string(a) + ", " + std::to_string(b) + "]");
    }
  }

  constexpr double a() const noexcept { return a_; }
  constexpr double b() const noexcept { return b_; }
  constexpr double length() const noexcept { return b_ - a_; }
  /// Angular frequency of the fundamental mode, 2*pi/L.
  constexpr double omega() const noexcept { return 2 * std::numbers::pi / length(); }

  /// Maps t into [a, b) by an exact floating point remainder.
  double reduce(double t) const {
    double s = std::fmod(t - a_, length());
    if (s < 0) s += length();
    if (s >= length()) s = 0;
    return a_ + s;
  }

  friend constexpr bool operator==(const Interval&, const Interval&) = default;

 private:
  double a_ = -1;
  double b_ = 1;
};

inline Interval two_pi_interval() { return Interval(0, 2 * std::numbers::pi); }

}  // namespace trigfun
