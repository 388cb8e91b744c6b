#pragma once

#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include "trigfun/constructor.hpp"
#include "trigfun/error.hpp"
#include "trigfun/expr.hpp"
#include "trigfun/interval.hpp"
#include "trigfun/ode.hpp"

namespace trigfun {

/// Periodic ODE problem read from `key=value` lines:
///
///   order=2
///   coeff[0]=-cos(t)        a_j(t), linear problems and eigs
///   coeff[2]=0.001
///   rhs=1
///   interval=0,6*pi
///   residual=0.004*u2 + u*u1 - u   nonlinear F(t, u, u1, ..., um)
///   guess=0                         optional Newton start
///
/// '#' starts a comment. Missing coefficients are zero.
struct ProblemSpec {
  Interval interval;
  int order = -1;
  std::map<int, Expr> coeffs;
  std::optional<Expr> rhs;
  std::optional<Expr> residual;
  std::optional<Expr> guess;

  bool is_nonlinear() const { return residual.has_value(); }

  std::vector<TrigPoly> coefficient_polys() const {
    std::vector<TrigPoly> out;
    for (int j = 0; j <= order; ++j) {
      const auto it = coeffs.find(j);
      if (it == coeffs.end())
        out.push_back(TrigPoly::zero(interval));
      else
        out.push_back(build_adaptive([&](double t) { return evaluate(it->second, t); }, interval));
    }
    return out;
  }

  LinearPeriodicOp linear_op() const { return LinearPeriodicOp(coefficient_polys()); }

  TrigPoly rhs_poly() const {
    if (!rhs) return TrigPoly::zero(interval);
    return build_adaptive([&](double t) { return evaluate(*rhs, t); }, interval);
  }

  /// Variable names of the residual expression: t, u, u1, ..., u<order>.
  static std::vector<std::string> residual_variables(int order) {
    std::vector<std::string> v{"t", "u"};
    for (int j = 1; j <= order; ++j) v.push_back("u" + std::to_string(j));
    return v;
  }

  NonlinearProblem nonlinear_problem() const {
    if (!residual) throw DomainError("problem has no residual= line");
    const Expr f = *residual;
    auto fn = [f](double t, auto d) {
      using T = std::remove_cvref_t<decltype(d[0])>;
      std::vector<T> vars;
      vars.push_back(T(std::complex<double>(t)));
      vars.insert(vars.end(), d.begin(), d.end());
      return evaluate<T>(f, std::span<const T>(vars));
    };
    NonlinearProblem p = make_pointwise_problem(interval, order, fn, rhs_poly());
    if (guess) p.guess = build_adaptive([g = *guess](double t) { return evaluate(g, t); }, interval);
    return p;
  }
};

inline ProblemSpec read_problem(std::istream& is) {
  ProblemSpec spec;
  std::optional<std::string> residual_src;
  std::size_t residual_off = 0;
  std::map<int, std::pair<std::string, std::size_t>> coeff_src;
  bool have_interval = false;

  std::string line;
  std::size_t offset = 0;
  while (std::getline(is, line)) {
    const std::size_t line_start = offset;
    offset += line.size() + 1;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("problem file: expected key=value", line_start + first, {"'='"});
    std::string key = line.substr(first, eq - first);
    while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
    const std::string value = line.substr(eq + 1);
    const std::size_t value_off = line_start + eq + 1;

    // Re-raise expression errors with file offsets.
    const auto parse_at = [&](const std::string& src, std::span<const std::string> vars) {
      try {
        return parse_expr(src, vars);
      } catch (const ParseError& e) {
        throw ParseError(std::string(e.what()) + " in '" + key + "'", value_off + e.offset(), e.expected());
      }
    };
    static const std::string no_vars[] = {"_"};

    if (key == "order") {
      const Expr e = parse_at(value, std::span<const std::string>(no_vars, 0));
      const double v = evaluate(e, 0.0).real();
      if (v < 0 || v != static_cast<int>(v)) throw ParseError("order must be a non-negative integer", value_off);
      spec.order = static_cast<int>(v);
    } else if (key == "interval") {
      const auto comma = value.find(',');
      if (comma == std::string::npos) throw ParseError("interval: expected a,b", value_off, {"','"});
      const double a = evaluate(parse_at(value.substr(0, comma), std::span<const std::string>(no_vars, 0)), 0.0).real();
      const double b = evaluate(parse_at(value.substr(comma + 1), std::span<const std::string>(no_vars, 0)), 0.0).real();
      spec.interval = Interval(a, b);
      have_interval = true;
    } else if (key.rfind("coeff[", 0) == 0 && key.back() == ']') {
      const std::string idx = key.substr(6, key.size() - 7);
      char* end = nullptr;
      const long j = std::strtol(idx.c_str(), &end, 10);
      if (idx.empty() || *end != '\0' || j < 0) throw ParseError("bad coefficient index '" + idx + "'", line_start + first);
      coeff_src[static_cast<int>(j)] = {value, value_off};
    } else if (key == "rhs") {
      spec.rhs = parse_at(value, std::vector<std::string>{"t"});
    } else if (key == "guess") {
      spec.guess = parse_at(value, std::vector<std::string>{"t"});
    } else if (key == "residual") {
      residual_src = value;
      residual_off = value_off;
    } else {
      throw ParseError("unknown key '" + key + "'", line_start + first,
                       {"order", "coeff[j]", "rhs", "interval", "residual", "guess"});
    }
  }
  if (!have_interval) spec.interval = Interval();
  if (spec.order < 0) throw ParseError("problem file: missing order=", offset, {"order"});

  for (const auto& [j, src] : coeff_src) {
    if (j > spec.order) throw ParseError("coefficient index exceeds order", src.second);
    try {
      spec.coeffs[j] = parse_expr(src.first, std::vector<std::string>{"t"});
    } catch (const ParseError& e) {
      throw ParseError(e.what(), src.second + e.offset(), e.expected());
    }
  }
  if (residual_src) {
    if (!coeff_src.empty()) throw ParseError("problem file: give either coeff[j]= or residual=, not both", residual_off);
    try {
      spec.residual = parse_expr(*residual_src, ProblemSpec::residual_variables(spec.order));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), residual_off + e.offset(), e.expected());
    }
  }
  return spec;
}

inline ProblemSpec read_problem_string(const std::string& text) {
  std::istringstream is(text);
  return read_problem(is);
}

}  // namespace trigfun
