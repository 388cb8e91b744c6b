// trigfun command-line front end.
//
// Exit codes: 0 success, 1 usage or domain error, 2 resolution failure,
// 3 parse error, 4 numerical failure.

#include <CLI11.hpp>

#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "trigfun/trigfun.hpp"

namespace {

using trigfun::Complex;
using trigfun::format_double;
using trigfun::TrigPoly;

constexpr int kExitUsage = 1;
constexpr int kExitResolution = 2;
constexpr int kExitParse = 3;
constexpr int kExitNumerical = 4;

double eval_constant(const std::string& src) {
  static const std::vector<std::string> none;
  return trigfun::evaluate(trigfun::parse_expr(src, none), 0.0).real();
}

trigfun::Interval parse_interval(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw trigfun::ParseError("--interval: expected a,b", 0, {"','"});
  return {eval_constant(s.substr(0, comma)), eval_constant(s.substr(comma + 1))};
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto comma = s.find(',', start);
    const std::string item = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    out.push_back(eval_constant(item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<double> read_numbers(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw trigfun::DomainError("cannot open '" + path + "'");
  std::vector<double> out;
  std::string tok;
  while (in >> tok) {
    if (tok[0] == '#') {
      std::getline(in, tok);
      continue;
    }
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) throw trigfun::ParseError("'" + path + "': not a number: " + tok, 0);
    out.push_back(v);
  }
  return out;
}

std::string format_value(Complex v, bool real) {
  if (real) return format_double(v.real());
  return format_double(v.real()) + " " + format_double(v.imag());
}

TrigPoly build_expr(const std::string& src, const trigfun::Interval& iv, int trig_n = 0) {
  const trigfun::Expr e = trigfun::parse_expr(src);
  auto f = [&e](double t) { return trigfun::evaluate(e, t); };
  if (trig_n > 0) return trigfun::build_fixed(f, iv, static_cast<std::size_t>(trig_n));
  return trigfun::build_adaptive(f, iv);
}

void print_header(std::ostream& os, const TrigPoly& p) {
  const auto& iv = p.interval();
  os << "# interval " << format_double(iv.a()) << ' ' << format_double(iv.b()) << '\n';
  os << "# length " << p.length() << '\n';
  os << "# endpoint values " << format_value(p(iv.a()), p.is_real()) << " , "
     << format_value(p(iv.b()), p.is_real()) << '\n';
  os << "# real " << (p.is_real() ? "true" : "false") << '\n';
}

void print_poly(std::ostream& os, const TrigPoly& p) {
  print_header(os, p);
  trigfun::write_coeffs(os, p);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"trigfun: periodic functions as trigonometric polynomials"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string interval_str = "-1,1";
  app.add_option("--interval", interval_str, "Periodic interval a,b")->capture_default_str();

  std::string expr, expr2, file, out_path, points_path, values_path, at_str, variant = "analytic";
  int trig_n = 0, order = 1, degree = 0, k_eigs = 1, n_samples = 0, n_max = 10, nu = 1;
  double V = 1, alpha = 1, M = 1;
  bool cos_sin = false, trig_form = false;

  auto* build = app.add_subcommand("build", "Construct a trigfun and print its coefficients");
  build->add_option("expr", expr, "Expression in t");
  build->add_option("--trig-n", trig_n, "Fixed number of sample points (no adaptivity)");
  build->add_option("--from-coeffs", file, "Coefficient dump to read instead of an expression");

  auto* eval = app.add_subcommand("eval", "Evaluate at points");
  eval->add_option("expr", expr)->required();
  eval->add_option("--at", at_str, "Comma-separated points")->required();

  auto* coeffs = app.add_subcommand("coeffs", "Coefficient dump");
  coeffs->add_option("expr", expr)->required();
  coeffs->add_flag("--cos-sin", cos_sin, "Print k a_k b_k (cosine/sine form)");

  auto* roots = app.add_subcommand("roots", "Roots in [a,b)");
  roots->add_option("expr", expr)->required();
  auto* sum = app.add_subcommand("sum", "Definite integral over the period");
  sum->add_option("expr", expr)->required();
  auto* norm = app.add_subcommand("norm", "L2 norm");
  norm->add_option("expr", expr)->required();
  auto* max = app.add_subcommand("max", "Global maximum value and its position");
  max->add_option("expr", expr)->required();

  auto* diff = app.add_subcommand("diff", "Derivative");
  diff->add_option("expr", expr)->required();
  diff->add_option("--order", order, "Derivative order")->capture_default_str();

  auto* conv = app.add_subcommand("conv", "Circular convolution");
  conv->add_option("expr1", expr)->required();
  conv->add_option("expr2", expr2)->required();

  auto* interp = app.add_subcommand("interp", "Trigonometric interpolation in arbitrary points");
  interp->add_option("--points", points_path, "File of points")->required();
  interp->add_option("--values", values_path, "File of values")->required();
  interp->add_option("--at", at_str, "Evaluate the interpolant at these points");
  interp->add_flag("--trig", trig_form, "Print the interpolant as a coefficient dump");

  auto* remez = app.add_subcommand("remez", "Best approximation in the max norm");
  remez->add_option("expr", expr)->required();
  remez->add_option("--degree", degree, "Degree n")->required();

  auto* solve = app.add_subcommand("solve", "Solve a periodic ODE from a problem file");
  solve->add_option("--problem", file, "Problem file")->required();

  auto* eigs = app.add_subcommand("eigs", "Eigenvalues of a periodic operator from a problem file");
  eigs->add_option("--problem", file, "Problem file")->required();
  eigs->add_option("-k", k_eigs, "Number of eigenvalues")->capture_default_str();

  auto* sample = app.add_subcommand("sample", "Write samples at trigonometric points as CSV");
  sample->add_option("expr", expr)->required();
  sample->add_option("--n", n_samples, "Number of points")->required();
  sample->add_option("--out", out_path, "CSV file")->required();

  auto* bounds = app.add_subcommand("bounds", "Tabulate coefficient, approximation and quadrature bounds");
  bounds->add_option("--variant", variant, "bv or analytic")->check(CLI::IsMember({"bv", "analytic"}));
  bounds->add_option("--nu", nu, "Smoothness order (bv)");
  bounds->add_option("--V", V, "Total variation of f^(nu) (bv)");
  bounds->add_option("--alpha", alpha, "Strip half-width (analytic)");
  bounds->add_option("--M", M, "Bound in the strip (analytic)");
  bounds->add_option("--n-max", n_max, "Largest n in the table")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  std::ostream& out = std::cout;
  try {
    const trigfun::Interval iv = parse_interval(interval_str);

    if (build->parsed()) {
      if (!file.empty()) {
        std::ifstream in(file);
        if (!in) throw trigfun::DomainError("cannot open '" + file + "'");
        print_poly(out, trigfun::build_from_coeffs(trigfun::read_coeffs(in), iv));
      } else {
        if (expr.empty()) throw trigfun::DomainError("build: give an expression or --from-coeffs");
        print_poly(out, build_expr(expr, iv, trig_n));
      }
    } else if (eval->parsed()) {
      const TrigPoly p = build_expr(expr, iv);
      for (double t : parse_list(at_str)) out << format_value(p(t), p.is_real()) << '\n';
    } else if (coeffs->parsed()) {
      const TrigPoly p = build_expr(expr, iv);
      if (cos_sin) {
        const auto cs = trigfun::exp_to_cos_sin(p);
        for (std::size_t k = 0; k < cs.a.size(); ++k) {
          const Complex b = k == 0 ? Complex(0) : cs.b[k - 1];
          out << k << ' ' << format_value(cs.a[k], p.is_real()) << ' ' << format_value(b, p.is_real()) << '\n';
        }
      } else {
        trigfun::write_coeffs(out, p);
      }
    } else if (roots->parsed()) {
      for (double r : trigfun::roots(build_expr(expr, iv))) out << format_double(r) << '\n';
    } else if (sum->parsed()) {
      const TrigPoly p = build_expr(expr, iv);
      out << format_value(trigfun::integral(p), p.is_real()) << '\n';
    } else if (norm->parsed()) {
      out << format_double(trigfun::norm2(build_expr(expr, iv))) << '\n';
    } else if (max->parsed()) {
      const auto e = trigfun::extrema(build_expr(expr, iv));
      out << format_double(e.max_value) << ' ' << format_double(e.argmax) << '\n';
    } else if (diff->parsed()) {
      print_poly(out, trigfun::differentiate(build_expr(expr, iv), order));
    } else if (conv->parsed()) {
      print_poly(out, trigfun::circconv(build_expr(expr, iv), build_expr(expr2, iv)));
    } else if (interp->parsed()) {
      const auto pts = read_numbers(points_path);
      const auto vals = read_numbers(values_path);
      const auto ip = trigfun::interp_nonuniform(pts, vals, iv);
      if (!at_str.empty()) {
        for (double t : parse_list(at_str)) out << format_double(ip(t).real()) << '\n';
      }
      if (trig_form || at_str.empty()) print_poly(out, ip.to_trigpoly());
    } else if (remez->parsed()) {
      const auto r = trigfun::trigremez(build_expr(expr, iv), degree);
      out << "# level " << format_double(r.level) << '\n';
      out << "# iterations " << r.iterations << '\n';
      out << "# reference (t, sign)\n";
      for (std::size_t i = 0; i < r.reference.size(); ++i)
        out << "#   " << format_double(r.reference[i]) << ' ' << (r.signs[i] > 0 ? "+1" : "-1") << '\n';
      trigfun::write_coeffs(out, r.best);
    } else if (solve->parsed()) {
      std::ifstream in(file);
      if (!in) throw trigfun::DomainError("cannot open '" + file + "'");
      const auto spec = trigfun::read_problem(in);
      if (spec.is_nonlinear()) {
        const auto prob = spec.nonlinear_problem();
        const auto r = trigfun::solve_nonlinear(prob);
        out << "# newton steps " << r.iterations << '\n';
        out << "# residual " << format_double(r.residual) << '\n';
        out << "# degree " << r.u.degree() << '\n';
        print_poly(out, r.u);
      } else {
        const auto op = spec.linear_op();
        const TrigPoly rhs = spec.rhs_poly();
        const TrigPoly u = trigfun::solve_linear(op, rhs);
        out << "# residual " << format_double(trigfun::sup_norm_sampled(op.apply(u) - rhs)) << '\n';
        out << "# degree " << u.degree() << '\n';
        print_poly(out, u);
      }
    } else if (eigs->parsed()) {
      std::ifstream in(file);
      if (!in) throw trigfun::DomainError("cannot open '" + file + "'");
      const auto spec = trigfun::read_problem(in);
      if (k_eigs < 1) throw trigfun::InvalidSizeError("eigs: -k must be at least 1");
      const auto r = trigfun::eigs(spec.linear_op(), static_cast<std::size_t>(k_eigs));
      out << "# grid " << r.grid << '\n';
      for (const auto& v : r.values) out << format_value(v, v.imag() == 0) << '\n';
    } else if (sample->parsed()) {
      if (n_samples < 1) throw trigfun::InvalidSizeError("sample: --n must be positive");
      const TrigPoly p = build_expr(expr, iv);
      std::ofstream csv(out_path);
      if (!csv) throw trigfun::DomainError("cannot write '" + out_path + "'");
      csv << (p.is_real() ? "t,value\n" : "t,re,im\n");
      for (double t : trigfun::trig_points(static_cast<std::size_t>(n_samples), iv)) {
        const Complex v = p(t);
        csv << format_double(t) << ',' << format_double(v.real());
        if (!p.is_real()) csv << ',' << format_double(v.imag());
        csv << '\n';
      }
    } else if (bounds->parsed()) {
      const auto params = variant == "bv" ? trigfun::DecayBoundParams::bounded_variation(nu, V)
                                          : trigfun::DecayBoundParams::analytic(alpha, M);
      const auto cell = [](auto&& fn) {
        try {
          return format_double(fn());
        } catch (const trigfun::Error&) {
          return std::string("-");
        }
      };
      out << "# n coeff_bound projection_bound interpolant_bound trapezoid_bound\n";
      for (int n = 1; n <= n_max; ++n) {
        out << n << ' ' << cell([&] { return trigfun::coeff_bound(n, params); }) << ' '
            << cell([&] { return trigfun::approx_error_bound(n, trigfun::ApproxKind::projection, params); }) << ' '
            << cell([&] { return trigfun::approx_error_bound(n, trigfun::ApproxKind::interpolant, params); }) << ' '
            << cell([&] { return trigfun::trap_error_bound(n, params); }) << '\n';
      }
    }
  } catch (const trigfun::ResolutionError& e) {
    std::cerr << "trigfun: " << e.what() << '\n';
    return kExitResolution;
  } catch (const trigfun::ParseError& e) {
    std::cerr << "trigfun: " << e.what() << '\n';
    return kExitParse;
  } catch (const trigfun::NumericalError& e) {
    std::cerr << "trigfun: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const trigfun::Error& e) {
    std::cerr << "trigfun: " << e.what() << '\n';
    return kExitUsage;
  }
  return 0;
}
