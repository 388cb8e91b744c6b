#pragma once

#include <cctype>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "trigfun/dual.hpp"
#include "trigfun/error.hpp"

namespace trigfun {

/// Expression tree over real/complex scalars and named variables.
struct Expr {
  enum class Kind { number, imag, pi, variable, negate, add, sub, mul, div, pow, call };

  Kind kind = Kind::number;
  double value = 0;      // number, imag
  int index = 0;         // variable
  std::string name;      // variable, call
  std::vector<Expr> args;

  bool operator==(const Expr&) const = default;

  static Expr number(double v) { return {Kind::number, v, 0, {}, {}}; }
  static Expr imag(double v) { return {Kind::imag, v, 0, {}, {}}; }
  static Expr constant_pi() { return {Kind::pi, 0, 0, {}, {}}; }
  static Expr variable(std::string n, int i) { return {Kind::variable, 0, i, std::move(n), {}}; }
  static Expr negate(Expr a) { return {Kind::negate, 0, 0, {}, {std::move(a)}}; }
  static Expr binary(Kind k, Expr a, Expr b) { return {k, 0, 0, {}, {std::move(a), std::move(b)}}; }
  static Expr call(std::string fn, Expr a) { return {Kind::call, 0, 0, std::move(fn), {std::move(a)}}; }
};

inline constexpr std::string_view kExprFunctions[] = {"exp", "sin", "cos", "tan", "tanh", "sqrt", "log", "abs"};

namespace detail {

class ExprParser {
 public:
  ExprParser(std::string_view src, std::span<const std::string> vars) : src_(src), vars_(vars) {}

  Expr parse() {
    Expr e = parse_sum();
    skip_space();
    if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'", {"operator", "end of input"});
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, std::vector<std::string> expected) const {
    std::string what = "parse error at offset " + std::to_string(pos_) + ": " + msg;
    if (!expected.empty()) {
      what += " (expected ";
      for (std::size_t i = 0; i < expected.size(); ++i) what += (i ? ", " : "") + expected[i];
      what += ")";
    }
    throw ParseError(what, pos_, std::move(expected));
  }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr parse_sum() {
    Expr lhs = parse_product();
    for (;;) {
      if (accept('+'))
        lhs = Expr::binary(Expr::Kind::add, std::move(lhs), parse_product());
      else if (accept('-'))
        lhs = Expr::binary(Expr::Kind::sub, std::move(lhs), parse_product());
      else
        return lhs;
    }
  }

  Expr parse_product() {
    Expr lhs = parse_unary();
    for (;;) {
      if (accept('*'))
        lhs = Expr::binary(Expr::Kind::mul, std::move(lhs), parse_unary());
      else if (accept('/'))
        lhs = Expr::binary(Expr::Kind::div, std::move(lhs), parse_unary());
      else
        return lhs;
    }
  }

  // Unary minus binds looser than ^: -2^2 = -(2^2).
  Expr parse_unary() {
    if (accept('-')) return Expr::negate(parse_unary());
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_primary();
    if (accept('^')) return Expr::binary(Expr::Kind::pow, std::move(base), parse_unary());
    return base;
  }

  Expr parse_primary() {
    skip_space();
    if (pos_ >= src_.size()) fail("unexpected end of input", {"number", "identifier", "'('", "'-'"});
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = parse_sum();
      if (!accept(')')) fail("missing ')'", {"')'"});
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
    fail("unexpected '" + std::string(1, c) + "'", {"number", "identifier", "'('", "'-'"});
  }

  static bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  Expr parse_number() {
    const std::size_t start = pos_;
    std::size_t p = pos_;
    const auto digits = [&] {
      const std::size_t s = p;
      while (p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]))) ++p;
      return p - s;
    };
    std::size_t nd = digits();
    if (p < src_.size() && src_[p] == '.') {
      ++p;
      nd += digits();
    }
    if (nd == 0) fail("malformed number", {"digit"});
    if (p < src_.size() && (src_[p] == 'e' || src_[p] == 'E')) {
      std::size_t q = p + 1;
      if (q < src_.size() && (src_[q] == '+' || src_[q] == '-')) ++q;
      if (q < src_.size() && std::isdigit(static_cast<unsigned char>(src_[q]))) {
        p = q;
        digits();
      }
    }
    const double v = std::strtod(std::string(src_.substr(start, p - start)).c_str(), nullptr);
    pos_ = p;
    if (pos_ < src_.size() && src_[pos_] == 'i' && (pos_ + 1 >= src_.size() || !is_ident_char(src_[pos_ + 1]))) {
      ++pos_;
      return Expr::imag(v);
    }
    if (pos_ < src_.size() && is_ident_char(src_[pos_])) fail("malformed number", {"operator"});
    return Expr::number(v);
  }

  Expr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && is_ident_char(src_[pos_])) ++pos_;
    const std::string id(src_.substr(start, pos_ - start));
    if (id == "pi") return Expr::constant_pi();
    if (id == "i") return Expr::imag(1);
    for (std::size_t v = 0; v < vars_.size(); ++v)
      if (vars_[v] == id) return Expr::variable(id, static_cast<int>(v));
    for (auto fn : kExprFunctions) {
      if (fn != id) continue;
      if (!accept('(')) fail("function '" + id + "' needs a parenthesized argument", {"'('"});
      Expr arg = parse_sum();
      if (!accept(')')) fail("missing ')'", {"')'"});
      return Expr::call(id, std::move(arg));
    }
    pos_ = start;
    std::vector<std::string> expected(vars_.begin(), vars_.end());
    expected.insert(expected.end(), {"pi", "i"});
    for (auto fn : kExprFunctions) expected.emplace_back(fn);
    fail("unknown identifier '" + id + "'", std::move(expected));
  }

  std::string_view src_;
  std::span<const std::string> vars_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses an expression. Precedence, tightest first: ^ (right associative),
/// unary -, * and /, + and -. Complex literals use the suffix form `2i`;
/// bare `i` is the imaginary unit.
inline Expr parse_expr(std::string_view src, std::span<const std::string> vars) {
  return detail::ExprParser(src, vars).parse();
}

inline Expr parse_expr(std::string_view src) {
  static const std::string t[] = {"t"};
  return parse_expr(src, t);
}

/// Fully parenthesized rendering that parses back to the same tree.
inline std::string print(const Expr& e) {
  using K = Expr::Kind;
  const auto num = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  switch (e.kind) {
    case K::number: return num(e.value);
    case K::imag: return num(e.value) + "i";
    case K::pi: return "pi";
    case K::variable: return e.name;
    case K::negate: return "(-" + print(e.args[0]) + ")";
    case K::call: return e.name + "(" + print(e.args[0]) + ")";
    default: break;
  }
  const char* op = e.kind == K::add ? "+" : e.kind == K::sub ? "-" : e.kind == K::mul ? "*" : e.kind == K::div ? "/" : "^";
  return "(" + print(e.args[0]) + op + print(e.args[1]) + ")";
}

namespace detail {

template <class T>
T int_power(T base, long n) {
  if (n < 0) return T(1.0) / int_power(base, -n);
  T result(1.0);
  while (n > 0) {
    if (n & 1) result = result * base;
    base = base * base;
    n >>= 1;
  }
  return result;
}

template <class T>
T apply_function(const std::string& fn, const T& x) {
  using std::cos, std::exp, std::log, std::sin, std::sqrt, std::tan, std::tanh, std::abs;
  if (fn == "exp") return exp(x);
  if (fn == "sin") return sin(x);
  if (fn == "cos") return cos(x);
  if (fn == "tan") return tan(x);
  if (fn == "tanh") return tanh(x);
  if (fn == "sqrt") return sqrt(x);
  if (fn == "log") return log(x);
  if (fn == "abs") return T(abs(x));
  throw DomainError("unknown function '" + fn + "'");
}

}  // namespace detail

/// Evaluates e with variable j bound to vars[j]. T is std::complex<double> or
/// Dual<std::complex<double>>. Integer powers use repeated squaring.
template <class T>
T evaluate(const Expr& e, std::span<const T> vars) {
  using K = Expr::Kind;
  using C = std::complex<double>;
  switch (e.kind) {
    case K::number: return T(C(e.value));
    case K::imag: return T(C(0, e.value));
    case K::pi: return T(C(std::numbers::pi));
    case K::variable: return vars[static_cast<std::size_t>(e.index)];
    case K::negate: return -evaluate(e.args[0], vars);
    case K::call: return detail::apply_function(e.name, evaluate(e.args[0], vars));
    case K::add: return evaluate(e.args[0], vars) + evaluate(e.args[1], vars);
    case K::sub: return evaluate(e.args[0], vars) - evaluate(e.args[1], vars);
    case K::mul: return evaluate(e.args[0], vars) * evaluate(e.args[1], vars);
    case K::div: return evaluate(e.args[0], vars) / evaluate(e.args[1], vars);
    case K::pow: {
      const Expr& ex = e.args[1];
      if (ex.kind == K::number && ex.value == std::floor(ex.value) && std::abs(ex.value) <= 1024)
        return detail::int_power(evaluate(e.args[0], vars), static_cast<long>(ex.value));
      using std::pow;
      return pow(evaluate(e.args[0], vars), evaluate(ex, vars));
    }
  }
  throw DomainError("evaluate: corrupt expression node");
}

/// f(t) for an expression in the single variable t.
inline std::complex<double> evaluate(const Expr& e, double t) {
  const std::complex<double> v[] = {t};
  return evaluate<std::complex<double>>(e, v);
}

}  // namespace trigfun
