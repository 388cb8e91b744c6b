#pragma once

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "trigfun/error.hpp"
#include "trigfun/trigpoly.hpp"

namespace trigfun {

/// Shortest-round-trip-safe rendering: 17 significant digits.
inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// Coefficient dump: one line `k re im` per stored coefficient, ascending k
/// from min_index(). Even lengths keep their top-cosine slot at k = -n.
inline void write_coeffs(std::ostream& os, const TrigPoly& p) {
  int k = p.min_index();
  for (const Complex& c : p.data()) {
    os << k++ << ' ' << format_double(c.real()) << ' ' << format_double(c.imag()) << '\n';
  }
}

inline std::string coeffs_to_string(const TrigPoly& p) {
  std::ostringstream os;
  write_coeffs(os, p);
  return os.str();
}

/// Reads a coefficient dump. Blank lines and lines starting with '#' are
/// skipped. Indices must run consecutively from -floor(N/2).
inline std::vector<Complex> read_coeffs(std::istream& is) {
  std::vector<Complex> coeffs;
  std::vector<long> indices;
  std::string line;
  std::size_t offset = 0;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const std::size_t line_start = offset;
    offset += line.size() + 1;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    long k;
    double re, im;
    if (!(ls >> k >> re >> im))
      throw ParseError("coefficient dump line " + std::to_string(line_no) + ": expected `k re im`", line_start);
    indices.push_back(k);
    coeffs.emplace_back(re, im);
  }
  if (coeffs.empty()) throw ParseError("coefficient dump is empty", 0);
  const long first_k = -static_cast<long>(coeffs.size() / 2);
  for (std::size_t j = 0; j < indices.size(); ++j) {
    if (indices[j] != first_k + static_cast<long>(j))
      throw ParseError("coefficient dump indices must run consecutively from " + std::to_string(first_k), 0);
  }
  return coeffs;
}

}  // namespace trigfun
