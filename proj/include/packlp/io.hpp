#pragma once

// Text formats.
//
// Instance:
//   m n nnz
//   b_0 ... b_{m-1}
//   c_0 ... c_{n-1}
//   i j a_ij          (nnz lines, 0-based, column-major order on write)
//
// Solution / vector: one value per line.
//
// Reals are written with 17 significant digits so doubles round-trip exactly.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "packlp/config.hpp"
#include "packlp/errors.hpp"
#include "packlp/packing_lp.hpp"

namespace packlp {

/// %.17g
inline std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_instance(const PackingLp& lp, std::ostream& out) {
  out << lp.m() << ' ' << lp.n() << ' ' << lp.nnz() << '\n';
  auto write_row = [&](std::span<const double> v) {
    for (std::size_t k = 0; k < v.size(); ++k) out << (k ? " " : "") << format_real(v[k]);
    out << '\n';
  };
  write_row(lp.b());
  write_row(lp.c());
  for (std::size_t j = 0; j < lp.n(); ++j) {
    const auto col = lp.column(j);
    for (std::size_t k = 0; k < col.size(); ++k) {
      out << col.rows[k] << ' ' << j << ' ' << format_real(col.values[k]) << '\n';
    }
  }
}

inline void write_instance(const PackingLp& lp, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_instance(lp, out);
  if (!out) throw IoError("write to '" + path + "' failed");
}

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t k = 0;
  while (k < line.size()) {
    while (k < line.size() && (line[k] == ' ' || line[k] == '\t' || line[k] == '\r')) ++k;
    std::size_t e = k;
    while (e < line.size() && line[e] != ' ' && line[e] != '\t' && line[e] != '\r') ++e;
    if (e > k) out.push_back(line.substr(k, e - k));
    k = e;
  }
  return out;
}

}  // namespace detail

inline PackingLp read_instance(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  auto next_line = [&](const char* what) -> std::vector<std::string_view> {
    if (!std::getline(in, line)) throw ParseError(std::string("unexpected end of file, expected ") + what, lineno + 1);
    ++lineno;
    return detail::split_ws(line);
  };

  auto head = next_line("header 'm n nnz'");
  if (head.size() != 3) throw ParseError("header must be 'm n nnz'", lineno);
  const std::size_t m = detail::parse_u64(head[0], lineno);
  const std::size_t n = detail::parse_u64(head[1], lineno);
  const std::size_t nnz = detail::parse_u64(head[2], lineno);

  auto read_values = [&](std::size_t count, const char* what) {
    auto tok = next_line(what);
    if (tok.size() != count) {
      throw ParseError(std::string(what) + ": expected " + std::to_string(count) + " values, got " +
                           std::to_string(tok.size()),
                       lineno);
    }
    std::vector<double> v(count);
    for (std::size_t k = 0; k < count; ++k) v[k] = detail::parse_double(tok[k], lineno);
    return v;
  };
  auto b = read_values(m, "b");
  auto c = read_values(n, "c");

  std::vector<Entry> entries;
  entries.reserve(nnz);
  for (std::size_t k = 0; k < nnz; ++k) {
    auto tok = next_line("entry 'i j a_ij'");
    if (tok.size() != 3) throw ParseError("entry must be 'i j a_ij'", lineno);
    Entry e{detail::parse_u64(tok[0], lineno), detail::parse_u64(tok[1], lineno),
            detail::parse_double(tok[2], lineno)};
    if (!(e.value >= 0.0 && e.value <= 1.0)) {
      throw ValidationError("line " + std::to_string(lineno) + ": a_ij = " + std::string(tok[2]) +
                            " outside [0, 1]");
    }
    entries.push_back(e);
  }
  while (std::getline(in, line)) {
    ++lineno;
    if (!detail::split_ws(line).empty()) throw ParseError("trailing content after entries", lineno);
  }
  return PackingLp(m, n, std::move(b), std::move(c), std::move(entries));
}

inline PackingLp read_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return read_instance(in);
}

inline void write_vector(std::span<const double> v, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  for (double x : v) out << format_real(x) << '\n';
  if (!out) throw IoError("write to '" + path + "' failed");
}

inline std::vector<double> read_vector(std::istream& in) {
  std::vector<double> v;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto tok = detail::split_ws(line);
    if (tok.empty()) continue;
    if (tok.size() != 1) throw ParseError("expected one value per line", lineno);
    v.push_back(detail::parse_double(tok[0], lineno));
  }
  return v;
}

inline std::vector<double> read_vector(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return read_vector(in);
}

}  // namespace packlp
