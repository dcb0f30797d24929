#pragma once

// Seeded instance generators.
//
// Both generators are pure functions of their GeneratorSpec and consume the
// SplitMix64 stream in a fixed order so instances reproduce bit-for-bit:
//
// random:   c_j = lo + u (hi - lo) for j = 0..n-1; then for every (i, j) in
//           row-major order two draws: value u, keep iff u' < p. Kept nonzero
//           values are stored; b_i = 0.1 n unless overridden.
//
// vicinity: c_j for j = 0..nodes-1 as above; then a Fisher-Yates shuffle
//           (j = nodes-1 down to 1, swap with below(j+1)) placing nodes on a
//           ring; then `vicinities` distinct centers by partial Fisher-Yates
//           over the node ids. Vicinity i is its center plus the
//           vicinity_size-1 nearest ring neighbours, visited +1, -1, +2, -2,
//           ... Row i of A marks its members with 1; b_i = cap.

#include <charconv>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "packlp/config.hpp"
#include "packlp/errors.hpp"
#include "packlp/packing_lp.hpp"
#include "packlp/rng.hpp"

namespace packlp {

struct GeneratorSpec {
  enum class Kind { random, vicinity };

  Kind kind = Kind::random;
  std::size_t m = 10;
  std::size_t n = 1000;
  double p = 0.8;
  double b_value = 0.0;  // used when b_tenth_n is false
  bool b_tenth_n = true;  // b_i = 0.1 n
  double c_lo = 1.0;
  double c_hi = 100.0;
  std::uint64_t seed = 0;

  // vicinity only
  std::size_t nodes = 0;
  std::size_t vicinities = 0;
  std::size_t vicinity_size = 0;
  double cap = 0.0;

  static GeneratorSpec random(std::size_t m, std::size_t n, double p, std::uint64_t seed) {
    GeneratorSpec s;
    s.m = m;
    s.n = n;
    s.p = p;
    s.seed = seed;
    return s;
  }

  static GeneratorSpec vicinity(std::size_t nodes, std::size_t vicinities, std::size_t vicinity_size,
                                double cap, std::uint64_t seed) {
    GeneratorSpec s;
    s.kind = Kind::vicinity;
    s.nodes = nodes;
    s.vicinities = vicinities;
    s.vicinity_size = vicinity_size;
    s.cap = cap;
    s.m = vicinities;
    s.n = nodes;
    s.c_lo = 1.0;
    s.c_hi = 10.0;
    s.seed = seed;
    return s;
  }

  /// Single-line description, enough to regenerate the instance.
  std::string fingerprint() const {
    auto num = [](double v) {
      char buf[32];
      const auto res = std::to_chars(buf, buf + sizeof buf, v);
      return std::string(buf, res.ptr);
    };
    std::ostringstream os;
    if (kind == Kind::random) {
      os << "random m=" << m << " n=" << n << " p=" << num(p)
         << " b=" << (b_tenth_n ? std::string("0.1n") : num(b_value));
    } else {
      os << "vicinity nodes=" << nodes << " vicinities=" << vicinities
         << " size=" << vicinity_size << " cap=" << num(cap);
    }
    os << " c=[" << num(c_lo) << "," << num(c_hi) << "] seed=" << seed;
    return os.str();
  }

  /// Reads keys: kind, m, n, p, b ("0.1n" or a number), c_lo, c_hi, seed,
  /// nodes, vicinities, vicinity_size, cap.
  static GeneratorSpec from_config(const KeyValueConfig& cfg) {
    GeneratorSpec s;
    const auto kind = cfg.get_or("kind", "random");
    if (kind == "vicinity") {
      s = vicinity(cfg.integer_or("nodes", 0), cfg.integer_or("vicinities", 0),
                   cfg.integer_or("vicinity_size", 0), cfg.number_or("cap", 0.0), 0);
    } else if (kind != "random") {
      throw SpecError("unknown generator kind '" + kind + "'");
    }
    s.m = cfg.integer_or("m", s.m);
    s.n = cfg.integer_or("n", s.n);
    s.p = cfg.number_or("p", s.p);
    if (const auto b = cfg.get("b"); b && *b != "0.1n") {
      s.b_tenth_n = false;
      s.b_value = detail::parse_double(*b);
    }
    s.c_lo = cfg.number_or("c_lo", s.c_lo);
    s.c_hi = cfg.number_or("c_hi", s.c_hi);
    s.seed = cfg.integer_or("seed", s.seed);
    return s;
  }
};

inline PackingLp generate_random(const GeneratorSpec& spec) {
  if (spec.m == 0 || spec.n == 0) throw SpecError("m and n must be positive");
  if (!(spec.p >= 0.0 && spec.p <= 1.0)) throw SpecError("p must lie in [0, 1]");
  if (!(spec.c_lo >= 0.0 && spec.c_lo <= spec.c_hi)) throw SpecError("bad c range");
  if (!spec.b_tenth_n && !(spec.b_value >= 0.0)) throw SpecError("b must be >= 0");

  SplitMix64 rng(spec.seed);
  const std::size_t m = spec.m, n = spec.n;
  std::vector<double> c(n);
  for (double& v : c) v = rng.uniform(spec.c_lo, spec.c_hi);

  // Row-major draws, bucketed straight into columns; rows arrive ascending.
  std::vector<std::uint32_t> row_of;
  std::vector<std::uint32_t> col_of;
  std::vector<double> val;
  const auto expect = static_cast<std::size_t>(spec.p * static_cast<double>(m * n) * 1.01) + 16;
  row_of.reserve(expect);
  col_of.reserve(expect);
  val.reserve(expect);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double u = rng.uniform01();
      const bool keep = rng.uniform01() < spec.p;
      if (keep && u != 0.0) {
        row_of.push_back(static_cast<std::uint32_t>(i));
        col_of.push_back(static_cast<std::uint32_t>(j));
        val.push_back(u);
      }
    }
  }
  std::vector<std::size_t> col_ptr(n + 1, 0);
  for (auto j : col_of) ++col_ptr[j + 1];
  std::partial_sum(col_ptr.begin(), col_ptr.end(), col_ptr.begin());
  std::vector<std::size_t> fill(col_ptr.begin(), col_ptr.end() - 1);
  std::vector<std::uint32_t> rows(val.size());
  std::vector<double> values(val.size());
  for (std::size_t k = 0; k < val.size(); ++k) {
    const std::size_t dst = fill[col_of[k]]++;
    rows[dst] = row_of[k];
    values[dst] = val[k];
  }
  const double bval = spec.b_tenth_n ? 0.1 * static_cast<double>(n) : spec.b_value;
  return PackingLp::from_columns(m, std::vector<double>(m, bval), std::move(c), std::move(col_ptr),
                                 std::move(rows), std::move(values));
}

inline PackingLp generate_vicinity(const GeneratorSpec& spec) {
  const std::size_t nodes = spec.nodes;
  if (nodes == 0 || spec.vicinities == 0) throw SpecError("nodes and vicinities must be positive");
  if (spec.vicinities > nodes) throw SpecError("more vicinities than nodes");
  if (spec.vicinity_size == 0 || spec.vicinity_size > nodes) {
    throw SpecError("vicinity_size must lie in [1, nodes]");
  }
  if (!(spec.cap >= 0.0)) throw SpecError("cap must be >= 0");
  if (!(spec.c_lo >= 0.0 && spec.c_lo <= spec.c_hi)) throw SpecError("bad c range");

  SplitMix64 rng(spec.seed);
  std::vector<double> c(nodes);
  for (double& v : c) v = rng.uniform(spec.c_lo, spec.c_hi);

  // ring[k] = node at ring position k
  std::vector<std::uint32_t> ring(nodes);
  std::iota(ring.begin(), ring.end(), 0u);
  for (std::size_t j = nodes - 1; j > 0; --j) std::swap(ring[j], ring[rng.below(j + 1)]);
  std::vector<std::size_t> position(nodes);
  for (std::size_t k = 0; k < nodes; ++k) position[ring[k]] = k;

  std::vector<std::uint32_t> pool(nodes);
  std::iota(pool.begin(), pool.end(), 0u);
  std::vector<std::uint32_t> centers(spec.vicinities);
  for (std::size_t i = 0; i < spec.vicinities; ++i) {
    const std::size_t pick = i + rng.below(nodes - i);
    std::swap(pool[i], pool[pick]);
    centers[i] = pool[i];
  }

  std::vector<std::vector<std::uint32_t>> members_of(nodes);
  for (std::size_t i = 0; i < spec.vicinities; ++i) {
    const std::size_t home = position[centers[i]];
    members_of[centers[i]].push_back(static_cast<std::uint32_t>(i));
    std::size_t added = 1;
    for (std::size_t off = 1; added < spec.vicinity_size; ++off) {
      members_of[ring[(home + off) % nodes]].push_back(static_cast<std::uint32_t>(i));
      if (++added == spec.vicinity_size) break;
      members_of[ring[(home + nodes - off % nodes) % nodes]].push_back(static_cast<std::uint32_t>(i));
      ++added;
    }
  }

  std::vector<std::size_t> col_ptr(nodes + 1, 0);
  std::vector<std::uint32_t> rows;
  for (std::size_t j = 0; j < nodes; ++j) {
    rows.insert(rows.end(), members_of[j].begin(), members_of[j].end());
    col_ptr[j + 1] = rows.size();
  }
  std::vector<double> values(rows.size(), 1.0);
  return PackingLp::from_columns(spec.vicinities, std::vector<double>(spec.vicinities, spec.cap),
                                 std::move(c), std::move(col_ptr), std::move(rows),
                                 std::move(values));
}

inline PackingLp generate(const GeneratorSpec& spec) {
  return spec.kind == GeneratorSpec::Kind::random ? generate_random(spec) : generate_vicinity(spec);
}

}  // namespace packlp
