#pragma once

// Revised simplex for packing LPs with implicit variable bounds.
//
// Variables are the n structurals (bounds [0,1]) followed by m row slacks
// (bounds [0,inf)). The basis inverse is kept dense (m x m, column-major)
// and updated by elementary row operations, with a fresh Gauss-Jordan
// inversion every `refactor_period` pivots.
//
// Two phases:
//
//  1. Dual phase (optional, on by default). Start from the slack basis with
//     every c_j > 0 column at its upper bound, which is dual feasible at
//     phi = 0. Dual simplex iterations with a bound-flipping ratio test then
//     restore primal feasibility; one iteration can move thousands of
//     columns between bounds, which is what makes short-and-wide instances
//     cheap.
//  2. Primal phase. Dantzig pricing from a primal feasible basis (the slack
//     basis x = 0 when the dual phase is off). Reduced costs only change on a
//     basis change, so after each pivot the eligible columns go in a
//     max-heap keyed by |d_j| and are popped in order; a column whose step
//     is limited by its own bound just flips and the next one is taken
//     without repricing.
//
// After `stall_limit` consecutive degenerate pivots either phase switches to
// Bland's rule (lowest index) until progress resumes. Ratio-test ties go to
// the lowest variable index.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "packlp/errors.hpp"
#include "packlp/packing_lp.hpp"
#include "packlp/solver.hpp"

namespace packlp {

struct SimplexOptions {
  double primal_tol = 1e-9;
  double dual_tol = 1e-9;     // scaled by max(1, max c_j)
  double pivot_tol = 1e-9;
  std::size_t iteration_factor = 50;  // cap = factor * (m + n)
  std::size_t refactor_period = 64;
  std::size_t stall_limit = 32;
  bool dual_phase = true;             // dual bound-flipping phase before primal cleanup
  std::ostream* log = nullptr;        // iteration log, e.g. &std::cerr
  std::size_t log_every = 100;
};

namespace detail {

class BoundedSimplex {
 public:
  BoundedSimplex(const PackingLp& lp, const SimplexOptions& opt)
      : lp_(lp), opt_(opt), m_(lp.m()), n_(lp.n()) {
    const auto c = lp_.c();
    const double cmax = c.empty() ? 0.0 : *std::max_element(c.begin(), c.end());
    dual_tol_ = opt_.dual_tol * std::max(1.0, cmax);
    cap_ = opt_.iteration_factor * (m_ + n_);

    status_.assign(n_ + m_, Status::lower);
    head_.resize(m_);
    for (std::size_t r = 0; r < m_; ++r) {
      head_[r] = n_ + r;
      status_[n_ + r] = Status::basic;
    }
    binv_.assign(m_ * m_, 0.0);
    for (std::size_t r = 0; r < m_; ++r) binv_[r * m_ + r] = 1.0;
    x_basic_.assign(lp_.b().begin(), lp_.b().end());
    phi_.assign(m_, 0.0);
    d_.assign(n_ + m_, 0.0);
    w_.assign(m_, 0.0);
  }

  SolverOutcome run() {
    const auto start = std::chrono::steady_clock::now();
    if (opt_.dual_phase) {
      // x_j = 1 wherever c_j > 0 prices every column dual feasibly at phi = 0.
      for (std::size_t j = 0; j < n_; ++j) {
        if (lp_.c()[j] > 0.0) status_[j] = Status::upper;
      }
      refactor();
      price();
      run_dual();
    }
    run_primal();

    SolverOutcome out;
    extract(out);
    out.iterations = iterations_;
    out.wall_time = std::chrono::steady_clock::now() - start;
    out.contract = {1.0, 1.0, true};
    if (opt_.log) {
      *opt_.log << "simplex done: it " << iterations_ << " pivots " << pivots_ << " obj "
                << out.primal.objective << '\n';
    }
    return out;
  }

 private:
  enum class Status : std::uint8_t { basic, lower, upper };

  double upper(std::size_t v) const noexcept {
    return v < n_ ? 1.0 : std::numeric_limits<double>::infinity();
  }
  double cost(std::size_t v) const noexcept { return v < n_ ? lp_.c()[v] : 0.0; }
  const double* binv_col(std::size_t i) const noexcept { return binv_.data() + i * m_; }

  bool eligible(std::size_t v) const noexcept {
    switch (status_[v]) {
      case Status::lower: return d_[v] > dual_tol_;
      case Status::upper: return d_[v] < -dual_tol_;
      default: return false;
    }
  }

  // phi^T = c_B^T B^-1, then d_v = c_v - phi.a_v for every nonbasic v.
  void price() {
    for (std::size_t i = 0; i < m_; ++i) {
      const double* col = binv_col(i);
      double s = 0.0;
      for (std::size_t r = 0; r < m_; ++r) s += cost(head_[r]) * col[r];
      phi_[i] = s;
    }
    for (std::size_t j = 0; j < n_; ++j) {
      d_[j] = status_[j] == Status::basic ? 0.0 : lp_.c()[j] - lp_.column(j).dot(phi_);
    }
    for (std::size_t i = 0; i < m_; ++i) {
      d_[n_ + i] = status_[n_ + i] == Status::basic ? 0.0 : -phi_[i];
    }
  }

  // w = B^-1 a_v
  void ftran(std::size_t v) {
    std::fill(w_.begin(), w_.end(), 0.0);
    auto axpy = [&](std::size_t i, double a) {
      const double* col = binv_col(i);
      for (std::size_t r = 0; r < m_; ++r) w_[r] += a * col[r];
    };
    if (v < n_) {
      const auto col = lp_.column(v);
      for (std::size_t k = 0; k < col.size(); ++k) axpy(col.rows[k], col.values[k]);
    } else {
      axpy(v - n_, 1.0);
    }
  }

  void count_iteration() {
    if (++iterations_ > cap_) {
      throw SolverError("simplex: iteration cap " + std::to_string(cap_) + " reached");
    }
  }

  void log_progress(const char* phase, bool bland) const {
    if (opt_.log && opt_.log_every && iterations_ % opt_.log_every == 0) {
      *opt_.log << "simplex " << phase << " it " << iterations_ << " pivots " << pivots_
                << " obj " << current_objective() << (bland ? " [bland]" : "") << '\n';
    }
  }

  // Primal iterations from a primal feasible basis until no column prices out.
  void run_primal() {
    bool bland = false;
    std::size_t stall = 0;
    std::vector<std::size_t> heap;

    for (;;) {
      price();
      heap.clear();
      for (std::size_t v = 0; v < n_ + m_; ++v) {
        if (eligible(v)) heap.push_back(v);
      }
      if (heap.empty()) {
        if (since_refactor_ > 0) {
          refactor();
          continue;
        }
        break;
      }
      auto before = [&](std::size_t a, std::size_t b) {
        if (bland) return a > b;
        const double da = std::abs(d_[a]);
        const double db = std::abs(d_[b]);
        return da != db ? da < db : a > b;
      };
      std::make_heap(heap.begin(), heap.end(), before);

      bool pivoted = false;
      while (!heap.empty() && !pivoted) {
        std::pop_heap(heap.begin(), heap.end(), before);
        const std::size_t q = heap.back();
        heap.pop_back();
        count_iteration();
        const double step = iterate(q, pivoted);
        if (pivoted) {
          if (step <= opt_.primal_tol) {
            if (++stall >= opt_.stall_limit) bland = true;
          } else {
            stall = 0;
            bland = false;
          }
        }
        log_progress("primal", bland);
      }
    }
  }

  // Dual iterations with a bound-flipping ratio test, from a dual feasible
  // basis until x_B is within bounds. The leaving row is the most infeasible
  // one (lowest index under Bland's rule); breakpoints are passed, flipping
  // their column to the opposite bound, while the leaving row stays infeasible.
  void run_dual() {
    bool bland = false;
    std::size_t stall = 0;
    std::vector<double> rho(m_), alpha(n_ + m_, 0.0), rhs_shift(m_);
    std::vector<std::pair<double, std::size_t>> breaks;
    std::vector<std::size_t> flipped;

    for (;;) {
      std::size_t r = m_;
      double worst = 0.0;
      for (std::size_t k = 0; k < m_; ++k) {
        const double ub = upper(head_[k]);
        const double infeas = x_basic_[k] < -opt_.primal_tol       ? -x_basic_[k]
                              : x_basic_[k] > ub + opt_.primal_tol ? x_basic_[k] - ub
                                                                   : 0.0;
        if (infeas == 0.0) continue;
        const bool better = bland ? (r == m_ || head_[k] < head_[r])
                                  : (infeas > worst || (infeas == worst && head_[k] < head_[r]));
        if (better) {
          r = k;
          worst = infeas;
        }
      }
      if (r == m_) return;
      count_iteration();

      const double s = x_basic_[r] < 0.0 ? 1.0 : -1.0;
      for (std::size_t i = 0; i < m_; ++i) rho[i] = binv_[i * m_ + r];

      breaks.clear();
      for (std::size_t v = 0; v < n_ + m_; ++v) {
        if (status_[v] == Status::basic) continue;
        const double a = v < n_ ? lp_.column(v).dot(rho) : rho[v - n_];
        alpha[v] = a;
        const double sa = s * a;
        if ((status_[v] == Status::lower && sa < -opt_.pivot_tol) ||
            (status_[v] == Status::upper && sa > opt_.pivot_tol)) {
          breaks.emplace_back(std::max(0.0, d_[v] / sa), v);
        }
      }
      if (breaks.empty()) throw SolverError("simplex: dual unbounded (numerical failure)");

      auto later = [](const auto& x, const auto& y) { return x > y; };
      std::make_heap(breaks.begin(), breaks.end(), later);
      double slope = worst;
      std::size_t q = n_ + m_;
      double step = 0.0;
      flipped.clear();
      while (!breaks.empty()) {
        std::pop_heap(breaks.begin(), breaks.end(), later);
        const auto [t, v] = breaks.back();
        breaks.pop_back();
        slope -= std::abs(alpha[v]) * upper(v);
        if (slope <= 0.0 || breaks.empty()) {
          q = v;
          step = t;
          break;
        }
        flipped.push_back(v);
      }

      // Dual step.
      for (std::size_t i = 0; i < m_; ++i) phi_[i] += s * step * rho[i];
      for (std::size_t v = 0; v < n_ + m_; ++v) {
        if (status_[v] != Status::basic) d_[v] -= s * step * alpha[v];
      }
      const std::size_t out = head_[r];
      d_[out] = -s * step;
      d_[q] = 0.0;

      // Bound flips: x_B -= B^-1 (sum of flipped columns * change).
      if (!flipped.empty()) {
        std::fill(rhs_shift.begin(), rhs_shift.end(), 0.0);
        for (std::size_t v : flipped) {
          const double change = status_[v] == Status::lower ? 1.0 : -1.0;
          status_[v] = status_[v] == Status::lower ? Status::upper : Status::lower;
          const auto col = lp_.column(v);
          for (std::size_t k = 0; k < col.size(); ++k) rhs_shift[col.rows[k]] += change * col.values[k];
        }
        for (std::size_t i = 0; i < m_; ++i) {
          if (rhs_shift[i] == 0.0) continue;
          const double* col = binv_col(i);
          for (std::size_t k = 0; k < m_; ++k) x_basic_[k] -= col[k] * rhs_shift[i];
        }
      }

      // Primal step: entering column moves until the leaving row hits its bound.
      ftran(q);
      const double target = s > 0.0 ? 0.0 : upper(out);
      const double theta = (x_basic_[r] - target) / w_[r];
      for (std::size_t k = 0; k < m_; ++k) x_basic_[k] -= theta * w_[k];
      const double entering = (status_[q] == Status::upper ? upper(q) : 0.0) + theta;
      status_[out] = s > 0.0 ? Status::lower : Status::upper;
      status_[q] = Status::basic;
      head_[r] = q;
      x_basic_[r] = entering;
      update_inverse(r);
      ++pivots_;

      if (step <= opt_.dual_tol) {
        if (++stall >= opt_.stall_limit) bland = true;
      } else {
        stall = 0;
        bland = false;
      }
      if (++since_refactor_ >= opt_.refactor_period) {
        refactor();
        price();
      }
      log_progress("dual", bland);
    }
  }

  // One entering candidate. Returns the step length; sets `pivoted` when the
  // basis changed.
  double iterate(std::size_t q, bool& pivoted) {
    ftran(q);
    const double dir = status_[q] == Status::lower ? 1.0 : -1.0;
    constexpr double inf = std::numeric_limits<double>::infinity();
    const double flip = upper(q);

    double best = inf;
    std::size_t leave = m_;
    bool leave_to_upper = false;
    for (std::size_t r = 0; r < m_; ++r) {
      const double g = dir * w_[r];  // x_B[r] moves by -t * g
      double t;
      bool to_upper;
      if (g > opt_.pivot_tol) {
        t = x_basic_[r] / g;
        to_upper = false;
      } else if (g < -opt_.pivot_tol && std::isfinite(upper(head_[r]))) {
        t = (upper(head_[r]) - x_basic_[r]) / -g;
        to_upper = true;
      } else {
        continue;
      }
      t = std::max(t, 0.0);
      if (leave == m_) {
        best = t;
        leave = r;
        leave_to_upper = to_upper;
        continue;
      }
      const double slack = 1e-12 * std::max(1.0, best);
      if (t < best - slack || (t <= best + slack && head_[r] < head_[leave])) {
        best = t;
        leave = r;
        leave_to_upper = to_upper;
      }
    }

    if (leave == m_ || flip <= best) {
      if (!std::isfinite(flip)) throw SolverError("simplex: unbounded direction (numerical failure)");
      for (std::size_t r = 0; r < m_; ++r) x_basic_[r] -= dir * flip * w_[r];
      status_[q] = status_[q] == Status::lower ? Status::upper : Status::lower;
      pivoted = false;
      return flip;
    }

    const double t = best;
    for (std::size_t r = 0; r < m_; ++r) x_basic_[r] -= dir * t * w_[r];
    const std::size_t out = head_[leave];
    status_[out] = leave_to_upper ? Status::upper : Status::lower;
    x_basic_[leave] = status_[q] == Status::lower ? t : upper(q) - t;
    status_[q] = Status::basic;
    head_[leave] = q;
    update_inverse(leave);
    ++pivots_;
    pivoted = true;
    if (++since_refactor_ >= opt_.refactor_period) refactor();
    return t;
  }

  void update_inverse(std::size_t r) {
    const double pivot = w_[r];
    for (std::size_t i = 0; i < m_; ++i) {
      double* col = binv_.data() + i * m_;
      const double p = col[r] / pivot;
      if (p != 0.0) {
        for (std::size_t s = 0; s < m_; ++s) col[s] -= w_[s] * p;
      }
      col[r] = p;
    }
  }

  // Rebuilds B^-1 from the basis columns (Gauss-Jordan, partial pivoting)
  // and recomputes x_B = B^-1 (b - sum of nonbasic columns at upper bound).
  void refactor() {
    std::vector<double> a(m_ * m_, 0.0);  // column-major B
    for (std::size_t r = 0; r < m_; ++r) {
      const std::size_t v = head_[r];
      double* col = a.data() + r * m_;
      if (v < n_) {
        const auto cv = lp_.column(v);
        for (std::size_t k = 0; k < cv.size(); ++k) col[cv.rows[k]] = cv.values[k];
      } else {
        col[v - n_] = 1.0;
      }
    }
    // Row-major copies make the elimination loops contiguous.
    std::vector<double> lhs(m_ * m_), inv(m_ * m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t r = 0; r < m_; ++r) lhs[i * m_ + r] = a[r * m_ + i];
      inv[i * m_ + i] = 1.0;
    }
    for (std::size_t k = 0; k < m_; ++k) {
      std::size_t p = k;
      for (std::size_t i = k + 1; i < m_; ++i) {
        if (std::abs(lhs[i * m_ + k]) > std::abs(lhs[p * m_ + k])) p = i;
      }
      if (std::abs(lhs[p * m_ + k]) < 1e-13) throw SolverError("simplex: singular basis");
      if (p != k) {
        std::swap_ranges(lhs.begin() + p * m_, lhs.begin() + (p + 1) * m_, lhs.begin() + k * m_);
        std::swap_ranges(inv.begin() + p * m_, inv.begin() + (p + 1) * m_, inv.begin() + k * m_);
      }
      const double piv = lhs[k * m_ + k];
      for (std::size_t col = 0; col < m_; ++col) {
        lhs[k * m_ + col] /= piv;
        inv[k * m_ + col] /= piv;
      }
      for (std::size_t i = 0; i < m_; ++i) {
        if (i == k) continue;
        const double f = lhs[i * m_ + k];
        if (f == 0.0) continue;
        for (std::size_t col = 0; col < m_; ++col) {
          lhs[i * m_ + col] -= f * lhs[k * m_ + col];
          inv[i * m_ + col] -= f * inv[k * m_ + col];
        }
      }
    }
    // inv is B^-1 row-major: inv[r * m + i]; store column-major.
    for (std::size_t r = 0; r < m_; ++r) {
      for (std::size_t i = 0; i < m_; ++i) binv_[i * m_ + r] = inv[r * m_ + i];
    }

    std::vector<double> rhs(lp_.b().begin(), lp_.b().end());
    for (std::size_t j = 0; j < n_; ++j) {
      if (status_[j] != Status::upper) continue;
      const auto col = lp_.column(j);
      for (std::size_t k = 0; k < col.size(); ++k) rhs[col.rows[k]] -= col.values[k];
    }
    std::fill(x_basic_.begin(), x_basic_.end(), 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      const double* col = binv_col(i);
      for (std::size_t r = 0; r < m_; ++r) x_basic_[r] += col[r] * rhs[i];
    }
    since_refactor_ = 0;
  }

  double current_objective() const {
    double s = 0.0;
    for (std::size_t r = 0; r < m_; ++r) s += cost(head_[r]) * x_basic_[r];
    for (std::size_t j = 0; j < n_; ++j) {
      if (status_[j] == Status::upper) s += lp_.c()[j];
    }
    return s;
  }

  void extract(SolverOutcome& out) const {
    std::vector<double> x(n_, 0.0);
    for (std::size_t j = 0; j < n_; ++j) {
      if (status_[j] == Status::upper) x[j] = 1.0;
    }
    for (std::size_t r = 0; r < m_; ++r) {
      if (head_[r] < n_) x[head_[r]] = std::clamp(x_basic_[r], 0.0, 1.0);
    }
    std::vector<double> phi(m_);
    for (std::size_t i = 0; i < m_; ++i) phi[i] = std::max(0.0, phi_[i]);
    std::vector<double> psi(n_, 0.0);
    for (std::size_t j = 0; j < n_; ++j) {
      if (status_[j] == Status::upper) psi[j] = std::max(0.0, lp_.c()[j] - lp_.column(j).dot(phi));
    }
    out.primal.objective = objective(lp_, x);
    out.primal.x = std::move(x);
    out.dual.phi = std::move(phi);
    out.dual.psi = std::move(psi);
  }

  const PackingLp& lp_;
  SimplexOptions opt_;
  std::size_t m_;
  std::size_t n_;
  double dual_tol_ = 0.0;
  std::size_t cap_ = 0;
  std::size_t iterations_ = 0;
  std::size_t pivots_ = 0;
  std::size_t since_refactor_ = 0;

  std::vector<Status> status_;
  std::vector<std::size_t> head_;
  std::vector<double> binv_;  // column-major: binv_[i * m + r] = (B^-1)_{r,i}
  std::vector<double> x_basic_;
  std::vector<double> phi_;
  std::vector<double> d_;
  std::vector<double> w_;
};

}  // namespace detail

/// Exact solver; its (primal, dual) pair satisfies complementary slackness
/// with alpha_p = alpha_d = 1. Dense basis, so intended for m up to ~2000.
class SimplexSolver final : public Solver {
 public:
  explicit SimplexSolver(SimplexOptions opt = {}) : opt_(opt) {}

  std::string_view name() const noexcept override { return "simplex"; }
  SolverContract declared_contract() const noexcept override { return {1.0, 1.0, true}; }

  SolverOutcome solve(const PackingLp& lp) const override {
    return detail::BoundedSimplex(lp, opt_).run();
  }

  const SimplexOptions& options() const noexcept { return opt_; }

 private:
  SimplexOptions opt_;
};

inline SolverOutcome simplex_solve(const PackingLp& lp, double tol = 1e-9) {
  SimplexOptions opt;
  opt.primal_tol = tol;
  opt.dual_tol = tol;
  return SimplexSolver(opt).solve(lp);
}

}  // namespace packlp
