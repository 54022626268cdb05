#include "sipdg/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sipdg/errors.hpp"

namespace sipdg {
namespace {

std::size_t iteration_cap(const CsrMatrix& a, const SolverOptions& opts) {
  return opts.max_iterations > 0 ? opts.max_iterations : 20 * a.rows();
}

void check_system(const CsrMatrix& a, std::span<const double> b, const SolverOptions& opts) {
  if (b.size() != a.rows()) throw InputError("solver: right-hand side size mismatch");
  if (!(opts.tol > 0.0)) throw InputError("solver: tolerance must be positive");
}

// b - A x accumulated in extended precision. Near convergence A x cancels
// against b to many digits, so a double accumulation would add noise of the
// order of the tolerances we want to certify.
double true_residual(const CsrMatrix& a, std::span<const double> b, std::span<const double> x,
                     std::vector<double>& r) {
  const auto& rp = a.row_ptr();
  const auto& ci = a.col_idx();
  const auto& v = a.values();
  long double sum2 = 0.0L;
  for (std::size_t i = 0; i < r.size(); ++i) {
    long double acc = b[i];
    for (auto k = rp[i]; k < rp[i + 1]; ++k)
      acc -= static_cast<long double>(v[k]) * x[static_cast<std::size_t>(ci[k])];
    r[i] = static_cast<double>(acc);
    sum2 += acc * acc;
  }
  return static_cast<double>(std::sqrt(sum2));
}

// Normwise bound eps ||A| |x|| / ||b|| on the relative residual caused by
// rounding x to double. Tolerances below it cannot be certified.
double rounding_floor(const CsrMatrix& a, std::span<const double> x, double bnorm) {
  const auto rp = a.row_ptr();
  const auto ci = a.col_idx();
  const auto v = a.values();
  double sum2 = 0.0;
  for (std::size_t i = 0; i + 1 < rp.size(); ++i) {
    double acc = 0.0;
    for (auto k = rp[i]; k < rp[i + 1]; ++k)
      acc += std::abs(v[k] * x[static_cast<std::size_t>(ci[k])]);
    sum2 += acc * acc;
  }
  return std::numeric_limits<double>::epsilon() * std::sqrt(sum2) / bnorm;
}

}  // namespace

std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::max_iterations: return "max-iterations";
    case SolveStatus::preconditioner_breakdown: return "preconditioner-breakdown";
    case SolveStatus::diverged: return "diverged";
  }
  return "unknown";
}

IncompleteCholesky::IncompleteCholesky(const CsrMatrix& a) {
  const std::size_t n = a.rows();
  const auto rp = a.row_ptr();
  const auto ci = a.col_idx();
  const auto av = a.values();

  std::vector<std::size_t> row_ptr(n + 1, 0);
  std::vector<CsrMatrix::Index> cols;
  std::vector<double> vals;
  for (std::size_t i = 0; i < n; ++i) {
    bool has_diag = false;
    for (std::size_t p = rp[i]; p < rp[i + 1] && static_cast<std::size_t>(ci[p]) <= i; ++p) {
      cols.push_back(ci[p]);
      vals.push_back(av[p]);
      has_diag = static_cast<std::size_t>(ci[p]) == i;
    }
    if (!has_diag) throw PreconditionerBreakdown(i, 0.0);
    row_ptr[i + 1] = cols.size();
  }

  // Row-wise left-looking factorization restricted to the pattern.
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t begin = row_ptr[i], diag = row_ptr[i + 1] - 1;
    for (std::size_t p = begin; p < diag; ++p) {
      const auto j = static_cast<std::size_t>(cols[p]);
      // sum_{k < j} L_ik L_jk over the shared pattern
      double s = vals[p];
      std::size_t u = begin, w = row_ptr[j];
      const std::size_t wend = row_ptr[j + 1] - 1;
      while (u < p && w < wend) {
        if (cols[u] < cols[w]) {
          ++u;
        } else if (cols[w] < cols[u]) {
          ++w;
        } else {
          s -= vals[u++] * vals[w++];
        }
      }
      vals[p] = s / vals[wend];
    }
    double d = vals[diag];
    for (std::size_t p = begin; p < diag; ++p) d -= vals[p] * vals[p];
    if (!(d > 0.0) || !std::isfinite(d)) throw PreconditionerBreakdown(i, d);
    vals[diag] = std::sqrt(d);
  }
  lower_ = CsrMatrix(n, std::move(row_ptr), std::move(cols), std::move(vals));
}

void IncompleteCholesky::apply(std::span<const double> r, std::span<double> z) const {
  const std::size_t n = lower_.rows();
  const auto rp = lower_.row_ptr();
  const auto ci = lower_.col_idx();
  const auto v = lower_.values();
  // L y = r
  for (std::size_t i = 0; i < n; ++i) {
    double s = r[i];
    const std::size_t diag = rp[i + 1] - 1;
    for (std::size_t p = rp[i]; p < diag; ++p) s -= v[p] * z[static_cast<std::size_t>(ci[p])];
    z[i] = s / v[diag];
  }
  // L^T z = y, column sweep over the rows of L
  for (std::size_t i = n; i-- > 0;) {
    const std::size_t diag = rp[i + 1] - 1;
    z[i] /= v[diag];
    const double zi = z[i];
    for (std::size_t p = rp[i]; p < diag; ++p) z[static_cast<std::size_t>(ci[p])] -= v[p] * zi;
  }
}

IncompleteCholesky ic0_factor(const CsrMatrix& a) { return IncompleteCholesky(a); }

SolveReport cg_solve(const CsrMatrix& a, std::span<const double> b,
                     const IncompleteCholesky* preconditioner, const SolverOptions& opts) {
  check_system(a, b, opts);
  const std::size_t n = a.rows();
  const std::size_t cap = iteration_cap(a, opts);
  SolveReport rep;
  rep.solution.assign(n, 0.0);
  std::vector<double>& x = rep.solution;

  const double bnorm = norm2(b);
  if (bnorm == 0.0) {
    rep.status = SolveStatus::converged;
    return rep;
  }

  std::vector<double> r(b.begin(), b.end()), z(n), p(n), ap(n);
  auto precondition = [&] {
    if (preconditioner) {
      preconditioner->apply(r, z);
    } else {
      z = r;
    }
  };
  precondition();
  p = z;
  double rz = dot(r, z);

  rep.status = SolveStatus::max_iterations;
  while (rep.iterations < cap) {
    a.multiply(p, ap);
    const double pap = dot(p, ap);
    if (pap == 0.0 || !std::isfinite(pap)) {
      rep.status = SolveStatus::diverged;
      break;
    }
    const double alpha = rz / pap;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
    }
    ++rep.iterations;
    const double rel = norm2(r) / bnorm;
    if (!std::isfinite(rel)) {
      rep.status = SolveStatus::diverged;
      break;
    }
    if (rel <= opts.tol) {
      // confirm with the true residual; restart from it if the recurrence drifted
      const double true_rel = true_residual(a, b, x, r) / bnorm;
      if (true_rel <= std::max(opts.tol, rounding_floor(a, x, bnorm))) {
        rep.status = SolveStatus::converged;
        break;
      }
      precondition();
      p = z;
      rz = dot(r, z);
      continue;
    }
    precondition();
    const double rz_new = dot(r, z);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  rep.relative_residual = true_residual(a, b, x, r) / bnorm;
  rep.residual_floor = rounding_floor(a, x, bnorm);
  return rep;
}

SolveReport iccg_solve(const CsrMatrix& a, std::span<const double> b, const SolverOptions& opts) {
  check_system(a, b, opts);
  try {
    const IncompleteCholesky ic(a);
    return cg_solve(a, b, &ic, opts);
  } catch (const PreconditionerBreakdown&) {
    SolveReport rep;
    rep.solution.assign(a.rows(), 0.0);
    rep.status = SolveStatus::preconditioner_breakdown;
    rep.relative_residual = norm2(b) > 0.0 ? 1.0 : 0.0;
    return rep;
  }
}

SolveReport sor_solve(const CsrMatrix& a, std::span<const double> b, double omega,
                      const SolverOptions& opts) {
  check_system(a, b, opts);
  if (!(omega > 0.0 && omega < 2.0)) throw InputError("sor_solve: omega must lie in (0, 2)");
  const std::size_t n = a.rows();
  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) {
    diag[i] = a.at(i, i);
    if (diag[i] == 0.0) {
      throw InputError("sor_solve: zero diagonal entry in row " + std::to_string(i));
    }
  }
  const auto rp = a.row_ptr();
  const auto ci = a.col_idx();
  const auto v = a.values();

  SolveReport rep;
  rep.solution.assign(n, 0.0);
  std::vector<double>& x = rep.solution;
  std::vector<double> r(n);
  const double bnorm = norm2(b);
  if (bnorm == 0.0) {
    rep.status = SolveStatus::converged;
    return rep;
  }
  const std::size_t cap = iteration_cap(a, opts);
  rep.status = SolveStatus::max_iterations;
  while (rep.iterations < cap) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = b[i];
      for (std::size_t p = rp[i]; p < rp[i + 1]; ++p) {
        const auto j = static_cast<std::size_t>(ci[p]);
        if (j != i) s -= v[p] * x[j];
      }
      x[i] = (1.0 - omega) * x[i] + omega * s / diag[i];
    }
    ++rep.iterations;
    const double rel = true_residual(a, b, x, r) / bnorm;
    if (!std::isfinite(rel) || rel > 1e100) {
      rep.status = SolveStatus::diverged;
      break;
    }
    if (rel <= opts.tol || rel <= rounding_floor(a, x, bnorm)) {
      rep.status = SolveStatus::converged;
      break;
    }
  }
  rep.relative_residual = true_residual(a, b, x, r) / bnorm;
  rep.residual_floor = rounding_floor(a, x, bnorm);
  return rep;
}

}  // namespace sipdg
