#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "sipdg/sparse.hpp"

namespace sipdg {

enum class SolveStatus { converged, max_iterations, preconditioner_breakdown, diverged };

std::string_view to_string(SolveStatus s);

struct SolveReport {
  std::vector<double> solution;
  std::size_t iterations = 0;
  double relative_residual = 0.0;  // ||b - A x|| / ||b||, recomputed at exit
  // eps || |A| |x| || / ||b||: the residual that rounding x to double alone can
  // cause. Converged means relative_residual <= max(tol, residual_floor).
  double residual_floor = 0.0;
  SolveStatus status = SolveStatus::max_iterations;

  bool converged() const { return status == SolveStatus::converged; }
};

struct SolverOptions {
  double tol = 1e-12;
  std::size_t max_iterations = 0;  // 0 selects 20 * n
};

/// Zero fill-in incomplete Cholesky A ~ L L^T on the lower pattern of A.
/// No diagonal shifting: a nonpositive pivot throws PreconditionerBreakdown.
class IncompleteCholesky {
 public:
  explicit IncompleteCholesky(const CsrMatrix& a);

  /// z = (L L^T)^{-1} r
  void apply(std::span<const double> r, std::span<double> z) const;

  /// Lower factor including the diagonal (last entry of every row).
  const CsrMatrix& factor() const { return lower_; }

 private:
  CsrMatrix lower_;
};

IncompleteCholesky ic0_factor(const CsrMatrix& a);

/// (Preconditioned) conjugate gradients from x = 0. Negative curvature is
/// stepped through (the recurrences stay defined for indefinite A); zero or
/// non-finite curvature stops with status diverged.
SolveReport cg_solve(const CsrMatrix& a, std::span<const double> b,
                     const IncompleteCholesky* preconditioner = nullptr,
                     const SolverOptions& opts = {});

/// IC(0) factorization followed by preconditioned CG; a factorization
/// breakdown is reported through the status rather than thrown.
SolveReport iccg_solve(const CsrMatrix& a, std::span<const double> b,
                       const SolverOptions& opts = {});

/// Forward SOR sweeps from x = 0 with 0 < omega < 2.
SolveReport sor_solve(const CsrMatrix& a, std::span<const double> b, double omega = 1.5,
                      const SolverOptions& opts = {});

}  // namespace sipdg
