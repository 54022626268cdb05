#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sipdg {

/// Invalid arguments: bad sizes, out-of-range parameters, malformed files.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The triangulation is not face-to-face.
class TopologyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A triangle with zero or negative signed area.
class DegenerateElementError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Nonpositive pivot during incomplete Cholesky factorization.
class PreconditionerBreakdown : public std::runtime_error {
 public:
  PreconditionerBreakdown(std::size_t row, double pivot)
      : std::runtime_error("incomplete Cholesky breakdown at row " + std::to_string(row)),
        row_(row),
        pivot_(pivot) {}
  std::size_t row() const { return row_; }
  double pivot() const { return pivot_; }

 private:
  std::size_t row_;
  double pivot_;
};

}  // namespace sipdg
