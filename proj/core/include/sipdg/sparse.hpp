#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace sipdg {

struct Triplet {
  std::size_t row;
  std::size_t col;
  double value;
};

/// Square compressed sparse row matrix; column indices are sorted and
/// unique within each row.
class CsrMatrix {
 public:
  using Index = std::int32_t;

  CsrMatrix() = default;
  CsrMatrix(std::size_t n, std::vector<std::size_t> row_ptr, std::vector<Index> cols,
            std::vector<double> values, bool symmetric = false);

  std::size_t rows() const { return n_; }
  std::size_t nnz() const { return values_.size(); }
  bool symmetric() const { return symmetric_; }
  void set_symmetric(bool s) { symmetric_ = s; }

  std::span<const std::size_t> row_ptr() const { return row_ptr_; }
  std::span<const Index> col_idx() const { return cols_; }
  std::span<const double> values() const { return values_; }

  /// Entry (i, j), zero if structurally absent.
  double at(std::size_t i, std::size_t j) const;

  /// y = A x
  void multiply(std::span<const double> x, std::span<double> y) const;

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<Index> cols_;
  std::vector<double> values_;
  bool symmetric_ = false;
};

/// Duplicate (i, j) entries are summed in input order, so identical triplet
/// sequences give bitwise identical matrices.
CsrMatrix csr_from_triplets(std::size_t n, std::span<const Triplet> triplets);

std::vector<double> matvec(const CsrMatrix& a, std::span<const double> x);

/// sa * A + sb * B on the union of both patterns.
CsrMatrix add_scaled(const CsrMatrix& a, double sa, const CsrMatrix& b, double sb);

/// max |a_ij - a_ji| over the stored pattern.
double max_asymmetry(const CsrMatrix& a);
/// max |a_ij|
double max_abs(const CsrMatrix& a);

/// x^T A y
double bilinear(const CsrMatrix& a, std::span<const double> x, std::span<const double> y);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

}  // namespace sipdg
