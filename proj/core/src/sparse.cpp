#include "sipdg/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "sipdg/errors.hpp"

namespace sipdg {

CsrMatrix::CsrMatrix(std::size_t n, std::vector<std::size_t> row_ptr, std::vector<Index> cols,
                     std::vector<double> values, bool symmetric)
    : n_(n),
      row_ptr_(std::move(row_ptr)),
      cols_(std::move(cols)),
      values_(std::move(values)),
      symmetric_(symmetric) {
  if (row_ptr_.size() != n_ + 1 || row_ptr_.front() != 0 || row_ptr_.back() != cols_.size() ||
      cols_.size() != values_.size()) {
    throw InputError("CsrMatrix: inconsistent array sizes");
  }
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) {
      if (cols_[p] < 0 || static_cast<std::size_t>(cols_[p]) >= n_) {
        throw InputError("CsrMatrix: column index out of range");
      }
      if (p > row_ptr_[i] && cols_[p] <= cols_[p - 1]) {
        throw InputError("CsrMatrix: columns must be sorted and unique within a row");
      }
    }
  }
}

double CsrMatrix::at(std::size_t i, std::size_t j) const {
  const auto first = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i]);
  const auto last = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i + 1]);
  const auto it = std::lower_bound(first, last, static_cast<Index>(j));
  if (it == last || *it != static_cast<Index>(j)) return 0.0;
  return values_[static_cast<std::size_t>(it - cols_.begin())];
}

void CsrMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  for (std::size_t i = 0; i < n_; ++i) {
    double s = 0.0;
    for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) {
      s += values_[p] * x[static_cast<std::size_t>(cols_[p])];
    }
    y[i] = s;
  }
}

CsrMatrix csr_from_triplets(std::size_t n, std::span<const Triplet> triplets) {
  if (n > static_cast<std::size_t>(std::numeric_limits<CsrMatrix::Index>::max())) {
    throw InputError("csr_from_triplets: dimension too large");
  }
  std::vector<std::size_t> count(n + 1, 0);
  for (const Triplet& t : triplets) {
    if (t.row >= n || t.col >= n) {
      throw InputError("csr_from_triplets: index (" + std::to_string(t.row) + ", " +
                       std::to_string(t.col) + ") out of range");
    }
    ++count[t.row + 1];
  }
  std::partial_sum(count.begin(), count.end(), count.begin());

  // bucket by row keeping input order, then stable sort each row by column
  std::vector<std::size_t> order(triplets.size());
  {
    std::vector<std::size_t> next(count.begin(), count.end() - 1);
    for (std::size_t k = 0; k < triplets.size(); ++k) order[next[triplets[k].row]++] = k;
  }

  std::vector<std::size_t> row_ptr(n + 1, 0);
  std::vector<CsrMatrix::Index> cols;
  std::vector<double> vals;
  cols.reserve(triplets.size());
  vals.reserve(triplets.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto first = order.begin() + static_cast<std::ptrdiff_t>(count[i]);
    const auto last = order.begin() + static_cast<std::ptrdiff_t>(count[i + 1]);
    std::stable_sort(first, last, [&](std::size_t a, std::size_t b) {
      return triplets[a].col < triplets[b].col;
    });
    for (auto it = first; it != last; ++it) {
      const Triplet& t = triplets[*it];
      const auto c = static_cast<CsrMatrix::Index>(t.col);
      if (cols.size() > row_ptr[i] && cols.back() == c) {
        vals.back() += t.value;
      } else {
        cols.push_back(c);
        vals.push_back(t.value);
      }
    }
    row_ptr[i + 1] = cols.size();
  }
  return CsrMatrix(n, std::move(row_ptr), std::move(cols), std::move(vals));
}

std::vector<double> matvec(const CsrMatrix& a, std::span<const double> x) {
  if (x.size() != a.rows()) throw InputError("matvec: size mismatch");
  std::vector<double> y(a.rows());
  a.multiply(x, y);
  return y;
}

CsrMatrix add_scaled(const CsrMatrix& a, double sa, const CsrMatrix& b, double sb) {
  if (a.rows() != b.rows()) throw InputError("add_scaled: size mismatch");
  const std::size_t n = a.rows();
  std::vector<std::size_t> row_ptr(n + 1, 0);
  std::vector<CsrMatrix::Index> cols;
  std::vector<double> vals;
  cols.reserve(std::max(a.nnz(), b.nnz()));
  vals.reserve(cols.capacity());
  const auto ap = a.row_ptr(), bp = b.row_ptr();
  const auto ac = a.col_idx(), bc = b.col_idx();
  const auto av = a.values(), bv = b.values();
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t p = ap[i], q = bp[i];
    while (p < ap[i + 1] || q < bp[i + 1]) {
      if (q >= bp[i + 1] || (p < ap[i + 1] && ac[p] < bc[q])) {
        cols.push_back(ac[p]);
        vals.push_back(sa * av[p++]);
      } else if (p >= ap[i + 1] || bc[q] < ac[p]) {
        cols.push_back(bc[q]);
        vals.push_back(sb * bv[q++]);
      } else {
        cols.push_back(ac[p]);
        vals.push_back(sa * av[p++] + sb * bv[q++]);
      }
    }
    row_ptr[i + 1] = cols.size();
  }
  return CsrMatrix(n, std::move(row_ptr), std::move(cols), std::move(vals),
                   a.symmetric() && b.symmetric());
}

double max_asymmetry(const CsrMatrix& a) {
  double worst = 0.0;
  const auto rp = a.row_ptr();
  const auto ci = a.col_idx();
  const auto v = a.values();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t p = rp[i]; p < rp[i + 1]; ++p) {
      const auto j = static_cast<std::size_t>(ci[p]);
      worst = std::max(worst, std::abs(v[p] - a.at(j, i)));
    }
  }
  return worst;
}

double max_abs(const CsrMatrix& a) {
  double m = 0.0;
  for (double x : a.values()) m = std::max(m, std::abs(x));
  return m;
}

double bilinear(const CsrMatrix& a, std::span<const double> x, std::span<const double> y) {
  return dot(x, matvec(a, y));
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

}  // namespace sipdg
