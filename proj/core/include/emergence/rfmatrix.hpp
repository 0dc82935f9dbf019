#pragma once

#include <cstddef>
#include <vector>

#include "emergence/ratfun.hpp"

namespace emergence {

/// Dense row-major matrix of rational functions.
class RFMatrix {
 public:
  RFMatrix() = default;
  RFMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  static RFMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  RatFun& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const RatFun& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  friend RFMatrix operator+(const RFMatrix& a, const RFMatrix& b);
  friend RFMatrix operator-(const RFMatrix& a, const RFMatrix& b);
  friend RFMatrix operator*(const RFMatrix& a, const RFMatrix& b);
  friend bool operator==(const RFMatrix& a, const RFMatrix& b);

  RFMatrix transpose() const;
  /// Entrywise t := value.
  RFMatrix at_t(const Rational& value) const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<RatFun> a_;
};

/// Exact inverse by Gauss-Jordan elimination; throws std::domain_error when
/// the matrix is singular or not square.
RFMatrix inverse(const RFMatrix& m);

/// Solves a * x = b exactly (b may have several columns).
RFMatrix solve(const RFMatrix& a, const RFMatrix& b);

}  // namespace emergence
