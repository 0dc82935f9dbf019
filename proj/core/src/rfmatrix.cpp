#include "emergence/rfmatrix.hpp"

#include <limits>
#include <stdexcept>
#include <utility>

namespace emergence {

RFMatrix RFMatrix::identity(std::size_t n) {
  RFMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = RatFun(1);
  return m;
}

RFMatrix operator+(const RFMatrix& a, const RFMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch");
  RFMatrix c = a;
  for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] += b.a_[i];
  return c;
}

RFMatrix operator-(const RFMatrix& a, const RFMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch");
  RFMatrix c = a;
  for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] -= b.a_[i];
  return c;
}

RFMatrix operator*(const RFMatrix& a, const RFMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
  RFMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const RatFun& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (!b(k, j).is_zero()) c(i, j) += x * b(k, j);
    }
  return c;
}

bool operator==(const RFMatrix& a, const RFMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  for (std::size_t i = 0; i < a.a_.size(); ++i)
    if (!(a.a_[i] == b.a_[i])) return false;
  return true;
}

RFMatrix RFMatrix::transpose() const {
  RFMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

RFMatrix RFMatrix::at_t(const Rational& value) const {
  RFMatrix m(rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i].at_t(value);
  return m;
}

RFMatrix solve(const RFMatrix& a, const RFMatrix& b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.rows() != n) throw std::domain_error("solve needs a square system");
  RFMatrix m = a, x = b;
  for (std::size_t c = 0; c < n; ++c) {
    // pivot on the structurally simplest nonzero entry
    std::size_t piv = n, best = std::numeric_limits<std::size_t>::max();
    for (std::size_t r = c; r < n; ++r) {
      if (m(r, c).is_zero()) continue;
      const std::size_t cost = m(r, c).num().term_count() + m(r, c).den().term_count();
      if (cost < best) {
        best = cost;
        piv = r;
      }
    }
    if (piv == n) throw std::domain_error("singular matrix");
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(c, j), m(piv, j));
      for (std::size_t j = 0; j < x.cols(); ++j) std::swap(x(c, j), x(piv, j));
    }
    const RatFun inv = RatFun(1) / m(c, c);
    for (std::size_t j = c; j < n; ++j)
      if (!m(c, j).is_zero()) m(c, j) *= inv;
    for (std::size_t j = 0; j < x.cols(); ++j)
      if (!x(c, j).is_zero()) x(c, j) *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m(r, c).is_zero()) continue;
      const RatFun f = m(r, c);
      for (std::size_t j = c; j < n; ++j)
        if (!m(c, j).is_zero()) m(r, j) -= f * m(c, j);
      for (std::size_t j = 0; j < x.cols(); ++j)
        if (!x(c, j).is_zero()) x(r, j) -= f * x(c, j);
    }
  }
  return x;
}

RFMatrix inverse(const RFMatrix& m) {
  if (m.rows() != m.cols()) throw std::domain_error("inverse of a non-square matrix");
  return solve(m, RFMatrix::identity(m.rows()));
}

}  // namespace emergence
