#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "emergence/poly.hpp"

namespace emergence {

/// Rational function in (z, t) over Q, kept reduced (num and den coprime)
/// with the lowest-order coefficient of den equal to 1.
class RatFun {
 public:
  RatFun() : den_(1) {}
  RatFun(const Rational& c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  RatFun(int c) : RatFun(Rational(c)) {}            // NOLINT(google-explicit-constructor)
  RatFun(const Poly& p) : num_(p), den_(1) {}      // NOLINT(google-explicit-constructor)
  /// Throws std::domain_error when den is zero.
  RatFun(Poly num, Poly den);

  static RatFun z() { return RatFun(Poly::z()); }
  static RatFun t() { return RatFun(Poly::t()); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_t_free() const { return num_.is_t_free() && den_.is_t_free(); }

  RatFun& operator+=(const RatFun& o);
  RatFun& operator-=(const RatFun& o);
  RatFun& operator*=(const RatFun& o);
  /// Throws std::domain_error on division by the zero function.
  RatFun& operator/=(const RatFun& o);
  friend RatFun operator+(RatFun a, const RatFun& b) { return a += b; }
  friend RatFun operator-(RatFun a, const RatFun& b) { return a -= b; }
  friend RatFun operator*(RatFun a, const RatFun& b) { return a *= b; }
  friend RatFun operator/(RatFun a, const RatFun& b) { return a /= b; }
  friend RatFun operator-(const RatFun& a) { return RatFun(-a.num_, a.den_); }
  /// Cross-multiplication test, independent of the stored form.
  friend bool operator==(const RatFun& a, const RatFun& b) { return a.num_ * b.den_ == b.num_ * a.den_; }

  /// Substitutes t := value.
  RatFun at_t(const Rational& value) const;
  /// Partial derivative in t.
  RatFun d_dt() const;

  /// "(num) / (den)", or just the numerator when den = 1.
  std::string to_string() const;

 private:
  void canonicalize();
  Poly num_, den_;
};

/// d/dt f evaluated at t = 1 (a function of z only).
RatFun dt_at_one(const RatFun& f);

/// Taylor coefficients [z^0..z^n_max] of f(z, at_t). Throws std::domain_error
/// when f(z, at_t) has a pole at z = 0.
std::vector<Rational> taylor_coeffs(const RatFun& f, const Rational& at_t, std::size_t n_max);

/// Coefficients of z^0..z^n_max, each a polynomial in t.
std::vector<UniPoly> bivariate_coeffs(const RatFun& f, std::size_t n_max);

/// Inverse of RatFun::to_string. Throws std::invalid_argument.
RatFun parse_ratfun(std::string_view text);

}  // namespace emergence
