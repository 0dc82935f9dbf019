#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "emergence/rational.hpp"

namespace emergence {

/// Dense univariate polynomial over Q. Coefficient i multiplies x^i.
/// Trailing zeros are never stored; the zero polynomial has no coefficients.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coeffs);
  UniPoly(const Rational& constant);  // NOLINT(google-explicit-constructor)
  static UniPoly monomial(const Rational& c, std::size_t degree);

  bool is_zero() const { return c_.empty(); }
  /// Degree; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const Rational& lead() const { return c_.back(); }
  Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  const std::vector<Rational>& coeffs() const { return c_; }

  Rational eval(const Rational& x) const;
  UniPoly derivative() const;

  UniPoly& operator+=(const UniPoly& o);
  UniPoly& operator-=(const UniPoly& o);
  UniPoly& operator*=(const Rational& s);
  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator-(UniPoly a) { return a *= Rational(-1); }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(UniPoly a, const Rational& s) { return a *= s; }
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

  /// Euclidean division: *this = q * d + r with deg r < deg d.
  void divmod(const UniPoly& d, UniPoly& q, UniPoly& r) const;
  /// Division known to be exact; throws std::domain_error otherwise.
  UniPoly exact_div(const UniPoly& d) const;
  UniPoly monic() const;

 private:
  void trim();
  std::vector<Rational> c_;
};

/// Monic gcd over Q (gcd(0,0) = 0).
UniPoly gcd(const UniPoly& a, const UniPoly& b);

/// Bivariate polynomial in (z, t) over Q, stored as a polynomial in z whose
/// coefficients are polynomials in t.
class Poly {
 public:
  Poly() = default;
  Poly(const Rational& constant);  // NOLINT(google-explicit-constructor)
  explicit Poly(std::vector<UniPoly> z_coeffs);
  static Poly monomial(const Rational& c, int z_deg, int t_deg);
  static Poly z() { return monomial(1, 1, 0); }
  static Poly t() { return monomial(1, 0, 1); }

  bool is_zero() const { return zc_.empty(); }
  int degree_z() const { return static_cast<int>(zc_.size()) - 1; }
  int degree_t() const;
  bool is_t_free() const { return degree_t() <= 0; }
  /// Coefficient of z^i as a polynomial in t.
  const UniPoly& z_coeff(std::size_t i) const;
  Rational coeff(int z_deg, int t_deg) const;
  const std::vector<UniPoly>& z_coeffs() const { return zc_; }

  /// Substitutes t := value, returning a polynomial in z.
  UniPoly at_t(const Rational& value) const;
  /// Partial derivative with respect to t.
  Poly d_dt() const;
  /// Number of stored nonzero coefficients.
  std::size_t term_count() const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Rational& s);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) { return a *= Rational(-1); }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.zc_ == b.zc_; }

  /// Multiplies every z-coefficient by a polynomial in t.
  Poly times_t_poly(const UniPoly& p) const;
  /// Divides every z-coefficient by a polynomial in t; must be exact.
  Poly div_t_poly(const UniPoly& p) const;
  /// Exact division in Q[z,t]; throws std::domain_error when d does not divide.
  Poly exact_div(const Poly& d) const;

  /// Monic gcd in Q[t] of the z-coefficients.
  UniPoly content_z() const;

  /// Renders with explicit monomials, e.g. "1 - z + 1/8*z^3*t".
  std::string to_string() const;

 private:
  void trim();
  std::vector<UniPoly> zc_;
};

/// Greatest common divisor in Q[z,t], normalized so that the leading
/// t-coefficient of the leading z-coefficient is 1. gcd(0,0) = 0.
Poly gcd(const Poly& a, const Poly& b);

/// Parses the rendering produced by Poly::to_string (and any sum of terms
/// "c*z^a*t^b" with rational c). Throws std::invalid_argument.
Poly parse_poly(std::string_view text);

}  // namespace emergence
