#include "emergence/ratfun.hpp"

#include <stdexcept>
#include <utility>

namespace emergence {

RatFun::RatFun(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) { canonicalize(); }

void RatFun::canonicalize() {
  if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
  if (num_.is_zero()) {
    den_ = Poly(1);
    return;
  }
  if (den_.degree_z() > 0 || den_.degree_t() > 0) {
    const Poly g = gcd(num_, den_);
    if (g.degree_z() > 0 || g.degree_t() > 0) {
      num_ = num_.exact_div(g);
      den_ = den_.exact_div(g);
    }
  }
  // lowest z-degree coefficient, lowest t-degree within it, becomes 1
  Rational low;
  for (const auto& c : den_.z_coeffs()) {
    if (c.is_zero()) continue;
    for (const auto& x : c.coeffs())
      if (x != 0) {
        low = x;
        break;
      }
    break;
  }
  if (low != 1) {
    const Rational inv = 1 / low;
    num_ *= inv;
    den_ *= inv;
  }
}

RatFun& RatFun::operator+=(const RatFun& o) {
  if (o.is_zero()) return *this;
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
  }
  canonicalize();
  return *this;
}

RatFun& RatFun::operator-=(const RatFun& o) { return *this += -o; }

RatFun& RatFun::operator*=(const RatFun& o) {
  if (is_zero()) return *this;
  if (o.is_zero()) return *this = RatFun();
  // cross-cancel first to keep intermediate degrees small
  const Poly g1 = gcd(num_, o.den_);
  const Poly g2 = gcd(o.num_, den_);
  num_ = num_.exact_div(g1) * o.num_.exact_div(g2);
  den_ = den_.exact_div(g2) * o.den_.exact_div(g1);
  canonicalize();
  return *this;
}

RatFun& RatFun::operator/=(const RatFun& o) {
  if (o.is_zero()) throw std::domain_error("division by the zero rational function");
  return *this *= RatFun(o.den_, o.num_);
}

namespace {

Poly lift_z(const UniPoly& p) {
  std::vector<UniPoly> v;
  v.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) v.emplace_back(c);
  return Poly(std::move(v));
}

}  // namespace

RatFun RatFun::at_t(const Rational& value) const {
  const UniPoly d = den_.at_t(value);
  if (d.is_zero()) throw std::domain_error("denominator vanishes at the given t");
  return {lift_z(num_.at_t(value)), lift_z(d)};
}

RatFun RatFun::d_dt() const {
  return {num_.d_dt() * den_ - num_ * den_.d_dt(), den_ * den_};
}

std::string RatFun::to_string() const {
  if (den_ == Poly(1)) return num_.to_string();
  return "(" + num_.to_string() + ") / (" + den_.to_string() + ")";
}

RatFun dt_at_one(const RatFun& f) { return f.d_dt().at_t(1); }

std::vector<Rational> taylor_coeffs(const RatFun& f, const Rational& at_t, std::size_t n_max) {
  const UniPoly u = f.num().at_t(at_t);
  const UniPoly d = f.den().at_t(at_t);
  if (d.coeff(0) == 0) throw std::domain_error("function is not expandable at z = 0");
  const Rational inv0 = 1 / d.coeff(0);
  std::vector<Rational> c(n_max + 1);
  const std::size_t dd = d.coeffs().size();
  for (std::size_t n = 0; n <= n_max; ++n) {
    Rational acc = u.coeff(n);
    for (std::size_t j = 1; j < dd && j <= n; ++j) acc -= d.coeffs()[j] * c[n - j];
    c[n] = acc * inv0;
  }
  return c;
}

std::vector<UniPoly> bivariate_coeffs(const RatFun& f, std::size_t n_max) {
  const Poly& u = f.num();
  const Poly& d = f.den();
  const UniPoly& d0 = d.z_coeff(0);
  if (d0.is_zero()) throw std::domain_error("function is not expandable at z = 0");
  std::vector<UniPoly> c(n_max + 1);
  const std::size_t dd = d.z_coeffs().size();
  for (std::size_t n = 0; n <= n_max; ++n) {
    UniPoly acc = u.z_coeff(n);
    for (std::size_t j = 1; j < dd && j <= n; ++j)
      if (!d.z_coeffs()[j].is_zero()) acc -= d.z_coeffs()[j] * c[n - j];
    c[n] = acc.exact_div(d0);
  }
  return c;
}

namespace {

// Splits "(a) / (b)" into its two parenthesized halves; a bare polynomial
// yields (text, "1").
std::pair<std::string, std::string> split_fraction(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size() && text[i] == ' ') ++i;
  if (i == text.size() || text[i] != '(') return {std::string(text), "1"};
  int depth = 0;
  std::size_t close = std::string_view::npos;
  for (std::size_t j = i; j < text.size(); ++j) {
    if (text[j] == '(') ++depth;
    if (text[j] == ')' && --depth == 0) {
      close = j;
      break;
    }
  }
  if (close == std::string_view::npos) throw std::invalid_argument("unbalanced parentheses");
  std::string num(text.substr(i + 1, close - i - 1));
  std::string_view rest = text.substr(close + 1);
  while (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
  if (rest.empty()) return {num, "1"};
  if (rest.front() != '/') throw std::invalid_argument("expected '/' after numerator");
  rest.remove_prefix(1);
  while (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
  while (!rest.empty() && rest.back() == ' ') rest.remove_suffix(1);
  if (rest.size() < 2 || rest.front() != '(' || rest.back() != ')')
    throw std::invalid_argument("denominator must be parenthesized");
  return {num, std::string(rest.substr(1, rest.size() - 2))};
}

}  // namespace

RatFun parse_ratfun(std::string_view text) {
  auto [n, d] = split_fraction(text);
  Poly den = parse_poly(d);
  if (den.is_zero()) throw std::invalid_argument("zero denominator");
  return {parse_poly(n), den};
}

}  // namespace emergence
