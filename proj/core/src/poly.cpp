#include "emergence/poly.hpp"

#include "modular.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <stdexcept>
#include <utility>

namespace emergence {

// ---------------------------------------------------------------- UniPoly

UniPoly::UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

UniPoly::UniPoly(const Rational& constant) {
  if (constant != 0) c_.push_back(constant);
}

UniPoly UniPoly::monomial(const Rational& c, std::size_t degree) {
  if (c == 0) return {};
  std::vector<Rational> v(degree + 1, Rational(0));
  v[degree] = c;
  return UniPoly(std::move(v));
}

void UniPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational UniPoly::eval(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

UniPoly UniPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
  return UniPoly(std::move(d));
}

UniPoly& UniPoly::operator+=(const UniPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

UniPoly& UniPoly::operator*=(const Rational& s) {
  if (s == 0) {
    c_.clear();
    return *this;
  }
  for (auto& c : c_) c *= s;
  return *this;
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> out(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
  }
  return UniPoly(std::move(out));
}

void UniPoly::divmod(const UniPoly& d, UniPoly& q, UniPoly& r) const {
  if (d.is_zero()) throw std::domain_error("polynomial division by zero");
  r = *this;
  std::vector<Rational> qc;
  if (degree() >= d.degree()) qc.assign(static_cast<std::size_t>(degree() - d.degree() + 1), Rational(0));
  const Rational inv_lead = 1 / d.lead();
  while (!r.is_zero() && r.degree() >= d.degree()) {
    const auto shift = static_cast<std::size_t>(r.degree() - d.degree());
    const Rational f = r.lead() * inv_lead;
    qc[shift] = f;
    for (std::size_t j = 0; j < d.c_.size(); ++j) r.c_[shift + j] -= f * d.c_[j];
    r.trim();
  }
  q = UniPoly(std::move(qc));
}

UniPoly UniPoly::exact_div(const UniPoly& d) const {
  UniPoly q, r;
  divmod(d, q, r);
  if (!r.is_zero()) throw std::domain_error("inexact polynomial division");
  return q;
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return {};
  UniPoly m = *this;
  m *= 1 / lead();
  return m;
}

// Modular gcd: images mod word-size primes are lifted by Chinese remaindering
// and rational reconstruction; a stable lift is certified by exact division.
UniPoly gcd(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.degree() == 0 || b.degree() == 0) return UniPoly(1);
  auto image = [](const UniPoly& u, modp::u64 p) -> std::optional<modp::Up> {
    modp::Up out;
    out.reserve(u.coeffs().size());
    for (const auto& c : u.coeffs()) {
      auto r = modp::reduce(c, p);
      if (!r) return std::nullopt;
      out.push_back(*r);
    }
    if (out.back() == 0) return std::nullopt;
    return out;
  };
  int best = -1;
  std::optional<modp::Lifter> lift;
  std::optional<std::vector<Rational>> prev;
  for (std::size_t i = 0;; ++i) {
    const modp::u64 p = modp::prime(i);
    auto ia = image(a, p), ib = image(b, p);
    if (!ia || !ib) continue;
    const modp::Up g = modp::gcd(std::move(*ia), std::move(*ib), p);
    const int deg = static_cast<int>(g.size()) - 1;
    if (deg == 0) return UniPoly(1);
    if (best >= 0 && deg > best) continue;
    if (best < 0 || deg < best) {
      best = deg;
      lift.emplace(g.size());
      prev.reset();
    }
    lift->add(g, p);
    auto rec = lift->reconstruct();
    if (rec && prev && *rec == *prev) {
      UniPoly cand(*rec);
      UniPoly q, ra, rb;
      a.divmod(cand, q, ra);
      b.divmod(cand, q, rb);
      if (ra.is_zero() && rb.is_zero()) return cand;
    }
    prev = std::move(rec);
  }
}

// ---------------------------------------------------------------- Poly

namespace {
const UniPoly kZeroUni;

}  // namespace

Poly::Poly(const Rational& constant) {
  if (constant != 0) zc_.emplace_back(constant);
}

Poly::Poly(std::vector<UniPoly> z_coeffs) : zc_(std::move(z_coeffs)) { trim(); }

Poly Poly::monomial(const Rational& c, int z_deg, int t_deg) {
  if (c == 0) return {};
  std::vector<UniPoly> v(static_cast<std::size_t>(z_deg) + 1);
  v.back() = UniPoly::monomial(c, static_cast<std::size_t>(t_deg));
  return Poly(std::move(v));
}

void Poly::trim() {
  while (!zc_.empty() && zc_.back().is_zero()) zc_.pop_back();
}

int Poly::degree_t() const {
  int d = -1;
  for (const auto& c : zc_) d = std::max(d, c.degree());
  return d;
}

const UniPoly& Poly::z_coeff(std::size_t i) const { return i < zc_.size() ? zc_[i] : kZeroUni; }

Rational Poly::coeff(int z_deg, int t_deg) const {
  if (z_deg < 0 || t_deg < 0) return 0;
  return z_coeff(static_cast<std::size_t>(z_deg)).coeff(static_cast<std::size_t>(t_deg));
}

UniPoly Poly::at_t(const Rational& value) const {
  std::vector<Rational> v;
  v.reserve(zc_.size());
  for (const auto& c : zc_) v.push_back(c.eval(value));
  return UniPoly(std::move(v));
}

Poly Poly::d_dt() const {
  std::vector<UniPoly> v;
  v.reserve(zc_.size());
  for (const auto& c : zc_) v.push_back(c.derivative());
  return Poly(std::move(v));
}

std::size_t Poly::term_count() const {
  std::size_t n = 0;
  for (const auto& c : zc_)
    for (const auto& x : c.coeffs())
      if (x != 0) ++n;
  return n;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.zc_.size() > zc_.size()) zc_.resize(o.zc_.size());
  for (std::size_t i = 0; i < o.zc_.size(); ++i) zc_[i] += o.zc_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.zc_.size() > zc_.size()) zc_.resize(o.zc_.size());
  for (std::size_t i = 0; i < o.zc_.size(); ++i) zc_[i] -= o.zc_[i];
  trim();
  return *this;
}

Poly& Poly::operator*=(const Rational& s) {
  if (s == 0) {
    zc_.clear();
    return *this;
  }
  for (auto& c : zc_) c *= s;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<UniPoly> out(a.zc_.size() + b.zc_.size() - 1);
  for (std::size_t i = 0; i < a.zc_.size(); ++i) {
    if (a.zc_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.zc_.size(); ++j) {
      if (b.zc_[j].is_zero()) continue;
      out[i + j] += a.zc_[i] * b.zc_[j];
    }
  }
  return Poly(std::move(out));
}

Poly Poly::times_t_poly(const UniPoly& p) const {
  std::vector<UniPoly> v;
  v.reserve(zc_.size());
  for (const auto& c : zc_) v.push_back(c * p);
  return Poly(std::move(v));
}

Poly Poly::div_t_poly(const UniPoly& p) const {
  std::vector<UniPoly> v;
  v.reserve(zc_.size());
  for (const auto& c : zc_) v.push_back(c.is_zero() ? UniPoly() : c.exact_div(p));
  return Poly(std::move(v));
}

Poly Poly::exact_div(const Poly& d) const {
  if (d.is_zero()) throw std::domain_error("polynomial division by zero");
  Poly r = *this;
  Poly q;
  const UniPoly& ld = d.zc_.back();
  while (!r.is_zero()) {
    if (r.degree_z() < d.degree_z()) throw std::domain_error("inexact polynomial division");
    const auto shift = static_cast<std::size_t>(r.degree_z() - d.degree_z());
    const UniPoly qt = r.zc_.back().exact_div(ld);
    std::vector<UniPoly> term(shift + 1);
    term[shift] = qt;
    Poly tp(std::move(term));
    const int before = r.degree_z();
    r -= tp * d;
    q += tp;
    if (!r.is_zero() && r.degree_z() >= before) throw std::domain_error("inexact polynomial division");
  }
  return q;
}

UniPoly Poly::content_z() const {
  UniPoly g;
  for (const auto& c : zc_) {
    g = gcd(g, c);
    if (g.degree() == 0) break;
  }
  return g;
}

namespace {

Poly normalized(const Poly& p) {
  if (p.is_zero()) return p;
  Poly q = p;
  q *= 1 / q.z_coeffs().back().lead();
  return q;
}

bool divides(const Poly& d, const Poly& p) {
  try {
    (void)p.exact_div(d);
    return true;
  } catch (const std::domain_error&) {
    return false;
  }
}

}  // namespace

namespace {

std::optional<modp::Bp> image(const Poly& u, modp::u64 p) {
  modp::Bp out;
  out.reserve(u.z_coeffs().size());
  for (const auto& c : u.z_coeffs()) {
    modp::Up row;
    row.reserve(c.coeffs().size());
    for (const auto& x : c.coeffs()) {
      auto r = modp::reduce(x, p);
      if (!r) return std::nullopt;
      row.push_back(*r);
    }
    modp::trim(row);
    out.push_back(std::move(row));
  }
  if (out.back().empty()) return std::nullopt;
  return out;
}

}  // namespace

// Primitive parts are handled modularly (bivariate images mod p by
// evaluation/interpolation in t, then lifting); t-contents use the
// univariate gcd.
Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return normalized(b);
  if (b.is_zero()) return normalized(a);
  const UniPoly ca = a.content_z(), cb = b.content_z();
  const Poly content = Poly(1).times_t_poly(gcd(ca, cb));
  const Poly pa = a.div_t_poly(ca), pb = b.div_t_poly(cb);
  if (pa.degree_z() == 0 || pb.degree_z() == 0) return normalized(content);

  std::pair<int, int> best{-1, -1};
  std::optional<modp::Lifter> lift;
  std::optional<std::vector<Rational>> prev;
  for (std::size_t i = 0;; ++i) {
    const modp::u64 p = modp::prime(i);
    auto ia = image(pa, p), ib = image(pb, p);
    if (!ia || !ib) continue;
    auto g = modp::gcd(*ia, *ib, p);
    if (!g) continue;
    const int dz = static_cast<int>(g->size()) - 1;
    if (dz == 0) return normalized(content);
    int dt = 0;
    for (const auto& c : *g) dt = std::max(dt, static_cast<int>(c.size()) - 1);
    const std::pair<int, int> sig{dz, dt};
    if (best.first >= 0 && sig > best) continue;
    if (best.first < 0 || sig < best) {
      best = sig;
      lift.emplace(static_cast<std::size_t>((dz + 1) * (dt + 1)));
      prev.reset();
    }
    std::vector<modp::u64> flat(lift->size(), 0);
    for (std::size_t zi = 0; zi < g->size(); ++zi)
      for (std::size_t ti = 0; ti < (*g)[zi].size(); ++ti) flat[zi * static_cast<std::size_t>(dt + 1) + ti] = (*g)[zi][ti];
    lift->add(flat, p);
    auto rec = lift->reconstruct();
    if (rec && prev && *rec == *prev) {
      std::vector<UniPoly> zc;
      for (int zi = 0; zi <= dz; ++zi)
        zc.emplace_back(std::vector<Rational>(rec->begin() + zi * (dt + 1), rec->begin() + (zi + 1) * (dt + 1)));
      const Poly cand(std::move(zc));
      if (divides(cand, pa) && divides(cand, pb)) return normalized(cand * content);
    }
    prev = std::move(rec);
  }
}

namespace {

void append_term(std::string& out, const Rational& c, std::size_t zd, std::size_t td) {
  const bool negative = c < 0;
  const Rational mag = abs(c);
  if (out.empty()) {
    if (negative) out += "-";
  } else {
    out += negative ? " - " : " + ";
  }
  std::string mono;
  if (zd > 0) mono += zd == 1 ? "z" : "z^" + std::to_string(zd);
  if (td > 0) {
    if (!mono.empty()) mono += "*";
    mono += td == 1 ? "t" : "t^" + std::to_string(td);
  }
  if (mono.empty()) {
    out += mag.get_str();
  } else if (mag == 1) {
    out += mono;
  } else {
    out += mag.get_str() + "*" + mono;
  }
}

}  // namespace

std::string Poly::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t i = 0; i < zc_.size(); ++i)
    for (std::size_t j = 0; j < zc_[i].coeffs().size(); ++j)
      if (zc_[i].coeffs()[j] != 0) append_term(out, zc_[i].coeffs()[j], i, j);
  return out;
}

namespace {

class PolyParser {
 public:
  explicit PolyParser(std::string_view s) : s_(s) {}

  Poly parse() {
    Poly result;
    skip();
    bool first = true;
    while (pos_ < s_.size()) {
      Rational sign = 1;
      if (s_[pos_] == '+' || s_[pos_] == '-') {
        sign = s_[pos_] == '-' ? -1 : 1;
        ++pos_;
        skip();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      result += term() * sign;
      first = false;
      skip();
    }
    if (first) fail("empty polynomial");
    return result;
  }

 private:
  Poly term() {
    Rational c = 1;
    int zd = 0, td = 0;
    bool any = false;
    while (true) {
      skip();
      if (pos_ >= s_.size()) fail("unexpected end of input");
      const char ch = s_[pos_];
      if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
        c *= number();
      } else if (ch == 'z' || ch == 't') {
        ++pos_;
        int e = 1;
        skip();
        if (pos_ < s_.size() && s_[pos_] == '^') {
          ++pos_;
          skip();
          e = integer();
        }
        (ch == 'z' ? zd : td) += e;
      } else {
        fail("unexpected character");
      }
      any = true;
      skip();
      if (pos_ < s_.size() && s_[pos_] == '*') {
        ++pos_;
        continue;
      }
      break;
    }
    if (!any) fail("empty term");
    return Poly::monomial(c, zd, td);
  }

  Rational number() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
    std::string text(s_.substr(start, pos_ - start));
    skip();
    if (pos_ < s_.size() && s_[pos_] == '/') {
      ++pos_;
      skip();
      const std::size_t dstart = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
      if (dstart == pos_) fail("expected denominator");
      text += "/" + std::string(s_.substr(dstart, pos_ - dstart));
    }
    return parse_rational(text);
  }

  int integer() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected exponent");
    return std::stoi(std::string(s_.substr(start, pos_ - start)));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const char* what) const {
    throw std::invalid_argument(std::string("poly parse error at offset ") + std::to_string(pos_) + ": " + what);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(std::string_view text) { return PolyParser(text).parse(); }

}  // namespace emergence
