#include "modular.hpp"

#include <algorithm>
#include <mutex>

namespace emergence::modp {

namespace {

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

u64 mul(u64 a, u64 b, u64 p) { return a * b % p; }
u64 sub(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }

}  // namespace

u64 prime(std::size_t i) {
  static std::vector<u64> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  u64 next = cache.empty() ? (u64{1} << 31) - 1 : cache.back() - 2;
  while (cache.size() <= i) {
    while (!is_prime(next)) next -= 2;
    cache.push_back(next);
    next -= 2;
  }
  return cache[i];
}

std::optional<u64> reduce(const Rational& q, u64 p) {
  const u64 d = mpz_fdiv_ui(q.get_den_mpz_t(), p);
  if (d == 0) return std::nullopt;
  const u64 n = mpz_fdiv_ui(q.get_num_mpz_t(), p);
  return mul(n, inv(d, p), p);
}

u64 inv(u64 a, u64 p) {
  u64 result = 1, base = a % p, e = p - 2;
  while (e) {
    if (e & 1) result = mul(result, base, p);
    base = mul(base, base, p);
    e >>= 1;
  }
  return result;
}

void trim(Up& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

u64 eval(const Up& a, u64 x, u64 p) {
  u64 acc = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = (mul(acc, x, p) + *it) % p;
  return acc;
}

Up monic(Up a, u64 p) {
  trim(a);
  if (a.empty()) return a;
  const u64 li = inv(a.back(), p);
  for (auto& c : a) c = mul(c, li, p);
  return a;
}

Up rem(Up a, const Up& b, u64 p, Up* q) {
  trim(a);
  const u64 li = inv(b.back(), p);
  const std::size_t db = b.size() - 1;
  if (q) q->assign(a.size() >= b.size() ? a.size() - db : 0, 0);
  while (!a.empty() && a.size() > db) {
    const std::size_t shift = a.size() - 1 - db;
    const u64 f = mul(a.back(), li, p);
    if (q) (*q)[shift] = f;
    for (std::size_t j = 0; j <= db; ++j) a[shift + j] = sub(a[shift + j], mul(f, b[j], p), p);
    trim(a);
  }
  return a;
}

Up gcd(Up a, Up b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Up r = rem(std::move(a), b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(std::move(a), p);
}

namespace {

Up mul(const Up& a, const Up& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  Up out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + mul(a[i], b[j], p)) % p;
  return out;
}

Up exact_quotient(const Up& a, const Up& b, u64 p, bool& ok) {
  Up q;
  const Up r = rem(a, b, p, &q);
  ok = r.empty();
  trim(q);
  return q;
}

Up content(const Bp& a, u64 p) {
  Up g;
  for (const auto& c : a) {
    g = gcd(g, c, p);
    if (g.size() == 1) break;
  }
  return g;
}

bool primitive(Bp& a, u64 p) {
  const Up c = content(a, p);
  if (c.size() <= 1) return true;
  for (auto& x : a) {
    if (x.empty()) continue;
    bool ok = true;
    x = exact_quotient(x, c, p, ok);
    if (!ok) return false;
  }
  return true;
}

int degree_t(const Bp& a) {
  int d = -1;
  for (const auto& c : a) d = std::max(d, static_cast<int>(c.size()) - 1);
  return d;
}

bool divides(const Bp& d, Bp r, u64 p) {
  while (!r.empty() && !r.back().empty()) {
    if (r.size() < d.size()) return false;
    const std::size_t shift = r.size() - d.size();
    bool ok = true;
    const Up qt = exact_quotient(r.back(), d.back(), p, ok);
    if (!ok) return false;
    for (std::size_t j = 0; j < d.size(); ++j) {
      Up prod = mul(qt, d[j], p);
      Up& target = r[shift + j];
      if (target.size() < prod.size()) target.resize(prod.size(), 0);
      for (std::size_t k = 0; k < prod.size(); ++k) target[k] = sub(target[k], prod[k], p);
      trim(target);
    }
    if (!r.back().empty()) return false;
    while (!r.empty() && r.back().empty()) r.pop_back();
  }
  return true;
}

// Newton interpolation in F_p.
Up interpolate(const std::vector<u64>& xs, std::vector<u64> dd, u64 p) {
  const std::size_t m = xs.size();
  for (std::size_t j = 1; j < m; ++j)
    for (std::size_t i = m - 1; i >= j; --i)
      dd[i] = mul(sub(dd[i], dd[i - 1], p), inv(sub(xs[i], xs[i - j], p), p), p);
  Up result;
  for (std::size_t i = m; i-- > 0;) {
    Up shifted(result.size() + 1, 0);
    for (std::size_t k = 0; k < result.size(); ++k) {
      shifted[k + 1] = (shifted[k + 1] + result[k]) % p;
      shifted[k] = sub(shifted[k], mul(result[k], xs[i], p), p);
    }
    if (shifted.empty()) shifted.push_back(0);
    shifted[0] = (shifted[0] + dd[i]) % p;
    trim(shifted);
    result = std::move(shifted);
  }
  return result;
}

}  // namespace

std::optional<Bp> gcd(const Bp& a_in, const Bp& b_in, u64 p) {
  Bp a = a_in, b = b_in;
  if (!primitive(a, p) || !primitive(b, p)) return std::nullopt;
  if (a.size() <= 1 || b.size() <= 1) return Bp{Up{1}};
  const Up& la = a.back();
  const Up& lb = b.back();
  const Up gamma = gcd(la, lb, p);
  const std::size_t needed =
      gamma.size() - 1 + static_cast<std::size_t>(std::min(degree_t(a), degree_t(b))) + 1;

  std::size_t d_min = std::min(a.size(), b.size());
  std::vector<u64> xs;
  std::vector<Up> images;
  for (u64 x = 1; x < p && x < needed + 4096; ++x) {
    if (eval(la, x, p) == 0 || eval(lb, x, p) == 0) continue;
    Up ea(a.size()), eb(b.size());
    for (std::size_t i = 0; i < a.size(); ++i) ea[i] = eval(a[i], x, p);
    for (std::size_t i = 0; i < b.size(); ++i) eb[i] = eval(b[i], x, p);
    Up g = gcd(std::move(ea), std::move(eb), p);
    if (g.size() == 1) return Bp{Up{1}};
    if (g.size() - 1 > d_min) continue;
    if (g.size() - 1 < d_min) {
      d_min = g.size() - 1;
      xs.clear();
      images.clear();
    }
    const u64 gx = eval(gamma, x, p);
    for (auto& c : g) c = mul(c, gx, p);
    xs.push_back(x);
    images.push_back(std::move(g));
    if (xs.size() < needed) continue;

    Bp cand(d_min + 1);
    std::vector<u64> ys(xs.size());
    for (std::size_t i = 0; i <= d_min; ++i) {
      for (std::size_t j = 0; j < images.size(); ++j) ys[j] = images[j][i];
      cand[i] = interpolate(xs, ys, p);
    }
    if (!primitive(cand, p)) return std::nullopt;
    if (divides(cand, a, p) && divides(cand, b, p)) {
      const u64 li = inv(cand.back().back(), p);
      for (auto& c : cand)
        for (auto& x2 : c) x2 = mul(x2, li, p);
      return cand;
    }
    if (xs.size() > needed + 32) return std::nullopt;
  }
  return std::nullopt;
}

void Lifter::add(const std::vector<u64>& image, u64 p) {
  const mpz_class pz(static_cast<unsigned long>(p));
  mpz_class minv;
  mpz_class mmod = modulus_ % pz;
  mpz_invert(minv.get_mpz_t(), mmod.get_mpz_t(), pz.get_mpz_t());
  for (std::size_t i = 0; i < res_.size(); ++i) {
    mpz_class diff = mpz_class(static_cast<unsigned long>(image[i])) - res_[i] % pz;
    diff = (diff * minv) % pz;
    if (diff < 0) diff += pz;
    res_[i] += modulus_ * diff;
  }
  modulus_ *= pz;
}

std::optional<std::vector<Rational>> Lifter::reconstruct() const {
  mpz_class bound;
  mpz_class half = modulus_ / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  std::vector<Rational> out;
  out.reserve(res_.size());
  for (const auto& a : res_) {
    mpz_class r0 = modulus_, r1 = a, s0 = 0, s1 = 1;
    while (r1 > bound) {
      mpz_class q = r0 / r1;
      mpz_class r2 = r0 - q * r1;
      r0 = r1;
      r1 = r2;
      mpz_class s2 = s0 - q * s1;
      s0 = s1;
      s1 = s2;
    }
    if (abs(s1) > bound || s1 == 0) return std::nullopt;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), s1.get_mpz_t());
    if (g != 1) return std::nullopt;
    Rational q(r1, s1);
    q.canonicalize();
    out.push_back(q);
  }
  return out;
}

}  // namespace emergence::modp
