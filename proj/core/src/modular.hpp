#pragma once

// Small-prime arithmetic used by the polynomial gcds. Not installed.

#include <cstdint>
#include <optional>
#include <vector>

#include "emergence/rational.hpp"

namespace emergence::modp {

using u64 = std::uint64_t;
using Up = std::vector<u64>;   // dense, trimmed, coefficient i of x^i
using Bp = std::vector<Up>;    // polynomial in z with coefficients in F_p[t]

/// i-th prime below 2^31, descending.
u64 prime(std::size_t i);

/// q mod p, or nullopt when p divides the denominator.
std::optional<u64> reduce(const Rational& q, u64 p);

u64 inv(u64 a, u64 p);
void trim(Up& a);
u64 eval(const Up& a, u64 x, u64 p);
Up monic(Up a, u64 p);
/// Remainder of a by b; quotient stored in q when non-null.
Up rem(Up a, const Up& b, u64 p, Up* q = nullptr);
Up gcd(Up a, Up b, u64 p);

/// Monic-normalized gcd of primitive bivariate images, or nullopt if the
/// evaluation scheme failed (caller retries with another prime).
std::optional<Bp> gcd(const Bp& a, const Bp& b, u64 p);

/// Chinese remaindering plus rational reconstruction over a growing prime set.
class Lifter {
 public:
  explicit Lifter(std::size_t size) : res_(size) {}
  void add(const std::vector<u64>& image, u64 p);
  /// Rational images of all residues, or nullopt when reconstruction fails.
  std::optional<std::vector<Rational>> reconstruct() const;
  std::size_t size() const { return res_.size(); }

 private:
  std::vector<mpz_class> res_;
  mpz_class modulus_ = 1;
};

}  // namespace emergence::modp
