#include "emergence/oracle.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "emergence/automata.hpp"

namespace emergence {

namespace {

std::uint64_t word_count(std::size_t sigma, std::size_t n) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    total *= sigma;
    if (total > kEnumerationLimit) throw std::length_error("enumeration guard exceeded (sigma^n > 2^26)");
  }
  return total;
}

// Calls f(word, probability) for every word of length n.
template <class F>
void for_each_word(std::size_t n, const LetterDistribution& nu, F&& f) {
  const std::size_t sigma = nu.size();
  const std::uint64_t total = word_count(sigma, n);
  std::string s(n, 0);
  for (std::uint64_t index = 0; index < total; ++index) {
    std::uint64_t x = index;
    Rational p = 1;
    for (std::size_t i = n; i-- > 0; x /= sigma) {
      s[i] = static_cast<char>(x % sigma);
      p *= nu[static_cast<std::size_t>(s[i])];
    }
    f(Word(s), p);
  }
}

}  // namespace

EnumerationReport enumerate(const Word& b, std::size_t n, const LetterDistribution& nu) {
  EnumerationReport r;
  r.b = b;
  r.n = n;
  const auto types = mutation_types(nu.size());
  for (const auto& t : types) r.typed_hit_sums[t] = 0;
  for_each_word(n, nu, [&](const Word& w, const Rational& p) {
    if (w.contains(b)) return;
    ++r.avoid_count;
    r.avoid_mass += p;
    const auto hits = putative_hits(w, b);
    const std::size_t positions = putative_hit_positions(w, b).size();
    r.hit_sum += p * positions;
    r.census[positions] += p;
    for (const auto& h : hits) r.typed_hit_sums[{w[h.position - 1], h.target}] += p;
  });
  return r;
}

Rational exact_pn_tiny(const Word& b, std::size_t n, const ModelParams& params) {
  const std::size_t sigma = params.alphabet.size();
  const Dfa kmp = kmp_automaton(b, sigma);
  const auto k = static_cast<int>(b.size());
  Rational num = 0, den = 0;
  for_each_word(n, params.nu, [&](const Word& s0, const Rational& p) {
    if (s0.contains(b)) return;
    den += p;
    // mass of S(1) per KMP state; rows of p1 may miss 1 by rounding, so the
    // occurrence mass is accumulated directly rather than as a complement
    std::vector<Rational> v(static_cast<std::size_t>(k) + 1), next(v.size());
    v[0] = 1;
    for (std::size_t i = 0; i < n; ++i) {
      std::fill(next.begin(), next.end(), Rational(0));
      const auto& row = params.p1[static_cast<std::size_t>(s0[i])];
      for (int q = 0; q <= k; ++q) {
        if (v[static_cast<std::size_t>(q)] == 0) continue;
        for (std::size_t c = 0; c < sigma; ++c)
          next[static_cast<std::size_t>(kmp.delta[static_cast<std::size_t>(q)][c])] += v[static_cast<std::size_t>(q)] * row[c];
      }
      v.swap(next);
    }
    num += p * v[static_cast<std::size_t>(k)];
  });
  if (den == 0) throw std::logic_error("exact_pn_tiny: b is unavoidable");
  return num / den;
}

MonteCarloEstimate monte_carlo_pn(const Word& b, std::size_t n, const ModelParams& params, std::uint64_t trials,
                                  std::uint64_t seed) {
  if (trials < 10000) throw std::invalid_argument("monte_carlo_pn needs at least 10^4 trials");
  const std::size_t sigma = params.alphabet.size();
  std::vector<double> nu_cdf(sigma);
  std::vector<std::vector<double>> p_cdf(sigma, std::vector<double>(sigma));
  for (std::size_t a = 0; a < sigma; ++a) {
    nu_cdf[a] = (a ? nu_cdf[a - 1] : 0.0) + params.nu_d(a);
    for (std::size_t c = 0; c < sigma; ++c) p_cdf[a][c] = (c ? p_cdf[a][c - 1] : 0.0) + params.p_d(a, c);
  }
  auto draw = [sigma](const std::vector<double>& cdf, double u) {
    for (std::size_t i = 0; i + 1 < sigma; ++i)
      if (u < cdf[i] / cdf[sigma - 1]) return static_cast<int>(i);
    return static_cast<int>(sigma - 1);
  };

  // trials are split in fixed blocks with derived seeds
  constexpr std::uint64_t kBlock = 10000;
  std::uint64_t hits = 0;
  std::string s0(n, 0), s1(n, 0);
  for (std::uint64_t start = 0, block = 0; start < trials; start += kBlock, ++block) {
    std::seed_seq seq{seed, block};
    std::mt19937_64 rng(seq);
    auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    const std::uint64_t count = std::min(kBlock, trials - start);
    for (std::uint64_t t = 0; t < count; ++t) {
      for (int attempt = 0;; ++attempt) {
        if (attempt == 100000) throw std::runtime_error("monte_carlo_pn: rejection sampling keeps failing");
        for (auto& c : s0) c = static_cast<char>(draw(nu_cdf, uniform()));
        if (!Word(s0).contains(b)) break;
      }
      for (std::size_t i = 0; i < n; ++i)
        s1[i] = static_cast<char>(draw(p_cdf[static_cast<std::size_t>(s0[i])], uniform()));
      if (Word(s1).contains(b)) ++hits;
    }
  }
  MonteCarloEstimate e;
  e.trials = trials;
  e.p = static_cast<double>(hits) / static_cast<double>(trials);
  e.std_error = std::sqrt(e.p * (1 - e.p) / static_cast<double>(trials));
  return e;
}

}  // namespace emergence
