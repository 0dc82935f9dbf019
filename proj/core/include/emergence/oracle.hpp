#pragma once

#include <cstddef>
#include <cstdint>
#include <map>

#include "emergence/params.hpp"
#include "emergence/words.hpp"

namespace emergence {

/// Exhaustive putative-hit statistics over all words of one length.
struct EnumerationReport {
  Word b;
  std::size_t n = 0;
  std::uint64_t avoid_count = 0;
  Rational avoid_mass;  // f_n
  Rational hit_sum;     // sum over b-avoiders of Pr(w) * hits(w)
  std::map<MutationType, Rational> typed_hit_sums;
  std::map<std::size_t, Rational> census;  // hit count -> probability mass
};

/// Largest sigma^n accepted by the enumerators.
inline constexpr std::uint64_t kEnumerationLimit = std::uint64_t{1} << 26;

/// Throws std::length_error when sigma^n exceeds kEnumerationLimit.
EnumerationReport enumerate(const Word& b, std::size_t n, const LetterDistribution& nu);

/// Pr(b in S(1) | b not in S(0)) with every position mutating independently
/// under p1; exact. The inner sum over S(1) runs on the KMP automaton, so
/// only S(0) is enumerated.
Rational exact_pn_tiny(const Word& b, std::size_t n, const ModelParams& params);

struct MonteCarloEstimate {
  double p = 0;
  double std_error = 0;
  std::uint64_t trials = 0;
};

/// Rejection-samples b-avoiding S(0), mutates it once, counts occurrences of
/// b. Deterministic for a fixed seed. Throws std::invalid_argument when
/// trials < 10^4 and std::runtime_error when rejection keeps failing.
MonteCarloEstimate monte_carlo_pn(const Word& b, std::size_t n, const ModelParams& params, std::uint64_t trials,
                                  std::uint64_t seed);

}  // namespace emergence
