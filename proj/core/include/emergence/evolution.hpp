#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "emergence/automata.hpp"
#include "emergence/params.hpp"
#include "emergence/words.hpp"

namespace emergence {

enum class Method { BV, BNN, CLUMP };

std::string to_string(Method m);
/// Accepts bv, bnn, clump (any case). Throws std::invalid_argument.
Method parse_method(const std::string& text);

/// Inclusion-exclusion approximation: sum over l of
/// (-1)^{l+1} C(n-(k-1)l, l) q^l, q = Pr(S(1) window = b, S(0) window != b).
/// Terms below 1e-30 of the partial sum are dropped.
double bv_probability(const Word& b, std::size_t n, const ModelParams& params);

/// Exact putative-hit statistics at one length.
struct ExpectedHits {
  Rational hits;         // E(H_n) over all texts, hits counted on b-avoiders
  Rational avoid;        // f_n = Pr(b does not occur)
  Rational conditioned;  // E(H_n | avoid) = hits / avoid
};
ExpectedHits expected_hits(const Word& b, std::size_t n, const LetterDistribution& nu,
                           const MutationFilter& filter = std::nullopt);

/// Exact f_n and E(H_n) for n = 0..n_max.
struct HitSeries {
  std::vector<Rational> avoid;
  std::vector<Rational> hits;
};
HitSeries hit_series(const Word& b, std::size_t sigma, const LetterDistribution& nu, std::size_t n_max,
                     const MutationFilter& filter = std::nullopt);

/// First-order p_n = sum over types of E(H_n^{a->c} | avoid) * p_{a->c};
/// one floating-point automaton run.
double clump_probability(const Word& b, std::size_t n, const ModelParams& params);

/// Constants of one mutation type: E(H_n | avoid) ~ c1 n + c2.
struct TypedConstants {
  MutationType type;
  double c1 = 0, c2 = 0;
};

struct AsymptoticConstants {
  double tau = 0;   // smallest positive root of the avoidance denominator
  double psi = 0;   // f_n ~ psi tau^{-(n-1)}
  double phi1 = 0;  // untyped double-pole constants: [z^n]E ~ (phi1 n + phi2) tau^{-n}
  double phi2 = 0;
  std::vector<TypedConstants> per_type;
  double C1 = 0, C2 = 0;  // sums of c1, c2 over types
  double pn_slope = 0;    // sum of c1 * p_{a->c}: p_n ~ pn_slope n + pn_intercept
  double pn_intercept = 0;
  double decay = 0;  // ratio of the second to the first singularity modulus
  bool exact = false;
};

enum class AsymptoticRoute { Auto, Exact, Spectral };

/// Exact route: reduced rational generating functions, tau isolated by a
/// Sturm sequence and refined to 50 digits, residues from exact
/// derivatives. Spectral route: Perron eigen-triple of the transfer matrix.
/// Auto picks exact for two-letter alphabets and words up to length 6.
AsymptoticConstants asymptotics(const Word& b, const ModelParams& params,
                                AsymptoticRoute route = AsymptoticRoute::Auto);

/// E(H_n | avoid) for n = 0..n_max, computed with 50 significant digits
/// (any alphabet and rational parameters).
std::vector<double> conditioned_hits(const Word& b, const ModelParams& params, std::size_t n_max,
                                     const MutationFilter& filter = std::nullopt);

/// Least-squares line through E(H_n | avoid) (untyped) for n in [lo, hi],
/// from exact series.
struct LinearFit {
  double slope = 0, intercept = 0;
};
LinearFit fit_conditioned_hits(const Word& b, const ModelParams& params, std::size_t lo, std::size_t hi);

struct WaitingTimeResult {
  Word word;
  std::size_t n = 0;
  Method method = Method::BNN;
  double p_n = 0;
  double expected_T = 0;  // 1 / p_n generations
  /// n * max p_{a->c} above 1e-2: first-order formulas lose accuracy.
  bool outside_first_order = false;
};

WaitingTimeResult waiting_time(const Word& b, std::size_t n, const ModelParams& params, Method method);

struct ScanRow {
  WaitingTimeResult result;
  std::size_t rank = 0;
  std::size_t minimal_period = 0;
};

/// All sigma^k words ranked by increasing E(T_n); ties broken
/// lexicographically. Evaluated on `threads` workers (0: hardware).
std::vector<ScanRow> scan_kmers(std::size_t k, std::size_t n, const ModelParams& params, Method method,
                                unsigned threads = 0);

/// CSV with header word,method,p_n,expected_T,expected_T_e6,rank,minimal_period.
std::string scan_csv(const std::vector<ScanRow>& rows, const Alphabet& alphabet);

/// "%.10g" formatting shared by every textual output.
std::string format_number(double x);

}  // namespace emergence
