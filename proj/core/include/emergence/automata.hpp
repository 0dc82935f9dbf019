#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "emergence/languages.hpp"
#include "emergence/params.hpp"
#include "emergence/ratfun.hpp"
#include "emergence/words.hpp"

namespace emergence {

/// Deterministic automaton over letters 0..sigma-1. A transition equal to
/// kPruned has been erased on purpose; runs reading it are rejected.
struct Dfa {
  static constexpr int kPruned = -1;

  std::size_t sigma = 0;
  std::vector<std::vector<int>> delta;  // delta[state][letter]
  int initial = 0;
  std::vector<bool> finals;
  std::vector<std::string> names;  // optional, for DOT

  std::size_t size() const { return delta.size(); }
  /// State after reading w from `from`, or kPruned.
  int run(const Word& w, int from) const;
  int run(const Word& w) const { return run(w, initial); }
  bool accepts(const Word& w) const;
  bool is_complete() const;
};

/// Knuth-Morris-Pratt automaton of A*bA*: state q is the longest prefix of b
/// that is a suffix of the input; state |b| is absorbing and final.
Dfa kmp_automaton(const Word& b, std::size_t sigma);

/// Same transitions, finals flipped.
Dfa complement(const Dfa& a);

/// Reachable product. `final_rule(f1, f2)` decides finality of (q1, q2).
/// With `paired`, the product reads letter pairs (a1, a2) encoded as
/// a1 * a2.sigma + a2; otherwise both automata read the same letter.
struct ProductDfa {
  Dfa dfa;
  std::vector<std::pair<int, int>> pairs;
};
ProductDfa product(const Dfa& a1, const Dfa& a2, const std::function<bool(bool, bool)>& final_rule,
                   bool paired = false);

/// Clump automaton of d(b): states Pref(X) with the longest-suffix rule,
/// b-completing transitions pruned, every state terminal.
struct ClumpAutomaton {
  Word b;
  Dfa dfa;
  std::vector<Word> labels;  // state label (a member of Pref(X)); BFS order
  std::vector<bool> occurrence;  // O: label ends with a member of d(b)
  std::vector<bool> ebar;        // reached by a strict prefix of a d(b) word
  std::map<int, Word> theta;     // defined on O
  /// Putative hits created by each transition, as (from, to) letter pairs;
  /// and the number of new distinct positions (the untyped mark).
  std::vector<std::vector<std::vector<MutationType>>> new_hits;
  std::vector<std::vector<int>> new_positions;

  /// Mark exponent of a transition for a filter (nullopt: untyped).
  int mark(int state, int letter, const MutationFilter& filter) const;
  bool in_core(int state) const { return !ebar[static_cast<std::size_t>(state)]; }
};

ClumpAutomaton clump_automaton(const Word& b, std::size_t sigma);

/// Every core state is the end of at most one word of each length <= depth,
/// over all start states. Takes the plain Dfa so callers can test altered
/// automata.
bool markov_property_check(const Dfa& dfa, const std::vector<bool>& core, std::size_t depth);
bool markov_property_check(const ClumpAutomaton& ca);

/// Graphviz rendering; marked transitions carry a tilde on the letter.
std::string to_dot(const Dfa& dfa, const Alphabet& alphabet);
std::string to_dot(const ClumpAutomaton& ca, const Alphabet& alphabet, const MutationFilter& filter = std::nullopt);

/// F_b(z,t) = e_0 (I - z H(t))^{-1} 1 solved exactly.
RatFun gf_from_clump_automaton(const ClumpAutomaton& ca, const LetterDistribution& nu,
                               const MutationFilter& filter = std::nullopt);

/// [z^n] F_b(z,t) for n = 0..n_max, each a polynomial in t, by exact
/// vector iteration.
std::vector<UniPoly> clump_series(const ClumpAutomaton& ca, const LetterDistribution& nu, std::size_t n_max,
                                  const MutationFilter& filter = std::nullopt);

/// Floating-point moments of one automaton run: f_n = [z^n]F(z,1) and
/// h_n = [z^n] sum_edges weight * dF/dt, where each transition contributes
/// `weight(state, letter)` instead of a single mark.
struct ClumpMoments {
  std::vector<double> avoid;  // f_n, n = 0..n_max
  std::vector<double> hits;   // weighted E(H_n) (unconditioned)
};
ClumpMoments clump_moments(const ClumpAutomaton& ca, const std::vector<double>& nu, std::size_t n_max,
                           const std::function<double(int, int)>& weight);

/// Exact p_n = Pr(b in S(1) | b not in S(0)) under M0 from the paired
/// product of the complement and the KMP automaton; double precision.
double bnn_probability(const Word& b, std::size_t n, const ModelParams& params);
/// Same computation carried out with 50 significant digits.
double bnn_probability_extended(const Word& b, std::size_t n, const ModelParams& params);

}  // namespace emergence
