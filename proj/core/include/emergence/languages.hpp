#pragma once

#include <cstddef>
#include <vector>

#include "emergence/ratfun.hpp"
#include "emergence/rfmatrix.hpp"
#include "emergence/words.hpp"

namespace emergence {

/// Letter probabilities nu(a), indexed like the alphabet.
using LetterDistribution = std::vector<Rational>;

LetterDistribution uniform_distribution(std::size_t sigma);

/// Pr(w) = product of nu over the letters of w.
Rational word_probability(const Word& w, const LetterDistribution& nu);

/// Pr(w) * z^|w| * t^t_degree.
RatFun word_gf(const Word& w, const LetterDistribution& nu, int t_degree = 0);

/// Generating functions of the Right, Minimal, Ultimate and Not languages of
/// a reduced set V = (v_1..v_r).
struct LanguageGFs {
  WordSet words;
  RatFun N;
  std::vector<RatFun> R;  // row
  RFMatrix M;
  std::vector<RatFun> U;  // column
};

/// Solves the language equations exactly. Throws std::invalid_argument when
/// V is not reduced.
LanguageGFs rs_solve(const WordSet& v, const LetterDistribution& nu);

/// N + R (I - M)^{-1} U == 1/(1 - z).
bool parse_identity_holds(const LanguageGFs& l);
/// z U_i == sum_j M_ij + U_i - 1 for every i.
bool ultimate_identity_holds(const LanguageGFs& l);
/// N v_j == R_j + sum_i R_i (C_ij - delta_ij) for every j.
bool not_identity_holds(const LanguageGFs& l, const LetterDistribution& nu);

/// Languages of d_l(b) avoiding b: rs_solve on (d_l(b), b), restricted to the
/// first r = |d(b)| indices.
struct ConstrainedLanguages {
  LanguageGFs extended;
  LanguageGFs restricted;
};
ConstrainedLanguages constrained_languages(const Word& b, std::size_t sigma, const LetterDistribution& nu);

/// Matrix of finite word sets K_ij over a reduced set.
struct CodeMatrix {
  WordSet words;
  std::vector<std::vector<std::vector<Word>>> codes;  // codes[i][j], sorted
};

/// True when v_i.e ends with v_j and contains no occurrence of a member of V
/// starting after position 0 and ending before the last letter.
bool in_minimal_language(const WordSet& v, std::size_t i, const Word& e);

/// K_ij = B_ij - B_ij A^+ with B_ij = C_ij (minus epsilon) filtered by the
/// minimal-language test.
CodeMatrix code_matrix(const WordSet& v);

/// K-bar: members h of K_ij(d_l(b)) with v_i.h free of b.
CodeMatrix constrained_code_matrix(const Word& b, std::size_t sigma);

/// Entry (i,j) = sum over h in K_ij of Pr(h) t^{hits(v_i h) - hits(v_i)} z^|h|.
RFMatrix marked_code_gf(const Word& b, const CodeMatrix& k, const LetterDistribution& nu,
                        const MutationFilter& filter);

/// Unmarked version (t := 1) of marked_code_gf.
RFMatrix code_gf(const CodeMatrix& k, const LetterDistribution& nu);

/// How successive clump extensions are marked.
enum class MarkRule {
  /// Exact: code matrix refined by the hit keys already counted inside the
  /// window of the last occurrence.
  Context,
  /// Pairwise t^{hits(v_i h) - hits(v_i)}; overcounts hits shared with an
  /// occurrence two or more steps back.
  Pairwise,
};

/// F_b(z,t): sum over b-avoiding texts w of Pr(w) z^|w| t^{hits(w)}, assembled
/// from the clump decomposition of d(b) constrained to avoid b.
RatFun clump_gf_language(const Word& b, std::size_t sigma, const LetterDistribution& nu,
                         const MutationFilter& filter = std::nullopt, MarkRule rule = MarkRule::Context);

}  // namespace emergence
