#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "emergence/languages.hpp"
#include "emergence/words.hpp"

namespace emergence {

/// Model M0: i.i.d. letters with distribution nu, then one generation of
/// independent per-position substitution with matrix p1.
struct ModelParams {
  Alphabet alphabet = Alphabet::binary();
  LetterDistribution nu;
  std::vector<std::vector<Rational>> p1;  // p1[from][to]

  double nu_d(std::size_t a) const { return to_double(nu[a]); }
  double p_d(std::size_t from, std::size_t to) const { return to_double(p1[from][to]); }
  /// Largest off-diagonal substitution probability.
  double max_mutation() const;
  /// p1 with every off-diagonal entry multiplied by factor (diagonal refit
  /// so rows keep their sums).
  ModelParams scaled_mutation(const Rational& factor) const;
};

/// Reads the line format
///   # comment
///   nu <SYMBOL> <decimal>
///   p <FROM> <TO> <decimal>
/// Letters take the order of the nu lines. Throws std::invalid_argument on a
/// malformed line, unknown symbol, missing entry, or a row sum off by more
/// than 1e-7.
ModelParams parse_params(std::istream& in);

/// Built-in sets by name ("table1", "binary-uniform"), otherwise a file path.
ModelParams load_params(const std::string& source);

/// Binary alphabet {A,C}, nu = (1/2, 1/2), symmetric substitution p_mut.
ModelParams binary_uniform_params(const Rational& p_mut = Rational(1, 1000000));

}  // namespace emergence
