#include <gtest/gtest.h>

#include <cmath>

#include "emergence/evolution.hpp"
#include "emergence/oracle.hpp"

using namespace emergence;

namespace {
const Alphabet kBin = Alphabet::binary();
Word bw(const std::string& s) { return Word::parse(kBin, s); }
}  // namespace

TEST(Enumerate, TribonacciCase) {
  const EnumerationReport r = enumerate(bw("AAA"), 3, uniform_distribution(2));
  EXPECT_EQ(r.avoid_count, 7u);
  EXPECT_EQ(r.avoid_mass, Rational(7, 8));
  EXPECT_EQ(r.hit_sum, Rational(3, 8));  // AAC, ACA, CAA
  EXPECT_EQ(r.census.at(0), Rational(1, 2));
  EXPECT_EQ(r.census.at(1), Rational(3, 8));
  EXPECT_EQ(r.typed_hit_sums.at(MutationType{1, 0}), Rational(3, 8));
  EXPECT_EQ(r.typed_hit_sums.count(MutationType{0, 1}) ? r.typed_hit_sums.at(MutationType{0, 1}) : Rational(0), 0);
}

TEST(Enumerate, AgreesWithExactSeries) {
  const LetterDistribution nu{Rational(1, 3), Rational(2, 3)};
  for (const char* b : {"ACC", "AACA"})
    for (std::size_t n : {6, 11}) {
      const EnumerationReport r = enumerate(bw(b), n, nu);
      const ExpectedHits e = expected_hits(bw(b), n, nu);
      EXPECT_EQ(r.avoid_mass, e.avoid);
      EXPECT_EQ(r.hit_sum, e.hits);
    }
}

TEST(Enumerate, Guard) {
  EXPECT_THROW(enumerate(Word::parse(Alphabet::dna(), "ACGTA"), 14, uniform_distribution(4)), std::length_error);
  EXPECT_THROW(enumerate(bw("AAA"), 27, uniform_distribution(2)), std::length_error);
}

TEST(ExactPn, NoMutationMeansNoEmergence) {
  EXPECT_EQ(exact_pn_tiny(bw("ACA"), 6, binary_uniform_params(Rational(0))), 0);
}

TEST(ExactPn, IncreasesWithLength) {
  const ModelParams p = binary_uniform_params(Rational(1, 100));
  Rational last = 0;
  for (std::size_t n = 4; n <= 10; ++n) {
    const Rational x = exact_pn_tiny(bw("AACC"), n, p);
    EXPECT_GT(x, last);
    last = x;
  }
}

TEST(ExactPn, MatchesProductAutomaton) {
  const ModelParams p = load_params("table1");
  const Word b = Word::parse(Alphabet::dna(), "CACA");
  EXPECT_NEAR(to_double(exact_pn_tiny(b, 7, p)), bnn_probability(b, 7, p), 1e-20);
}

TEST(ExactPn, FirstOrderAgreement) {
  // p_n - clump = O((n p)^2) relative
  for (const Rational pm : {Rational(1, 1000), Rational(1, 100000)}) {
    const ModelParams p = binary_uniform_params(pm);
    for (const char* b : {"AAA", "ACAC", "AACC"}) {
      const double exact = to_double(exact_pn_tiny(bw(b), 10, p));
      const double first = clump_probability(bw(b), 10, p);
      const double np = 10 * to_double(pm);
      EXPECT_LE(std::abs(exact - first) / exact, 2 * np) << b;
    }
  }
}

TEST(MonteCarlo, AgreesWithBnn) {
  const ModelParams p = load_params("table1").scaled_mutation(Rational(1000));
  const Word b = Word::parse(Alphabet::dna(), "AAAAA");
  const MonteCarloEstimate mc = monte_carlo_pn(b, 200, p, 200000, 17);
  const double exact = bnn_probability(b, 200, p);
  EXPECT_EQ(mc.trials, 200000u);
  EXPECT_GT(mc.std_error, 0.0);
  EXPECT_LE(std::abs(mc.p - exact), 3 * mc.std_error) << mc.p << " vs " << exact;
}

TEST(MonteCarlo, SeedDeterminism) {
  const ModelParams p = binary_uniform_params(Rational(1, 100));
  const MonteCarloEstimate a = monte_carlo_pn(bw("ACAC"), 30, p, 20000, 5);
  const MonteCarloEstimate b = monte_carlo_pn(bw("ACAC"), 30, p, 20000, 5);
  const MonteCarloEstimate c = monte_carlo_pn(bw("ACAC"), 30, p, 20000, 6);
  EXPECT_EQ(a.p, b.p);
  EXPECT_NE(a.p, c.p);
}

TEST(MonteCarlo, RejectsTooFewTrials) {
  const ModelParams p = binary_uniform_params();
  EXPECT_THROW(monte_carlo_pn(bw("AAA"), 10, p, 0, 1), std::invalid_argument);
  EXPECT_THROW(monte_carlo_pn(bw("AAA"), 10, p, 9999, 1), std::invalid_argument);
}
