#include <gtest/gtest.h>

#include <string>

#include "emergence/languages.hpp"
#include "support/brute.hpp"

using namespace emergence;

namespace {

const Alphabet kBin = Alphabet::binary();
const LetterDistribution kUniform = uniform_distribution(2);
const LetterDistribution kSkewed{Rational(1, 3), Rational(2, 3)};
const RatFun z = RatFun::z();
const RatFun t = RatFun::t();

Word bw(const std::string& s) { return Word::parse(kBin, s); }

RatFun mono(int num, int den, int zd, int td) {
  return RatFun(Poly::monomial(Rational(num, den), zd, td));
}

// Probability that a random length-n word avoids every word in `bad`.
Rational avoid_mass(const std::vector<std::string>& bad, int n, const std::vector<Rational>& nu) {
  Rational s = 0;
  for (const auto& w : brute::all_words("AC", n)) {
    bool ok = true;
    for (const auto& x : bad) ok = ok && w.find(x) == std::string::npos;
    if (ok) s += brute::probability(w, "AC", nu);
  }
  return s;
}

}  // namespace

TEST(RsSolve, SingleWordMatchesAutocorrelationFormula) {
  const auto acc = rs_solve({bw("ACC")}, kUniform);
  EXPECT_EQ(acc.N, RatFun(1) / (1 - z + z * z * z / 8));

  const RatFun c = 1 + z / 2 + z * z / 4;
  const auto aaa = rs_solve({bw("AAA")}, kUniform);
  EXPECT_EQ(aaa.N, c / ((1 - z) * c + z * z * z / 8));
}

TEST(RsSolve, IdentitiesHoldExactly) {
  const std::vector<WordSet> sets = {
      {bw("ACC")}, {bw("AAA")}, {bw("ACAC")}, {bw("AAC"), bw("ACA")}, {bw("AAAC"), bw("CAAA"), bw("ACAC")}};
  for (const auto& nu : {kUniform, kSkewed})
    for (const auto& v : sets) {
      const auto l = rs_solve(v, nu);
      EXPECT_TRUE(parse_identity_holds(l));
      EXPECT_TRUE(ultimate_identity_holds(l));
      EXPECT_TRUE(not_identity_holds(l, nu));
    }
  EXPECT_THROW(rs_solve({bw("AC"), bw("ACA")}, kUniform), std::invalid_argument);
}

TEST(ConstrainedLanguages, ExtendedSetsSatisfyIdentities) {
  for (const char* b : {"AAA", "ACC", "ACAC", "AACC", "AACA"}) {
    const auto c = constrained_languages(bw(b), 2, kUniform);
    EXPECT_EQ(c.restricted.words.size(), bw(b).size());
    EXPECT_TRUE(parse_identity_holds(c.extended)) << b;
    EXPECT_TRUE(not_identity_holds(c.extended, kUniform)) << b;
  }
}

TEST(ConstrainedLanguages, NotLanguageAvoidsWholeSet) {
  const auto c = constrained_languages(bw("AAA"), 2, kUniform);
  const auto coeffs = taylor_coeffs(c.restricted.N, 1, 12);
  for (int n = 0; n <= 12; ++n)
    EXPECT_EQ(coeffs[static_cast<std::size_t>(n)], avoid_mass({"AAC", "ACA", "CAA", "AAA"}, n, kUniform)) << n;
}

TEST(CodeMatrix, SmallExamples) {
  const Alphabet dna = Alphabet::dna();
  auto dw = [&](const char* s) { return Word::parse(dna, s); };

  const auto k1 = code_matrix({bw("AAAA")});
  EXPECT_EQ(k1.codes[0][0], (std::vector<Word>{bw("A")}));

  const auto k2 = code_matrix({dw("TATAT"), dw("CATAT")});
  EXPECT_EQ(k2.codes[1][0], (std::vector<Word>{dw("AT")}));

  const auto k3 = code_matrix({dw("CAA"), dw("AAT"), dw("AAA")});
  EXPECT_EQ(k3.codes[0][1], (std::vector<Word>{dw("T")}));
}

TEST(CodeMatrix, CodewordInvariants) {
  for (const char* b : {"AAA", "ACAC", "AACC", "AACA", "AAAAA"}) {
    const auto k = constrained_code_matrix(bw(b), 2);
    for (std::size_t i = 0; i < k.words.size(); ++i)
      for (std::size_t j = 0; j < k.words.size(); ++j)
        for (const auto& e : k.codes[i][j]) {
          const Word s = k.words[i] + e;
          EXPECT_TRUE(s.ends_with(k.words[j]));
          EXPECT_LT(e.size(), k.words[j].size());
          EXPECT_FALSE(s.contains(bw(b)));
          EXPECT_TRUE(in_minimal_language(k.words, i, e));
        }
  }
}

TEST(MarkedCodes, MatrixForAACC) {
  const Word b = bw("AACC");
  const auto m = marked_code_gf(b, constrained_code_matrix(b, 2), kUniform, std::nullopt);
  const RatFun zt2 = mono(1, 2, 1, 1), z2t4 = mono(1, 4, 2, 1), z3t8 = mono(1, 8, 3, 1);
  const RatFun expected[4][4] = {
      {0, zt2, 0, 0}, {z3t8, z3t8, 0, z2t4}, {0, 0, 0, z3t8}, {0, 0, zt2, z3t8}};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(m(i, j), expected[i][j]) << i << "," << j;
}

TEST(MarkedCodes, ACACMatrixWithCorrectedUnmarkedTerms) {
  // The unmarked extension AC has probability 1/4; the display prints z^2/2.
  const Word b = bw("ACAC");
  const auto k = constrained_code_matrix(b, 2);
  const auto m = marked_code_gf(b, k, kUniform, std::nullopt);
  const RatFun z2t4 = mono(1, 4, 2, 1), z3t8 = mono(1, 8, 3, 1), z2 = mono(1, 4, 2, 0);
  const RatFun expected[4][4] = {{0, z2t4, z2t4, z3t8},
                                 {z3t8 + z2, z3t8, z3t8, 0},
                                 {0, 0, 0, z3t8 + z2},
                                 {0, z2t4, z2t4, z3t8}};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(m(i, j), expected[i][j]) << i << "," << j;
  // AC in K(ACAA, AAAC) and K(ACCC, CCAC) carries no new mark
  EXPECT_EQ(k.codes[1][0].front().str(kBin), "AC");
  EXPECT_EQ(hit_count(bw("ACAAAC"), b, std::nullopt), hit_count(bw("ACAA"), b, std::nullopt));
  EXPECT_EQ(k.codes[2][3].front().str(kBin), "AC");
  EXPECT_EQ(hit_count(bw("ACCCAC"), b, std::nullopt), hit_count(bw("ACCC"), b, std::nullopt));
  EXPECT_EQ(m.at_t(1), code_gf(k, kUniform));
}

TEST(ClumpGf, AAAAvoidanceAndHits) {
  const RatFun f = clump_gf_language(bw("AAA"), 2, kUniform);
  const auto avoid = taylor_coeffs(f, 1, 20);
  // tribonacci counts
  std::vector<long> a{1, 2, 4};
  for (int n = 3; n <= 20; ++n) a.push_back(a[n - 1] + a[n - 2] + a[n - 3]);
  for (int n = 0; n <= 20; ++n) EXPECT_EQ(avoid[static_cast<std::size_t>(n)], Rational(a[static_cast<std::size_t>(n)]) / (1L << n));
  const auto hits = taylor_coeffs(dt_at_one(f), 1, 3);
  EXPECT_EQ(hits[3], Rational(3, 8));
  EXPECT_EQ(hits[3] / avoid[3], Rational(3, 7));
}

TEST(ClumpGf, CensusMatchesEnumeration) {
  for (const char* b : {"AAA", "ACC", "ACAC", "AACC", "AACA"})
    for (const auto& nu : {kUniform, kSkewed}) {
      const auto coeffs = bivariate_coeffs(clump_gf_language(bw(b), 2, nu), 12);
      for (int n = 0; n <= 12; ++n) {
        const auto cen = brute::census(b, n, "AC", nu);
        const UniPoly& c = coeffs[static_cast<std::size_t>(n)];
        for (int m = 0; m <= c.degree(); ++m) {
          const auto it = cen.find(m);
          EXPECT_EQ(c.coeff(static_cast<std::size_t>(m)), it == cen.end() ? Rational(0) : it->second)
              << b << " n=" << n << " m=" << m;
        }
        for (const auto& [m, mass] : cen) EXPECT_EQ(c.coeff(static_cast<std::size_t>(m)), mass);
      }
    }
}

TEST(ClumpGf, TypedRunsSplitTheUntypedCount) {
  const Word b = bw("ACAC");
  const RatFun all = dt_at_one(clump_gf_language(b, 2, kUniform));
  RatFun sum;
  for (const auto& ty : mutation_types(2)) sum += dt_at_one(clump_gf_language(b, 2, kUniform, ty));
  EXPECT_EQ(all, sum);
  const auto ac = bivariate_coeffs(clump_gf_language(b, 2, kUniform, MutationType{0, 1}), 10);
  const auto cen = brute::census("ACAC", 10, "AC", kUniform, 'A', 'C');
  for (const auto& [m, mass] : cen) EXPECT_EQ(ac[10].coeff(static_cast<std::size_t>(m)), mass);
}

TEST(ClumpGf, PairwiseMarkingOvercountsForAACA) {
  // AACCACA: occurrences of d(AACA) at 0, 1 and 3 share a hit position
  const Word b = bw("AACA");
  EXPECT_EQ(hit_count(bw("AACCACA"), b, std::nullopt), 2u);
  const auto exact = bivariate_coeffs(clump_gf_language(b, 2, kUniform), 7);
  const auto pairwise = bivariate_coeffs(clump_gf_language(b, 2, kUniform, std::nullopt, MarkRule::Pairwise), 7);
  EXPECT_NE(exact[7], pairwise[7]);
  for (int n = 0; n <= 6; ++n) EXPECT_EQ(exact[static_cast<std::size_t>(n)], pairwise[static_cast<std::size_t>(n)]);
  // where the pairwise rule is exact the two constructions coincide
  EXPECT_EQ(clump_gf_language(bw("AACC"), 2, kUniform),
            clump_gf_language(bw("AACC"), 2, kUniform, std::nullopt, MarkRule::Pairwise));
}

TEST(ClumpGf, ProbabilitiesAreNonincreasing) {
  const auto f = taylor_coeffs(clump_gf_language(bw("ACAC"), 2, kSkewed), 1, 25);
  for (std::size_t n = 1; n < f.size(); ++n) {
    EXPECT_LE(f[n], f[n - 1]);
    EXPECT_GE(f[n], 0);
    EXPECT_LE(f[n], 1);
  }
}
