#include <gtest/gtest.h>

#include <string>

#include "emergence/words.hpp"
#include "support/brute.hpp"

using namespace emergence;

namespace {

const Alphabet kBin = Alphabet::binary();
const Alphabet kDna = Alphabet::dna();

Word bw(const char* s) { return Word::parse(kBin, s); }
Word dw(const char* s) { return Word::parse(kDna, s); }

std::vector<std::string> render(const std::vector<Word>& ws, const Alphabet& a) {
  std::vector<std::string> out;
  for (const auto& w : ws) out.push_back(w.str(a));
  return out;
}

}  // namespace

TEST(Alphabet, Validation) {
  EXPECT_THROW(Alphabet("A"), std::invalid_argument);
  EXPECT_THROW(Alphabet("AA"), std::invalid_argument);
  EXPECT_EQ(kDna.index('G'), 2);
  EXPECT_THROW(Word::parse(kBin, "AGA"), std::invalid_argument);
  EXPECT_EQ(dw("GATTACA").str(kDna), "GATTACA");
}

TEST(Words, CountOccurrences) {
  EXPECT_EQ(count_occurrences(bw("AAAA"), bw("AA")), 3u);
  EXPECT_EQ(count_occurrences(bw("CCCAACAC"), bw("ACC")), 0u);
  EXPECT_EQ(count_occurrences(bw("AC"), bw("ACC")), 0u);
}

TEST(Words, CountOccurrencesMatchesScan) {
  for (int n = 0; n <= 8; ++n)
    for (const auto& s : brute::all_words("AC", n)) {
      std::size_t naive = 0;
      for (std::size_t i = 0; i + 2 <= s.size(); ++i) naive += s.compare(i, 2, "CA") == 0;
      EXPECT_EQ(count_occurrences(Word::parse(kBin, s), bw("CA")), naive);
    }
}

TEST(Words, CorrelationSets) {
  using V = std::vector<std::string>;
  EXPECT_EQ(render(correlation_set(dw("CATAT"), dw("TATAT")), kDna), (V{"AT", "ATAT"}));
  EXPECT_EQ(render(correlation_set(dw("CAA"), dw("AAT")), kDna), (V{"T", "AT"}));
  EXPECT_EQ(render(correlation_set(bw("AAAA"), bw("AAAA")), kBin), (V{"", "A", "AA", "AAA"}));
  EXPECT_EQ(render(correlation_set(bw("ACC"), bw("ACC")), kBin), (V{""}));
}

TEST(Words, CorrelationSetProperties) {
  for (const auto& s : brute::all_words("AC", 5)) {
    const Word v = Word::parse(kBin, s);
    const auto c = correlation_set(v, v);
    ASSERT_FALSE(c.empty());
    EXPECT_TRUE(c.front().empty());
    for (const auto& e : c) {
      EXPECT_LT(e.size(), v.size());
      EXPECT_TRUE((v + e).ends_with(v));
    }
  }
}

TEST(Words, Neighbors) {
  using V = std::vector<std::string>;
  EXPECT_EQ(render(neighbors(bw("ACC"), 2), kBin), (V{"AAC", "ACA", "CCC"}));
  EXPECT_EQ(render(neighbors(bw("AAA"), 2), kBin), (V{"AAC", "ACA", "CAA"}));
  const auto d = neighbors(dw("AAAAA"), 4);
  EXPECT_EQ(d.size(), 15u);
  EXPECT_TRUE(is_reduced(d));
  for (const auto& w : d) EXPECT_NE(w, dw("AAAAA"));
  EXPECT_THROW(neighbors(dw("A"), 4), std::invalid_argument);
}

TEST(Words, MinimalPeriod) {
  EXPECT_EQ(minimal_period(dw("AAAAA")), 1u);
  EXPECT_EQ(minimal_period(dw("CTCTCTCTCT")), 2u);
  EXPECT_EQ(minimal_period(dw("AACCC")), 5u);
  // naive O(k^2) cross-check
  for (const auto& s : brute::all_words("AC", 7)) {
    std::size_t naive = s.size();
    for (std::size_t p = 1; p < s.size(); ++p)
      if (s.substr(p) == s.substr(0, s.size() - p)) {
        naive = p;
        break;
      }
    EXPECT_EQ(minimal_period(Word::parse(kBin, s)), naive) << s;
  }
}

TEST(Words, PutativeHitsExamples) {
  // position 7 also qualifies: CCCAACAC -> CCCAACCC
  EXPECT_EQ(putative_hit_positions(bw("CCCAACAC"), bw("ACC")), (std::vector<std::size_t>{1, 5, 7}));
  EXPECT_EQ(brute::hits("CCCAACAC", "ACC", "AC", false).size(), 3u);
  EXPECT_EQ(putative_hits(bw("AAC"), bw("AAA")), (std::vector<PutativeHit>{{3, 0}}));
  EXPECT_THROW(putative_hits(bw("AAAC"), bw("AAA")), std::invalid_argument);

  const Alphabet acg("ACG");
  const auto typed = putative_hits(Word::parse(acg, "AGC"), Word::parse(acg, "AC"));
  EXPECT_EQ(typed, (std::vector<PutativeHit>{{2, 0}, {2, 1}}));
  EXPECT_EQ(putative_hit_positions(Word::parse(acg, "AGC"), Word::parse(acg, "AC")).size(), 1u);
}

TEST(Words, ClumpOccurrencesExceedHitPositions) {
  // CAA AAC ACA repeating: many occurrences of d(AAA), few hit positions
  const Word clump = bw("CAACAACAAC");
  std::size_t occ = 0;
  for (const auto& v : neighbors(bw("AAA"), 2)) occ += count_occurrences(clump, v);
  EXPECT_EQ(occ, 8u);
  EXPECT_EQ(putative_hit_positions(clump, bw("AAA")).size(), 4u);
}

TEST(Words, PutativeHitsExhaustive) {
  const std::string alpha = "ACG";
  const Alphabet a(alpha);
  for (const std::string b : {"AC", "AAC", "ACA"})
    for (int n = 0; n <= 7; ++n)
      for (const auto& s : brute::all_words(alpha, n)) {
        if (s.find(b) != std::string::npos) continue;
        const auto expected = brute::hits(s, b, alpha, true);
        const auto got = putative_hits(Word::parse(a, s), Word::parse(a, b));
        ASSERT_EQ(got.size(), expected.size()) << s;
        for (const auto& h : got) EXPECT_TRUE(expected.count({static_cast<int>(h.position) - 1, alpha[static_cast<std::size_t>(h.target)]}));
        EXPECT_GE(got.size(), putative_hit_positions(Word::parse(a, s), Word::parse(a, b)).size());
      }
}

TEST(Words, TypedEqualsUntypedOnBinary) {
  for (int n = 0; n <= 9; ++n)
    for (const auto& s : brute::all_words("AC", n)) {
      if (s.find("ACA") != std::string::npos) continue;
      const Word w = Word::parse(kBin, s);
      EXPECT_EQ(putative_hits(w, bw("ACA")).size(), putative_hit_positions(w, bw("ACA")).size());
    }
}

TEST(Words, HitKeysFilter) {
  // AAC vs b=AAA: position 2 (C->A)
  EXPECT_EQ(hit_count(bw("AAC"), bw("AAA"), MutationType{1, 0}), 1u);
  EXPECT_EQ(hit_count(bw("AAC"), bw("AAA"), MutationType{0, 1}), 0u);
  EXPECT_EQ(hit_count(bw("AAC"), bw("AAA"), std::nullopt), 1u);
  EXPECT_EQ(mutation_types(4).size(), 12u);
}
