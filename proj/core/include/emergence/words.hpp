#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace emergence {

/// Ordered set of distinct symbols; the order fixes lexicographic order.
class Alphabet {
 public:
  /// Throws std::invalid_argument on repeated symbols or fewer than two.
  explicit Alphabet(std::string symbols);
  static Alphabet dna() { return Alphabet("ACGT"); }
  static Alphabet binary() { return Alphabet("AC"); }

  std::size_t size() const { return symbols_.size(); }
  char symbol(std::size_t i) const { return symbols_[i]; }
  /// Index of a symbol; throws std::invalid_argument if unknown.
  int index(char c) const;
  bool contains(char c) const { return symbols_.find(c) != std::string::npos; }
  const std::string& symbols() const { return symbols_; }
  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::string symbols_;
};

/// Word over an alphabet, stored as letter indices (byte i is the index of
/// letter i). Comparison is lexicographic in alphabet order.
class Word {
 public:
  Word() = default;
  explicit Word(std::string indices) : s_(std::move(indices)) {}
  static Word parse(const Alphabet& a, std::string_view text);

  std::string str(const Alphabet& a) const;
  std::size_t size() const { return s_.size(); }
  bool empty() const { return s_.empty(); }
  int operator[](std::size_t i) const { return static_cast<unsigned char>(s_[i]); }
  Word substr(std::size_t pos, std::size_t len = std::string::npos) const { return Word(s_.substr(pos, len)); }
  Word with(std::size_t i, int letter) const;
  bool ends_with(const Word& w) const { return s_.ends_with(w.s_); }
  bool starts_with(const Word& w) const { return s_.starts_with(w.s_); }
  bool contains(const Word& w) const { return s_.find(w.s_) != std::string::npos; }
  const std::string& indices() const { return s_; }

  Word& operator+=(const Word& o) {
    s_ += o.s_;
    return *this;
  }
  Word& push_back(int letter) {
    s_.push_back(static_cast<char>(letter));
    return *this;
  }
  friend Word operator+(Word a, const Word& b) { return a += b; }
  friend bool operator==(const Word&, const Word&) = default;
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
    return std::lexicographical_compare_three_way(a.s_.begin(), a.s_.end(), b.s_.begin(), b.s_.end(),
                                                  [](char x, char y) {
                                                    return static_cast<unsigned char>(x) <=>
                                                           static_cast<unsigned char>(y);
                                                  });
  }

 private:
  std::string s_;
};

using WordSet = std::vector<Word>;

/// True when no member is a factor of another member.
bool is_reduced(const WordSet& v);

/// Number of (possibly overlapping) occurrences of u in w.
std::size_t count_occurrences(const Word& w, const Word& u);

/// C_{v1,v2}: words e with |e| < |v2| such that v1.e = e'.v2 for a nonempty e';
/// contains the empty word exactly when v1 == v2. Sorted by length.
std::vector<Word> correlation_set(const Word& v1, const Word& v2);

/// d_l(b): all single-substitution neighbours of b in lexicographic order.
/// Throws std::invalid_argument when |b| < 2.
WordSet neighbors(const Word& b, std::size_t sigma);

/// Smallest i such that b is a prefix of (b[0..i))^infinity.
std::size_t minimal_period(const Word& b);

/// Ordered letter pair (from -> to) selecting one mutation type.
struct MutationType {
  int from = 0;
  int to = 0;
  friend bool operator==(const MutationType&, const MutationType&) = default;
  friend auto operator<=>(const MutationType&, const MutationType&) = default;
};
/// nullopt marks every putative hit (untyped positions).
using MutationFilter = std::optional<MutationType>;

/// All sigma*(sigma-1) ordered mutation types, lexicographic.
std::vector<MutationType> mutation_types(std::size_t sigma);

/// (position, target letter) with a 1-indexed position.
struct PutativeHit {
  std::size_t position = 0;
  int target = 0;
  friend bool operator==(const PutativeHit&, const PutativeHit&) = default;
  friend auto operator<=>(const PutativeHit&, const PutativeHit&) = default;
};

/// Every (i, beta) with beta != w[i] such that w[i] := beta creates b.
/// Throws std::invalid_argument when w already contains b.
std::vector<PutativeHit> putative_hits(const Word& w, const Word& b);

/// Distinct positions of putative_hits (the untyped count).
std::vector<std::size_t> putative_hit_positions(const Word& w, const Word& b);

/// Hit keys as 0-indexed (position, target) pairs, restricted by a filter.
/// Untyped keys carry target -1 so that a position counts once. Does not
/// require w to avoid b (windows equal to b contribute nothing).
std::set<std::pair<std::size_t, int>> hit_keys(const Word& w, const Word& b, const MutationFilter& filter);

/// |hit_keys(w, b, filter)|.
std::size_t hit_count(const Word& w, const Word& b, const MutationFilter& filter);

}  // namespace emergence
