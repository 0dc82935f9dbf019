#include "emergence/words.hpp"

#include <algorithm>
#include <stdexcept>

namespace emergence {

Alphabet::Alphabet(std::string symbols) : symbols_(std::move(symbols)) {
  if (symbols_.size() < 2) throw std::invalid_argument("alphabet needs at least two symbols");
  std::string sorted = symbols_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("alphabet symbols must be distinct");
}

int Alphabet::index(char c) const {
  const auto pos = symbols_.find(c);
  if (pos == std::string::npos) throw std::invalid_argument(std::string("unknown symbol '") + c + "'");
  return static_cast<int>(pos);
}

Word Word::parse(const Alphabet& a, std::string_view text) {
  std::string s;
  s.reserve(text.size());
  for (char c : text) s.push_back(static_cast<char>(a.index(c)));
  return Word(std::move(s));
}

std::string Word::str(const Alphabet& a) const {
  std::string out;
  out.reserve(s_.size());
  for (std::size_t i = 0; i < s_.size(); ++i) out.push_back(a.symbol(static_cast<std::size_t>((*this)[i])));
  return out;
}

Word Word::with(std::size_t i, int letter) const {
  Word w = *this;
  w.s_[i] = static_cast<char>(letter);
  return w;
}

bool is_reduced(const WordSet& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j)
      if (i != j && v[j].contains(v[i])) return false;
  return true;
}

std::size_t count_occurrences(const Word& w, const Word& u) {
  if (u.size() > w.size()) return 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i + u.size() <= w.size(); ++i)
    if (w.indices().compare(i, u.size(), u.indices()) == 0) ++n;
  return n;
}

std::vector<Word> correlation_set(const Word& v1, const Word& v2) {
  std::vector<Word> out;
  if (v1 == v2) out.emplace_back();
  // overlap length L: suffix of v1 equals prefix of v2, leaving e = v2[L..)
  for (std::size_t len = v2.size() - 1; len >= 1; --len) {
    if (len >= v1.size()) continue;
    if (v1.indices().compare(v1.size() - len, len, v2.indices(), 0, len) == 0) out.push_back(v2.substr(len));
  }
  return out;
}

WordSet neighbors(const Word& b, std::size_t sigma) {
  if (b.size() < 2) throw std::invalid_argument("neighbour sets need |b| >= 2");
  WordSet out;
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t a = 0; a < sigma; ++a)
      if (static_cast<int>(a) != b[i]) out.push_back(b.with(i, static_cast<int>(a)));
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t minimal_period(const Word& b) {
  for (std::size_t p = 1; p < b.size(); ++p) {
    bool ok = true;
    for (std::size_t i = p; i < b.size() && ok; ++i) ok = b[i] == b[i - p];
    if (ok) return p;
  }
  return b.size();
}

std::vector<MutationType> mutation_types(std::size_t sigma) {
  std::vector<MutationType> out;
  for (std::size_t a = 0; a < sigma; ++a)
    for (std::size_t c = 0; c < sigma; ++c)
      if (a != c) out.push_back({static_cast<int>(a), static_cast<int>(c)});
  return out;
}

namespace {

// Calls f(pos, target) for every window with exactly one mismatch against b.
template <class F>
bool for_each_hit(const Word& w, const Word& b, F&& f) {
  const std::size_t k = b.size();
  bool contains_b = false;
  for (std::size_t s = 0; s + k <= w.size(); ++s) {
    std::size_t mismatches = 0, at = 0;
    for (std::size_t j = 0; j < k && mismatches < 2; ++j)
      if (w[s + j] != b[j]) {
        ++mismatches;
        at = j;
      }
    if (mismatches == 0) contains_b = true;
    if (mismatches == 1) f(s + at, b[at]);
  }
  return contains_b;
}

}  // namespace

std::vector<PutativeHit> putative_hits(const Word& w, const Word& b) {
  std::set<PutativeHit> hits;
  if (for_each_hit(w, b, [&](std::size_t pos, int target) { hits.insert({pos + 1, target}); }))
    throw std::invalid_argument("word contains the target k-mer");
  return {hits.begin(), hits.end()};
}

std::vector<std::size_t> putative_hit_positions(const Word& w, const Word& b) {
  std::vector<std::size_t> out;
  for (const auto& h : putative_hits(w, b))
    if (out.empty() || out.back() != h.position) out.push_back(h.position);
  return out;
}

std::set<std::pair<std::size_t, int>> hit_keys(const Word& w, const Word& b, const MutationFilter& filter) {
  std::set<std::pair<std::size_t, int>> keys;
  for_each_hit(w, b, [&](std::size_t pos, int target) {
    if (!filter) {
      keys.insert({pos, -1});
    } else if (w[pos] == filter->from && target == filter->to) {
      keys.insert({pos, target});
    }
  });
  return keys;
}

std::size_t hit_count(const Word& w, const Word& b, const MutationFilter& filter) {
  return hit_keys(w, b, filter).size();
}

}  // namespace emergence
