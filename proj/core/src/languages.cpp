#include "emergence/languages.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace emergence {

LetterDistribution uniform_distribution(std::size_t sigma) {
  return LetterDistribution(sigma, Rational(1, static_cast<unsigned long>(sigma)));
}

Rational word_probability(const Word& w, const LetterDistribution& nu) {
  Rational p = 1;
  for (std::size_t i = 0; i < w.size(); ++i) p *= nu.at(static_cast<std::size_t>(w[i]));
  return p;
}

RatFun word_gf(const Word& w, const LetterDistribution& nu, int t_degree) {
  return RatFun(Poly::monomial(word_probability(w, nu), static_cast<int>(w.size()), t_degree));
}

namespace {

const RatFun kZ = RatFun::z();

RatFun correlation_gf(const Word& a, const Word& b, const LetterDistribution& nu) {
  RatFun s;
  for (const auto& e : correlation_set(a, b)) s += word_gf(e, nu);
  return s;
}

}  // namespace

LanguageGFs rs_solve(const WordSet& v, const LetterDistribution& nu) {
  if (v.empty() || !is_reduced(v)) throw std::invalid_argument("rs_solve needs a nonempty reduced word set");
  const std::size_t r = v.size();
  const RatFun inv1z = RatFun(1) / (1 - kZ);

  // sum_{k>=1} M^k = A* v_j + C_ij - delta_ij, so (I - M)^{-1} = A* v_j + C_ij
  RFMatrix iw(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) iw(i, j) = word_gf(v[j], nu) * inv1z + correlation_gf(v[i], v[j], nu);
  LanguageGFs out;
  out.words = v;
  out.M = RFMatrix::identity(r) - inverse(iw);

  out.U.resize(r);
  for (std::size_t i = 0; i < r; ++i) {
    RatFun s = 1;
    for (std::size_t j = 0; j < r; ++j) s -= out.M(i, j);
    out.U[i] = s * inv1z;
  }
  out.R.resize(r);
  for (std::size_t j = 0; j < r; ++j) {
    RatFun s = word_gf(v[j], nu);
    for (std::size_t i = 0; i < r; ++i) s -= word_gf(v[i], nu) * out.M(i, j);
    out.R[j] = s * inv1z;
  }
  RatFun nv;
  for (std::size_t i = 0; i < r; ++i) nv += out.R[i] * correlation_gf(v[i], v[0], nu);
  out.N = nv / word_gf(v[0], nu);
  return out;
}

bool parse_identity_holds(const LanguageGFs& l) {
  const std::size_t r = l.words.size();
  RFMatrix u(r, 1);
  for (std::size_t i = 0; i < r; ++i) u(i, 0) = l.U[i];
  const RFMatrix x = solve(RFMatrix::identity(r) - l.M, u);
  RatFun total = l.N;
  for (std::size_t i = 0; i < r; ++i) total += l.R[i] * x(i, 0);
  return total == RatFun(1) / (1 - kZ);
}

bool ultimate_identity_holds(const LanguageGFs& l) {
  const std::size_t r = l.words.size();
  for (std::size_t i = 0; i < r; ++i) {
    RatFun rhs = l.U[i] - 1;
    for (std::size_t j = 0; j < r; ++j) rhs += l.M(i, j);
    if (!(kZ * l.U[i] == rhs)) return false;
  }
  return true;
}

bool not_identity_holds(const LanguageGFs& l, const LetterDistribution& nu) {
  const std::size_t r = l.words.size();
  for (std::size_t j = 0; j < r; ++j) {
    RatFun rhs = l.R[j];
    for (std::size_t i = 0; i < r; ++i) {
      RatFun c = correlation_gf(l.words[i], l.words[j], nu);
      if (i == j) c -= 1;
      rhs += l.R[i] * c;
    }
    if (!(l.N * word_gf(l.words[j], nu) == rhs)) return false;
  }
  return true;
}

ConstrainedLanguages constrained_languages(const Word& b, std::size_t sigma, const LetterDistribution& nu) {
  WordSet v = neighbors(b, sigma);
  const std::size_t r = v.size();
  v.push_back(b);
  ConstrainedLanguages out;
  out.extended = rs_solve(v, nu);
  LanguageGFs& res = out.restricted;
  res.words.assign(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(r));
  res.N = out.extended.N;
  res.R.assign(out.extended.R.begin(), out.extended.R.begin() + static_cast<std::ptrdiff_t>(r));
  res.U.assign(out.extended.U.begin(), out.extended.U.begin() + static_cast<std::ptrdiff_t>(r));
  res.M = RFMatrix(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) res.M(i, j) = out.extended.M(i, j);
  return out;
}

bool in_minimal_language(const WordSet& v, std::size_t i, const Word& e) {
  const Word s = v[i] + e;
  for (const auto& u : v) {
    if (u.size() + 1 > s.size()) continue;
    for (std::size_t p = 1; p + u.size() <= s.size() - 1; ++p)
      if (s.indices().compare(p, u.size(), u.indices()) == 0) return false;
  }
  return true;
}

CodeMatrix code_matrix(const WordSet& v) {
  if (!is_reduced(v)) throw std::invalid_argument("code matrix needs a reduced word set");
  const std::size_t r = v.size();
  CodeMatrix out;
  out.words = v;
  out.codes.assign(r, std::vector<std::vector<Word>>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      std::vector<Word> bset;
      for (const auto& e : correlation_set(v[i], v[j]))
        if (!e.empty() && in_minimal_language(v, i, e)) bset.push_back(e);
      std::vector<Word>& k = out.codes[i][j];
      for (const auto& e : bset) {
        const bool has_prefix = std::any_of(bset.begin(), bset.end(), [&](const Word& f) {
          return f.size() < e.size() && e.starts_with(f);
        });
        if (!has_prefix) k.push_back(e);
      }
      std::sort(k.begin(), k.end(), [](const Word& a, const Word& c) {
        return a.size() != c.size() ? a.size() < c.size() : a < c;
      });
    }
  return out;
}

CodeMatrix constrained_code_matrix(const Word& b, std::size_t sigma) {
  CodeMatrix k = code_matrix(neighbors(b, sigma));
  for (std::size_t i = 0; i < k.words.size(); ++i)
    for (std::size_t j = 0; j < k.words.size(); ++j) {
      auto& c = k.codes[i][j];
      c.erase(std::remove_if(c.begin(), c.end(), [&](const Word& h) { return (k.words[i] + h).contains(b); }),
              c.end());
    }
  return k;
}

RFMatrix marked_code_gf(const Word& b, const CodeMatrix& k, const LetterDistribution& nu,
                        const MutationFilter& filter) {
  const std::size_t r = k.words.size();
  RFMatrix m(r, r);
  for (std::size_t i = 0; i < r; ++i) {
    const std::size_t base = hit_count(k.words[i], b, filter);
    for (std::size_t j = 0; j < r; ++j)
      for (const auto& h : k.codes[i][j]) {
        const std::size_t inc = hit_count(k.words[i] + h, b, filter) - base;
        m(i, j) += word_gf(h, nu, static_cast<int>(inc));
      }
  }
  return m;
}

RFMatrix code_gf(const CodeMatrix& k, const LetterDistribution& nu) {
  const std::size_t r = k.words.size();
  RFMatrix m(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (const auto& h : k.codes[i][j]) m(i, j) += word_gf(h, nu);
  return m;
}

namespace {

using KeySet = std::set<std::pair<std::size_t, int>>;

// G_ij = v_i(z,t) * sum over end contexts of (I - K~)^{-1}, where K~ is the
// code matrix refined by the keys already counted in the last window.
RFMatrix context_clump_matrix(const Word& b, const CodeMatrix& k, const LetterDistribution& nu,
                              const MutationFilter& filter) {
  const std::size_t r = k.words.size();
  const std::size_t len = b.size();
  std::vector<KeySet> own(r);
  for (std::size_t i = 0; i < r; ++i) own[i] = hit_keys(k.words[i], b, filter);

  std::map<std::pair<std::size_t, KeySet>, std::size_t> index;
  std::vector<std::pair<std::size_t, KeySet>> contexts;
  auto intern = [&](std::size_t j, const KeySet& s) {
    auto [it, fresh] = index.try_emplace({j, s}, contexts.size());
    if (fresh) contexts.emplace_back(j, s);
    return it->second;
  };
  std::vector<std::size_t> start(r);
  for (std::size_t i = 0; i < r; ++i) start[i] = intern(i, own[i]);

  struct Edge {
    std::size_t from, to;
    RatFun gf;
  };
  std::vector<Edge> edges;
  for (std::size_t q = 0; q < contexts.size(); ++q) {
    const auto [i, keys] = contexts[q];
    for (std::size_t j = 0; j < r; ++j)
      for (const auto& h : k.codes[i][j]) {
        KeySet shifted;
        for (const auto& [off, target] : keys)
          if (off >= h.size() && off - h.size() < len) shifted.insert({off - h.size(), target});
        int inc = 0;
        for (const auto& key : own[j])
          if (shifted.insert(key).second) ++inc;
        const std::size_t to = intern(j, shifted);
        edges.push_back({q, to, word_gf(h, nu, inc)});
      }
  }
  const std::size_t m = contexts.size();
  RFMatrix ik = RFMatrix::identity(m);
  for (const auto& e : edges) ik(e.from, e.to) -= e.gf;
  // rows of (I - K~)^{-1} at the start contexts, summed by end occurrence
  const RFMatrix s = inverse(ik);
  RFMatrix g(r, r);
  for (std::size_t i = 0; i < r; ++i) {
    const RatFun vi = word_gf(k.words[i], nu, static_cast<int>(own[i].size()));
    for (std::size_t c = 0; c < m; ++c)
      if (!s(start[i], c).is_zero()) g(i, contexts[c].first) += vi * s(start[i], c);
  }
  return g;
}

RFMatrix pairwise_clump_matrix(const Word& b, const CodeMatrix& k, const LetterDistribution& nu,
                               const MutationFilter& filter) {
  const std::size_t r = k.words.size();
  const RFMatrix s = inverse(RFMatrix::identity(r) - marked_code_gf(b, k, nu, filter));
  RFMatrix g(r, r);
  for (std::size_t i = 0; i < r; ++i) {
    const RatFun vi = word_gf(k.words[i], nu, static_cast<int>(hit_count(k.words[i], b, filter)));
    for (std::size_t j = 0; j < r; ++j) g(i, j) = vi * s(i, j);
  }
  return g;
}

}  // namespace

RatFun clump_gf_language(const Word& b, std::size_t sigma, const LetterDistribution& nu,
                         const MutationFilter& filter, MarkRule rule) {
  const ConstrainedLanguages lang = constrained_languages(b, sigma, nu);
  const LanguageGFs& l = lang.restricted;
  const CodeMatrix k = constrained_code_matrix(b, sigma);
  const std::size_t r = l.words.size();

  const RFMatrix g = rule == MarkRule::Context ? context_clump_matrix(b, k, nu, filter)
                                               : pairwise_clump_matrix(b, k, nu, filter);

  // gap between clumps: minimal-language words from v_i to v_j that do not
  // extend the clump, with the trailing v_j removed
  const RFMatrix k1 = code_gf(k, nu);
  RFMatrix gap(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) gap(i, j) = (l.M(i, j) - k1(i, j)) / word_gf(l.words[j], nu);

  RFMatrix u(r, 1);
  for (std::size_t i = 0; i < r; ++i) u(i, 0) = l.U[i];
  const RFMatrix tail = g * solve(RFMatrix::identity(r) - gap * g, u);
  RatFun f = l.N;
  for (std::size_t i = 0; i < r; ++i) f += l.R[i] / word_gf(l.words[i], nu) * tail(i, 0);
  return f;
}

}  // namespace emergence
