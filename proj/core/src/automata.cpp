#include "emergence/automata.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <type_traits>
#include <unordered_map>
#include <unordered_set>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace emergence {

int Dfa::run(const Word& w, int from) const {
  int q = from;
  for (std::size_t i = 0; i < w.size() && q != kPruned; ++i) q = delta[static_cast<std::size_t>(q)][static_cast<std::size_t>(w[i])];
  return q;
}

bool Dfa::accepts(const Word& w) const {
  const int q = run(w);
  return q != kPruned && finals[static_cast<std::size_t>(q)];
}

bool Dfa::is_complete() const {
  for (const auto& row : delta)
    if (std::find(row.begin(), row.end(), kPruned) != row.end()) return false;
  return true;
}

Dfa kmp_automaton(const Word& b, std::size_t sigma) {
  if (b.empty()) throw std::invalid_argument("kmp_automaton needs a nonempty word");
  const std::size_t k = b.size();
  Dfa a;
  a.sigma = sigma;
  a.delta.assign(k + 1, std::vector<int>(sigma));
  a.finals.assign(k + 1, false);
  a.finals[k] = true;
  for (std::size_t q = 0; q <= k; ++q) {
    a.names.push_back(std::to_string(q));
    for (std::size_t c = 0; c < sigma; ++c) {
      if (q == k) {
        a.delta[q][c] = static_cast<int>(k);
        continue;
      }
      Word s = b.substr(0, q);
      s.push_back(static_cast<int>(c));
      while (!b.starts_with(s)) s = s.substr(1);
      a.delta[q][c] = static_cast<int>(s.size());
    }
  }
  return a;
}

Dfa complement(const Dfa& a) {
  Dfa c = a;
  c.finals.flip();
  return c;
}

ProductDfa product(const Dfa& a1, const Dfa& a2, const std::function<bool(bool, bool)>& final_rule, bool paired) {
  if (!paired && a1.sigma != a2.sigma) throw std::invalid_argument("product of automata over different alphabets");
  ProductDfa p;
  p.dfa.sigma = paired ? a1.sigma * a2.sigma : a1.sigma;
  std::map<std::pair<int, int>, int> index;
  auto intern = [&](std::pair<int, int> s) {
    auto [it, fresh] = index.try_emplace(s, static_cast<int>(p.pairs.size()));
    if (fresh) {
      p.pairs.push_back(s);
      p.dfa.delta.emplace_back(p.dfa.sigma, Dfa::kPruned);
      p.dfa.finals.push_back(final_rule(a1.finals[static_cast<std::size_t>(s.first)], a2.finals[static_cast<std::size_t>(s.second)]));
      p.dfa.names.push_back("(" + std::to_string(s.first) + "," + std::to_string(s.second) + ")");
    }
    return it->second;
  };
  p.dfa.initial = intern({a1.initial, a2.initial});
  for (std::size_t i = 0; i < p.pairs.size(); ++i) {
    const auto [q1, q2] = p.pairs[i];
    for (std::size_t c = 0; c < p.dfa.sigma; ++c) {
      const std::size_t c1 = paired ? c / a2.sigma : c, c2 = paired ? c % a2.sigma : c;
      const int n1 = a1.delta[static_cast<std::size_t>(q1)][c1], n2 = a2.delta[static_cast<std::size_t>(q2)][c2];
      if (n1 == Dfa::kPruned || n2 == Dfa::kPruned) continue;
      const int target = intern({n1, n2});
      p.dfa.delta[i][c] = target;
    }
  }
  return p;
}

int ClumpAutomaton::mark(int state, int letter, const MutationFilter& filter) const {
  const auto s = static_cast<std::size_t>(state), c = static_cast<std::size_t>(letter);
  if (!filter) return new_positions[s][c];
  return static_cast<int>(std::count(new_hits[s][c].begin(), new_hits[s][c].end(), *filter));
}

namespace {

// Backward search for the unique maximal word entering o without crossing
// another occurrence state.
Word theta_of(const ClumpAutomaton& ca, int o, const std::vector<std::vector<std::pair<int, int>>>& rev) {
  std::set<std::pair<int, std::string>> level{{o, std::string()}};
  Word best;
  for (std::size_t len = 1; len <= ca.b.size(); ++len) {
    std::set<std::pair<int, std::string>> next;
    for (const auto& [q, w] : level) {
      if (len > 1 && ca.occurrence[static_cast<std::size_t>(q)]) continue;
      for (const auto& [p, a] : rev[static_cast<std::size_t>(q)]) next.insert({p, static_cast<char>(a) + w});
    }
    std::set<std::string> words;
    for (const auto& e : next) words.insert(e.second);
    if (words.size() == 1) best = Word(*words.begin());
    level.swap(next);
  }
  return best;
}

}  // namespace

ClumpAutomaton clump_automaton(const Word& b, std::size_t sigma) {
  const WordSet v = neighbors(b, sigma);
  std::unordered_set<std::string> pref;
  for (const auto& u : v)
    for (const auto& w : v)
      for (const auto& e : correlation_set(u, w)) {
        const std::string x = (u + e).indices();
        for (std::size_t i = 0; i <= x.size(); ++i) pref.insert(x.substr(0, i));
      }

  ClumpAutomaton ca;
  ca.b = b;
  ca.dfa.sigma = sigma;
  std::unordered_map<std::string, int> index;
  auto intern = [&](const std::string& s) {
    auto [it, fresh] = index.try_emplace(s, static_cast<int>(ca.labels.size()));
    if (fresh) {
      ca.labels.emplace_back(s);
      ca.dfa.delta.emplace_back(sigma, Dfa::kPruned);
      ca.new_hits.emplace_back(sigma);
      ca.new_positions.emplace_back(sigma, 0);
    }
    return it->second;
  };
  intern(std::string());
  for (std::size_t i = 0; i < ca.labels.size(); ++i) {
    for (std::size_t c = 0; c < sigma; ++c) {
      Word s = ca.labels[i];
      s.push_back(static_cast<int>(c));
      if (s.ends_with(b)) continue;
      while (!pref.count(s.indices())) s = s.substr(1);
      const int target = intern(s.indices());
      ca.dfa.delta[i][c] = target;

      // hits whose window ends on the letter just read
      const Word before = s.substr(0, s.size() - 1);
      const auto now = putative_hits(s, b), was = putative_hits(before, b);
      std::set<std::size_t> pos_now, pos_was;
      for (const auto& h : now) pos_now.insert(h.position);
      for (const auto& h : was) pos_was.insert(h.position);
      for (const auto& h : now)
        if (!std::binary_search(was.begin(), was.end(), h))
          ca.new_hits[i][c].push_back({s[h.position - 1], h.target});
      ca.new_positions[i][c] = static_cast<int>(pos_now.size() - pos_was.size());
    }
  }

  const std::size_t n = ca.labels.size();
  ca.dfa.finals.assign(n, true);
  ca.occurrence.assign(n, false);
  ca.ebar.assign(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& u : v) ca.occurrence[i] = ca.occurrence[i] || ca.labels[i].ends_with(u);
  }
  for (const auto& u : v)
    for (std::size_t len = 0; len < u.size(); ++len) {
      const int q = ca.dfa.run(u.substr(0, len));
      if (q != Dfa::kPruned) ca.ebar[static_cast<std::size_t>(q)] = true;
    }

  std::vector<std::vector<std::pair<int, int>>> rev(n);
  for (std::size_t q = 0; q < n; ++q)
    for (std::size_t c = 0; c < sigma; ++c)
      if (const int s = ca.dfa.delta[q][c]; s != Dfa::kPruned) rev[static_cast<std::size_t>(s)].push_back({static_cast<int>(q), static_cast<int>(c)});
  for (std::size_t o = 0; o < n; ++o)
    if (ca.occurrence[o]) ca.theta[static_cast<int>(o)] = theta_of(ca, static_cast<int>(o), rev);
  return ca;
}

bool markov_property_check(const Dfa& dfa, const std::vector<bool>& core, std::size_t depth) {
  const std::size_t n = dfa.size();
  std::vector<std::set<std::string>> words(n, std::set<std::string>{std::string()});
  for (std::size_t len = 1; len <= depth; ++len) {
    std::vector<std::set<std::string>> next(n);
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t c = 0; c < dfa.sigma; ++c) {
        const int s = dfa.delta[q][c];
        if (s == Dfa::kPruned) continue;
        for (const auto& w : words[q]) next[static_cast<std::size_t>(s)].insert(w + static_cast<char>(c));
      }
    for (std::size_t e = 0; e < n; ++e)
      if (core[e] && next[e].size() > 1) return false;
    words.swap(next);
  }
  return true;
}

bool markov_property_check(const ClumpAutomaton& ca) {
  std::vector<bool> core(ca.ebar.size());
  for (std::size_t i = 0; i < core.size(); ++i) core[i] = !ca.ebar[i];
  return markov_property_check(ca.dfa, core, ca.b.size());
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

std::string render_name(const std::string& indices, const Alphabet& alphabet) {
  if (indices.empty()) return "eps";
  return Word(indices).str(alphabet);
}

}  // namespace

std::string to_dot(const Dfa& dfa, const Alphabet& alphabet) {
  std::ostringstream out;
  out << "digraph dfa {\n  rankdir=LR;\n";
  for (std::size_t q = 0; q < dfa.size(); ++q) {
    const std::string name = q < dfa.names.size() ? dfa.names[q] : std::to_string(q);
    out << "  " << q << " [label=\"" << dot_escape(name) << "\"" << (dfa.finals[q] ? ", shape=doublecircle" : "")
        << "];\n";
  }
  for (std::size_t q = 0; q < dfa.size(); ++q)
    for (std::size_t c = 0; c < dfa.sigma; ++c)
      if (const int s = dfa.delta[q][c]; s != Dfa::kPruned) {
        std::string label;
        if (dfa.sigma == alphabet.size()) {
          label = std::string(1, alphabet.symbol(c));
        } else {
          label = std::string(1, alphabet.symbol(c / alphabet.size())) + "/" + alphabet.symbol(c % alphabet.size());
        }
        out << "  " << q << " -> " << s << " [label=\"" << label << "\"];\n";
      }
  out << "}\n";
  return out.str();
}

std::string to_dot(const ClumpAutomaton& ca, const Alphabet& alphabet, const MutationFilter& filter) {
  std::ostringstream out;
  out << "digraph clump {\n  rankdir=LR;\n";
  for (std::size_t q = 0; q < ca.labels.size(); ++q) {
    out << "  " << q << " [label=\"" << q << "\\n" << render_name(ca.labels[q].indices(), alphabet) << "\"";
    if (ca.occurrence[q]) out << ", shape=doublecircle";
    if (ca.ebar[q]) out << ", style=dashed";
    out << "];\n";
  }
  for (std::size_t q = 0; q < ca.labels.size(); ++q)
    for (std::size_t c = 0; c < ca.dfa.sigma; ++c)
      if (const int s = ca.dfa.delta[q][c]; s != Dfa::kPruned) {
        const bool marked = ca.mark(static_cast<int>(q), static_cast<int>(c), filter) > 0;
        out << "  " << q << " -> " << s << " [label=\"" << (marked ? "~" : "") << alphabet.symbol(c) << "\"];\n";
      }
  out << "}\n";
  return out.str();
}

RatFun gf_from_clump_automaton(const ClumpAutomaton& ca, const LetterDistribution& nu, const MutationFilter& filter) {
  const std::size_t n = ca.labels.size();
  const RatFun z = RatFun::z(), t = RatFun::t();
  RFMatrix a = RFMatrix::identity(n), ones(n, 1);
  for (std::size_t q = 0; q < n; ++q) {
    ones(q, 0) = 1;
    for (std::size_t c = 0; c < ca.dfa.sigma; ++c) {
      const int s = ca.dfa.delta[q][c];
      if (s == Dfa::kPruned) continue;
      RatFun w = z * RatFun(nu[c]);
      for (int m = ca.mark(static_cast<int>(q), static_cast<int>(c), filter); m > 0; --m) w *= t;
      a(q, static_cast<std::size_t>(s)) -= w;
    }
  }
  return solve(a, ones)(static_cast<std::size_t>(ca.dfa.initial), 0);
}

std::vector<UniPoly> clump_series(const ClumpAutomaton& ca, const LetterDistribution& nu, std::size_t n_max,
                                  const MutationFilter& filter) {
  const std::size_t n = ca.labels.size();
  std::vector<UniPoly> v(n), out;
  v[static_cast<std::size_t>(ca.dfa.initial)] = UniPoly(Rational(1));
  for (std::size_t len = 0;; ++len) {
    UniPoly total;
    for (const auto& x : v) total += x;
    out.push_back(total);
    if (len == n_max) break;
    std::vector<UniPoly> next(n);
    for (std::size_t q = 0; q < n; ++q) {
      if (v[q].is_zero()) continue;
      for (std::size_t c = 0; c < ca.dfa.sigma; ++c) {
        const int s = ca.dfa.delta[q][c];
        if (s == Dfa::kPruned) continue;
        const auto m = static_cast<std::size_t>(ca.mark(static_cast<int>(q), static_cast<int>(c), filter));
        next[static_cast<std::size_t>(s)] += v[q] * UniPoly::monomial(nu[c], m);
      }
    }
    v.swap(next);
  }
  return out;
}

ClumpMoments clump_moments(const ClumpAutomaton& ca, const std::vector<double>& nu, std::size_t n_max,
                           const std::function<double(int, int)>& weight) {
  const std::size_t n = ca.labels.size(), sigma = ca.dfa.sigma;
  // flattened edge list with precomputed weights
  struct Edge {
    std::size_t from, to;
    double p, w;
  };
  std::vector<Edge> edges;
  for (std::size_t q = 0; q < n; ++q)
    for (std::size_t c = 0; c < sigma; ++c)
      if (const int s = ca.dfa.delta[q][c]; s != Dfa::kPruned)
        edges.push_back({q, static_cast<std::size_t>(s), nu[c], weight(static_cast<int>(q), static_cast<int>(c))});

  ClumpMoments m;
  std::vector<double> v(n, 0.0), dv(n, 0.0), nv(n), ndv(n);
  v[static_cast<std::size_t>(ca.dfa.initial)] = 1.0;
  for (std::size_t len = 0;; ++len) {
    double f = 0, h = 0;
    for (std::size_t q = 0; q < n; ++q) {
      f += v[q];
      h += dv[q];
    }
    m.avoid.push_back(f);
    m.hits.push_back(h);
    if (len == n_max) break;
    std::fill(nv.begin(), nv.end(), 0.0);
    std::fill(ndv.begin(), ndv.end(), 0.0);
    for (const auto& e : edges) {
      nv[e.to] += v[e.from] * e.p;
      ndv[e.to] += (dv[e.from] + v[e.from] * e.w) * e.p;
    }
    v.swap(nv);
    dv.swap(ndv);
  }
  return m;
}

namespace {

template <class Real>
Real to_real(const Rational& q) {
  if constexpr (std::is_same_v<Real, double>) {
    return q.get_d();
  } else {
    return Real(q.get_num().get_str()) / Real(q.get_den().get_str());
  }
}

template <class Real>
Real bnn_impl(const Word& b, std::size_t n, const ModelParams& params) {
  const std::size_t sigma = params.alphabet.size();
  const Dfa kmp = kmp_automaton(b, sigma);
  const Dfa avoid = complement(kmp);
  const ProductDfa prod = product(avoid, kmp, [](bool f1, bool f2) { return f1 && f2; }, true);

  std::vector<Real> nu(sigma);
  std::vector<Real> pair_weight(sigma * sigma);
  for (std::size_t a = 0; a < sigma; ++a) nu[a] = to_real<Real>(params.nu[a]);
  for (std::size_t a = 0; a < sigma; ++a)
    for (std::size_t c = 0; c < sigma; ++c) pair_weight[a * sigma + c] = nu[a] * to_real<Real>(params.p1[a][c]);

  auto iterate = [n](const Dfa& d, const std::vector<Real>& w) {
    std::vector<Real> v(d.size(), Real(0)), next(d.size());
    v[static_cast<std::size_t>(d.initial)] = 1;
    for (std::size_t step = 0; step < n; ++step) {
      std::fill(next.begin(), next.end(), Real(0));
      for (std::size_t q = 0; q < d.size(); ++q) {
        if (v[q] == 0) continue;
        for (std::size_t c = 0; c < d.sigma; ++c)
          if (const int s = d.delta[q][c]; s != Dfa::kPruned) next[static_cast<std::size_t>(s)] += v[q] * w[c];
      }
      v.swap(next);
    }
    Real mass = 0;
    for (std::size_t q = 0; q < d.size(); ++q)
      if (d.finals[q]) mass += v[q];
    return mass;
  };
  const Real den = iterate(avoid, nu);
  if (den == 0) throw std::logic_error("bnn_probability: zero avoidance mass");
  return iterate(prod.dfa, pair_weight) / den;
}

}  // namespace

double bnn_probability(const Word& b, std::size_t n, const ModelParams& params) {
  return bnn_impl<double>(b, n, params);
}

double bnn_probability_extended(const Word& b, std::size_t n, const ModelParams& params) {
  using Big = boost::multiprecision::cpp_bin_float_50;
  return static_cast<double>(bnn_impl<Big>(b, n, params));
}

}  // namespace emergence
