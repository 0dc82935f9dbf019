#include "emergence/evolution.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace emergence {

using Big = boost::multiprecision::cpp_bin_float_50;

std::string to_string(Method m) {
  switch (m) {
    case Method::BV:
      return "bv";
    case Method::BNN:
      return "bnn";
    case Method::CLUMP:
      return "clump";
  }
  return "?";
}

Method parse_method(const std::string& text) {
  std::string s;
  for (char c : text) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (s == "bv") return Method::BV;
  if (s == "bnn") return Method::BNN;
  if (s == "clump") return Method::CLUMP;
  throw std::invalid_argument("unknown method '" + text + "' (expected bv, bnn or clump)");
}

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

double bv_probability(const Word& b, std::size_t n, const ModelParams& params) {
  const std::size_t k = b.size(), sigma = params.alphabet.size();
  if (n < k) throw std::invalid_argument("bv_probability needs n >= |b|");
  // all and stay agree to about 1e-7 relative, so the difference is taken exactly
  Rational all = 1, stay = 1;
  for (std::size_t i = 0; i < k; ++i) {
    const auto bi = static_cast<std::size_t>(b[i]);
    Rational col = 0;
    for (std::size_t x = 0; x < sigma; ++x) col += params.nu[x] * params.p1[x][bi];
    all *= col;
    stay *= params.nu[bi] * params.p1[bi][bi];
  }
  const long double q = to_double(all - stay);
  if (q <= 0) return 0;
  long double sum = 0;
  for (std::size_t l = 1; l <= n / k; ++l) {
    const long double m = static_cast<long double>(n - (k - 1) * l), ll = static_cast<long double>(l);
    const long double log_term = std::lgamma(m + 1) - std::lgamma(ll + 1) - std::lgamma(m - ll + 1) + ll * std::log(q);
    const long double term = std::exp(log_term);
    sum += (l % 2 == 1) ? term : -term;
    if (term < 1e-30L * std::fabs(sum)) break;
  }
  return static_cast<double>(sum);
}

namespace {

Big to_big(const Rational& q) { return Big(q.get_num().get_str()) / Big(q.get_den().get_str()); }

// Forward iteration of (mass, marked mass) with an arbitrary scalar.
template <class Real, class Weight>
void iterate_moments(const ClumpAutomaton& ca, const std::vector<Real>& nu, std::size_t n_max, Weight&& weight,
                     std::vector<Real>& avoid, std::vector<Real>& hits) {
  const std::size_t n = ca.labels.size(), sigma = ca.dfa.sigma;
  std::vector<Real> v(n, Real(0)), dv(n, Real(0)), nv(n), ndv(n);
  v[static_cast<std::size_t>(ca.dfa.initial)] = Real(1);
  avoid.clear();
  hits.clear();
  for (std::size_t len = 0;; ++len) {
    Real f = 0, h = 0;
    for (std::size_t q = 0; q < n; ++q) {
      f += v[q];
      h += dv[q];
    }
    avoid.push_back(f);
    hits.push_back(h);
    if (len == n_max) break;
    std::fill(nv.begin(), nv.end(), Real(0));
    std::fill(ndv.begin(), ndv.end(), Real(0));
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t c = 0; c < sigma; ++c) {
        const int s = ca.dfa.delta[q][c];
        if (s == Dfa::kPruned) continue;
        const auto t = static_cast<std::size_t>(s);
        nv[t] += v[q] * nu[c];
        ndv[t] += (dv[q] + v[q] * weight(q, c)) * nu[c];
      }
    v.swap(nv);
    dv.swap(ndv);
  }
}

}  // namespace

HitSeries hit_series(const Word& b, std::size_t sigma, const LetterDistribution& nu, std::size_t n_max,
                     const MutationFilter& filter) {
  const ClumpAutomaton ca = clump_automaton(b, sigma);
  HitSeries s;
  iterate_moments(
      ca, nu, n_max,
      [&](std::size_t q, std::size_t c) {
        return Rational(ca.mark(static_cast<int>(q), static_cast<int>(c), filter));
      },
      s.avoid, s.hits);
  return s;
}

ExpectedHits expected_hits(const Word& b, std::size_t n, const LetterDistribution& nu, const MutationFilter& filter) {
  const HitSeries s = hit_series(b, nu.size(), nu, n, filter);
  ExpectedHits e{s.hits[n], s.avoid[n], 0};
  if (e.avoid == 0) throw std::logic_error("expected_hits: zero avoidance probability");
  e.conditioned = e.hits / e.avoid;
  return e;
}

namespace {

// Per-transition sum of p_{a->c} over the newly created typed hits.
double typed_rate(const ClumpAutomaton& ca, const ModelParams& params, std::size_t q, std::size_t c) {
  double w = 0;
  for (const auto& h : ca.new_hits[q][c])
    w += params.p_d(static_cast<std::size_t>(h.from), static_cast<std::size_t>(h.to));
  return w;
}

}  // namespace

double clump_probability(const Word& b, std::size_t n, const ModelParams& params) {
  const ClumpAutomaton ca = clump_automaton(b, params.alphabet.size());
  std::vector<double> nu(params.alphabet.size());
  for (std::size_t a = 0; a < nu.size(); ++a) nu[a] = params.nu_d(a);
  std::vector<double> avoid, hits;
  iterate_moments(
      ca, nu, n, [&](std::size_t q, std::size_t c) { return typed_rate(ca, params, q, c); }, avoid, hits);
  return hits[n] / avoid[n];
}

std::vector<double> conditioned_hits(const Word& b, const ModelParams& params, std::size_t n_max,
                                     const MutationFilter& filter) {
  const ClumpAutomaton ca = clump_automaton(b, params.alphabet.size());
  std::vector<Big> nu;
  for (const auto& x : params.nu) nu.push_back(to_big(x));
  std::vector<Big> avoid, hits;
  iterate_moments(
      ca, nu, n_max,
      [&](std::size_t q, std::size_t c) { return Big(ca.mark(static_cast<int>(q), static_cast<int>(c), filter)); },
      avoid, hits);
  std::vector<double> out;
  for (std::size_t i = 0; i <= n_max; ++i) out.push_back(static_cast<double>(hits[i] / avoid[i]));
  return out;
}

LinearFit fit_conditioned_hits(const Word& b, const ModelParams& params, std::size_t lo, std::size_t hi) {
  if (hi <= lo) throw std::invalid_argument("fit range needs lo < hi");
  const auto h = conditioned_hits(b, params, hi);
  long double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const auto m = static_cast<long double>(hi - lo + 1);
  for (std::size_t n = lo; n <= hi; ++n) {
    const auto x = static_cast<long double>(n), y = static_cast<long double>(h[n]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const long double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return {static_cast<double>(slope), static_cast<double>((sy - slope * sx) / m)};
}

namespace {

// ---- exact route ----------------------------------------------------------

Big eval(const UniPoly& p, const Big& x) {
  Big acc = 0;
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) acc = acc * x + to_big(*it);
  return acc;
}

int sign_changes(const std::vector<UniPoly>& seq, const Rational& x) {
  int changes = 0, last = 0;
  for (const auto& p : seq) {
    const int s = sgn(p.eval(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

// Smallest positive root of q: isolated in (lo, hi] with a Sturm sequence,
// then refined by bisection in 50-digit arithmetic.
struct IsolatedRoot {
  Big value;
  Rational lo, hi;
  // a factor of q vanishes at the root exactly when it changes sign on (lo, hi]
  bool root_of(const UniPoly& factor) const { return sgn(factor.eval(lo)) * sgn(factor.eval(hi)) < 0; }
};

IsolatedRoot smallest_positive_root(const UniPoly& q) {
  std::vector<UniPoly> seq{q, q.derivative()};
  while (seq.back().degree() > 0) {
    UniPoly quo, rem;
    seq[seq.size() - 2].divmod(seq.back(), quo, rem);
    if (rem.is_zero()) break;
    seq.push_back(-rem);
  }
  auto roots_in = [&](const Rational& a, const Rational& b) { return sign_changes(seq, a) - sign_changes(seq, b); };

  Rational bound = 0;
  for (const auto& c : q.coeffs()) bound = std::max(bound, Rational(abs(c / q.lead())));
  Rational lo = 0, hi = bound + 1;
  if (q.eval(0) == 0 || roots_in(lo, hi) == 0) throw std::domain_error("no positive root in bracket");
  // shrink until exactly one root remains in (lo, hi] with a sign change
  for (int iter = 0; iter < 200; ++iter) {
    const Rational mid = (lo + hi) / 2;
    if (roots_in(lo, mid) >= 1) {
      hi = mid;
    } else {
      lo = mid;
    }
    if (roots_in(lo, hi) == 1 && sgn(q.eval(lo)) * sgn(q.eval(hi)) < 0) break;
  }
  if (sgn(q.eval(lo)) * sgn(q.eval(hi)) >= 0) throw std::domain_error("dominant pole is not simple");
  Big a = to_big(lo), b = to_big(hi);
  const int sa = sgn(q.eval(lo));
  for (int iter = 0; iter < 200; ++iter) {
    const Big mid = (a + b) / 2;
    if ((eval(q, mid) > 0 ? 1 : -1) == sa) {
      a = mid;
    } else {
      b = mid;
    }
  }
  return {(a + b) / 2, lo, hi};
}

// Second singularity modulus over the first, from the companion matrix.
double decay_ratio(const UniPoly& q, double tau) {
  const int d = q.degree();
  if (d < 2) return 0;
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(d, d);
  for (int i = 1; i < d; ++i) comp(i, i - 1) = 1;
  for (int i = 0; i < d; ++i) comp(i, d - 1) = -to_double(q.coeffs()[static_cast<std::size_t>(i)] / q.lead());
  const Eigen::VectorXcd roots = comp.eigenvalues();
  double second = std::numeric_limits<double>::infinity();
  for (const auto& r : roots)
    if (std::abs(r - std::complex<double>(tau, 0)) > 1e-6 * tau) second = std::min(second, std::abs(r));
  return std::isfinite(second) ? tau / second : 0;
}

struct PoleConstants {
  Big d2, d1;  // E(z) ~ d2/(1-z/tau)^2 + d1/(1-z/tau)
};

PoleConstants double_pole(const RatFun& e, const UniPoly& q, const IsolatedRoot& root) {
  const UniPoly ne = e.num().at_t(1), de = e.den().at_t(1);
  if (ne.is_zero()) return {0, 0};
  // f0: a factor of q vanishing at tau whose power m divides de
  UniPoly f0 = gcd(q, de);
  int m = 0;
  if (root.root_of(f0)) {
    m = 1;
    if (const UniPoly g = gcd(f0, de.exact_div(f0)); root.root_of(g)) {
      f0 = g;
      m = 2;
      if (root.root_of(gcd(f0, de.exact_div(f0 * f0))))
        throw std::domain_error("hit generating function has a pole of order above two");
    }
  }
  if (m == 0) return {0, 0};
  const UniPoly r = de.exact_div(m == 1 ? f0 : f0 * f0);
  // g = ne / (r h^m), h = f0 / (1 - z/tau), h(tau) = -tau f0'(tau), h'(tau) = -tau f0''(tau)/2
  const Big& tau = root.value;
  const UniPoly df = f0.derivative();
  const Big h = -tau * eval(df, tau), dh = -tau * eval(df.derivative(), tau) / 2;
  const Big g = eval(ne, tau) / (eval(r, tau) * pow(h, m));
  if (m == 1) return {0, g};
  const Big log_dg = eval(ne.derivative(), tau) / eval(ne, tau) - eval(r.derivative(), tau) / eval(r, tau) - 2 * dh / h;
  return {g, -tau * g * log_dg};
}

AsymptoticConstants exact_asymptotics(const Word& b, const ModelParams& params) {
  const std::size_t sigma = params.alphabet.size();
  const ClumpAutomaton ca = clump_automaton(b, sigma);
  const RatFun untyped = gf_from_clump_automaton(ca, params.nu);
  const RatFun f = untyped.at_t(1);
  const UniPoly p = f.num().at_t(1), q = f.den().at_t(1);

  const IsolatedRoot root = smallest_positive_root(q);
  const Big& tau = root.value;
  const Big amp = -eval(p, tau) / (tau * eval(q.derivative(), tau));  // f ~ amp/(1 - z/tau)

  AsymptoticConstants out;
  out.exact = true;
  out.tau = static_cast<double>(tau);
  out.psi = static_cast<double>(amp / tau);
  out.decay = decay_ratio(q, out.tau);

  const PoleConstants u = double_pole(dt_at_one(untyped), q, root);
  out.phi1 = static_cast<double>(u.d2);
  out.phi2 = static_cast<double>(u.d2 + u.d1);

  for (const auto& type : mutation_types(sigma)) {
    const PoleConstants c = double_pole(dt_at_one(gf_from_clump_automaton(ca, params.nu, type)), q, root);
    TypedConstants tc{type, static_cast<double>(c.d2 / amp), static_cast<double>((c.d2 + c.d1) / amp)};
    out.per_type.push_back(tc);
  }
  return out;
}

// ---- spectral route -------------------------------------------------------

AsymptoticConstants spectral_asymptotics(const Word& b, const ModelParams& params) {
  const std::size_t sigma = params.alphabet.size();
  const ClumpAutomaton ca = clump_automaton(b, sigma);
  const auto n = static_cast<Eigen::Index>(ca.labels.size());

  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index q = 0; q < n; ++q)
    for (std::size_t c = 0; c < sigma; ++c)
      if (const int s = ca.dfa.delta[static_cast<std::size_t>(q)][c]; s != Dfa::kPruned) h(q, s) += params.nu_d(c);

  Eigen::EigenSolver<Eigen::MatrixXd> right(h), left(h.transpose());
  auto perron = [](const Eigen::EigenSolver<Eigen::MatrixXd>& es) {
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < es.eigenvalues().size(); ++i)
      if (es.eigenvalues()(i).real() > es.eigenvalues()(best).real()) best = i;
    return best;
  };
  const Eigen::Index ir = perron(right), il = perron(left);
  const double lambda = right.eigenvalues()(ir).real();
  Eigen::VectorXd r = right.eigenvectors().col(ir).real(), l = left.eigenvectors().col(il).real();
  l /= l.dot(r);

  double second = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    if (i != ir) second = std::max(second, std::abs(right.eigenvalues()(i)));

  const Eigen::MatrixXd pi = r * l.transpose();
  const Eigen::MatrixXd rest = h - lambda * pi;
  const Eigen::MatrixXd z =
      (Eigen::MatrixXd::Identity(n, n) - rest / lambda).fullPivLu().inverse() - pi;
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
  const double a = r(ca.dfa.initial), bsum = l.sum();
  const double tau = 1 / lambda;

  AsymptoticConstants out;
  out.tau = tau;
  out.psi = a * bsum / tau;
  out.decay = second / lambda;

  auto constants = [&](const MutationFilter& filter) {
    Eigen::MatrixXd hp = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index q = 0; q < n; ++q)
      for (std::size_t c = 0; c < sigma; ++c)
        if (const int s = ca.dfa.delta[static_cast<std::size_t>(q)][c]; s != Dfa::kPruned)
          hp(q, s) += params.nu_d(c) * ca.mark(static_cast<int>(q), static_cast<int>(c), filter);
    const double gamma = l.dot(hp * r);
    const double c1 = gamma / lambda;
    const double c2 = tau * (l.dot(hp * (z * ones)) / bsum + (z.row(ca.dfa.initial) * (hp * r)).value() / a);
    return std::pair{c1, c2};
  };
  const auto [u1, u2] = constants(std::nullopt);
  out.phi1 = u1 * a * bsum;
  out.phi2 = u2 * a * bsum;
  for (const auto& type : mutation_types(sigma)) {
    const auto [c1, c2] = constants(type);
    out.per_type.push_back({type, c1, c2});
  }
  return out;
}

}  // namespace

AsymptoticConstants asymptotics(const Word& b, const ModelParams& params, AsymptoticRoute route) {
  if (route == AsymptoticRoute::Auto)
    route = params.alphabet.size() == 2 && b.size() <= 6 ? AsymptoticRoute::Exact : AsymptoticRoute::Spectral;
  AsymptoticConstants out =
      route == AsymptoticRoute::Exact ? exact_asymptotics(b, params) : spectral_asymptotics(b, params);
  for (const auto& tc : out.per_type) {
    out.C1 += tc.c1;
    out.C2 += tc.c2;
    const double p = params.p_d(static_cast<std::size_t>(tc.type.from), static_cast<std::size_t>(tc.type.to));
    out.pn_slope += tc.c1 * p;
    out.pn_intercept += tc.c2 * p;
  }
  return out;
}

WaitingTimeResult waiting_time(const Word& b, std::size_t n, const ModelParams& params, Method method) {
  if (n < b.size()) throw std::invalid_argument("sequence length must be at least |b|");
  WaitingTimeResult r;
  r.word = b;
  r.n = n;
  r.method = method;
  switch (method) {
    case Method::BV:
      r.p_n = bv_probability(b, n, params);
      break;
    case Method::BNN:
      r.p_n = bnn_probability(b, n, params);
      break;
    case Method::CLUMP:
      r.p_n = clump_probability(b, n, params);
      break;
  }
  r.expected_T = 1 / r.p_n;
  r.outside_first_order = static_cast<double>(n) * params.max_mutation() > 1e-2;
  return r;
}

std::vector<ScanRow> scan_kmers(std::size_t k, std::size_t n, const ModelParams& params, Method method,
                                unsigned threads) {
  const std::size_t sigma = params.alphabet.size();
  if (k < 2) throw std::invalid_argument("scan needs k >= 2");
  std::size_t total = 1;
  for (std::size_t i = 0; i < k; ++i) {
    total *= sigma;
    if (total > (1u << 22)) throw std::invalid_argument("scan: too many words");
  }
  std::vector<ScanRow> rows(total);
  auto word_at = [&](std::size_t index) {
    std::string s(k, 0);
    for (std::size_t i = k; i-- > 0; index /= sigma) s[i] = static_cast<char>(index % sigma);
    return Word(s);
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < total;) {
      try {
        const Word w = word_at(i);
        rows[i].result = waiting_time(w, n, params, method);
        rows[i].minimal_period = minimal_period(w);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);

  // Values equal by symmetry (e.g. reversed words) differ in the last bits,
  // so ranking uses 12 significant digits; word index order is
  // lexicographic, so the stable sort breaks the remaining ties by word.
  std::vector<double> key(total);
  for (std::size_t i = 0; i < total; ++i) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", rows[i].result.expected_T);
    key[i] = std::strtod(buf, nullptr);
  }
  std::vector<std::size_t> order(total);
  for (std::size_t i = 0; i < total; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return key[a] < key[b]; });
  std::vector<ScanRow> sorted;
  sorted.reserve(total);
  for (std::size_t i : order) sorted.push_back(rows[i]);
  rows.swap(sorted);
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i].rank = i + 1;
  return rows;
}

std::string scan_csv(const std::vector<ScanRow>& rows, const Alphabet& alphabet) {
  std::ostringstream out;
  out << "word,method,p_n,expected_T,expected_T_e6,rank,minimal_period\n";
  for (const auto& r : rows)
    out << r.result.word.str(alphabet) << ',' << to_string(r.result.method) << ',' << format_number(r.result.p_n)
        << ',' << format_number(r.result.expected_T) << ',' << format_number(r.result.expected_T / 1e6) << ','
        << r.rank << ',' << r.minimal_period << '\n';
  return out.str();
}

}  // namespace emergence
