// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when
// any criterion fails.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "emergence/automata.hpp"
#include "emergence/evolution.hpp"
#include "emergence/languages.hpp"
#include "emergence/oracle.hpp"
#include "support/brute.hpp"

#ifndef ACCEPTANCE_OUTPUT_DIR
#define ACCEPTANCE_OUTPUT_DIR "."
#endif

using namespace emergence;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& what) {
  std::printf("criterion %d: %s  %s\n", id, ok ? "PASS" : "FAIL", what.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

void info(const std::string& what) { std::printf("  info: %s\n", what.c_str()); }

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

const Alphabet kBin = Alphabet::binary();
const Alphabet kDna = Alphabet::dna();
const std::vector<const char*> kToys{"AAA", "ACC", "ACAC", "AACC", "AACA"};
Word bw(const std::string& s) { return Word::parse(kBin, s); }

struct ReferenceRow {
  const char* word;
  double bnn;
  int bnn_rank;
  double bv;
  int bv_rank;
  double ratio;
};

const ReferenceRow kReference[] = {
    {"CCCCC", 9.105, 1021, 6.304, 1, 1.44},   {"GGGGG", 9.570, 1022, 6.666, 142, 1.44},
    {"TTTTT", 10.401, 1023, 7.457, 993, 1.39}, {"AAAAA", 10.656, 1024, 7.654, 1024, 1.39},
    {"CGCGC", 7.047, 699, 6.446, 11, 1.09},   {"TCCCC", 7.076, 737, 6.477, 17, 1.09},
    {"CCCCT", 7.076, 738, 6.477, 21, 1.09},   {"GCGCG", 7.127, 787, 6.518, 31, 1.09},
    {"CTCTC", 7.263, 883, 6.679, 148, 1.09},  {"CACAC", 7.337, 945, 6.750, 217, 1.09},
};

// |x rounded to the printed decimals - printed| at most one unit of the last digit
bool within_last_digit(double x, double printed, int decimals) {
  const double unit = std::pow(10.0, -decimals);
  return std::abs(std::round(x / unit) - std::round(printed / unit)) <= 1;
}

void reference_times(const ModelParams& p) {
  int ok = 0;
  double worst = 0;
  for (const auto& r : kReference) {
    const Word b = Word::parse(kDna, r.word);
    const double bnn = 1 / bnn_probability(b, 1000, p) / 1e6, bv = 1 / bv_probability(b, 1000, p) / 1e6;
    const bool good = within_last_digit(bnn, r.bnn, 3) && within_last_digit(bv, r.bv, 3) &&
                      std::round(bnn / bv * 100) == std::round(r.ratio * 100);
    ok += good;
    worst = std::max({worst, std::abs(bnn - r.bnn), std::abs(bv - r.bv)});
    if (!good) info(std::string(r.word) + " BNN " + fmt("%.4f", bnn) + " BV " + fmt("%.4f", bv));
  }
  report(1, ok == 10,
         "reference 5-mer waiting times and ratios, " + std::to_string(ok) + "/10 words, largest |diff| " +
             fmt("%.2g", worst) + " (x 10^6 generations)");
}

void ranks(const ModelParams& p) {
  std::map<std::string, std::size_t> bnn, bv;
  for (const auto& r : scan_kmers(5, 1000, p, Method::BNN)) bnn[r.result.word.str(kDna)] = r.rank;
  for (const auto& r : scan_kmers(5, 1000, p, Method::BV)) bv[r.result.word.str(kDna)] = r.rank;
  const bool ok = bnn["CCCCC"] == 1021 && bnn["GGGGG"] == 1022 && bnn["TTTTT"] == 1023 && bnn["AAAAA"] == 1024 &&
                  bv["CCCCC"] == 1 && bv["AAAAA"] == 1024;
  report(2, ok,
         "ranks BNN CCCCC/GGGGG/TTTTT/AAAAA = " + std::to_string(bnn["CCCCC"]) + "/" + std::to_string(bnn["GGGGG"]) +
             "/" + std::to_string(bnn["TTTTT"]) + "/" + std::to_string(bnn["AAAAA"]) + ", BV CCCCC " +
             std::to_string(bv["CCCCC"]) + ", BV AAAAA " + std::to_string(bv["AAAAA"]));
  // the other reference ranks are not part of the criterion
  int same = 0;
  for (const auto& r : kReference)
    same += (bnn[r.word] == static_cast<std::size_t>(r.bnn_rank)) + (bv[r.word] == static_cast<std::size_t>(r.bv_rank));
  info("all reference ranks: " + std::to_string(same) + "/20 equal (exact ties and near-ties order differently)");
}

void constants() {
  const ModelParams p = binary_uniform_params();
  const std::pair<const char*, double> expected[] = {{"ACAC", 0.2452503893}, {"AACC", 0.3068491678}};
  bool ok = true;
  std::string detail;
  for (const auto& [w, c1] : expected) {
    const AsymptoticConstants a = asymptotics(bw(w), p, AsymptoticRoute::Exact);
    const LinearFit f = fit_conditioned_hits(bw(w), p, 50, 200);
    ok = ok && std::abs(a.C1 - c1) <= 1e-9 && std::abs(f.slope - a.C1) <= 1e-8;
    detail += std::string(w) + " C1 " + fmt("%.10f", a.C1) + " (fit " + fmt("%.10f", f.slope) + ") ";
  }
  report(3, ok, detail);
}

RatFun mono(int num, int den, int zd, int td) { return RatFun(Poly::monomial(Rational(num, den), zd, td)); }

void code_matrices() {
  const LetterDistribution nu = uniform_distribution(2);
  const RatFun zt2 = mono(1, 2, 1, 1), z2t4 = mono(1, 4, 2, 1), z3t8 = mono(1, 8, 3, 1), z2half = mono(1, 2, 2, 0);
  // as displayed, rows and columns in the order of d(b)
  const RatFun acac[4][4] = {{0, z2t4, z2t4, z3t8},
                             {z3t8 + z2half, z3t8, z3t8, 0},
                             {0, 0, 0, z3t8 + z2half},
                             {0, z2t4, z2t4, z3t8}};
  const RatFun aacc[4][4] = {{0, zt2, 0, 0}, {z3t8, z3t8, 0, z2t4}, {0, 0, 0, z3t8}, {0, 0, zt2, z3t8}};
  int equal = 0;
  std::string off;
  for (const auto& [w, m] : {std::pair{"ACAC", &acac}, std::pair{"AACC", &aacc}}) {
    const Word b = bw(w);
    const RFMatrix k = marked_code_gf(b, constrained_code_matrix(b, 2), nu, std::nullopt);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        if (k(i, j) == (*m)[i][j]) {
          ++equal;
          continue;
        }
        off += " " + std::string(w) + "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
               "): computed " + k(i, j).to_string() + ", displayed " + (*m)[i][j].to_string() + ";";
      }
  }
  report(4, equal == 32, "published code-matrix entries equal: " + std::to_string(equal) + "/32");
  if (!off.empty()) info("differing entries:" + off + " Pr(AC) = 1/4 under the uniform model");
}

std::map<std::size_t, Rational> as_census(const UniPoly& p) {
  std::map<std::size_t, Rational> m;
  for (std::size_t h = 0; h < p.coeffs().size(); ++h)
    if (p.coeffs()[h] != 0) m[h] = p.coeffs()[h];
  return m;
}

void census() {
  const std::vector<LetterDistribution> dists{uniform_distribution(2), {Rational(1, 3), Rational(2, 3)}};
  int cases = 0, ok = 0;
  for (const char* w : kToys)
    for (const auto& nu : dists) {
      const Word b = bw(w);
      const auto language = bivariate_coeffs(clump_gf_language(b, 2, nu), 12);
      const auto automaton = clump_series(clump_automaton(b, 2), nu, 12);
      for (std::size_t n = 0; n <= 12; ++n) {
        auto enumerated = enumerate(b, n, nu).census;
        std::erase_if(enumerated, [](const auto& kv) { return kv.second == 0; });
        ++cases;
        ok += enumerated == as_census(language[n]) && enumerated == as_census(automaton[n]);
      }
    }
  report(5, ok == cases,
         "enumeration = language route = automaton route, " + std::to_string(ok) + "/" + std::to_string(cases) +
             " (word, distribution, n <= 12) cases");
}

void parse_identity() {
  const std::vector<LetterDistribution> dists{uniform_distribution(2), {Rational(1, 3), Rational(2, 3)}};
  int systems = 0, ok = 0;
  std::vector<const char*> words = kToys;
  words.insert(words.end(), {"AAAAA", "ACACA", "AACCA"});
  for (const char* w : words)
    for (const auto& nu : dists) {
      const Word b = bw(w);
      for (const WordSet& v : {WordSet{b}, neighbors(b, 2)}) {
        ++systems;
        ok += parse_identity_holds(rs_solve(v, nu));
      }
      // the extended set d(b) + {b}
      ++systems;
      ok += parse_identity_holds(constrained_languages(b, 2, nu).extended);
    }
  report(6, ok == systems, "parse identity on solved systems: " + std::to_string(ok) + "/" + std::to_string(systems));
}

struct Convergence {
  double max_residual = 0;
  double slope = 0, log_decay = 0, r2 = 0;
};

// Residual of the linear asymptote over n in [50, 200], and a line fitted
// to log(|second difference| / n), which decays like the residual.
Convergence convergence(const char* w, std::ofstream* csv) {
  const ModelParams p = binary_uniform_params();
  const AsymptoticConstants a = asymptotics(bw(w), p);
  const HitSeries s = hit_series(bw(w), 2, p.nu, 201);
  std::vector<Rational> e(202);
  for (std::size_t n = 0; n <= 201; ++n) e[n] = s.hits[n] / s.avoid[n];
  Convergence c;
  c.log_decay = std::log(a.decay);
  std::vector<double> x, y;
  for (std::size_t n = 0; n <= 200; ++n) {
    const double en = to_double(e[n]), line = a.C1 * static_cast<double>(n) + a.C2;
    if (csv)
      *csv << w << ',' << n << ',' << format_number(to_double(s.avoid[n])) << ','
           << format_number(to_double(s.hits[n])) << ',' << format_number(en) << ',' << format_number(line) << '\n';
    if (n < 50) continue;
    c.max_residual = std::max(c.max_residual, std::abs(en - line));
    const mpf_class d(abs(e[n + 1] - 2 * e[n] + e[n - 1]), 512);
    long exponent = 0;
    const double mantissa = mpf_get_d_2exp(&exponent, d.get_mpf_t());
    x.push_back(static_cast<double>(n));
    y.push_back(std::log(mantissa) + static_cast<double>(exponent) * std::log(2.0) - std::log(static_cast<double>(n)));
  }
  const double m = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  c.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  const double intercept = (sy - c.slope * sx) / m;
  double ss = 0, st = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    ss += std::pow(y[i] - c.slope * x[i] - intercept, 2);
    st += std::pow(y[i] - sy / m, 2);
  }
  c.r2 = 1 - ss / st;
  return c;
}

void asymptote() {
  const std::string path = std::string(ACCEPTANCE_OUTPUT_DIR) + "/hit_series.csv";
  std::ofstream csv(path);
  csv << "word,n,avoid,hits,conditioned,asymptote\n";
  bool ok = true;
  std::string detail;
  for (const char* w : {"ACAC", "AACC", "AAA", "AACA"}) {
    const bool plotted = std::string(w) == "ACAC" || std::string(w) == "AACC";
    const Convergence c = convergence(w, plotted ? &csv : nullptr);
    const bool good = c.max_residual < 1e-10 && c.r2 > 0.998 && std::abs(c.slope - c.log_decay) < 5e-3;
    ok = ok && good;
    detail += std::string(w) + " " + fmt("%.1e", c.max_residual) + " ";
    info(std::string(w) + ": max residual " + fmt("%.2e", c.max_residual) + ", log-residual slope " +
         fmt("%.5f", c.slope) + " vs log(decay) " + fmt("%.5f", c.log_decay) + ", R^2 " + fmt("%.6f", c.r2));
  }
  csv.close();
  ok = ok && csv.good();
  report(7, ok, "linear asymptote of E(H~_n) on n in [50,200], max residuals " + detail + "; CSV " + path);
  const Convergence acc = convergence("ACC", nullptr);
  info("ACC (not gated, slower decay): max residual " + fmt("%.2e", acc.max_residual) + ", log-residual slope " +
       fmt("%.5f", acc.slope) + " vs " + fmt("%.5f", acc.log_decay));
}

void clump_vs_bnn(const ModelParams& p) {
  double worst = 0;
  for (const auto& r : kReference) {
    const Word b = Word::parse(kDna, r.word);
    const double bnn = bnn_probability(b, 1000, p);
    worst = std::max(worst, std::abs(clump_probability(b, 1000, p) - bnn) / bnn);
  }
  report(8, worst <= 1e-4, "max |p_CLUMP - p_BNN| / p_BNN over the reference words = " + fmt("%.2e", worst));
}

void automaton_facts() {
  int invariants = 0, total = 0;
  for (const char* w : kToys) {
    const ClumpAutomaton ca = clump_automaton(bw(w), 2);
    ++total;
    invariants += markov_property_check(ca);
    bool runs = true;
    for (int n = 0; n <= 10; ++n)
      for (const auto& text : brute::all_words("AC", n)) {
        int q = ca.dfa.initial, marks = 0;
        for (char ch : text) {
          if (q == Dfa::kPruned) break;
          const int letter = kBin.index(ch);
          const int next = ca.dfa.delta[static_cast<std::size_t>(q)][static_cast<std::size_t>(letter)];
          if (next != Dfa::kPruned) marks += ca.mark(q, letter, std::nullopt);
          q = next;
        }
        const bool avoids = text.find(w) == std::string::npos;
        runs = runs && (q != Dfa::kPruned) == avoids &&
               (!avoids || static_cast<std::size_t>(marks) == brute::hits(text, w, "AC", false).size());
      }
    ++total;
    invariants += runs;
  }

  const ClumpAutomaton ca = clump_automaton(bw("AAA"), 2);
  auto state = [&](const std::string& label) {
    for (std::size_t i = 0; i < ca.labels.size(); ++i)
      if (ca.labels[i].str(kBin) == label) return static_cast<int>(i);
    return -1;
  };
  auto theta = [&](const std::string& label) {
    const auto it = ca.theta.find(state(label));
    return it == ca.theta.end() ? std::string("-") : it->second.str(kBin);
  };
  std::set<std::string> ebar;
  for (std::size_t i = 0; i < ca.labels.size(); ++i)
    if (ca.ebar[i]) ebar.insert(ca.labels[i].str(kBin));
  // published state numbering is lexicographic on labels with C last: 5 = AACAA,
  // 7 = ACA, 14 = CAAC, 15 = CAACA
  const std::pair<const char*, const char*> thetas[] = {
      {"ACA", "ACA"}, {"AACAA", "AA"}, {"CAAC", "C"}, {"CAACA", "A"}};
  int theta_ok = 0;
  std::string theta_detail;
  for (const auto& [label, expected] : thetas) {
    theta_ok += theta(label) == expected;
    theta_detail += " " + std::string(label) + "->" + theta(label) + (theta(label) == expected ? "" : " (displayed " + std::string(expected) + ")");
  }
  const bool states = ca.labels.size() == 17;
  const bool partition = ebar == std::set<std::string>{"", "A", "AA", "AC", "CA", "C"};
  report(9, invariants == total && states && partition && theta_ok == 4,
         "Markov and run invariants " + std::to_string(invariants) + "/" + std::to_string(total) + ", " +
             std::to_string(ca.labels.size()) + " states, Ebar/E partition " + (partition ? "equal" : "differs") +
             ", theta " + std::to_string(theta_ok) + "/4:" + theta_detail);
}

}  // namespace

int main() {
  const ModelParams table1 = load_params("table1");
  reference_times(table1);
  ranks(table1);
  constants();
  code_matrices();
  census();
  parse_identity();
  asymptote();
  clump_vs_bnn(table1);
  automaton_facts();
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
