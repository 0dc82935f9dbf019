// Command-line front end for the emergence library.
#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "emergence/automata.hpp"
#include "emergence/evolution.hpp"
#include "emergence/languages.hpp"
#include "emergence/oracle.hpp"

namespace em = emergence;

namespace {

enum class Format { Table, Csv };

/// Rows of cells, printed aligned or as CSV.
class Output {
 public:
  explicit Output(std::vector<std::string> header) : header_(std::move(header)) {}
  void row(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }

  void print(std::ostream& out, Format f) const {
    if (f == Format::Csv) {
      print_csv_line(out, header_);
      for (const auto& r : rows_) print_csv_line(out, r);
      return;
    }
    std::vector<std::size_t> width(header_.size());
    for (std::size_t i = 0; i < header_.size(); ++i) width[i] = header_[i].size();
    for (const auto& r : rows_)
      for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
    auto line = [&](const std::vector<std::string>& r) {
      std::string s;
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (i) s += "  ";
        s += r[i] + std::string(width[i] - r[i].size(), ' ');
      }
      while (!s.empty() && s.back() == ' ') s.pop_back();
      out << s << '\n';
    };
    line(header_);
    for (const auto& r : rows_) line(r);
  }

 private:
  static void print_csv_line(std::ostream& out, const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) out << ',';
      const bool quote = r[i].find_first_of(",\"") != std::string::npos;
      if (!quote) {
        out << r[i];
        continue;
      }
      out << '"';
      for (char c : r[i]) out << (c == '"' ? "\"\"" : std::string(1, c));
      out << '"';
    }
    out << '\n';
  }

  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

std::string num(double x) { return em::format_number(x); }
std::string num(const em::Rational& x) { return em::format_number(em::to_double(x)); }

std::string show(const em::Word& w, const em::Alphabet& a) { return w.empty() ? "eps" : w.str(a); }

std::string show_set(const std::vector<em::Word>& ws, const em::Alphabet& a) {
  std::string s = "{";
  for (std::size_t i = 0; i < ws.size(); ++i) s += (i ? ", " : "") + show(ws[i], a);
  return s + "}";
}

/// Alphabet for commands that may run without a params file: the params
/// alphabet, an explicit --alphabet, or the smaller of AC and ACGT that
/// holds the word.
em::Alphabet pick_alphabet(const std::string& explicit_symbols, const std::string& params_source,
                           const std::vector<std::string>& words) {
  if (!params_source.empty()) return em::load_params(params_source).alphabet;
  if (!explicit_symbols.empty()) return em::Alphabet(explicit_symbols);
  for (const auto& w : words)
    if (w.find_first_not_of("AC") != std::string::npos) return em::Alphabet::dna();
  return em::Alphabet::binary();
}

/// Letter distribution: from params when given, otherwise uniform.
em::LetterDistribution pick_nu(const std::string& params_source, const em::Alphabet& a) {
  return params_source.empty() ? em::uniform_distribution(a.size()) : em::load_params(params_source).nu;
}

/// "A>C", "A->C" or "AC".
em::MutationFilter parse_type(const std::string& text, const em::Alphabet& a) {
  if (text.empty()) return std::nullopt;
  std::string letters;
  for (char c : text)
    if (c != '-' && c != '>') letters += c;
  if (letters.size() != 2 || letters[0] == letters[1])
    throw std::invalid_argument("mutation type '" + text + "' must name two distinct letters, e.g. A>C");
  return em::MutationType{a.index(letters[0]), a.index(letters[1])};
}

std::string show_type(const em::MutationType& t, const em::Alphabet& a) {
  return std::string(1, a.symbol(static_cast<std::size_t>(t.from))) + ">" + a.symbol(static_cast<std::size_t>(t.to));
}

struct Common {
  std::string format = "table";
  Format fmt() const { return format == "csv" ? Format::Csv : Format::Table; }
};

void add_format(CLI::App* app, Common& c) {
  app->add_option("--format", c.format, "Output mode")->check(CLI::IsMember({"table", "csv"}));
}

// ---------------------------------------------------------------- wait

struct WaitArgs : Common {
  std::string word, params = "table1", method = "bnn";
  std::size_t length = 1000;
};

void run_wait(const WaitArgs& a) {
  const em::ModelParams p = em::load_params(a.params);
  const em::Word b = em::Word::parse(p.alphabet, a.word);
  const auto r = em::waiting_time(b, a.length, p, em::parse_method(a.method));
  Output out({"word", "method", "n", "p_n", "expected_T", "expected_T_e6"});
  out.row({a.word, em::to_string(r.method), std::to_string(r.n), num(r.p_n), num(r.expected_T),
           num(r.expected_T / 1e6)});
  out.print(std::cout, a.fmt());
  if (r.outside_first_order) std::cerr << "warning: n * max mutation rate exceeds 1e-2\n";
}

// ---------------------------------------------------------------- scan

struct ScanArgs : Common {
  std::string params = "table1";
  std::vector<std::string> methods{"bnn"};
  std::size_t k = 5, length = 1000, top = 0;
  unsigned threads = 0;
};

void run_scan(const ScanArgs& a) {
  const em::ModelParams p = em::load_params(a.params);
  if (a.methods.empty() || a.methods.size() > 2) throw std::invalid_argument("scan takes one or two methods");
  std::vector<em::Method> methods;
  for (const auto& m : a.methods) methods.push_back(em::parse_method(m));

  if (methods.size() == 1) {
    auto rows = em::scan_kmers(a.k, a.length, p, methods[0], a.threads);
    // --top keeps the slowest-emerging words, still in rank order
    if (a.top && a.top < rows.size()) rows.erase(rows.begin(), rows.end() - static_cast<std::ptrdiff_t>(a.top));
    Output out({"word", "method", "p_n", "expected_T", "expected_T_e6", "rank", "minimal_period"});
    for (const auto& r : rows)
      out.row({r.result.word.str(p.alphabet), em::to_string(r.result.method), num(r.result.p_n),
               num(r.result.expected_T), num(r.result.expected_T / 1e6), std::to_string(r.rank),
               std::to_string(r.minimal_period)});
    out.print(std::cout, a.fmt());
    return;
  }

  // Two methods: one row per word with both waiting times and ranks, sorted
  // by decreasing ratio of the first to the second.
  const auto first = em::scan_kmers(a.k, a.length, p, methods[0], a.threads);
  const auto second = em::scan_kmers(a.k, a.length, p, methods[1], a.threads);
  std::map<em::Word, const em::ScanRow*> by_word;
  for (const auto& r : second) by_word[r.result.word] = &r;
  struct Joined {
    const em::ScanRow* x;
    const em::ScanRow* y;
    double ratio;
    long cents;  // ratio as displayed, the sort key
  };
  std::vector<Joined> rows;
  for (const auto& r : first) {
    const em::ScanRow* s = by_word.at(r.result.word);
    const double ratio = r.result.expected_T / s->result.expected_T;
    rows.push_back({&r, s, ratio, std::lround(ratio * 100)});
  }
  // equal displayed ratios fall back to the first method's rank
  std::sort(rows.begin(), rows.end(), [](const Joined& u, const Joined& v) {
    if (u.cents != v.cents) return u.cents > v.cents;
    return u.x->rank < v.x->rank;
  });
  if (a.top && a.top < rows.size()) rows.resize(a.top);
  const std::string m1 = em::to_string(methods[0]), m2 = em::to_string(methods[1]);
  Output out({"word", "expected_T_" + m1, "expected_T_e6_" + m1, "rank_" + m1, "expected_T_" + m2,
              "expected_T_e6_" + m2, "rank_" + m2, "ratio", "minimal_period"});
  for (const auto& j : rows) {
    char ratio[32];
    std::snprintf(ratio, sizeof ratio, "%.2f", j.ratio);
    out.row({j.x->result.word.str(p.alphabet), num(j.x->result.expected_T), num(j.x->result.expected_T / 1e6),
             std::to_string(j.x->rank), num(j.y->result.expected_T), num(j.y->result.expected_T / 1e6),
             std::to_string(j.y->rank), a.fmt() == Format::Csv ? num(j.ratio) : ratio,
             std::to_string(j.x->minimal_period)});
  }
  out.print(std::cout, a.fmt());
}

// ---------------------------------------------------------------- corr

struct CorrArgs : Common {
  std::vector<std::string> words;
  std::string alphabet;
};

void run_corr(const CorrArgs& a) {
  const em::Alphabet al = pick_alphabet(a.alphabet, "", a.words);
  const em::Word w1 = em::Word::parse(al, a.words[0]);
  const em::Word w2 = em::Word::parse(al, a.words.size() > 1 ? a.words[1] : a.words[0]);
  const auto c = em::correlation_set(w1, w2);
  if (a.fmt() == Format::Table) {
    std::cout << show_set(c, al) << '\n';
    return;
  }
  Output out({"word", "length"});
  for (const auto& w : c) out.row({show(w, al), std::to_string(w.size())});
  out.print(std::cout, a.fmt());
}

// ---------------------------------------------------------------- codes

struct CodesArgs : Common {
  std::string word, alphabet, params, type;
};

void run_codes(const CodesArgs& a) {
  const em::Alphabet al = pick_alphabet(a.alphabet, a.params, {a.word});
  const em::LetterDistribution nu = pick_nu(a.params, al);
  const em::Word b = em::Word::parse(al, a.word);
  const em::CodeMatrix k = em::code_matrix(em::neighbors(b, al.size()));
  const em::CodeMatrix kbar = em::constrained_code_matrix(b, al.size());
  const em::RFMatrix gf = em::marked_code_gf(b, kbar, nu, parse_type(a.type, al));
  const auto& v = kbar.words;

  if (a.fmt() == Format::Csv) {
    Output out({"i", "j", "v_i", "v_j", "K", "K_bar", "K_bar_gf"});
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = 0; j < v.size(); ++j)
        out.row({std::to_string(i + 1), std::to_string(j + 1), show(v[i], al), show(v[j], al),
                 show_set(k.codes[i][j], al), show_set(kbar.codes[i][j], al), gf(i, j).to_string()});
    out.print(std::cout, Format::Csv);
    return;
  }
  auto matrix = [&](const std::string& title, auto cell) {
    std::cout << title << '\n';
    std::vector<std::string> header{""};
    for (const auto& w : v) header.push_back(show(w, al));
    Output out(header);
    for (std::size_t i = 0; i < v.size(); ++i) {
      std::vector<std::string> r{show(v[i], al)};
      for (std::size_t j = 0; j < v.size(); ++j) r.push_back(cell(i, j));
      out.row(r);
    }
    out.print(std::cout, Format::Table);
    std::cout << '\n';
  };
  std::cout << "d(b) = " << show_set(v, al) << "\n\n";
  matrix("K", [&](std::size_t i, std::size_t j) { return show_set(k.codes[i][j], al); });
  matrix("K_bar", [&](std::size_t i, std::size_t j) { return show_set(kbar.codes[i][j], al); });
  matrix("K_bar(z,t)", [&](std::size_t i, std::size_t j) { return gf(i, j).to_string(); });
}

// ---------------------------------------------------------------- gf

struct GfArgs : Common {
  std::string word, params = "binary-uniform", type;
  std::size_t coeffs = 0;
};

void run_gf(const GfArgs& a) {
  const em::ModelParams p = em::load_params(a.params);
  const em::Word b = em::Word::parse(p.alphabet, a.word);
  const em::ClumpAutomaton ca = em::clump_automaton(b, p.alphabet.size());
  const em::MutationFilter filter = parse_type(a.type, p.alphabet);
  if (a.coeffs == 0) {
    const em::RatFun f = em::gf_from_clump_automaton(ca, p.nu, filter);
    if (a.fmt() == Format::Csv) {
      Output out({"word", "type", "F"});
      out.row({a.word, filter ? show_type(*filter, p.alphabet) : "all", f.to_string()});
      out.print(std::cout, Format::Csv);
    } else {
      std::cout << "F(z,t) = " << f.to_string() << '\n';
    }
    return;
  }
  const auto series = em::clump_series(ca, p.nu, a.coeffs, filter);
  Output out({"n", "hits", "mass", "mass_exact"});
  for (std::size_t n = 0; n < series.size(); ++n)
    for (std::size_t h = 0; h < series[n].coeffs().size(); ++h) {
      const em::Rational& c = series[n].coeffs()[h];
      if (c != 0) out.row({std::to_string(n), std::to_string(h), num(c), c.get_str()});
    }
  out.print(std::cout, a.fmt());
}

// ---------------------------------------------------------------- asym

struct AsymArgs : Common {
  std::string word, params = "binary-uniform", route = "auto";
};

void run_asym(const AsymArgs& a) {
  const em::ModelParams p = em::load_params(a.params);
  const em::Word b = em::Word::parse(p.alphabet, a.word);
  const em::AsymptoticRoute route = a.route == "exact"      ? em::AsymptoticRoute::Exact
                                    : a.route == "spectral" ? em::AsymptoticRoute::Spectral
                                                            : em::AsymptoticRoute::Auto;
  const em::AsymptoticConstants c = em::asymptotics(b, p, route);
  Output out({"quantity", "value"});
  out.row({"tau", num(c.tau)});
  out.row({"psi", num(c.psi)});
  out.row({"phi1", num(c.phi1)});
  out.row({"phi2", num(c.phi2)});
  out.row({"C1", num(c.C1)});
  out.row({"C2", num(c.C2)});
  out.row({"pn_slope", num(c.pn_slope)});
  out.row({"pn_intercept", num(c.pn_intercept)});
  out.row({"decay", num(c.decay)});
  out.row({"route", c.exact ? "exact" : "spectral"});
  for (const auto& t : c.per_type) {
    out.row({"c1[" + show_type(t.type, p.alphabet) + "]", num(t.c1)});
    out.row({"c2[" + show_type(t.type, p.alphabet) + "]", num(t.c2)});
  }
  out.print(std::cout, a.fmt());
}

// ---------------------------------------------------------------- automaton

struct AutomatonArgs : Common {
  std::string word, alphabet, type;
  bool dot = false;
};

void run_automaton(const AutomatonArgs& a) {
  const em::Alphabet al = pick_alphabet(a.alphabet, "", {a.word});
  const em::ClumpAutomaton ca = em::clump_automaton(em::Word::parse(al, a.word), al.size());
  const em::MutationFilter filter = parse_type(a.type, al);
  if (a.dot) {
    std::cout << em::to_dot(ca, al, filter);
    return;
  }
  Output out({"state", "label", "occurrence", "ebar", "theta", "transitions"});
  for (std::size_t s = 0; s < ca.labels.size(); ++s) {
    std::string moves;
    for (std::size_t c = 0; c < al.size(); ++c) {
      const int to = ca.dfa.delta[s][c];
      if (to == em::Dfa::kPruned) continue;
      if (!moves.empty()) moves += ' ';
      moves += std::string(ca.mark(static_cast<int>(s), static_cast<int>(c), filter) ? "~" : "") + al.symbol(c) +
               ":" + std::to_string(to);
    }
    const auto th = ca.theta.find(static_cast<int>(s));
    out.row({std::to_string(s), show(ca.labels[s], al), ca.occurrence[s] ? "1" : "0", ca.ebar[s] ? "1" : "0",
             th == ca.theta.end() ? "" : show(th->second, al), moves});
  }
  out.print(std::cout, a.fmt());
}

// ---------------------------------------------------------------- oracle

struct OracleArgs : Common {
  std::string word, params = "binary-uniform";
  std::size_t n = 10;
  bool census = false, pn = false;
  std::uint64_t mc = 0, seed = 1;
};

void run_oracle(const OracleArgs& a) {
  const em::ModelParams p = em::load_params(a.params);
  const em::Word b = em::Word::parse(p.alphabet, a.word);
  if (a.pn) {
    const em::Rational x = em::exact_pn_tiny(b, a.n, p);
    Output out({"word", "n", "p_n", "p_n_exact"});
    out.row({a.word, std::to_string(a.n), num(x), x.get_str()});
    out.print(std::cout, a.fmt());
    return;
  }
  if (a.mc) {
    const auto e = em::monte_carlo_pn(b, a.n, p, a.mc, a.seed);
    Output out({"word", "n", "trials", "seed", "p_n", "std_error"});
    out.row({a.word, std::to_string(a.n), std::to_string(e.trials), std::to_string(a.seed), num(e.p),
             num(e.std_error)});
    out.print(std::cout, a.fmt());
    return;
  }
  const em::EnumerationReport r = em::enumerate(b, a.n, p.nu);
  Output out({"quantity", "value", "exact"});
  out.row({"avoid_count", std::to_string(r.avoid_count), std::to_string(r.avoid_count)});
  out.row({"avoid_mass", num(r.avoid_mass), r.avoid_mass.get_str()});
  out.row({"hit_sum", num(r.hit_sum), r.hit_sum.get_str()});
  if (r.avoid_mass != 0) {
    const em::Rational cond = r.hit_sum / r.avoid_mass;
    out.row({"conditioned", num(cond), cond.get_str()});
  }
  for (const auto& [t, s] : r.typed_hit_sums) out.row({"hit_sum[" + show_type(t, p.alphabet) + "]", num(s), s.get_str()});
  for (const auto& [h, m] : r.census) out.row({"census[" + std::to_string(h) + "]", num(m), m.get_str()});
  out.print(std::cout, a.fmt());
}

// ---------------------------------------------------------------- series

struct SeriesArgs : Common {
  std::vector<std::string> words;
  std::string params = "binary-uniform";
  std::size_t max = 200;
};

void run_series(const SeriesArgs& a) {
  const em::ModelParams p = em::load_params(a.params);
  Output out({"word", "n", "avoid", "hits", "conditioned"});
  for (const auto& w : a.words) {
    const em::HitSeries s = em::hit_series(em::Word::parse(p.alphabet, w), p.alphabet.size(), p.nu, a.max);
    for (std::size_t n = 0; n <= a.max; ++n)
      out.row({w, std::to_string(n), num(s.avoid[n]), num(s.hits[n]), num(s.hits[n] / s.avoid[n])});
  }
  // series is meant for plotting, so CSV is the default here
  out.print(std::cout, a.format == "table" ? Format::Table : Format::Csv);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Waiting times for k-mer emergence under single-step mutation"};
  app.require_subcommand(1);

  WaitArgs wait;
  auto* w = app.add_subcommand("wait", "p_n and E(T_n) for one word");
  w->add_option("word", wait.word)->required();
  w->add_option("--length,-n", wait.length, "Sequence length")->check(CLI::PositiveNumber);
  w->add_option("--params", wait.params, "table1, binary-uniform or a params file");
  w->add_option("--method", wait.method, "bv, bnn or clump");
  add_format(w, wait);

  ScanArgs scan;
  auto* s = app.add_subcommand("scan", "Rank all k-mers by expected waiting time");
  s->add_option("--k", scan.k, "Word length")->check(CLI::Range(2, 11));
  s->add_option("--length,-n", scan.length, "Sequence length")->check(CLI::PositiveNumber);
  s->add_option("--params", scan.params, "table1, binary-uniform or a params file");
  s->add_option("--method", scan.methods, "One method, or two (comma separated) for a ratio table")
      ->delimiter(',');
  s->add_option("--top", scan.top, "Keep this many rows");
  s->add_option("--threads", scan.threads, "Worker threads (0: all cores)");
  add_format(s, scan);

  CorrArgs corr;
  auto* c = app.add_subcommand("corr", "Correlation set of two words");
  c->add_option("words", corr.words)->required()->expected(1, 2);
  c->add_option("--alphabet", corr.alphabet, "Alphabet symbols (default AC or ACGT)");
  add_format(c, corr);

  CodesArgs codes;
  auto* k = app.add_subcommand("codes", "Code matrices K and K_bar of the neighbors of a word");
  k->add_option("word", codes.word)->required();
  k->add_option("--alphabet", codes.alphabet, "Alphabet symbols (default AC or ACGT)");
  k->add_option("--params", codes.params, "Letter distribution source (default uniform)");
  k->add_option("--type", codes.type, "Mark only this mutation type, e.g. A>C");
  add_format(k, codes);

  GfArgs gf;
  auto* g = app.add_subcommand("gf", "Bivariate generating function F_b(z,t)");
  g->add_option("word", gf.word)->required();
  g->add_option("--params", gf.params, "table1, binary-uniform or a params file");
  g->add_option("--type", gf.type, "Mark only this mutation type, e.g. A>C");
  g->add_option("--coeffs", gf.coeffs, "Print [z^n t^h] for n up to this bound instead");
  add_format(g, gf);

  AsymArgs asym;
  auto* y = app.add_subcommand("asym", "Asymptotic constants of the hit expectation");
  y->add_option("word", asym.word)->required();
  y->add_option("--params", asym.params, "table1, binary-uniform or a params file");
  y->add_option("--route", asym.route, "auto, exact or spectral")
      ->check(CLI::IsMember({"auto", "exact", "spectral"}));
  add_format(y, asym);

  AutomatonArgs aut;
  auto* u = app.add_subcommand("automaton", "Clump automaton of the neighbors of a word");
  u->add_option("word", aut.word)->required();
  u->add_option("--alphabet", aut.alphabet, "Alphabet symbols (default AC or ACGT)");
  u->add_option("--type", aut.type, "Mark only this mutation type, e.g. A>C");
  u->add_flag("--dot", aut.dot, "Graphviz output");
  add_format(u, aut);

  OracleArgs oracle;
  auto* o = app.add_subcommand("oracle", "Brute-force reference values");
  o->add_option("word", oracle.word)->required();
  o->add_option("--n", oracle.n, "Sequence length")->required();
  o->add_option("--params", oracle.params, "table1, binary-uniform or a params file");
  auto* census_flag = o->add_flag("--census", oracle.census, "Exhaustive hit census (default)");
  auto* pn_flag = o->add_flag("--pn", oracle.pn, "Exact p_n by enumeration of S(0)");
  auto* mc_opt = o->add_option("--mc", oracle.mc, "Monte Carlo estimate with this many trials");
  o->add_option("--seed", oracle.seed, "Monte Carlo seed");
  census_flag->excludes(pn_flag)->excludes(mc_opt);
  pn_flag->excludes(mc_opt);
  add_format(o, oracle);

  SeriesArgs series;
  auto* r = app.add_subcommand("series", "f_n, E(H_n) and E(H_n | avoid) for plotting");
  r->add_option("words", series.words)->required();
  r->add_option("--params", series.params, "table1, binary-uniform or a params file");
  r->add_option("--max", series.max, "Largest n");
  r->add_option("--format", series.format, "Output mode (default csv)")->check(CLI::IsMember({"table", "csv"}));
  series.format = "csv";

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*w) run_wait(wait);
    if (*s) run_scan(scan);
    if (*c) run_corr(corr);
    if (*k) run_codes(codes);
    if (*g) run_gf(gf);
    if (*y) run_asym(asym);
    if (*u) run_automaton(aut);
    if (*o) run_oracle(oracle);
    if (*r) run_series(series);
  } catch (const std::length_error& e) {
    std::cerr << "guard exceeded: " << e.what() << '\n';
    return 3;
  } catch (const std::domain_error& e) {
    std::cerr << "bracket failure: " << e.what() << '\n';
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
