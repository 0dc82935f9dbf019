#include "emergence/params.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "builtin_params.hpp"

namespace emergence {

double ModelParams::max_mutation() const {
  double m = 0;
  for (std::size_t a = 0; a < p1.size(); ++a)
    for (std::size_t c = 0; c < p1.size(); ++c)
      if (a != c) m = std::max(m, p_d(a, c));
  return m;
}

ModelParams ModelParams::scaled_mutation(const Rational& factor) const {
  ModelParams out = *this;
  for (std::size_t a = 0; a < p1.size(); ++a) {
    Rational off = 0;
    for (std::size_t c = 0; c < p1.size(); ++c)
      if (a != c) {
        out.p1[a][c] = p1[a][c] * factor;
        off += p1[a][c];
      }
    out.p1[a][a] = p1[a][a] + off - off * factor;
  }
  return out;
}

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw std::invalid_argument("params line " + std::to_string(line) + ": " + what);
}

}  // namespace

ModelParams parse_params(std::istream& in) {
  std::string symbols;
  std::vector<Rational> nu;
  struct Entry {
    char from, to;
    Rational value;
    std::size_t line;
  };
  std::vector<Entry> entries;

  std::string raw;
  for (std::size_t line = 1; std::getline(in, raw); ++line) {
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::string key;
    if (!(ls >> key)) continue;
    std::string a, b, value, extra;
    if (key == "nu") {
      if (!(ls >> a >> value) || (ls >> extra) || a.size() != 1) fail(line, "expected 'nu SYMBOL VALUE'");
      if (symbols.find(a[0]) != std::string::npos) fail(line, "duplicate symbol");
      symbols.push_back(a[0]);
      try {
        nu.push_back(parse_rational(value));
      } catch (const std::invalid_argument& e) {
        fail(line, e.what());
      }
    } else if (key == "p") {
      if (!(ls >> a >> b >> value) || (ls >> extra) || a.size() != 1 || b.size() != 1)
        fail(line, "expected 'p FROM TO VALUE'");
      try {
        entries.push_back({a[0], b[0], parse_rational(value), line});
      } catch (const std::invalid_argument& e) {
        fail(line, e.what());
      }
    } else {
      fail(line, "unknown key '" + key + "'");
    }
  }

  ModelParams m{Alphabet(symbols), std::move(nu), {}};
  const std::size_t sigma = symbols.size();
  std::vector<std::vector<std::optional<Rational>>> p(sigma, std::vector<std::optional<Rational>>(sigma));
  for (const auto& e : entries) {
    if (!m.alphabet.contains(e.from) || !m.alphabet.contains(e.to)) fail(e.line, "unknown symbol");
    auto& slot = p[static_cast<std::size_t>(m.alphabet.index(e.from))][static_cast<std::size_t>(m.alphabet.index(e.to))];
    if (slot) fail(e.line, "duplicate entry");
    if (e.value < 0 || e.value > 1) fail(e.line, "probability out of range");
    slot = e.value;
  }

  Rational total = 0;
  for (const auto& x : m.nu) {
    if (x < 0) throw std::invalid_argument("params: negative letter probability");
    total += x;
  }
  if (std::abs(to_double(total - 1)) > 1e-12) throw std::invalid_argument("params: nu does not sum to 1");

  m.p1.assign(sigma, std::vector<Rational>(sigma));
  for (std::size_t a = 0; a < sigma; ++a) {
    Rational row = 0;
    for (std::size_t c = 0; c < sigma; ++c) {
      if (!p[a][c]) throw std::invalid_argument(std::string("params: missing p ") + symbols[a] + " " + symbols[c]);
      m.p1[a][c] = *p[a][c];
      row += *p[a][c];
    }
    // the published table rounds its diagonal, so rows miss 1 by ~3e-8
    if (std::abs(to_double(row - 1)) > 1e-7)
      throw std::invalid_argument(std::string("params: row ") + symbols[a] + " does not sum to 1");
  }
  return m;
}

ModelParams load_params(const std::string& source) {
  if (source == "table1") {
    std::istringstream in(builtin::kTable1);
    return parse_params(in);
  }
  if (source == "binary-uniform") {
    std::istringstream in(builtin::kBinaryUniform);
    return parse_params(in);
  }
  std::ifstream in(source);
  if (!in) throw std::invalid_argument("cannot open params file '" + source + "'");
  return parse_params(in);
}

ModelParams binary_uniform_params(const Rational& p_mut) {
  return ModelParams{Alphabet::binary(), uniform_distribution(2), {{1 - p_mut, p_mut}, {p_mut, 1 - p_mut}}};
}

}  // namespace emergence
