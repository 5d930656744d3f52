#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "bpl/bracket.hpp"
#include "bpl/constants.hpp"
#include "bpl/lattice.hpp"
#include "bpl/multiindex.hpp"
#include "bpl/polynomial.hpp"
#include "bpl/tetra_average.hpp"

namespace bpl {

using nlohmann::json;

inline std::string fmt_num(double v) {
  if (v == kInf) return "inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

/// RFC-4180 quoting.
inline std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string csv_line(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ",";
    out += csv_quote(cells[i]);
  }
  return out + "\n";
}

/// One row of the constants CSV schema.
struct ResultRow {
  std::string quantity;
  int n = 0, m = 0;
  std::string family;
  double p = 0, q = 0;
  std::string generator;
  double lo = 0, hi = 0;
  std::string method;
  std::vector<ChainEntry> chain;
  std::uint64_t seed = 0;
  long long evals = 0;
  long long wall_ms = 0;
};

inline const char* kResultHeader =
    "quantity,n,m,family,p,q,J_generator,lo,hi,method,chain,seed,evals,wall_ms";

inline std::string chain_to_string(const std::vector<ChainEntry>& chain) {
  std::string s;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (i) s += ";";
    s += chain[i].name + "=" + fmt_num(chain[i].value);
  }
  return s;
}

inline std::string to_csv(const ResultRow& r) {
  return csv_line({r.quantity, std::to_string(r.n), std::to_string(r.m), r.family, fmt_num(r.p),
                   fmt_num(r.q), r.generator, fmt_num(r.lo), fmt_num(r.hi), r.method,
                   chain_to_string(r.chain), std::to_string(r.seed), std::to_string(r.evals),
                   std::to_string(r.wall_ms)});
}

inline json to_json(const MultiIndex& a) { return json(a.e); }

inline json to_json(const IndexSetSpec& s) {
  json params = json::array();
  if (s.gen == IndexSetSpec::Gen::explicit_list) {
    for (const auto& a : s.list) params.push_back(to_json(a));
  } else {
    params.push_back(s.m);
    if (s.gen == IndexSetSpec::Gen::support_level) params.push_back(s.level);
  }
  return json{{"n", s.n}, {"generator", s.generator_name()}, {"params", params}};
}

inline json to_json(const LatticeSpec& X) {
  json j{{"family", X.is_lp() ? "lp" : "lorentz"}, {"p", X.p}, {"n", X.n}};
  if (X.is_lorentz()) j["q"] = X.q;
  return j;
}

inline json to_json(const Polynomial& P) {
  json arr = json::array();
  for (const auto& [a, c] : P.coefficients())
    arr.push_back(json{{"alpha", a.e}, {"re", c.real()}, {"im", c.imag()}});
  return arr;
}

inline json to_json(const Bracket& b) {
  return json{{"lo", b.lo}, {"hi", b.hi}, {"method", b.method}, {"evaluations", b.evaluations}};
}

inline json to_json(const ResultRow& r) {
  json chain = json::object();
  for (const auto& e : r.chain) chain[e.name] = e.value;
  return json{{"quantity", r.quantity}, {"n", r.n},        {"m", r.m},
              {"family", r.family},     {"p", r.p},        {"q", r.q},
              {"J_generator", r.generator}, {"lo", r.lo},  {"hi", r.hi},
              {"method", r.method},     {"chain", chain},  {"seed", r.seed},
              {"evals", r.evals},       {"wall_ms", r.wall_ms}};
}

inline json to_json(const TetraCheckReport& r) {
  json wit = json::array();
  for (const auto& w : r.violation_witnesses) {
    json cs = json::array();
    for (const auto& c : w) cs.push_back(json{{"re", c.real()}, {"im", c.imag()}});
    wit.push_back(cs);
  }
  return json{{"grid", json{{"n", r.n}, {"m", r.m}, {"trials", r.trials}}},
              {"max_ratio", r.max_ratio},
              {"kappa_pow_m", r.kappa_pow_m},
              {"max_scaled", r.max_scaled},
              {"violations", r.violations},
              {"witnesses", wit}};
}

}  // namespace bpl
