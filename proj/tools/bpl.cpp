// bpl: desk-scale numerical laboratory for the local Banach-space constants
// of multivariate polynomial spaces.
//
// Subcommands: idxset | char | lambda-hat | chimon | bohr | constants |
//              lorentz-suite | verify | sweep
// Exit codes: 0 ok, 2 argument error, 3 enumeration cap exceeded,
//             4 verification failure.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "bpl/io.hpp"
#include "bpl/parallel.hpp"
#include "bpl/verify.hpp"

using namespace bpl;

namespace {

struct GlobalOpts {
  std::uint64_t seed = 0;
  int restarts = 64;
  int iters = 500;
  double tol = 1e-8;
  std::uint64_t cap = kDefaultEnumCap;
  long long bnb_cells = 200000;
  std::string out;
  std::string format = "csv";
  bool timing = false;

  Budget budget() const { return Budget{restarts, iters, tol, seed, cap, bnb_cells}; }
};

double parse_exponent(const std::string& s) {
  if (s == "inf" || s == "Inf" || s == "INF") return kInf;
  return std::stod(s);
}

LatticeSpec make_lattice(const std::string& family, const std::string& p, const std::string& q,
                         int n) {
  if (family == "lp") return LatticeSpec::Lp(parse_exponent(p), n);
  if (family == "lorentz")
    return LatticeSpec::Lorentz(parse_exponent(p), q.empty() ? parse_exponent(p) : parse_exponent(q), n);
  throw CLI::ValidationError("--family must be lp or lorentz");
}

IndexSetSpec make_index_set(const std::string& gen, int n, int m, int level) {
  if (gen == "full") return IndexSetSpec::Full(n, m);
  if (gen == "full_upto") return IndexSetSpec::FullUpTo(n, m);
  if (gen == "tetra") return IndexSetSpec::Tetra(n, m);
  if (gen == "tetra_upto") return IndexSetSpec::TetraUpTo(n, m);
  if (gen == "even") return IndexSetSpec::Even(n, m);
  if (gen == "support_level") return IndexSetSpec::SupportLevel(n, m, level);
  throw CLI::ValidationError("--gen: unknown generator " + gen);
}

// "1.5,2,3" and "2..16x2" range syntax (inclusive, step after 'x')
std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto dots = item.find("..");
    if (dots != std::string::npos) {
      double a = parse_exponent(item.substr(0, dots));
      std::string rest = item.substr(dots + 2);
      double step = 1.0;
      auto x = rest.find('x');
      if (x != std::string::npos) {
        step = std::stod(rest.substr(x + 1));
        rest = rest.substr(0, x);
      }
      double b = parse_exponent(rest);
      for (double v = a; v <= b + 1e-12; v += step) out.push_back(v);
    } else {
      out.push_back(parse_exponent(item));
    }
  }
  return out;
}

class Output {
public:
  Output(const GlobalOpts& g, std::string command) : g_(g), command_(std::move(command)) {}

  void add_config(const std::string& key, const std::string& value) { config_[key] = value; }
  void add_row(ResultRow r) {
    if (!g_.timing) r.wall_ms = 0;
    rows_.push_back(std::move(r));
  }
  void add_failure(const std::string& f) { failures_.push_back(f); }
  const std::vector<std::string>& failures() const { return failures_; }

  void flush() {
    std::string body;
    if (g_.format == "json") {
      json doc;
      doc["config"] = config_;
      doc["config"]["command"] = command_;
      doc["config"]["seed"] = g_.seed;
      doc["rows"] = json::array();
      for (const auto& r : rows_) doc["rows"].push_back(to_json(r));
      doc["failures"] = failures_;
      body = doc.dump(2) + "\n";
    } else {
      body = "# command=" + command_ + " seed=" + std::to_string(g_.seed) +
             " restarts=" + std::to_string(g_.restarts) + " iters=" + std::to_string(g_.iters) +
             " tol=" + fmt_num(g_.tol);
      for (const auto& [k, v] : config_) body += " " + k + "=" + v;
      body += "\n";
      body += std::string(kResultHeader) + "\n";
      for (const auto& r : rows_) body += to_csv(r);
      for (const auto& f : failures_) body += "# FAILURE: " + f + "\n";
    }
    if (g_.out.empty()) {
      std::fputs(body.c_str(), stdout);
    } else {
      std::ofstream f(g_.out, std::ios::binary);
      f << body;
    }
  }

private:
  const GlobalOpts& g_;
  std::string command_;
  std::map<std::string, std::string> config_;
  std::vector<ResultRow> rows_;
  std::vector<std::string> failures_;
};

ResultRow quantity_row(const std::string& quantity, const IndexSetSpec& J, const LatticeSpec& X,
                       const Bracket& b, const std::vector<ChainEntry>& chain,
                       const GlobalOpts& g) {
  ResultRow r;
  r.quantity = quantity;
  r.n = X.n;
  r.m = J.m;
  r.family = X.is_lp() ? "lp" : "lorentz";
  r.p = X.p;
  r.q = X.is_lorentz() ? X.q : X.p;
  r.generator = J.generator_name();
  r.lo = b.lo;
  r.hi = b.hi;
  r.method = b.method;
  r.chain = chain;
  r.seed = g.seed;
  r.evals = b.evaluations;
  return r;
}

ResultRow compute_quantity(const std::string& quantity, const IndexSetSpec& J,
                           const LatticeSpec& X, int mmax, const GlobalOpts& g) {
  auto t0 = std::chrono::steady_clock::now();
  ResultRow r;
  if (quantity == "lambda-hat") {
    auto rep = lambda_hat(J, X, g.budget());
    r = quantity_row("lambda_hat", J, X, rep.bracket, rep.chain, g);
  } else if (quantity == "chimon") {
    auto rep = chi_mon_bracket(J, X, g.budget());
    r = quantity_row("chi_mon", J, X, rep.bracket, rep.chain, g);
  } else if (quantity == "bohr") {
    int mm = mmax > 0 ? mmax : default_bohr_mmax(X.n);
    auto rep = bohr_bracket(J, X, mm, g.budget());
    r = quantity_row("bohr", J, X, rep.bracket, rep.chain, g);
    r.m = rep.m_max;
  } else {
    throw CLI::ValidationError("unknown quantity " + quantity);
  }
  auto t1 = std::chrono::steady_clock::now();
  r.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bpl: brackets for local constants of polynomial spaces"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts g;
  app.add_option("--seed", g.seed, "RNG seed (default 0)");
  app.add_option("--budget", g.restarts, "optimizer restarts");
  app.add_option("--iters", g.iters, "optimizer iterations per restart");
  app.add_option("--tol", g.tol, "optimizer tolerance");
  app.add_option("--cap", g.cap, "enumeration cap");
  app.add_option("--bnb-cells", g.bnb_cells, "branch-and-bound cell budget");
  app.add_option("--out", g.out, "output path (default stdout)");
  app.add_option("--format", g.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("--timing", g.timing, "emit wall_ms (voids byte determinism)");

  int n = 2, m = 2, level = 1, mmax = 0;
  std::string gen = "full", family = "lp", p = "2", q, alpha_str, suite = "all";
  bool kappa_flag = false;
  std::uint64_t kappa_primes = 1000000;
  std::string rw_args, lebesgue_m, moment_args, reference_args, kadets_dim;
  std::string sweep_quantity = "lambda-hat", n_list = "2", m_list = "2", p_list = "2", q_list;
  double suite_r = 2.0, suite_s = 2.0;

  auto add_instance = [&](CLI::App* cmd, bool with_gen) {
    cmd->add_option("--n", n, "dimension");
    cmd->add_option("--family", family, "lp|lorentz");
    cmd->add_option("--p", p, "primary exponent (number or inf)");
    cmd->add_option("--q", q, "secondary Lorentz exponent");
    if (with_gen) {
      cmd->add_option("--gen", gen, "full|full_upto|tetra|tetra_upto|even|support_level");
      cmd->add_option("--m", m, "degree");
      cmd->add_option("--level", level, "support level L");
    }
  };

  auto* idxset = app.add_subcommand("idxset", "enumerate an index set");
  add_instance(idxset, true);

  auto* charc = app.add_subcommand("char", "characteristic of a multi-index");
  add_instance(charc, false);
  charc->add_option("--alpha", alpha_str, "comma-separated exponents")->required();

  auto* lh = app.add_subcommand("lambda-hat", "polynomial projection constant bracket");
  add_instance(lh, true);
  auto* chim = app.add_subcommand("chimon", "monomial unconditionality constant bracket");
  add_instance(chim, true);
  auto* bohr = app.add_subcommand("bohr", "Bohr radius bracket");
  add_instance(bohr, true);
  bohr->add_option("--mmax", mmax, "degree truncation (default max(8, 2 log n))");

  auto* cons = app.add_subcommand("constants", "closed-form constants");
  cons->add_flag("--kappa", kappa_flag, "partial kappa product over the first primes");
  cons->add_option("--primes", kappa_primes, "prime count for --kappa (default 1e6)");
  cons->add_option("--rw", rw_args, "Ryll-Wojtaszczyk constant: m,n");
  cons->add_option("--kadets", kadets_dim, "Kadets-Snobar bound for a dimension");
  cons->add_option("--lebesgue", lebesgue_m, "Lebesgue constant of degree m");
  cons->add_option("--moment", moment_args, "r_m moment: m,k");
  cons->add_option("--reference", reference_args, "reference curve: name,n[,r[,s[,m]]]");

  auto* lor = app.add_subcommand("lorentz-suite", "Lorentz bound suite");
  lor->add_option("--m", m, "degree");
  lor->add_option("--n", n, "dimension");
  lor->add_option("--r", suite_r, "Lorentz r");
  lor->add_option("--s", suite_s, "Lorentz s");

  auto* ver = app.add_subcommand("verify", "run the verification suite");
  ver->add_option("--suite", suite, "all or a suite name");

  auto* sweep = app.add_subcommand("sweep", "grid sweep over instances (row-major order)");
  sweep->add_option("--quantity", sweep_quantity, "lambda-hat|chimon|bohr");
  sweep->add_option("--gen", gen, "index-set generator");
  sweep->add_option("--family", family, "lp|lorentz");
  sweep->add_option("--level", level, "support level L");
  sweep->add_option("--mmax", mmax, "bohr truncation");
  sweep->add_option("--n", n_list, "n list, e.g. 2..16x2");
  sweep->add_option("--m", m_list, "m list");
  sweep->add_option("--p", p_list, "p list");
  sweep->add_option("--q", q_list, "q list (lorentz)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (idxset->parsed()) {
      Output out(g, "idxset");
      auto spec = make_index_set(gen, n, m, level);
      out.add_config("generator", gen);
      out.add_config("cardinality", cardinality(spec).to_string());
      for (const auto& a : enumerate(spec, g.cap)) {
        ResultRow r;
        r.quantity = "index";
        r.n = n;
        r.m = a.order();
        r.generator = a.to_string();
        r.method = "class_size=" + class_size(a).to_string();
        r.lo = a.support_size();
        r.hi = a.tetrahedral() ? 1 : 0;
        r.seed = g.seed;
        out.add_row(std::move(r));
      }
      out.flush();
      return 0;
    }
    if (charc->parsed()) {
      Output out(g, "char");
      std::vector<int> exps;
      for (double v : parse_list(alpha_str)) exps.push_back(static_cast<int>(v));
      MultiIndex a(exps);
      auto X = make_lattice(family, p, q, static_cast<int>(exps.size()));
      auto res = characteristic(a, X, g.budget());
      ResultRow r;
      r.quantity = "characteristic";
      r.n = X.n;
      r.m = a.order();
      r.family = X.is_lp() ? "lp" : "lorentz";
      r.p = X.p;
      r.q = X.is_lorentz() ? X.q : X.p;
      r.generator = a.to_string();
      r.lo = res.bracket.lo;
      r.hi = res.bracket.hi;
      r.method = res.bracket.method;
      for (const auto& [k, v] : res.bounds) r.chain.push_back({k, v});
      r.seed = g.seed;
      r.evals = res.bracket.evaluations;
      out.add_row(std::move(r));
      out.flush();
      return 0;
    }
    if (lh->parsed() || chim->parsed() || bohr->parsed()) {
      std::string quantity = lh->parsed() ? "lambda-hat" : (chim->parsed() ? "chimon" : "bohr");
      Output out(g, quantity);
      auto X = make_lattice(family, p, q, n);
      auto J = make_index_set(gen, n, m, level);
      out.add_row(compute_quantity(quantity, J, X, mmax, g));
      out.flush();
      return 0;
    }
    if (cons->parsed()) {
      Output out(g, "constants");
      auto emit = [&](const std::string& name, double v, int nn, int mm,
                      std::vector<ChainEntry> chain = {}) {
        ResultRow r;
        r.quantity = name;
        r.n = nn;
        r.m = mm;
        r.lo = r.hi = v;
        r.method = "closed_form";
        r.chain = std::move(chain);
        r.seed = g.seed;
        out.add_row(std::move(r));
      };
      if (kappa_flag)
        emit("kappa", kappa(static_cast<std::size_t>(kappa_primes)), 0, 0,
             {{"primes", static_cast<double>(kappa_primes)}});
      if (!rw_args.empty()) {
        auto v = parse_list(rw_args);
        emit("rw_projection",
             rw_projection_constant(static_cast<int>(v.at(0)), static_cast<int>(v.at(1))),
             static_cast<int>(v.at(1)), static_cast<int>(v.at(0)));
      }
      if (!kadets_dim.empty()) emit("kadets_snobar", kadets_snobar(std::stod(kadets_dim)), 0, 0);
      if (!lebesgue_m.empty())
        emit("lebesgue", lebesgue_constant(std::stoi(lebesgue_m)), 0, std::stoi(lebesgue_m));
      if (!moment_args.empty()) {
        auto v = parse_list(moment_args);
        auto mom = moment(static_cast<int>(v.at(0)), static_cast<int>(v.at(1)));
        emit("moment_re", mom.real(), 0, static_cast<int>(v.at(0)),
             {{"im", mom.imag()}, {"k", v.at(1)}});
      }
      if (!reference_args.empty()) {
        std::stringstream ss(reference_args);
        std::string name;
        std::getline(ss, name, ',');
        std::string rest;
        std::getline(ss, rest);
        auto v = parse_list(rest);
        double rn = v.at(0);
        emit("reference_" + name,
             reference_asymptotic(name, rn, v.size() > 1 ? v[1] : 0, v.size() > 2 ? v[2] : 0,
                                  v.size() > 3 ? v[3] : 0),
             static_cast<int>(rn), 0);
      }
      out.flush();
      return 0;
    }
    if (lor->parsed()) {
      Output out(g, "lorentz-suite");
      auto rep = lorentz_bound_suite(m, n, suite_r, suite_s, g.budget());
      for (const auto& rw_ : rep.rows) {
        ResultRow r;
        r.quantity = "lorentz_lambda_hat";
        r.n = n;
        r.m = m;
        r.family = "lorentz";
        r.p = suite_r;
        r.q = suite_s;
        r.generator = rw_.family + (rw_.level ? "_" + std::to_string(rw_.level) : "");
        r.lo = rw_.bracket.lo;
        r.hi = rw_.bracket.hi;
        r.method = rw_.bracket.method;
        r.chain = {{"rhs", rw_.rhs}, {"c_implied", rw_.c_implied}};
        r.seed = g.seed;
        r.evals = rw_.bracket.evaluations;
        out.add_row(std::move(r));
      }
      ResultRow pw;
      pw.quantity = "lorentz_pointwise";
      pw.n = n;
      pw.m = m;
      pw.family = "lorentz";
      pw.p = suite_r;
      pw.q = suite_s;
      pw.generator = "tetra_even";
      pw.lo = rep.estimate1_violations;
      pw.hi = rep.estimate2_violations;
      pw.method = "sampled_" + std::to_string(rep.pointwise_samples);
      pw.seed = g.seed;
      out.add_row(std::move(pw));
      if (rep.estimate1_violations || rep.estimate2_violations)
        out.add_failure("pointwise estimate violations");
      out.flush();
      return out.failures().empty() ? 0 : 4;
    }
    if (ver->parsed()) {
      Output out(g, "verify");
      auto results = run_verify(suite, g.budget());
      bool all_pass = true;
      for (auto& res : results) {
        for (auto& r : res.rows) out.add_row(std::move(r));
        std::fprintf(stderr, "%-28s %s%s%s\n", res.name.c_str(), res.pass ? "PASS" : "FAIL",
                     res.detail.empty() ? "" : "  ", res.detail.c_str());
        if (!res.pass) {
          all_pass = false;
          out.add_failure(res.name + ": " + res.detail);
        }
      }
      out.flush();
      return all_pass ? 0 : 4;
    }
    if (sweep->parsed()) {
      Output out(g, "sweep");
      auto ns = parse_list(n_list);
      auto ms = parse_list(m_list);
      auto ps = parse_list(p_list);
      auto qs = q_list.empty() ? std::vector<double>{} : parse_list(q_list);
      struct Item {
        int n, m;
        double p, q;
      };
      std::vector<Item> items;  // row-major: n, then m, then p, then q
      for (double nn : ns)
        for (double mm2 : ms)
          for (double pp : ps) {
            if (qs.empty())
              items.push_back({static_cast<int>(nn), static_cast<int>(mm2), pp, pp});
            else
              for (double qq : qs)
                items.push_back({static_cast<int>(nn), static_cast<int>(mm2), pp, qq});
          }
      std::vector<ResultRow> rows(items.size());
      parallel_for(items.size(), [&](std::size_t i) {
        const auto& it = items[i];
        LatticeSpec X = family == "lorentz" ? LatticeSpec::Lorentz(it.p, it.q, it.n)
                                            : LatticeSpec::Lp(it.p, it.n);
        IndexSetSpec J = make_index_set(gen, it.n, it.m, level);
        rows[i] = compute_quantity(sweep_quantity, J, X, mmax, g);
      });
      for (auto& r : rows) out.add_row(std::move(r));
      out.flush();
      return 0;
    }
  } catch (const capacity_error& e) {
    std::fprintf(stderr, "error: capacity: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
