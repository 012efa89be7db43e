#include "medianprime/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>

#include "medianprime/cascade.hpp"
#include "medianprime/errors.hpp"
#include "medianprime/exact.hpp"
#include "medianprime/primes.hpp"
#include "medianprime/products.hpp"
#include "medianprime/report_io.hpp"
#include "medianprime/saddle.hpp"
#include "medianprime/specfun.hpp"

namespace medianprime::cli {

namespace {

using io::fmt15;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SieveFlags {
  unsigned threads = 1;
  std::uint64_t segment = std::uint64_t{1} << 22;
  std::string prime_table;

  void attach(CLI::App* cmd) {
    cmd->add_option("--threads", threads, "worker threads for the sieve")->check(CLI::PositiveNumber);
    cmd->add_option("--segment", segment, "sieve segment length")->check(CLI::Range(1024.0, 1e10));
    cmd->add_option("--prime-table", prime_table, "binary base-prime table (MEDIANPRIME_PRIME_TABLE wins when set)");
  }

  [[nodiscard]] exact::SieveConfig config() const {
    exact::SieveConfig cfg;
    cfg.threads = threads;
    cfg.segment_size = segment;
    if (auto env = primes::table_path_from_env())
      cfg.prime_table = *env;
    else if (!prime_table.empty())
      cfg.prime_table = prime_table;
    return cfg;
  }
};

void write_text(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

std::string csv_row(const std::vector<std::string>& cells) {
  std::string s;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) s += ',';
    s += cells[i];
  }
  return s + '\n';
}

// ---- exact ----------------------------------------------------------------

struct ExactCmd {
  double x = 0.0;
  std::string mode = "omega";
  std::string format = "json";
  std::string output;
  bool no_law = false;
  SieveFlags sieve;

  int run(std::ostream& out) const {
    if (!(x >= 2.0)) throw UsageError("exact: --x must be >= 2");
    const auto m = exact::parse_mode(mode);
    const auto r = exact::exact_sum(x, m, sieve.config(), !no_law);
    std::string text;
    if (format == "json") {
      text = io::dump(io::to_json(r)) + "\n";
    } else {
      text = csv_row({"x", "mode", "total", "odd_part", "even_part"}) +
             csv_row({fmt15(r.x), exact::to_string(r.mode), fmt15(r.total), fmt15(r.odd_part), fmt15(r.even_part)});
    }
    write_text(text, output, out);
    return kOk;
  }
};

// ---- compare --------------------------------------------------------------

struct CompareCmd {
  std::vector<double> grid;
  std::string mode = "Omega";
  int J = 1;
  double tol = 1e-6;
  std::string output;
  SieveFlags sieve;

  int run(std::ostream& out) const {
    if (grid.empty()) throw UsageError("compare: empty --grid");
    for (double x : grid)
      if (!(x >= 16.0)) throw UsageError("compare: grid values must be >= 16");
    const auto m = exact::parse_mode(mode);
    const auto reports = exact::exact_sum_grid(grid, m, sieve.config());
    std::string text;
    if (m == exact::MiddleMode::BIGOMEGA) {
      if (J < 1) throw UsageError("compare: --J must be >= 1");
      std::vector<double> c;
      for (int j = 1; j <= J; ++j) c.push_back(products::constant_c(j, tol).value);
      text = csv_row({"x", "exact", "asymptotic", "ratio", "scaled_deviation"});
      for (const auto& r : reports) {
        const double a = saddle::s_Omega_expansion(r.x, c);
        const double ratio = r.total / a;
        text += csv_row({fmt15(r.x), fmt15(r.total), fmt15(a), fmt15(ratio),
                         fmt15((ratio - 1.0) * std::pow(std::log(r.x), 1.0 / 6.0))});
      }
    } else {
      text = csv_row({"x", "xi", "rho", "nu", "main_term", "exact", "ratio"});
      for (const auto& r : reports) {
        const auto mt = saddle::s_omega_main_term(r.x);
        const double nu = saddle::solve_nu(mt.xi);
        text += csv_row({fmt15(r.x), fmt15(mt.xi), fmt15(mt.rho), fmt15(nu), fmt15(mt.value), fmt15(r.total),
                         fmt15(r.total / mt.value)});
      }
    }
    write_text(text, output, out);
    return kOk;
  }
};

// ---- constants ------------------------------------------------------------

struct ConstantsCmd {
  std::vector<int> js{1};
  double tol = 1e-6;
  std::uint64_t cutoff = 100'000'000ull;
  std::uint64_t max_cutoff = products::kMaxPrimeCutoff;
  std::string output;

  int run(std::ostream& out) const {
    if (!(tol > 0.0)) throw UsageError("constants: --tol must be positive");
    io::json arr = io::json::array();
    for (int j : js) {
      if (j < 1) throw UsageError("constants: --j must be >= 1");
      arr.push_back(io::to_json(products::constant_c(j, tol, cutoff, max_cutoff)));
    }
    const io::json doc = arr.size() == 1 ? arr[0] : arr;
    write_text(io::dump(doc) + "\n", output, out);
    return kOk;
  }
};

// ---- poly -----------------------------------------------------------------

struct PolyCmd {
  std::string family = "R";
  int j = 1;
  std::string output;

  int run(std::ostream& out) const {
    if (j < 0 || j > series::kMaxCascadeDepth)
      throw UsageError("poly: --j must lie in [0, " + std::to_string(series::kMaxCascadeDepth) + "]");
    series::PolyFamily f;
    if (family == "R")
      f = series::cascade_R(j);
    else if (family == "P")
      f = series::cascade_P(j);
    else
      throw UsageError("poly: --family must be R or P");
    io::json doc = io::to_json(f, j);
    doc["text"] = f.to_string(j);
    write_text(io::dump(doc) + "\n", output, out);
    return kOk;
  }
};

// ---- rho ------------------------------------------------------------------

struct RhoCmd {
  std::optional<double> xi;
  std::optional<double> x;
  double tol = 1e-12;
  std::string output;

  int run(std::ostream& out) const {
    if (xi.has_value() == x.has_value()) throw UsageError("rho: give exactly one of --xi, --x");
    if (!(tol > 0.0)) throw UsageError("rho: --tol must be positive");
    double v = 0.0;
    if (x) {
      if (!(*x > std::exp(std::exp(1.0)))) throw UsageError("rho: --x must exceed e^e");
      v = saddle::xi_of_x(*x);
    } else {
      v = *xi;
    }
    if (!(v > 1.0)) throw UsageError("rho: xi must exceed 1");
    auto s = saddle::solve_rho(v, tol);
    s.x = x;
    write_text(io::dump(io::to_json(s)) + "\n", output, out);
    return kOk;
  }
};

// ---- specfun-check --------------------------------------------------------

struct SpecfunCmd {
  int run(std::ostream& out) const {
    const double pi = std::numbers::pi;
    struct Row {
      std::string name;
      double value, reference, tol;
    };
    // Reference values computed independently of the library routines.
    auto ei_series = [](double v) {
      double s = std::numbers::egamma + std::log(std::fabs(v)), term = 1.0;
      for (int n = 1; n < 200; ++n) {
        term *= v / n;
        s += term / n;
      }
      return s;
    };
    std::vector<Row> rows{
        {"Ei(-1)", specfun::ei_value(-1.0), ei_series(-1.0), 1e-12},
        {"Ei(1)", specfun::ei_value(1.0), ei_series(1.0), 1e-12},
        {"Ei(10)", specfun::ei_value(10.0), ei_series(10.0), 1e-12},
        {"li(2)", specfun::li(2.0), ei_series(std::log(2.0)), 1e-12},
        {"Li(10)", specfun::Li(10.0), ei_series(std::log(10.0)) - ei_series(std::log(2.0)), 1e-12},
        {"Gamma(1/2)", specfun::gamma_complex(0.5).real(), std::sqrt(pi), 1e-13},
        {"Gamma(5)", specfun::gamma_complex(5.0).real(), 24.0, 1e-13},
        {"zeta(6)", specfun::zeta_even(6), std::pow(pi, 6) / 945.0, 1e-14},
        {"Gamma(1;0.5,3)", specfun::gen_inc_gamma_numeric(1.0, 0.5, 3.0).real(), std::exp(-0.5) - std::exp(-3.0),
         1e-10},
    };
    out << csv_row({"name", "value", "reference", "rel_err", "pass"});
    bool ok = true;
    for (const auto& r : rows) {
      const double rel = std::fabs(r.value - r.reference) / std::fabs(r.reference);
      const bool pass = rel <= r.tol;
      ok = ok && pass;
      out << csv_row({r.name, fmt15(r.value), fmt15(r.reference), fmt15(rel), pass ? "yes" : "no"});
    }
    return ok ? kOk : kFailure;
  }
};

// ---- prime-table ----------------------------------------------------------

struct TableCmd {
  std::uint64_t limit = 0;
  std::string output;

  int run(std::ostream& out) const {
    if (limit < 2) throw UsageError("prime-table: --limit must be >= 2");
    if (output.empty()) throw UsageError("prime-table: --output is required");
    const auto t = primes::PrimeTable::build(limit);
    t.save(output);
    out << t.primes().size() << " primes written to " << output << "\n";
    return kOk;
  }
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, out, err);
}

int run(const std::vector<std::string>& args_in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reciprocal sums of the middle prime factor: exact enumeration and asymptotics", "medianprime"};
  app.require_subcommand(1);
  std::function<int()> action;

  ExactCmd exact_c;
  auto* e = app.add_subcommand("exact", "exact S(x), parity split and local law by sieve");
  e->add_option("--x", exact_c.x, "upper bound x >= 2")->required();
  e->add_option("--mode", exact_c.mode, "omega or Omega")->check(CLI::IsMember({"omega", "Omega", "OMEGA", "BIGOMEGA"}));
  e->add_option("--out", exact_c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  e->add_option("--output", exact_c.output, "write to this file instead of stdout");
  e->add_flag("--no-local-law", exact_c.no_law, "skip the local-law histogram");
  exact_c.sieve.attach(e);
  e->callback([&] { action = [&] { return exact_c.run(out); }; });

  CompareCmd cmp;
  auto* c = app.add_subcommand("compare", "exact vs asymptotic over a grid of x (CSV)");
  c->add_option("--grid", cmp.grid, "comma separated x values")->delimiter(',');
  c->add_option("--mode", cmp.mode, "omega or Omega")->check(CLI::IsMember({"omega", "Omega", "OMEGA", "BIGOMEGA"}));
  c->add_option("--J", cmp.J, "number of c_j terms (Omega mode)");
  c->add_option("--tol", cmp.tol, "tolerance for c_j");
  c->add_option("--output", cmp.output, "write to this file instead of stdout");
  cmp.sieve.attach(c);
  c->callback([&] { action = [&] { return cmp.run(out); }; });

  ConstantsCmd cst;
  auto* k = app.add_subcommand("constants", "c_j with certified tails (JSON)");
  k->add_option("--j", cst.js, "index or comma separated indices")->delimiter(',');
  k->add_option("--tol", cst.tol, "required certified tail");
  k->add_option("--cutoff", cst.cutoff, "initial prime cutoff");
  k->add_option("--max-cutoff", cst.max_cutoff, "largest prime cutoff allowed");
  k->add_option("--output", cst.output, "write to this file instead of stdout");
  k->callback([&] { action = [&] { return cst.run(out); }; });

  PolyCmd poly;
  auto* p = app.add_subcommand("poly", "R_j or P_j over Q[L, P] (JSON)");
  p->add_option("--family", poly.family, "R or P")->check(CLI::IsMember({"R", "P"}));
  p->add_option("--j", poly.j, "polynomial index")->required();
  p->add_option("--output", poly.output, "write to this file instead of stdout");
  p->callback([&] { action = [&] { return poly.run(out); }; });

  RhoCmd rho;
  auto* r = app.add_subcommand("rho", "saddle state for one xi (JSON)");
  r->add_option("--xi", rho.xi, "xi = log log x");
  r->add_option("--x", rho.x, "x, converted to xi");
  r->add_option("--tol", rho.tol, "relative bracket width");
  r->add_option("--output", rho.output, "write to this file instead of stdout");
  r->callback([&] { action = [&] { return rho.run(out); }; });

  SpecfunCmd sf;
  auto* s = app.add_subcommand("specfun-check", "special functions against reference values (CSV)");
  s->callback([&] { action = [&] { return sf.run(out); }; });

  TableCmd tbl;
  auto* t = app.add_subcommand("prime-table", "write a binary base-prime table");
  t->add_option("--limit", tbl.limit, "largest prime candidate")->required();
  t->add_option("--output", tbl.output, "table path")->required();
  t->callback([&] { action = [&] { return tbl.run(out); }; });

  std::vector<std::string> args(args_in.rbegin(), args_in.rend());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? kOk : kUsage;
  }
  try {
    return action();
  } catch (const UsageError& ex) {
    err << "usage error: " << ex.what() << "\n";
    return kUsage;
  } catch (const BudgetExceeded& ex) {
    err << "numeric budget exceeded: " << ex.what() << "\n";
    return kBudget;
  } catch (const DomainError& ex) {
    err << "domain error: " << ex.what() << "\n";
    return kUsage;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return kFailure;
  }
}

}  // namespace medianprime::cli
