#include "shrinklab/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "shrinklab/hardfuncs.hpp"
#include "shrinklab/measures.hpp"
#include "shrinklab/named.hpp"
#include "shrinklab/shrink.hpp"
#include "shrinklab/size_table.hpp"
#include "shrinklab/verify_suite.hpp"

namespace shrinklab {

namespace {

// Raised for malformed input that CLI11 cannot see.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

Rational parse_q(const std::string& text) {
  try {
    Rational r(text);
    r.canonicalize();
    if (r < 0) throw UsageError("parameter must be non-negative: " + text);
    return r;
  } catch (const std::invalid_argument&) {
    throw UsageError("not a rational number: '" + text + "'");
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

int parse_int(const std::string& s) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw UsageError("not an integer: '" + s + "'");
  return v;
}

// restriction:n:p, edge:n, alive:n:m, majority:block:k
ProjDistribution family_from_text(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.empty()) throw UsageError("empty family");
  const std::string& name = parts[0];
  auto need = [&](std::size_t k) {
    if (parts.size() != k) throw UsageError("family '" + text + "' has the wrong number of fields");
  };
  if (name == "restriction") {
    need(3);
    return p_random_restriction(parse_int(parts[1]), parse_q(parts[2]));
  }
  if (name == "edge") {
    need(2);
    return random_edge(parse_int(parts[1]));
  }
  if (name == "alive") {
    need(3);
    return random_m_alive(parse_int(parts[1]), parse_int(parts[2]));
  }
  if (name == "majority") {
    need(3);
    return majority_block(parse_int(parts[1]), parse_int(parts[2]));
  }
  throw UsageError("unknown family '" + name + "' (restriction, edge, alive, majority)");
}

std::string join_words(const std::vector<std::string>& words) {
  std::string out;
  for (const auto& w : words) out += (out.empty() ? "" : " ") + w;
  return out;
}

int cmd_measure(const std::vector<std::string>& words, std::ostream& out) {
  const TruthTable f = parse_truth_table(join_words(words));
  out << "function " << f.to_text() << '\n';
  try {
    out << "L=" << L_exact(f) << '\n' << "D=" << D_exact(f) << '\n';
  } catch (const CapExceeded&) {
    out << "L=unavailable (more than 4 essential variables)\nD=unavailable\n";
  }
  if (f.arity() <= kMeasureMaxArity) {
    out << "K=" << format_rational(khrapchenko_K(f)) << '\n';
    const long kmin = khrapchenko_Kmin(f);
    out << "Kmin=" << kmin << '\n' << "Km=" << km_binary(f) << '\n';
  } else {
    out << "K=unavailable (arity above " << kMeasureMaxArity << ")\nKmin=unavailable\nKm=unavailable\n";
  }
  return kExitOk;
}

struct ProjectArgs {
  std::string file;
  std::string family;
  std::string emit;
  bool check_fixing = false;
  bool check_hiding = false;
  bool tightest = false;
  std::string q, q0, q1;
};

void print_tight(std::ostream& out, const std::string& kind, const TightParams& t) {
  if (!t.bounded) {
    out << kind << " unbounded\n";
    if (t.witness0) out << "  witness " << format_violation(*t.witness0) << '\n';
    return;
  }
  out << kind << " q0=" << format_rational(t.q0) << " q1=" << format_rational(t.q1) << '\n';
  if (t.witness0) out << "  q0 attained by " << format_violation(*t.witness0) << '\n';
  if (t.witness1) out << "  q1 attained by " << format_violation(*t.witness1) << '\n';
}

int cmd_project(const ProjectArgs& a, std::ostream& out) {
  if (a.file.empty() == a.family.empty()) throw UsageError("give exactly one of a distribution file or --family");
  const ProjDistribution d = a.family.empty() ? parse_proj_distribution(read_file(a.file)) : family_from_text(a.family);
  if (!d.is_exact()) throw UsageError("distribution is too large for exact checking: " + d.description());
  if (!a.emit.empty()) write_file(a.emit, format_proj_distribution(d));
  out << "distribution n=" << d.source_arity() << " m=" << d.target_arity() << " points=" << d.support().size()
      << '\n';
  int code = kExitOk;
  if (a.check_fixing || a.check_hiding) {
    const bool single = !a.q.empty();
    if (single == (!a.q0.empty() || !a.q1.empty())) throw UsageError("give --q, or both --q0 and --q1");
    if (!single && (a.q0.empty() || a.q1.empty())) throw UsageError("give both --q0 and --q1");
    const Rational q0 = parse_q(single ? a.q : a.q0);
    const Rational q1 = parse_q(single ? a.q : a.q1);
    auto report = [&](const std::string& kind, const ProjVerdict& v) {
      out << kind << " (" << format_rational(q0) << ", " << format_rational(q1) << "): "
          << (v.holds ? "PASS" : "FAIL") << '\n';
      if (v.violation) out << "  witness " << format_violation(*v.violation) << '\n';
      if (!v.holds) code = kExitFailed;
    };
    if (a.check_fixing) report("fixing", is_fixing(d, q0, q1));
    if (a.check_hiding) report("hiding", is_hiding(d, q0, q1));
  }
  if (a.tightest) {
    print_tight(out, "tightest fixing", tightest_fixing(d));
    print_tight(out, "tightest hiding", tightest_hiding(d));
  }
  return code;
}

struct ShrinkArgs {
  int t = 2;
  std::string family = "restriction";
  std::string grid;
  bool mc = false;
  std::uint64_t trials = 0;
  std::optional<std::uint64_t> seed;
  std::string out_file;
};

int cmd_shrink(const ShrinkArgs& a, std::ostream& out) {
  CurveSpec spec;
  spec.parity_t = a.t;
  if (a.family == "restriction") {
    spec.family = CurveFamily::Restriction;
    for (const auto& p : split(a.grid, ',')) spec.p_grid.push_back(parse_q(p));
  } else if (a.family == "alive") {
    spec.family = CurveFamily::MAlive;
    for (const auto& m : split(a.grid, ',')) spec.m_grid.push_back(parse_int(m));
  } else {
    throw UsageError("--family must be restriction or alive");
  }
  if (a.mc) {
    if (!a.seed) throw UsageError("Monte Carlo mode needs --seed");
    if (a.trials == 0) throw UsageError("Monte Carlo mode needs --trials >= 1");
    spec.mode = CurveMode::MonteCarlo;
    spec.trials = a.trials;
    spec.seed = *a.seed;
  }
  const std::string csv = format_curve_csv(shrinkage_curve(spec));
  if (a.out_file.empty()) {
    out << csv;
  } else {
    write_file(a.out_file, csv);
    out << "wrote " << a.out_file << '\n';
  }
  return kExitOk;
}

int cmd_construct_surj(int s, const std::string& emit, std::ostream& out) {
  const SurjShape sh = surj_shape(s);
  const UFormula phi = surj_uformula(s);
  out << "s=" << s << " alphabet=" << sh.alphabet << " positions=" << sh.positions
      << " bits_per_symbol=" << sh.bits_per_symbol << " arity=" << sh.arity() << '\n';
  out << "size=" << phi.size() << " depth=" << phi.depth() << '\n';
  if (!emit.empty()) write_file(emit, to_string(phi) + "\n");
  return kExitOk;
}

int cmd_construct_andreev(int k, int s, const std::string& layout_text, bool report, std::ostream& out) {
  AndreevLayout layout;
  if (layout_text == "depth4") {
    layout = AndreevLayout::Depth4;
  } else if (layout_text == "compact") {
    layout = AndreevLayout::Compact;
  } else {
    throw UsageError("--layout must be depth4 or compact");
  }
  const AndreevShape shape = andreev_shape(k, s);
  out << "k=" << k << " s=" << s << " layout=" << layout_text << " inputs=" << shape.arity() << '\n';
  out << "terms=" << andreev_term_count(k, s, layout).get_str()
      << " size=" << andreev_size_closed_form(k, s, layout).get_str() << " depth=" << andreev_depth(layout) << '\n';
  if (andreev_term_count(k, s, layout) <= static_cast<long>(kAndreevMaxTerms)) {
    const UFormula phi = andreev_formula(k, s, layout);
    out << "built size=" << phi.size() << " depth=" << phi.depth() << '\n';
  } else {
    out << "built skipped (term count above cap)\n";
  }
  if (report) out << format_andreev_ratio_csv(andreev_ratio_table({1, 2, 3}, layout));
  return kExitOk;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, std::ostream& out) {
  const auto rows = run_suite(suite, seed);
  bool all = true;
  out << "seed " << seed << '\n';
  for (const auto& r : rows) {
    out << std::setw(2) << r.criterion << "  " << std::left << std::setw(15) << r.suite << std::right << "  "
        << (r.pass ? "PASS" : "FAIL") << "  " << r.statement << "  [" << r.detail << "]\n";
    all = all && r.pass;
  }
  out << (all ? "all PASS" : "some checks FAILED") << '\n';
  return all ? kExitOk : kExitFailed;
}

int cmd_sizetable(int arity, const std::string& path, bool serial, bool allow5, std::ostream& out) {
  SizeTableOptions opt;
  opt.parallel = !serial;
  opt.allow_arity5 = allow5;
  const SizeTable t = build_size_table(arity, opt);
  t.save(path);
  out << "arity " << arity << ": " << t.function_count() << " functions written to " << path << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact formula-size, shrinkage and lower-bound experiments", "shrinklab"};
  app.require_subcommand(1);

  std::vector<std::string> measure_words;
  auto* measure = app.add_subcommand("measure", "L, D, K, Kmin and Km of a truth table");
  measure->add_option("function", measure_words, "tt <n> <bits> or parity:n, and:n, or:n, maj:n, surj:s, random:n:seed")
      ->required();

  ProjectArgs pa;
  auto* project = app.add_subcommand("project", "Check or infer fixing/hiding parameters of a distribution");
  project->add_option("file", pa.file, "distribution file (projdist format)");
  project->add_option("--family", pa.family, "restriction:n:p, edge:n, alive:n:m or majority:block:k");
  project->add_option("--emit", pa.emit, "write the distribution to this file");
  project->add_flag("--check-fixing", pa.check_fixing);
  project->add_flag("--check-hiding", pa.check_hiding);
  project->add_flag("--tightest", pa.tightest, "print the tightest parameters with witnesses");
  project->add_option("--q", pa.q, "q0 = q1 = Q");
  project->add_option("--q0", pa.q0);
  project->add_option("--q1", pa.q1);

  ShrinkArgs sa;
  std::uint64_t shrink_seed = 0;
  auto* shrink = app.add_subcommand("shrink", "Shrinkage curve CSV for the parity formula");
  shrink->add_option("--t", sa.t, "formula on 2^t variables")->check(CLI::Range(0, 4));
  shrink->add_option("--family", sa.family, "restriction or alive");
  shrink->add_option("--grid", sa.grid, "comma-separated p values or m values")->required();
  shrink->add_flag("--mc", sa.mc, "Monte Carlo instead of exact expectation");
  shrink->add_option("--trials", sa.trials);
  auto* shrink_seed_opt = shrink->add_option("--seed", shrink_seed);
  shrink->add_option("--out", sa.out_file);

  auto* construct = app.add_subcommand("construct", "Surjectivity and Andreev-style constructions");
  construct->require_subcommand(1);
  int surj_s = 1;
  std::string emit_formula;
  auto* csurj = construct->add_subcommand("surj", "depth-3 surjectivity formula");
  csurj->add_option("--s", surj_s)->required()->check(CLI::PositiveNumber);
  csurj->add_option("--emit-formula", emit_formula);
  int ak = 2, as = 1;
  bool report = false;
  std::string layout = "depth4";
  auto* candreev = construct->add_subcommand("andreev", "F(f, x) = f(surj(x_1), ..., surj(x_k))");
  candreev->add_option("--k", ak)->required();
  candreev->add_option("--s", as)->required()->check(CLI::PositiveNumber);
  candreev->add_option("--layout", layout, "depth4 or compact");
  candreev->add_flag("--report", report, "append the size ratio table as CSV");

  std::string suite = "all";
  std::uint64_t verify_seed = 0;
  auto* verify = app.add_subcommand("verify", "Run the property suite");
  verify->add_option("--suite", suite, "all or one suite name");
  verify->add_option("--seed", verify_seed)->required();

  auto* sizetable = app.add_subcommand("sizetable", "Exact size tables");
  sizetable->require_subcommand(1);
  int arity = 3;
  std::string table_out;
  bool serial = false, allow5 = false;
  auto* build = sizetable->add_subcommand("build", "build and save a table");
  build->add_option("--arity", arity)->required()->check(CLI::Range(0, 5));
  build->add_option("--out", table_out)->required();
  build->add_flag("--serial", serial, "use the serial reference builder");
  build->add_flag("--allow-arity5", allow5);

  std::vector<const char*> argv{"shrinklab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*measure) return cmd_measure(measure_words, out);
    if (*project) return cmd_project(pa, out);
    if (*shrink) {
      if (*shrink_seed_opt) sa.seed = shrink_seed;
      return cmd_shrink(sa, out);
    }
    if (*csurj) return cmd_construct_surj(surj_s, emit_formula, out);
    if (*candreev) return cmd_construct_andreev(ak, as, layout, report, out);
    if (*verify) return cmd_verify(suite, verify_seed, out);
    if (*build) return cmd_sizetable(arity, table_out, serial, allow5, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::logic_error& e) {
    // invalid_argument, out_of_range and CapExceeded (a length_error).
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailed;
  }
  return kExitUsage;
}

}  // namespace shrinklab
