#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "io.hpp"
#include "ivcheck/error.hpp"
#include "ivcheck/generator.hpp"
#include "ivcheck/rng.hpp"

namespace ivcheck::cli {

namespace {

using io::json;

struct Outcome {
  json verdicts;
  int code = kOk;
  /// Data product for stdout; when set, the report goes to the error stream.
  std::optional<std::string> stdout_data;
};

struct Common {
  std::uint64_t seed = 0;
  bool pretty = false;
  json files = json::object();
  json flags = json::object();

  void record_file(const std::string& path, const std::string& bytes) {
    files[path] = io::digest(bytes);
  }
};

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write '" + path + "'");
  f << data;
}

// ---- check -----------------------------------------------------------------

struct CheckArgs {
  std::string input;
  std::string domains_path;
  std::size_t bootstrap = 0;
  double level = 0.95;
  double tolerance = kVerdictTolerance;
};

Outcome cmd_check(const CheckArgs& a, Common& c) {
  const std::string bytes = io::read_file(a.input);
  c.record_file(a.input, bytes);
  c.flags["bootstrap"] = a.bootstrap;
  c.flags["level"] = a.level;
  c.flags["tolerance"] = a.tolerance;

  Outcome o;
  std::optional<SampleCounts> counts;
  std::optional<ConditionalTable> table;
  if (ends_with(a.input, ".csv")) {
    std::optional<Domains> declared;
    if (!a.domains_path.empty()) {
      const std::string dbytes = io::read_file(a.domains_path);
      c.record_file(a.domains_path, dbytes);
      declared = io::domains_from_json(json::parse(dbytes));
    }
    std::istringstream in(bytes);
    counts = io::counts_from_csv(in, declared);
    table = estimate_from_counts(*counts);
    o.verdicts["point_estimate"] = true;
    o.verdicts["sample_size"] = counts->total();
  } else {
    table = io::table_from_json(json::parse(bytes)).table;
    o.verdicts["point_estimate"] = false;
  }

  const Domains& d = table->domains();
  o.verdicts["domains"] = io::domains_to_json(d);
  json undefined = json::array();
  for (std::size_t z = 0; z < d.z.size(); ++z) {
    if (!table->defined(z)) undefined.push_back(d.z.label(z));
  }
  o.verdicts["undefined_strata"] = undefined;

  const IvReport iv = iv_score(*table, a.tolerance);
  o.verdicts["iv"] = io::iv_report_to_json(iv, d);
  if (d.all_binary() && table->fully_defined()) {
    o.verdicts["binary"] = io::binary_report_to_json(binary_inequalities(*table, a.tolerance));
    o.verdicts["monotonicity"] = io::monotonicity_to_json(monotonicity_check(*table, a.tolerance));
  }

  bool violated = iv.violated;
  if (counts && a.bootstrap > 0) {
    const MarginInterval m = bootstrap_margin(*counts, a.bootstrap, a.level, c.seed);
    o.verdicts["bootstrap"] = io::margin_to_json(m);
    // With a bootstrap, the verdict is a violation only if the whole interval clears 1.
    violated = m.lower > 1.0 + a.tolerance;
  }
  o.verdicts["violated"] = violated;
  o.code = violated ? kViolation : kOk;
  return o;
}

// ---- oracle ----------------------------------------------------------------

struct OracleArgs {
  std::string input;
  std::string scm_out;
};

Outcome cmd_oracle(const OracleArgs& a, Common& c) {
  const std::string bytes = io::read_file(a.input);
  c.record_file(a.input, bytes);
  const io::TableFile file = io::table_from_json(json::parse(bytes));
  const FeasibilityResult r = check_feasibility(file.table);

  Outcome o;
  o.verdicts["feasible"] = r.feasible;
  o.verdicts["lp_residual"] = r.lp_residual;
  o.verdicts["exact"] = r.exact;
  o.verdicts["witness"] = r.witness ? io::witness_to_json(*r.witness) : json(nullptr);
  if (r.witness && !a.scm_out.empty()) {
    const std::size_t nz = file.table.domains().z.size();
    const std::vector<double> p_z =
        file.z_marginal.value_or(std::vector<double>(nz, 1.0 / static_cast<double>(nz)));
    write_file(a.scm_out, io::scm_to_json(witness_to_scm(*r.witness, p_z)).dump(2) + "\n");
    o.verdicts["scm_out"] = a.scm_out;
  }
  o.code = r.feasible ? kOk : kViolation;
  return o;
}

// ---- simulate --------------------------------------------------------------

struct SimulateArgs {
  std::string scm;
  std::uint64_t n = 1000;
  bool exact = false;
  std::string out;
};

Outcome cmd_simulate(const SimulateArgs& a, Common& c) {
  const std::string bytes = io::read_file(a.scm);
  c.record_file(a.scm, bytes);
  const FiniteScm scm = io::scm_from_json(json::parse(bytes));
  c.flags["exact"] = a.exact;
  c.flags["n"] = a.n;

  std::string data;
  Outcome o;
  if (a.exact) {
    data = io::table_to_json(induced_conditional(scm)).dump(2) + "\n";
    o.verdicts["format"] = "table";
  } else {
    std::ostringstream csv;
    io::counts_to_csv(csv, sample(scm, a.n, c.seed));
    data = csv.str();
    o.verdicts["format"] = "csv";
    o.verdicts["rows"] = a.n;
  }
  o.verdicts["output_digest"] = io::digest(data);
  if (a.out.empty() || a.out == "-") {
    o.stdout_data = std::move(data);
  } else {
    write_file(a.out, data);
    o.verdicts["output"] = a.out;
  }
  return o;
}

// ---- effect ----------------------------------------------------------------

struct EffectArgs {
  std::string scm;
  std::string set;
};

Outcome cmd_effect(const EffectArgs& a, Common& c) {
  const std::string bytes = io::read_file(a.scm);
  c.record_file(a.scm, bytes);
  const FiniteScm scm = io::scm_from_json(json::parse(bytes));
  const Domains& d = scm.domains();

  const auto eq = a.set.find('=');
  if (eq == std::string::npos) throw Error("--set expects x=LEVEL");
  const std::string var = a.set.substr(0, eq);
  if (var != "x" && var != "X") throw Error("only X can be set; got '" + var + "'");
  const std::string level = a.set.substr(eq + 1);
  const std::size_t x = d.x.index_of(level);
  c.flags["set"] = a.set;

  const auto p_y = causal_effect(scm, x);
  Outcome o;
  o.verdicts["x"] = level;
  json dist = json::object();
  for (std::size_t y = 0; y < d.y.size(); ++y) dist[d.y.label(y)] = p_y[y];
  o.verdicts["distribution"] = dist;
  return o;
}

// ---- generate --------------------------------------------------------------

struct GenerateArgs {
  std::string example = "example1";
  std::size_t n = 1000;
  std::optional<double> z;
  std::string cdf = "square";
  bool verify = false;
  std::size_t verify_n = 0;
  std::string out;
};

GeneratorSpec spec_named(const std::string& name) {
  if (name == "square") return GeneratorSpec::square();
  if (name == "uniform") return GeneratorSpec::uniform();
  throw Error("unknown --cdf '" + name + "' (expected square or uniform)");
}

std::string fmt_double(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

Outcome cmd_generate(const GenerateArgs& a, Common& c) {
  const bool ex1 = a.example == "example1";
  if (!ex1 && a.example != "corollary1") {
    throw Error("unknown --example '" + a.example + "' (expected example1 or corollary1)");
  }
  const GeneratorSpec spec = spec_named(a.cdf);
  c.flags["example"] = a.example;
  c.flags["n"] = a.n;
  if (a.z) c.flags["z"] = *a.z;
  if (!ex1) c.flags["cdf"] = a.cdf;

  const CounterRng root(c.seed);
  CounterRng z_rng = root.split(0);
  CounterRng u_rng = root.split(1);
  CounterRng v_rng = root.split(2);
  std::ostringstream csv;
  csv << (ex1 ? "z,x,y\n" : "z,x\n");
  for (std::size_t i = 0; i < a.n; ++i) {
    const UnitValue z(a.z ? *a.z : z_rng.uniform());
    const UnitValue u(u_rng.uniform());
    if (ex1) {
      const auto draw = example1_sample(z, u, UnitValue(v_rng.uniform()));
      csv << fmt_double(z) << ',' << fmt_double(draw.x) << ',' << fmt_double(draw.y) << '\n';
    } else {
      csv << fmt_double(z) << ',' << fmt_double(corollary1_sample(spec, z, u)) << '\n';
    }
  }

  Outcome o;
  o.verdicts["example"] = a.example;
  o.verdicts["rows"] = a.n;
  if (a.verify) {
    const std::size_t vn = a.verify_n > 0 ? a.verify_n : a.n;
    c.flags["verify_n"] = vn;
    const std::vector<double> probes{0.25, 0.5, 0.75};
    json v;
    v["z_probes"] = probes;
    v["n"] = vn;
    v["grid_points"] = kCdfGridPoints;
    if (ex1) {
      const Example1Check check = verify_example1(probes, vn, c.seed);
      v["x_deviation"] = check.x_deviation;
      v["y_deviation"] = check.y_deviation;
      v["max_deviation"] = std::max(*std::max_element(check.x_deviation.begin(), check.x_deviation.end()),
                                    *std::max_element(check.y_deviation.begin(), check.y_deviation.end()));
    } else {
      const GeneratorCheck check = verify_generator(spec, spec.cdf, probes, vn, c.seed);
      v["x_deviation"] = check.per_probe;
      v["max_deviation"] = check.max_deviation;
      v["lipschitz_slack"] = check.lipschitz_slack;
    }
    o.verdicts["verify"] = v;
  }

  std::string data = csv.str();
  o.verdicts["output_digest"] = io::digest(data);
  if (a.out.empty() || a.out == "-") {
    o.stdout_data = std::move(data);
  } else {
    write_file(a.out, data);
    o.verdicts["output"] = a.out;
  }
  return o;
}

// ---- restrictions ----------------------------------------------------------

struct RestrictionsArgs {
  std::string graph;
  std::size_t cap = 3;
  bool text = false;
};

Outcome cmd_restrictions(const RestrictionsArgs& a, Common& c) {
  const std::string bytes = io::read_file(a.graph);
  c.record_file(a.graph, bytes);
  const CausalGraph g = io::graph_from_json(json::parse(bytes));
  c.flags["cap"] = a.cap;

  Outcome o;
  json excl = json::array();
  json indep = json::array();
  std::string lines;
  for (const auto& r : exclusion_restrictions(g, a.cap)) {
    excl.push_back(io::restriction_to_json(r));
    lines += r.render() + "\n";
  }
  for (const auto& r : independence_restrictions(g)) {
    indep.push_back(io::restriction_to_json(r));
    lines += r.render() + "\n";
  }
  o.verdicts["exclusion"] = excl;
  o.verdicts["independence"] = indep;
  if (a.text) o.stdout_data = lines;
  return o;
}

std::string summarize(const json& report) {
  std::ostringstream s;
  s << report.at("command").get<std::string>() << ": ";
  const json& v = report.contains("verdicts") ? report.at("verdicts") : json::object();
  if (report.contains("error")) {
    s << "error: " << report.at("error").get<std::string>();
  } else if (v.contains("iv")) {
    s << "score " << v["iv"]["score"].get<double>()
      << (v["violated"].get<bool>() ? " (violated)" : " (holds)");
    if (v.contains("bootstrap")) {
      s << ", interval [" << v["bootstrap"]["lower"].get<double>() << ", "
        << v["bootstrap"]["upper"].get<double>() << "]";
    }
  } else if (v.contains("feasible")) {
    s << (v["feasible"].get<bool>() ? "feasible" : "infeasible");
  } else {
    s << "ok";
  }
  return s.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Falsification checks for instrumental-variable models", "ivcheck"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  Common common;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", common.seed, "Seed for every random draw")->capture_default_str();
    sub->add_flag("--pretty", common.pretty, "Indented JSON plus a one-line summary on stderr");
  };

  CheckArgs check_args;
  auto* check = app.add_subcommand("check", "Evaluate the instrumental inequality on a table or samples");
  check->add_option("input", check_args.input, "Table JSON or z,x,y sample CSV")->required();
  check->add_option("--domains", check_args.domains_path, "Declared domains JSON for CSV input");
  check->add_option("--bootstrap", check_args.bootstrap, "Bootstrap replicates (0 = none, else >= 100)");
  check->add_option("--level", check_args.level, "Bootstrap confidence level")->capture_default_str();
  check->add_option("--tolerance", check_args.tolerance, "Verdict tolerance")->capture_default_str();
  add_common(check);

  OracleArgs oracle_args;
  auto* oracle = app.add_subcommand("oracle", "Decide exact generability by an instrumental process");
  oracle->add_option("input", oracle_args.input, "Table JSON")->required();
  oracle->add_option("--scm-out", oracle_args.scm_out, "Write the witness as an SCM JSON file");
  add_common(oracle);

  SimulateArgs sim_args;
  auto* simulate = app.add_subcommand("simulate", "Sample from, or enumerate, a finite SCM");
  simulate->add_option("scm", sim_args.scm, "SCM JSON")->required();
  simulate->add_option("--n", sim_args.n, "Number of samples")->capture_default_str();
  simulate->add_flag("--exact", sim_args.exact, "Emit the exact induced table instead of samples");
  simulate->add_option("--out", sim_args.out, "Output path (default stdout)");
  add_common(simulate);

  EffectArgs effect_args;
  auto* effect = app.add_subcommand("effect", "Causal effect P(y | do(x)) of a finite SCM");
  effect->add_option("scm", effect_args.scm, "SCM JSON")->required();
  effect->add_option("--set", effect_args.set, "Intervention, e.g. x=1")->required();
  add_common(effect);

  GenerateArgs gen_args;
  double z_value = 0.0;
  auto* generate = app.add_subcommand("generate", "Draw from the unit-interval generators");
  generate->add_option("--example", gen_args.example, "example1 or corollary1")->capture_default_str();
  generate->add_option("--n", gen_args.n, "Number of rows")->capture_default_str();
  auto* z_opt = generate->add_option("--z", z_value, "Fixed z in [0, 1) (default: z ~ U[0, 1))");
  generate->add_option("--cdf", gen_args.cdf, "corollary1 target: square or uniform")->capture_default_str();
  generate->add_flag("--verify", gen_args.verify, "Monte Carlo check of the generator property");
  generate->add_option("--verify-n", gen_args.verify_n, "Draws per probe for --verify (default --n)");
  generate->add_option("--out", gen_args.out, "CSV path (default stdout)");
  add_common(generate);

  RestrictionsArgs restr_args;
  auto* restrictions = app.add_subcommand("restrictions", "Counterfactual restrictions of a causal graph");
  restrictions->add_option("graph", restr_args.graph, "Graph JSON")->required();
  restrictions->add_option("--cap", restr_args.cap, "Largest exclusion set size")->capture_default_str();
  restrictions->add_flag("--text", restr_args.text, "Plain-text lines on stdout");
  add_common(restrictions);

  std::vector<std::string> reversed(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(reversed.begin(), reversed.end());
  std::string command = "ivcheck";
  try {
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    for (auto* sub : app.get_subcommands()) command = sub->get_name();
    err << "ivcheck: " << e.what() << "\n";
    out << json{{"command", command}, {"version", kVersion}, {"error", e.what()}}.dump() << "\n";
    return kFailure;
  }

  auto* active = app.get_subcommands().front();
  command = active->get_name();
  json report{{"command", command}, {"version", kVersion}};
  try {
    Outcome o;
    if (active == check) {
      o = cmd_check(check_args, common);
    } else if (active == oracle) {
      o = cmd_oracle(oracle_args, common);
    } else if (active == simulate) {
      o = cmd_simulate(sim_args, common);
    } else if (active == effect) {
      o = cmd_effect(effect_args, common);
    } else if (active == generate) {
      if (z_opt->count() > 0) gen_args.z = z_value;
      o = cmd_generate(gen_args, common);
    } else {
      o = cmd_restrictions(restr_args, common);
    }
    report["inputs"] = json{{"files", common.files}, {"seed", common.seed}, {"flags", common.flags}};
    report["verdicts"] = std::move(o.verdicts);
    const std::string text = report.dump(common.pretty ? 2 : -1) + "\n";
    if (o.stdout_data) {
      out << *o.stdout_data;
      err << text;
    } else {
      out << text;
    }
    if (common.pretty) err << summarize(report) << "\n";
    return o.code;
  } catch (const std::exception& e) {
    err << "ivcheck " << command << ": " << e.what() << "\n";
    report["error"] = e.what();
    out << report.dump(common.pretty ? 2 : -1) << "\n";
    return kFailure;
  }
}

}  // namespace ivcheck::cli
