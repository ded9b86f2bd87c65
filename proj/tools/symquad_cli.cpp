#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "symquad/errors.hpp"
#include "symquad/experiments.hpp"
#include "symquad/node_selection.hpp"
#include "symquad/node_set.hpp"
#include "symquad/rule.hpp"
#include "symquad/serialization.hpp"

namespace {

using namespace symquad;

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

int parse_int(const std::string& text) {
  try {
    std::size_t pos = 0;
    int v = std::stoi(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("invalid-config", "not an integer: '" + text + "'");
  }
}

double parse_num(const std::string& text) {
  try {
    std::size_t pos = 0;
    double v = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("invalid-config", "not a number: '" + text + "'");
  }
}

// "5,10,15" or "a:b[:step]" with an inclusive end.
std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 2 && parts.size() != 3)
      throw ValidationError("invalid-config", "range must be a:b or a:b:step");
    const int a = parse_int(parts[0]);
    const int b = parse_int(parts[1]);
    const int step = parts.size() == 3 ? parse_int(parts[2]) : 1;
    if (step < 1) throw ValidationError("invalid-config", "range step must be >= 1");
    for (int v = a; v <= b; v += step) out.push_back(v);
  } else {
    for (const auto& p : split(text, ',')) out.push_back(parse_int(p));
  }
  if (out.empty()) throw ValidationError("invalid-config", "empty list: '" + text + "'");
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& p : split(text, ',')) out.push_back(parse_num(p));
  return out;
}

MeasureKind parse_measure(const std::string& name) {
  if (name == "std_gaussian") return MeasureKind::kStdGaussian;
  if (name == "uniform_cube") return MeasureKind::kUniformCube;
  throw ValidationError("invalid-config", "unknown measure '" + name + "'");
}

struct GenArgs {
  std::string basis;  // "cc" | "gh"
  int q = 0;
  int dim = 0;
  bool random = false;
  int j_count = 0;
  std::uint64_t seed = 0;
  double truncate = 0.0;
  std::string draw = "std_gaussian";
  std::vector<std::string> manual;
  bool drop = false;
  std::int64_t max_points = kDefaultExpandCap;
};

struct BuiltNodes {
  SymmetricNodeSet ns;
  NodeSetProvenance prov;
};

BuiltNodes build_nodes(const GenArgs& a) {
  if (a.dim < 1) throw ValidationError("invalid-dimension", "--dim must be >= 1");
  const int modes = (a.basis.empty() ? 0 : 1) + (a.random ? 1 : 0) +
                    (a.manual.empty() ? 0 : 1);
  if (modes != 1)
    throw ValidationError("invalid-config",
                          "choose exactly one of --basis, --random, --generator");

  std::vector<GeneratorVector> gens;
  NodeSetProvenance prov;
  if (!a.basis.empty()) {
    if (a.basis != "cc" && a.basis != "gh")
      throw ValidationError("invalid-config", "--basis must be cc or gh");
    if (a.q < 1) throw ValidationError("invalid-level", "--q must be >= 1");
    const auto basis = a.basis == "cc" ? NestedBasis::clenshaw_curtis(a.q + 1)
                                       : NestedBasis::gauss_hermite(a.q);
    gens = sparse_grid_generators(a.q, a.dim, basis, a.max_points);
    prov = {.key = "basis", .value = a.basis + ":q=" + std::to_string(a.q)};
  } else if (a.random) {
    if (a.j_count < 1) throw ValidationError("invalid-config", "--J must be >= 1");
    gens = random_generators(a.j_count, a.dim, parse_measure(a.draw), a.seed,
                             a.truncate);
    prov = {.key = "source",
            .value = "random:seed=" + std::to_string(a.seed)};
  } else {
    for (const auto& m : a.manual)
      gens.push_back(canonicalize_generator(parse_double_list(m)));
    prov = {.key = "source", .value = "manual"};
  }

  auto ns = make_node_set(a.dim, gens, a.max_points);
  if (a.drop) ns = drop_center(ns);
  return {std::move(ns), std::move(prov)};
}

void add_gen_options(CLI::App* cmd, GenArgs& a) {
  cmd->add_option("--basis", a.basis, "Sparse-grid basis: cc or gh");
  cmd->add_option("--q", a.q, "Sparse-grid level (>= 1)");
  cmd->add_option("--dim", a.dim, "Dimension");
  cmd->add_flag("--random", a.random, "Draw random generators from the measure");
  cmd->add_option("--J,-J", a.j_count, "Number of random generators");
  cmd->add_option("--seed", a.seed, "Random generator seed");
  cmd->add_option("--truncate", a.truncate,
                  "Snap random coordinates below this threshold to zero");
  cmd->add_option("--draw", a.draw,
                  "Distribution of random draws: std_gaussian or uniform_cube");
  cmd->add_option("--generator", a.manual,
                  "Explicit generator as comma-separated values (repeatable)");
  cmd->add_flag("--drop-center", a.drop, "Remove the all-zero generator set");
  cmd->add_option("--max-points", a.max_points, "Node count cap");
}

std::string points_csv(const SymmetricNodeSet& ns,
                       const std::vector<double>* set_weights) {
  std::string out;
  for (int c = 0; c < ns.dim; ++c) {
    if (c) out += ',';
    out += "x" + std::to_string(c + 1);
  }
  if (set_weights) out += ",w";
  out += '\n';
  for (std::size_t j = 0; j < ns.sets.size(); ++j) {
    const auto& set = ns.sets[j];
    for (std::int64_t i = 0; i < set.size; ++i) {
      const auto p = set.point(i);
      for (int c = 0; c < ns.dim; ++c) {
        if (c) out += ',';
        out += format_double(p[c]);
      }
      if (set_weights) {
        out += ',';
        out += format_double((*set_weights)[j]);
      }
      out += '\n';
    }
  }
  return out;
}

void print_node_summary(const SymmetricNodeSet& ns) {
  std::printf("J %lld\n", static_cast<long long>(ns.set_count()));
  std::printf("n %lld\n", static_cast<long long>(ns.total_nodes));
  std::string sizes;
  for (const auto& set : ns.sets) {
    if (!sizes.empty()) sizes += ' ';
    sizes += std::to_string(set.size);
  }
  std::printf("sizes %s\n", sizes.c_str());
  std::printf("hash %s\n", hash_hex(node_set_hash(ns)).c_str());
}

struct NodesArgs {
  GenArgs gen;
  std::string out;
  std::string expand_path;
};

std::vector<std::string> cmd_nodes(const NodesArgs& a) {
  auto built = build_nodes(a.gen);
  if (!a.out.empty())
    write_text_file(a.out, node_set_json(built.ns, built.prov).dump(2) + "\n");
  if (!a.expand_path.empty())
    write_text_file(a.expand_path, points_csv(built.ns, nullptr));
  print_node_summary(built.ns);
  return {};
}

struct RuleArgs {
  GenArgs gen;
  std::string nodes_file;
  double length_scale = 1.0;
  double scale = 1.0;
  std::string measure = "std_gaussian";
  bool oracle = false;
  std::int64_t oracle_cap = 4000;
  std::string out;
  std::string expand_path;
};

std::vector<std::string> cmd_rule(const RuleArgs& a) {
  BuiltNodes built;
  if (!a.nodes_file.empty()) {
    const auto doc = read_json_file(a.nodes_file);
    built.ns = node_set_from_json(doc, a.gen.max_points);
    if (doc.contains("basis"))
      built.prov = {.key = "basis", .value = doc["basis"].get<std::string>()};
    else if (doc.contains("source"))
      built.prov = {.key = "source", .value = doc["source"].get<std::string>()};
    else
      built.prov = {.key = "source", .value = "file"};
    if (a.gen.drop) built.ns = drop_center(built.ns);
  } else {
    built = build_nodes(a.gen);
  }

  const SymmetricMeasure mu(parse_measure(a.measure), built.ns.dim);
  const GaussianKernel kernel(a.length_scale, a.scale);
  auto rule = make_rule(built.ns, kernel, mu);

  if (!a.out.empty())
    write_text_file(a.out, rule_json(rule, built.prov).dump(2) + "\n");
  if (!a.expand_path.empty()) {
    write_text_file(a.expand_path, points_csv(rule.node_set, &rule.weights));
  }

  print_node_summary(rule.node_set);
  std::printf("wce %s\n", format_double(rule.wce).c_str());
  std::printf("cond %s\n", format_double(rule.cond_estimate).c_str());

  if (a.oracle) {
    if (rule.node_set.total_nodes > a.oracle_cap)
      throw ValidationError("too-many-nodes",
                            "--oracle limited to " + std::to_string(a.oracle_cap) +
                                " nodes, set has " +
                                std::to_string(rule.node_set.total_nodes));
    const auto points = all_nodes(rule.node_set);
    const auto naive =
        naive_weights(points, rule.node_set.dim, kernel, mu, a.oracle_cap);
    const double dev =
        max_relative_deviation(expand_weights(rule), naive.weights);
    std::printf("oracle-deviation %s\n", format_double(dev).c_str());
  }
  return rule.warnings;
}

struct OutputArgs {
  std::string out;
  std::string format = "csv";
};

void add_output_options(CLI::App* cmd, OutputArgs& a, const char* def_fmt) {
  a.format = def_fmt;
  cmd->add_option("--out", a.out, "Output path prefix (stdout when omitted)");
  cmd->add_option("--format", a.format, "Report format: csv, json, or both")
      ->check(CLI::IsMember({"csv", "json", "both"}));
}

void emit_report(const ExperimentReport& report, const OutputArgs& out) {
  const bool want_csv = out.format == "csv" || out.format == "both";
  const bool want_json = out.format == "json" || out.format == "both";
  if (out.out.empty()) {
    if (out.format == "both")
      throw ValidationError("invalid-config", "--format both requires --out");
    if (want_csv) {
      const auto methods = report_methods(report);
      if (methods.size() <= 1) {
        std::fputs(report_csv(report).c_str(), stdout);
      } else {
        for (const auto& m : methods) {
          std::printf("# method %s\n", m.c_str());
          std::fputs(report_csv(report, m).c_str(), stdout);
        }
      }
    }
    if (want_json) std::printf("%s\n", report_json(report).dump(2).c_str());
    return;
  }
  if (want_csv) {
    const auto methods = report_methods(report);
    if (methods.size() <= 1) {
      write_text_file(out.out + ".csv", report_csv(report));
      std::printf("wrote %s.csv\n", out.out.c_str());
    } else {
      for (const auto& m : methods) {
        write_text_file(out.out + "-" + m + ".csv", report_csv(report, m));
        std::printf("wrote %s-%s.csv\n", out.out.c_str(), m.c_str());
      }
    }
  }
  if (want_json) {
    write_text_file(out.out + ".json", report_json(report).dump(2) + "\n");
    std::printf("wrote %s.json\n", out.out.c_str());
  }
}

std::vector<std::string> collect_warnings(const ExperimentReport& report) {
  std::vector<std::string> all;
  for (const auto& row : report.rows)
    for (const auto& w : row.warnings)
      all.push_back(row.method + " n=" + std::to_string(row.n) + ": " + w);
  return all;
}

struct IntegrateArgs {
  std::string rule_file;
  std::string integrand;  // ex1 | ex2 | bond
  std::string values_file;
  double truth_override = std::nan("");
  std::int64_t truth_samples = 10000000;
  std::uint64_t truth_seed = 424242;
  OutputArgs out;
};

std::vector<std::string> cmd_integrate(const IntegrateArgs& a) {
  if (a.rule_file.empty())
    throw ValidationError("invalid-config", "--rule is required");
  if (a.integrand.empty() == a.values_file.empty())
    throw ValidationError("invalid-config",
                          "choose exactly one of --integrand, --values");

  const auto rule = rule_from_json(read_json_file(a.rule_file));
  const int dim = rule.node_set.dim;

  double estimate = 0.0;
  double truth = std::nan("");
  std::string method;
  if (!a.values_file.empty()) {
    const auto values = values_from_json(read_json_file(a.values_file),
                                         node_set_hash(rule.node_set));
    if (static_cast<std::int64_t>(values.size()) != rule.node_set.total_nodes)
      throw ValidationError("invalid-config",
                            "values file has " + std::to_string(values.size()) +
                                " entries for " +
                                std::to_string(rule.node_set.total_nodes) +
                                " nodes");
    std::size_t i = 0;
    for (std::size_t j = 0; j < rule.node_set.sets.size(); ++j) {
      double block = 0.0;
      for (std::int64_t p = 0; p < rule.node_set.sets[j].size; ++p)
        block += values[i++];
      estimate += rule.weights[j] * block;
    }
    method = "values";
  } else if (a.integrand == "ex1") {
    if (dim != 3)
      throw ValidationError("dimension-mismatch", "ex1 needs a dim-3 rule");
    estimate = integrate(rule, integrand_ex1);
    truth = mc_estimate_ex1(a.truth_samples, a.truth_seed);
    method = "ex1";
  } else if (a.integrand == "ex2") {
    if (dim != 11)
      throw ValidationError("dimension-mismatch", "ex2 needs a dim-11 rule");
    estimate = integrate(rule, integrand_ex2);
    truth = true_integral_ex2();
    method = "ex2";
  } else if (a.integrand == "bond") {
    VasicekParams p;
    p.steps = dim + 1;
    estimate = integrate(
        rule, [&p](std::span<const double> x) { return bond_integrand(p, x); });
    truth = bond_closed_form(p);
    method = "bond";
  } else {
    throw ValidationError("invalid-config",
                          "unknown integrand '" + a.integrand + "'");
  }
  if (!std::isnan(a.truth_override)) truth = a.truth_override;

  ExperimentReport report{.id = "integrate", .rows = {}};
  report.rows.push_back(
      ReportRow{.method = method,
                .n = rule.node_set.total_nodes,
                .j = rule.node_set.set_count(),
                .estimate = estimate,
                .truth = truth,
                .rel_error = std::fabs(estimate - truth) / std::fabs(truth),
                .wce = rule.wce,
                .t_kernel_s = 0.0,
                .t_weights_s = 0.0,
                .t_fss_s = 0.0,
                .seed = 0,
                .length_scale = rule.kernel.length_scale,
                .warnings = {}});
  emit_report(report, a.out);
  return collect_warnings(report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kernel quadrature on unions of fully symmetric sets"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "Flat key=value config file; command-line flags win");

  NodesArgs nodes_args;
  auto* nodes_cmd = app.add_subcommand(
      "nodes", "Generate a fully symmetric node set and write it as JSON");
  add_gen_options(nodes_cmd, nodes_args.gen);
  nodes_cmd->add_option("--out", nodes_args.out, "Node-set JSON path");
  nodes_cmd->add_option("--expand", nodes_args.expand_path,
                        "Also write the expanded point list as CSV");

  RuleArgs rule_args;
  auto* rule_cmd = app.add_subcommand(
      "rule", "Solve quadrature weights for a node set and write the rule");
  add_gen_options(rule_cmd, rule_args.gen);
  rule_cmd->add_option("--nodes", rule_args.nodes_file,
                       "Node-set JSON file (alternative to generation flags)");
  rule_cmd->add_option("--length-scale", rule_args.length_scale,
                       "Gaussian kernel length scale");
  rule_cmd->add_option("--scale", rule_args.scale, "Kernel scale factor");
  rule_cmd->add_option("--measure", rule_args.measure,
                       "std_gaussian or uniform_cube");
  rule_cmd->add_flag("--oracle", rule_args.oracle,
                     "Check weights against the full-matrix solve");
  rule_cmd->add_option("--oracle-cap", rule_args.oracle_cap,
                       "Node limit for --oracle");
  rule_cmd->add_option("--out", rule_args.out, "Rule JSON path");
  rule_cmd->add_option("--expand", rule_args.expand_path,
                       "Write expanded points with per-node weights as CSV");

  IntegrateArgs int_args;
  auto* int_cmd = app.add_subcommand(
      "integrate", "Apply a stored rule to an integrand or a values file");
  int_cmd->add_option("--rule", int_args.rule_file, "Rule JSON file");
  int_cmd->add_option("--integrand", int_args.integrand,
                      "Built-in integrand: ex1, ex2, or bond");
  int_cmd->add_option("--values", int_args.values_file,
                      "Function values JSON keyed by the node hash");
  int_cmd->add_option("--truth", int_args.truth_override,
                      "Reference value override for the report");
  int_cmd->add_option("--truth-samples", int_args.truth_samples,
                      "Monte Carlo samples for the ex1 reference");
  int_cmd->add_option("--truth-seed", int_args.truth_seed,
                      "Monte Carlo seed for the ex1 reference");
  add_output_options(int_cmd, int_args.out, "csv");

  auto* exp_cmd = app.add_subcommand("experiment", "Run a built-in experiment");
  exp_cmd->require_subcommand(1);

  Ex1Config ex1;
  OutputArgs ex1_out;
  std::string ex1_j_text, ex1_grid_text;
  bool ex1_no_kmc = false;
  auto* ex1_cmd = exp_cmd->add_subcommand(
      "ex1", "Random generators vs naive Monte Carlo quadrature, d = 3");
  ex1_cmd->add_option("--J,-J", ex1_j_text, "J values, list or a:b:step");
  ex1_cmd->add_option("--seeds", ex1.seeds, "Independent repetitions");
  ex1_cmd->add_option("--seed0", ex1.seed0, "Base seed");
  ex1_cmd->add_flag("--no-kmc", ex1_no_kmc, "Skip the naive-rule rows");
  ex1_cmd->add_flag("--fit-on-fss", ex1.fit_on_fss,
                    "Fit the length scale on the symmetric nodes instead");
  ex1_cmd->add_option("--grid", ex1_grid_text,
                      "Length-scale candidates, comma-separated");
  ex1_cmd->add_option("--fit-subsample", ex1.fit_subsample,
                      "Node cap for the likelihood fit");
  ex1_cmd->add_option("--truth-samples", ex1.mc_truth_samples,
                      "Monte Carlo samples for the reference value");
  ex1_cmd->add_option("--truth-seed", ex1.mc_truth_seed,
                      "Monte Carlo seed for the reference value");
  add_output_options(ex1_cmd, ex1_out, "csv");

  Ex2Config ex2;
  OutputArgs ex2_out;
  auto* ex2_cmd = exp_cmd->add_subcommand(
      "ex2", "Clenshaw-Curtis sparse grids on the d = 11 cube");
  ex2_cmd->add_option("--qmax", ex2.q_max, "Largest sparse-grid level");
  ex2_cmd->add_option("--length-scale", ex2.length_scale, "Kernel length scale");
  ex2_cmd->add_flag("--allow-large", ex2.allow_large,
                    "Permit levels above 5 (minutes to hours)");
  ex2_cmd->add_option("--max-points", ex2.max_points, "Node count cap");
  add_output_options(ex2_cmd, ex2_out, "csv");

  Ex3Config ex3;
  OutputArgs ex3_out;
  std::string ex3_dims_text;
  bool ex3_keep_center = false;
  auto* ex3_cmd = exp_cmd->add_subcommand(
      "ex3", "Gauss-Hermite sparse-grid bond pricing across dimensions");
  ex3_cmd->add_option("--dims", ex3_dims_text,
                      "Euler step counts, list or a:b:step");
  ex3_cmd->add_option("--q", ex3.q, "Sparse-grid level");
  ex3_cmd->add_option("--length-scale", ex3.length_scale_override,
                      "Length-scale override (0 uses l = d)");
  ex3_cmd->add_flag("--keep-center", ex3_keep_center,
                    "Keep the all-zero generator set");
  ex3_cmd->add_option("--mc-seeds", ex3.mc_seeds,
                      "Matched-node-count Monte Carlo baseline repetitions");
  ex3_cmd->add_option("--mc-seed0", ex3.mc_seed0, "Baseline base seed");
  add_output_options(ex3_cmd, ex3_out, "csv");

  try {
    try {
      app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      if (e.get_exit_code() == 0) return app.exit(e);
      std::fprintf(stderr, "error: invalid-config: %s\n", e.what());
      return 1;
    }

    std::vector<std::string> warnings;
    if (*nodes_cmd) {
      warnings = cmd_nodes(nodes_args);
    } else if (*rule_cmd) {
      warnings = cmd_rule(rule_args);
    } else if (*int_cmd) {
      warnings = cmd_integrate(int_args);
    } else if (*ex1_cmd) {
      if (!ex1_j_text.empty()) {
        ex1.j_values = parse_int_list(ex1_j_text);
      }
      if (!ex1_grid_text.empty()) ex1.lengthscale_grid = parse_double_list(ex1_grid_text);
      ex1.include_kmc = !ex1_no_kmc;
      const auto report = run_experiment_ex1(ex1);
      emit_report(report, ex1_out);
      warnings = collect_warnings(report);
    } else if (*ex2_cmd) {
      const auto report = run_experiment_ex2(ex2);
      emit_report(report, ex2_out);
      warnings = collect_warnings(report);
    } else if (*ex3_cmd) {
      if (!ex3_dims_text.empty()) ex3.dims = parse_int_list(ex3_dims_text);
      ex3.drop_center = !ex3_keep_center;
      const auto report = run_experiment_ex3(ex3);
      emit_report(report, ex3_out);
      warnings = collect_warnings(report);
    }

    if (!warnings.empty()) {
      for (const auto& w : warnings)
        std::fprintf(stderr, "warning: %s\n", w.c_str());
      return 4;
    }
    return 0;
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "error: %s: %s\n", e.code().c_str(), e.what());
    return 1;
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "error: %s: %s\n", e.code().c_str(), e.what());
    return 2;
  } catch (const IoError& e) {
    std::fprintf(stderr, "error: %s: %s\n", e.code().c_str(), e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: internal: %s\n", e.what());
    return 2;
  }
}
