#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "escapelab/closedform.hpp"
#include "escapelab/errors.hpp"
#include "escapelab/escape.hpp"
#include "escapelab/kp.hpp"
#include "escapelab/optimize.hpp"
#include "escapelab/parallel.hpp"
#include "escapelab/rng.hpp"
#include "path_spec_json.hpp"

namespace {

using nlohmann::json;
using namespace escapelab;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitKpViolation = 3;

constexpr double kPi = 3.14159265358979323846;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw Error("cannot open output file: " + path);
  return file;
}

struct EvaluateOptions {
  std::string spec_file;
  double h = 0.005;
  double t_cap = 16.0;
  std::string format = "json";
  std::string out;
};

int cmd_evaluate(const EvaluateOptions& opt) {
  const paths::UnitSpeedPath path = cli::path_from_file(opt.spec_file);
  escape::QuadratureSettings settings;
  settings.h = opt.h;
  settings.t_cap = opt.t_cap;
  const auto est = escape::mean_escape_quadrature(path, settings);

  if (!opt.out.empty()) {
    std::ofstream diag(opt.out);
    if (!diag) throw Error("cannot open output file: " + opt.out);
    diag << "t,area,cumulative_J\n";
    for (const auto& row : est.diagnostics) {
      diag << fmt(row.t) << ',' << fmt(row.area) << ',' << fmt(row.cumulative) << '\n';
    }
  }

  if (opt.format == "csv") {
    std::cout << "value,error_bound,truncated,method,steps\n"
              << fmt(est.value) << ',' << fmt(est.error_bound) << ','
              << (est.truncated ? 1 : 0) << ',' << escape::method_name(est.method)
              << ',' << est.diagnostics.size() << '\n';
  } else {
    json report{{"value", est.value},
                {"error_bound", est.error_bound},
                {"truncated", est.truncated},
                {"method", escape::method_name(est.method)},
                {"steps", est.diagnostics.size()}};
    std::cout << report.dump() << '\n';
  }
  return kExitOk;
}

struct TableOptions {
  std::size_t n_max = 8;
  std::size_t samples = 200000;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string out;
};

int cmd_table(const TableOptions& opt) {
  std::ofstream file;
  std::ostream& os = open_output(file, opt.out);
  json rows = json::array();
  for (std::size_t n = 1; n <= opt.n_max; ++n) {
    const double closed = closedform::expected_linear_escape(n);
    Rng rng(opt.seed, n);
    const auto mc = escape::mean_escape_monte_carlo(paths::Line::axis(n), n,
                                                    opt.samples, rng);
    const double z =
        mc.error_bound > 0.0 ? std::abs(mc.value - closed) / mc.error_bound : 0.0;
    json row{{"n", n},
             {"closed_form", closed},
             {"mc", mc.value},
             {"mc_stderr", mc.error_bound},
             {"z", z}};
    if (n >= 2) row["assembled"] = closedform::assemble_expectation(n);
    rows.push_back(row);
  }
  if (opt.format == "csv") {
    os << "n,closed_form,assembled,mc,mc_stderr,z\n";
    for (const auto& row : rows) {
      os << row["n"].get<std::size_t>() << ',' << fmt(row["closed_form"].get<double>())
         << ',' << (row.contains("assembled") ? fmt(row["assembled"].get<double>()) : "")
         << ',' << fmt(row["mc"].get<double>()) << ','
         << fmt(row["mc_stderr"].get<double>()) << ',' << fmt(row["z"].get<double>())
         << '\n';
    }
  } else {
    os << rows.dump() << '\n';
  }
  return kExitOk;
}

struct KpOptions {
  std::size_t pairs = 100;
  std::size_t max_disks = 6;
  std::size_t dim = 2;
  std::string generator = "both";
  std::size_t samples = 100000;
  std::uint64_t seed = 0;
  std::string out;
};

struct KpRecord {
  json line;
  bool violation = false;
};

KpRecord run_kp_pair(const KpOptions& opt, std::size_t index) {
  Rng rng(opt.seed, 1);
  Rng gen = rng.split(index);

  const std::size_t n_disks =
      opt.max_disks < 2 ? opt.max_disks : 2 + gen.next_below(opt.max_disks - 1);
  std::vector<VecN> centers;
  std::vector<double> radii;
  for (std::size_t i = 0; i < n_disks; ++i) {
    VecN c(opt.dim);
    for (std::size_t d = 0; d < opt.dim; ++d) c[d] = gen.next_uniform(-1.5, 1.5);
    centers.push_back(c);
    radii.push_back(gen.next_uniform(0.5, 1.5));
  }
  const geom::DiskConfig q(std::move(centers), std::move(radii));

  std::string generator = opt.generator;
  if (generator == "both") generator = (index % 2 == 0) ? "scaling" : "projection";
  kp::ConfigPair pair = [&] {
    if (generator == "scaling") {
      return kp::contract_by_scaling(q, gen.next_open_double());
    }
    VecN axis(opt.dim);
    double norm = 0.0;
    do {
      for (std::size_t d = 0; d < opt.dim; ++d) axis[d] = gen.next_normal();
      norm = axis.norm();
    } while (norm < 1e-8);
    return kp::contract_by_projection(q, axis * (1.0 / norm));
  }();

  KpRecord rec;
  rec.line = json{{"index", index},
                  {"seed", opt.seed},
                  {"generator", generator},
                  {"n_disks", n_disks},
                  {"dim", opt.dim}};
  if (opt.dim == 2) {
    const auto rep = kp::verify_kp_2d(pair);
    rec.line["intersection_p"] = rep.intersection_p;
    rec.line["intersection_q"] = rep.intersection_q;
    rec.line["union_p"] = rep.union_p;
    rec.line["union_q"] = rep.union_q;
    rec.line["intersection_ok"] = rep.intersection_ok;
    rec.line["union_ok"] = rep.union_ok;
    rec.violation = !(rep.intersection_ok && rep.union_ok);
  } else {
    Rng mc = gen.split(999);
    const auto rep = kp::verify_kp_mc(pair, opt.samples, mc);
    rec.line["intersection_p"] = rep.intersection_p;
    rec.line["intersection_q"] = rep.intersection_q;
    rec.line["union_p"] = rep.union_p;
    rec.line["union_q"] = rep.union_q;
    rec.line["se_intersection"] = rep.se_intersection;
    rec.line["se_union"] = rep.se_union;
    rec.line["intersection_ok"] = rep.intersection_ok;
    rec.line["union_ok"] = rep.union_ok;
  }
  return rec;
}

int cmd_kp(const KpOptions& opt) {
  if (opt.generator != "both" && opt.generator != "scaling" &&
      opt.generator != "projection")
    throw Error("kp: generator must be scaling, projection or both");
  if (opt.dim < 2) throw Error("kp: dim must be >= 2");
  if (opt.max_disks < 1) throw Error("kp: max-disks must be >= 1");

  std::vector<KpRecord> records(opt.pairs);
  parallel_blocks(opt.pairs,
                  [&](std::size_t index) { records[index] = run_kp_pair(opt, index); });

  std::ofstream file;
  std::ostream& os = open_output(file, opt.out);
  bool violation = false;
  for (const KpRecord& rec : records) {
    os << rec.line.dump() << '\n';
    violation |= rec.violation;
  }
  return violation ? kExitKpViolation : kExitOk;
}

struct OptimizeOptions {
  std::size_t joints = 2;
  std::size_t budget = 500;
  std::size_t seeds = 20;
  double segment_length = 0.5;
  double h = 0.0005;
  double t_cap = 16.0;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string out;
};

int cmd_optimize(const OptimizeOptions& opt) {
  escape::QuadratureSettings settings;
  settings.h = opt.h;
  settings.t_cap = opt.t_cap;
  const double target = 8.0 / (3.0 * kPi) + 1e-3;

  std::vector<optimize::OptimizationTrace> traces(opt.seeds);
  parallel_blocks(opt.seeds, [&](std::size_t s) {
    Rng rng = Rng(opt.seed, 2).split(s);
    traces[s] = optimize::minimize(opt.joints, opt.segment_length, std::nullopt,
                                   opt.budget, settings, &rng);
  });

  std::size_t reached = 0;
  for (std::size_t s = 0; s < opt.seeds; ++s) {
    const auto& trace = traces[s];
    if (trace.best_value <= target) ++reached;
    if (!opt.out.empty()) {
      const std::string name = opt.out + "seed" + std::to_string(s) + ".csv";
      std::ofstream csv(name);
      if (!csv) throw Error("cannot open trace file: " + name);
      csv << "evaluation,value";
      for (std::size_t a = 0; a < opt.joints; ++a) csv << ",angle" << a;
      csv << '\n';
      for (std::size_t e = 0; e < trace.iterations.size(); ++e) {
        csv << e << ',' << fmt(trace.iterations[e].value);
        for (const double a : trace.iterations[e].params.angles) csv << ',' << fmt(a);
        csv << '\n';
      }
    }
  }

  const double fraction =
      opt.seeds == 0 ? 0.0 : static_cast<double>(reached) / static_cast<double>(opt.seeds);
  if (opt.format == "csv") {
    std::cout << "runs,reached,fraction,target,budget,joints\n"
              << opt.seeds << ',' << reached << ',' << fmt(fraction) << ','
              << fmt(target) << ',' << opt.budget << ',' << opt.joints << '\n';
  } else {
    json summary{{"runs", opt.seeds},    {"reached", reached},
                 {"fraction", fraction}, {"target", target},
                 {"budget", opt.budget}, {"joints", opt.joints},
                 {"seed", opt.seed},     {"segment_length", opt.segment_length}};
    std::cout << summary.dump() << '\n';
  }
  return kExitOk;
}

struct McOptions {
  std::string spec_file;
  std::size_t dim = 0;  // 0: infer from the path
  std::size_t samples = 1000000;
  double t_cap = 16.0;
  std::uint64_t seed = 0;
  std::string format = "json";
};

int cmd_mc(const McOptions& opt) {
  paths::UnitSpeedPath path = cli::path_from_file(opt.spec_file);
  std::size_t dim = opt.dim;
  if (dim == 0) {
    dim = path.dim();
  } else if (const auto* line = path.get_if<paths::Line>()) {
    // a dimension flag re-targets a bare line spec
    if (line->direction.dim() == 2 && dim != 2) path = paths::Line::axis(dim);
  }
  Rng rng(opt.seed, 3);
  const auto est = escape::mean_escape_monte_carlo(path, dim, opt.samples, rng, opt.t_cap);
  if (opt.format == "csv") {
    std::cout << "value,stderr,truncated,samples\n"
              << fmt(est.value) << ',' << fmt(est.error_bound) << ','
              << (est.truncated ? 1 : 0) << ',' << opt.samples << '\n';
  } else {
    json report{{"value", est.value},
                {"stderr", est.error_bound},
                {"truncated", est.truncated},
                {"samples", opt.samples},
                {"dim", dim}};
    std::cout << report.dump() << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"escape-lab: expected escape times from the unit ball, "
               "planar Kneser-Poulsen checks, and line-optimality experiments"};
  // --h is a quadrature flag, so help is long-form only
  app.set_help_flag("--help", "Print help and exit");
  app.require_subcommand(1);

  EvaluateOptions ev;
  auto* evaluate = app.add_subcommand(
      "evaluate", "Mean escape time of a 2D path by exact-area quadrature");
  evaluate->add_option("--spec", ev.spec_file, "Path spec JSON file")->required();
  evaluate->add_option("--h", ev.h, "Grid spacing");
  evaluate->add_option("--t-cap", ev.t_cap, "Time cap");
  evaluate->add_option("--format", ev.format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  evaluate->add_option("--out", ev.out, "Write the t,area,cumulative_J table here");

  TableOptions tb;
  auto* table = app.add_subcommand(
      "table", "Closed-form vs Monte Carlo mean escape per dimension");
  table->add_option("--n-max", tb.n_max, "Largest dimension")->check(CLI::PositiveNumber);
  table->add_option("--samples", tb.samples, "Monte Carlo samples per row");
  table->add_option("--seed", tb.seed, "Random seed")->required();
  table->add_option("--format", tb.format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  table->add_option("--out", tb.out, "Output file (default stdout)");

  KpOptions kp_opt;
  auto* kp_cmd = app.add_subcommand(
      "kp", "Kneser-Poulsen campaign over seeded contraction pairs");
  kp_cmd->add_option("--pairs", kp_opt.pairs, "Number of pairs")->required();
  kp_cmd->add_option("--max-disks", kp_opt.max_disks, "Largest configuration size");
  kp_cmd->add_option("--dim", kp_opt.dim, "Ambient dimension (2 = exact areas)");
  kp_cmd->add_option("--generator", kp_opt.generator, "scaling|projection|both");
  kp_cmd->add_option("--samples", kp_opt.samples, "Monte Carlo samples (dim >= 3)");
  kp_cmd->add_option("--seed", kp_opt.seed, "Random seed")->required();
  kp_cmd->add_option("--out", kp_opt.out, "JSON-lines report file (default stdout)");

  OptimizeOptions op;
  auto* opt_cmd = app.add_subcommand(
      "optimize", "Derivative-free search over turn angles of a chain");
  opt_cmd->add_option("--joints", op.joints, "Free joints")->check(CLI::PositiveNumber);
  opt_cmd->add_option("--budget", op.budget, "Objective evaluations per run");
  opt_cmd->add_option("--seeds", op.seeds, "Number of seeded runs");
  opt_cmd->add_option("--segment-length", op.segment_length, "Chain segment length");
  opt_cmd->add_option("--h", op.h, "Quadrature grid spacing");
  opt_cmd->add_option("--t-cap", op.t_cap, "Quadrature time cap");
  opt_cmd->add_option("--seed", op.seed, "Random seed")->required();
  opt_cmd->add_option("--format", op.format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  opt_cmd->add_option("--out", op.out, "Prefix for per-seed trace CSV files");

  McOptions mc;
  auto* mc_cmd = app.add_subcommand(
      "mc", "Monte Carlo mean escape time of a path in n dimensions");
  mc_cmd->add_option("--spec", mc.spec_file, "Path spec JSON file")->required();
  mc_cmd->add_option("--dim", mc.dim, "Ambient dimension (default: from the spec)");
  mc_cmd->add_option("--samples", mc.samples, "Sample count");
  mc_cmd->add_option("--t-cap", mc.t_cap, "Time cap for non-escaping starts");
  mc_cmd->add_option("--seed", mc.seed, "Random seed")->required();
  mc_cmd->add_option("--format", mc.format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitBadInput;
  }

  try {
    if (app.got_subcommand(evaluate)) return cmd_evaluate(ev);
    if (app.got_subcommand(table)) return cmd_table(tb);
    if (app.got_subcommand(kp_cmd)) return cmd_kp(kp_opt);
    if (app.got_subcommand(opt_cmd)) return cmd_optimize(op);
    if (app.got_subcommand(mc_cmd)) return cmd_mc(mc);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}
