// pgc: batch driver for basis enumeration, verification suites, homology
// tables and the plus-graph example.
//
// Exit codes: 0 all checks pass, 1 some check failed, 2 usage or argument
// error, 3 infeasible size, 4 unreadable cache or input.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>

#include <CLI11.hpp>

#include "pgc/arnold.hpp"
#include "pgc/errors.hpp"
#include "pgc/interchange.hpp"
#include "pgc/verify.hpp"

namespace {

using namespace pgc;

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitLoad = 4;

struct Options {
  RunConfig config;
  std::string mode = "projective";
  std::string example;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--arity", o.config.arity, "number of external vertices n");
  cmd->add_option("--mode", o.mode, "projective or affine")
      ->check(CLI::IsMember({"projective", "affine"}));
  cmd->add_option("--max-internal", o.config.max_internal, "truncation M on internal vertices");
  cmd->add_option("--degree-min", o.config.degree_min);
  cmd->add_option("--degree-max", o.config.degree_max);
  cmd->add_option("--format", o.config.format, "text or csv");
  cmd->add_option("--out", o.config.out, "report file (default: stdout)");
  cmd->add_option("--cache-dir", o.config.cache_dir, "basis cache directory")
      ->envname("PGC_CACHE_DIR");
  cmd->add_option("--workers", o.config.workers);
  cmd->add_option("--seed", o.config.seed, "seed for sampled suites");
}

/// Runs `body` with the report stream, honouring --out.
template <class F>
int with_output(const RunConfig& config, F&& body) {
  if (config.out.empty()) return body(std::cout);
  std::ofstream file(config.out);
  if (!file) throw ArgumentError("cannot open " + config.out);
  return body(file);
}

void print_cost_estimate(const RunConfig& config) {
  if (config.arity <= 4 && config.max_internal <= 2) return;
  const double based = total_cost(config.arity, BasisKind::projective_based, config.max_internal);
  const double all = total_cost(config.arity, BasisKind::projective_all, config.max_internal);
  std::cerr << std::setprecision(3) << "cost estimate: about " << based
            << " edge sets for the based basis and " << all
            << " for the unreduced basis (n=" << config.arity << ", M=" << config.max_internal
            << ")\n";
}

int run_suites(const RunConfig& config, const std::vector<std::string>& suites) {
  print_cost_estimate(config);
  Workspace ws(config);
  std::vector<ReportRow> rows;
  for (const auto& name : suites) {
    auto start = std::chrono::steady_clock::now();
    auto part = run_suite(name, config, ws);
    std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
    std::cerr << "suite " << name << ": " << part.size() << " rows, " << std::fixed
              << std::setprecision(2) << took.count() << " s\n"
              << std::defaultfloat;
    rows.insert(rows.end(), part.begin(), part.end());
  }
  return with_output(config, [&](std::ostream& out) {
    write_report(out, rows, config.format);
    return all_pass(rows) ? 0 : kExitFail;
  });
}

int cmd_example(const Options& o) {
  if (o.example != "plus-graph") {
    std::cerr << "unknown example: " << o.example << " (available: plus-graph)\n";
    return kExitUsage;
  }
  bool ok = false;
  auto lines = plus_graph_report(ok);
  return with_output(o.config, [&](std::ostream& out) {
    for (const auto& line : lines) out << line << '\n';
    return ok ? 0 : kExitFail;
  });
}

int cmd_enumerate(const RunConfig& config) {
  Workspace ws(config);
  const bool affine = config.mode == Mode::affine;
  const auto& b = affine ? ws.basis(label_range(1, config.arity), BasisKind::kontsevich,
                                    config.max_internal)
                         : ws.basis(label_range(0, config.arity), BasisKind::projective_based,
                                    config.max_internal);
  return with_output(config, [&](std::ostream& out) {
    for (int d = b.min_degree(); d <= b.max_degree(); ++d) {
      if (!config.degree_selected(d)) continue;
      for (int m = 0; m <= config.max_internal; ++m) {
        for (const auto& g : b.block(d, m)) out << dump_graph({g, 1}) << '\n';
      }
    }
    return 0;
  });
}

int cmd_betti(const RunConfig& config) {
  const auto betti = betti_table(config.arity);
  return with_output(config, [&](std::ostream& out) {
    if (config.format == "csv") out << "degree,dimension\n";
    for (std::size_t d = 0; d < betti.size(); ++d) {
      if (!config.degree_selected(static_cast<int>(d))) continue;
      if (config.format == "csv") {
        out << d << ',' << betti[d] << '\n';
      } else {
        out << "H^" << d << " = " << betti[d] << '\n';
      }
    }
    return 0;
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Projective graph complexes: enumeration, verification and homology"};
  app.require_subcommand(1);

  Options verify_opts, homology_opts, example_opts, enumerate_opts, betti_opts;
  auto* verify = app.add_subcommand("verify", "run verification suites");
  add_common(verify, verify_opts);
  verify->add_option("--suite", verify_opts.config.suites, "suite to run (repeatable)");

  auto* homology = app.add_subcommand("homology", "truncated homology against Betti numbers");
  add_common(homology, homology_opts);

  auto* example = app.add_subcommand("example", "worked example");
  add_common(example, example_opts);
  example->add_option("name", example_opts.example, "plus-graph")->required();

  auto* enumerate = app.add_subcommand("enumerate", "print basis graphs as interchange records");
  add_common(enumerate, enumerate_opts);

  auto* betti = app.add_subcommand("betti", "Betti numbers of the framed configuration space");
  add_common(betti, betti_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    auto prepare = [](Options& o) -> RunConfig& {
      o.config.mode = parse_mode(o.mode);
      o.config.validate();
      return o.config;
    };
    if (*verify) {
      RunConfig& config = prepare(verify_opts);
      return run_suites(config, config.suites.empty() ? suite_names() : config.suites);
    }
    if (*homology) return run_suites(prepare(homology_opts), {"homology"});
    if (*example) {
      prepare(example_opts);
      return cmd_example(example_opts);
    }
    if (*enumerate) return cmd_enumerate(prepare(enumerate_opts));
    if (*betti) return cmd_betti(prepare(betti_opts));
  } catch (const ArgumentError& e) {
    std::cerr << "argument error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InfeasibleError& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const LoadError& e) {
    std::cerr << "load error: " << e.what() << '\n';
    return kExitLoad;
  }
  return kExitUsage;
}
