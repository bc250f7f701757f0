#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "trussopt/bench.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;

struct Options {
  std::string problem;
  std::string algo = "sfa";
  int npop = 20;
  long long iters = 1000;
  int runs = 20;
  std::uint64_t seed = 1;
  double beta0 = 2.0;
  double gamma = 1.0;
  double omega = 0.978;
  double critical = -1.65;
  std::string out;
  int threads = 0;
  std::string areas;
};

std::string output_dir(const Options& opt) {
  if (!opt.out.empty()) return opt.out;
  if (const char* env = std::getenv("TRUSSOPT_OUT"); env && *env) return env;
  return ".";
}

trussopt::FAParams params_of(const Options& opt) {
  trussopt::FAParams params;
  params.beta0 = opt.beta0;
  params.gamma = opt.gamma;
  params.omega = opt.omega;
  params.npop = opt.npop;
  params.max_iterations = opt.iters;
  return params;
}

std::string fmt3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

void print_eval(const trussopt::EvalResult& eval) {
  std::cout << "weight=" << fmt3(eval.weight)
            << " feasible=" << (eval.feasible ? "true" : "false")
            << " stable=" << (eval.stable ? "true" : "false")
            << " max_stress=" << fmt3(eval.max_abs_stress)
            << " max_disp=" << fmt3(eval.max_abs_displacement);
  if (!eval.feasible) std::cout << " f=1e20";
  std::cout << "\n";
}

int ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    std::cerr << "error: cannot create output directory " << dir << ": "
              << ec.message() << "\n";
    return kExitIo;
  }
  return kExitOk;
}

int cmd_run(const Options& opt) {
  const auto problem = trussopt::resolve_problem(opt.problem);
  const auto mode =
      opt.algo == "fa" ? trussopt::GateMode::fa : trussopt::GateMode::sfa;
  const trussopt::TestConfig test_config{opt.critical};

  const auto record = trussopt::run_single(problem, params_of(opt), mode,
                                           test_config, opt.seed);

  const std::string dir = output_dir(opt);
  if (int rc = ensure_dir(dir); rc != kExitOk) return rc;
  const std::string trace_path =
      dir + "/trace_" + std::to_string(opt.seed) + ".csv";
  trussopt::write_trace_csv(record, trace_path);

  std::cout << "problem=" << problem.name << " algo=" << opt.algo
            << " npop=" << opt.npop << " seed=" << opt.seed << "\n";
  std::cout << "best_weight=" << fmt3(record.final_best.f)
            << " evaluations=" << record.evaluations
            << " improving_moves=" << record.improving_moves
            << " wall_time_s=" << fmt3(record.wall_time_s) << "\n";
  print_eval(record.final_eval);
  std::cout << "trace=" << trace_path << "\n";
  return kExitOk;
}

int cmd_batch(const Options& opt) {
  const auto problem = trussopt::resolve_problem(opt.problem);
  const auto mode =
      opt.algo == "fa" ? trussopt::GateMode::fa : trussopt::GateMode::sfa;
  const trussopt::TestConfig test_config{opt.critical};

  const auto batch =
      trussopt::run_batch(problem, params_of(opt), mode, test_config, opt.runs,
                          opt.seed, opt.threads);

  const std::string dir = output_dir(opt);
  if (int rc = ensure_dir(dir); rc != kExitOk) return rc;
  for (const auto& record : batch.runs) {
    trussopt::write_trace_csv(
        record, dir + "/trace_" + std::to_string(record.seed) + ".csv");
  }

  // The summary file holds only seed-determined fields so that re-running
  // with the same base seed reproduces it byte for byte; timing goes to
  // stdout.
  const std::string summary_path = dir + "/summary.txt";
  std::ofstream summary(summary_path);
  if (!summary) {
    std::cerr << "error: cannot write " << summary_path << "\n";
    return kExitIo;
  }
  const auto& s = batch.stats;
  summary << "problem " << problem.name << "\n"
          << "algo " << opt.algo << "\n"
          << "npop " << opt.npop << "\n"
          << "iterations " << opt.iters << "\n"
          << "runs " << opt.runs << "\n"
          << "base_seed " << opt.seed << "\n"
          << "min_weight " << fmt3(s.min_weight) << "\n"
          << "avg_weight " << fmt3(s.avg_weight) << "\n"
          << "max_weight " << fmt3(s.max_weight) << "\n"
          << "std_weight " << fmt3(s.std_weight) << "\n"
          << "pct_within_2pct " << fmt3(s.pct_within_2pct) << "\n"
          << "avg_evaluations " << fmt3(s.avg_evaluations) << "\n"
          << "avg_improving_moves " << fmt3(s.avg_improving_moves) << "\n";
  summary.close();

  std::cout << "problem=" << problem.name << " algo=" << opt.algo
            << " npop=" << opt.npop << " runs=" << opt.runs
            << " base_seed=" << opt.seed << "\n"
            << "min_weight=" << fmt3(s.min_weight)
            << " avg_weight=" << fmt3(s.avg_weight)
            << " max_weight=" << fmt3(s.max_weight)
            << " std_weight=" << fmt3(s.std_weight) << "\n"
            << "pct_within_2pct=" << fmt3(s.pct_within_2pct)
            << " avg_evaluations=" << fmt3(s.avg_evaluations)
            << " avg_improving_moves=" << fmt3(s.avg_improving_moves)
            << " avg_wall_time_s=" << fmt3(s.avg_wall_time) << "\n"
            << "summary=" << summary_path << "\n";
  return kExitOk;
}

int cmd_verify(const Options& opt) {
  const auto problem = trussopt::resolve_problem(opt.problem);
  const auto areas = trussopt::read_area_file(opt.areas);
  const auto eval = trussopt::verify_design(problem, areas);
  print_eval(eval);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Truss topology optimization with firefly algorithms"};
  app.require_subcommand(1);

  Options opt;

  auto add_common = [&](CLI::App* cmd, bool optimization) {
    cmd->add_option("--problem", opt.problem,
                    "builtin name (problem1..problem4) or definition file")
        ->required();
    if (optimization) {
      cmd->add_option("--algo", opt.algo, "fa or sfa")
          ->check(CLI::IsMember({"fa", "sfa"}))
          ->capture_default_str();
      cmd->add_option("--npop", opt.npop, "swarm size")
          ->check(CLI::Range(2, 1000000))
          ->capture_default_str();
      cmd->add_option("--iters", opt.iters, "iteration count")
          ->check(CLI::Range(0LL, 1000000000LL))
          ->capture_default_str();
      cmd->add_option("--seed", opt.seed, "base random seed")
          ->capture_default_str();
      cmd->add_option("--beta0", opt.beta0, "attractiveness at zero distance")
          ->check(CLI::PositiveNumber)
          ->capture_default_str();
      cmd->add_option("--gamma", opt.gamma, "light absorption coefficient")
          ->check(CLI::NonNegativeNumber)
          ->capture_default_str();
      cmd->add_option("--omega", opt.omega, "cooling factor in (0,1]")
          ->check(CLI::Range(std::nextafter(0.0, 1.0), 1.0))
          ->capture_default_str();
      cmd->add_option("--critical", opt.critical,
                      "left-tail critical value (< 0)")
          ->check(CLI::Range(-1e9, std::nextafter(0.0, -1.0)))
          ->capture_default_str();
      cmd->add_option("--out", opt.out,
                      "output directory (default $TRUSSOPT_OUT or .)");
    }
  };

  auto* run_cmd = app.add_subcommand("run", "single optimization run");
  add_common(run_cmd, true);

  auto* batch_cmd =
      app.add_subcommand("batch", "independent runs with batch statistics");
  add_common(batch_cmd, true);
  batch_cmd->add_option("--runs", opt.runs, "number of independent runs")
      ->check(CLI::Range(1, 1000000))
      ->capture_default_str();
  batch_cmd->add_option("--threads", opt.threads,
                        "worker threads (0 = hardware concurrency)")
      ->check(CLI::Range(0, 4096))
      ->capture_default_str();

  auto* verify_cmd =
      app.add_subcommand("verify", "evaluate a fixed design from an area file");
  add_common(verify_cmd, false);
  verify_cmd->add_option("--areas", opt.areas, "area file (a-b area lines)")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (run_cmd->parsed()) return cmd_run(opt);
    if (batch_cmd->parsed()) return cmd_batch(opt);
    return cmd_verify(opt);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
}
