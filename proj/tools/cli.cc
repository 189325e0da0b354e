#include "cli.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "maxmean/bench.h"
#include "maxmean/instance.h"
#include "maxmean/memetic.h"
#include "maxmean/oracle.h"
#include "maxmean/solution.h"
#include "maxmean/tabu.h"

namespace maxmean::cli {
namespace {

namespace fs = std::filesystem;

// Verbosity comes from MAXMEAN_LOG_LEVEL (trace, debug, info, warn, error,
// off); warnings and above by default. Logs go to stderr.
void ConfigureLogging() {
  static const bool configured = [] {
    auto logger = spdlog::stderr_color_mt("maxmean");
    spdlog::set_default_logger(logger);
    spdlog::set_pattern("[%l] %v");
    return true;
  }();
  (void)configured;
  const char* level = std::getenv("MAXMEAN_LOG_LEVEL");
  spdlog::set_level(level != nullptr ? spdlog::level::from_str(level)
                                     : spdlog::level::warn);
}

struct SolverFlags {
  std::string algo = "mammdp";
  std::string crossover = "uniform";
  int p = 10;
  std::int64_t alpha = 50000;
  int tmax = 120;
  std::optional<double> timeout;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> iters;

  void Register(CLI::App* cmd) {
    cmd->add_option("--algo", algo, "Algorithm")
        ->check(CLI::IsMember({"mammdp", "mts", "ts"}))
        ->capture_default_str();
    cmd->add_option("--crossover", crossover, "Crossover operator")
        ->check(CLI::IsMember({"uniform", "greedy"}))
        ->capture_default_str();
    cmd->add_option("--p", p, "Population size")
        ->check(CLI::Range(2, 1000000))
        ->capture_default_str();
    cmd->add_option("--alpha", alpha, "Tabu search depth")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--tmax", tmax, "Maximum tabu tenure")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--timeout", timeout,
                    "Wall-clock seconds (default: 10/100/1000/2000 by n)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
    cmd->add_option("--iters", iters,
                    "Deterministic mode: total tabu-search iterations")
        ->check(CLI::PositiveNumber);
  }

  MemeticParams Params(int n) const {
    MemeticParams params;
    params.p = p;
    params.alpha = alpha;
    params.t_max = tmax;
    params.t_out = timeout ? *timeout : CutoffTable::Defaults().For(n);
    params.max_moves = iters;
    params.crossover = ParseCrossover(crossover);
    params.seed = seed;
    return params;
  }
};

std::ofstream OpenOutput(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

int RunGen(int n, int type, std::uint64_t seed, int decimals,
           const std::string& out_path, std::ostream& out) {
  GeneratorConfig config;
  config.n = n;
  config.kind = type == 1 ? InstanceKind::kTypeI : InstanceKind::kTypeII;
  config.seed = seed;
  config.decimals = decimals;
  const Instance instance = Generate(config);
  if (out_path == "-") {
    WriteInstance(instance, out);
  } else {
    WriteInstanceFile(instance, out_path);
  }
  return 0;
}

int RunSolve(const std::string& file, const SolverFlags& flags,
             const std::string& events_path, const std::string& trace_path,
             std::ostream& out) {
  const Instance instance = ReadInstanceFile(file);
  const MemeticParams params = flags.Params(instance.size());
  const Algorithm algorithm = ParseAlgorithm(flags.algo);

  EventLog log;
  std::vector<MoveRecord> trace;
  RunResult result;
  if (algorithm == Algorithm::kTabu) {
    result = SingleTabu(instance, params, trace_path.empty() ? nullptr : &trace);
  } else {
    result = RunAlgorithm(algorithm, instance, params,
                          events_path.empty() ? nullptr : &log);
  }

  out << ToString(result.best);
  if (params.max_moves) {
    // Wall time would break byte-stable output in deterministic mode.
    out << " moves_to_best=" << result.moves_to_best << '\n';
  } else {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", result.seconds_to_best);
    out << " time_to_best=" << buf << '\n';
  }
  if (!events_path.empty()) {
    auto file_out = OpenOutput(events_path);
    log.WriteCsv(file_out);
  }
  if (!trace_path.empty()) {
    auto file_out = OpenOutput(trace_path);
    WriteMoveTrace(trace, file_out);
  }
  return 0;
}

int RunOracle(const std::string& file, std::ostream& out) {
  const Instance instance = ReadInstanceFile(file);
  const OracleResult best = BruteForce(instance);
  out << FormatObjective(best.objective) << " m=" << best.subset.size()
      << " M={";
  for (std::size_t k = 0; k < best.subset.size(); ++k) {
    out << (k ? "," : "") << best.subset[k] + 1;
  }
  out << "}\n";
  return 0;
}

int RunVerify(const std::string& file, std::int64_t cases, std::uint64_t seed,
              std::ostream& out) {
  const Instance instance = ReadInstanceFile(file);
  const ConsistencyReport report = CheckConsistency(instance, cases, seed);
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "cases=%lld max_delta_error=%.3e max_involution_error=%.3e "
                "involution_exact=%s max_gain_error=%.3e\n",
                static_cast<long long>(report.cases), report.max_delta_error,
                report.max_involution_error,
                report.involution_exact ? "yes" : "no", report.max_gain_error);
  out << buf;
  const bool ok = report.max_delta_error <= 1e-9 && report.involution_exact &&
                  report.max_involution_error <= 1e-9 &&
                  report.max_gain_error <= 1e-6;
  return ok ? 0 : 1;
}

int RunBench(const std::string& manifest_path, int runs,
             const std::string& ref_path, const std::string& out_dir,
             int threads, const SolverFlags& flags, std::ostream& out) {
  const std::vector<ManifestEntry> manifest = ReadManifest(manifest_path);
  if (manifest.empty()) throw std::runtime_error("manifest lists no instances");
  std::vector<Instance> instances;
  std::vector<std::optional<double>> cutoffs;
  for (const ManifestEntry& entry : manifest) {
    instances.push_back(ReadInstanceFile(entry.path));
    cutoffs.push_back(entry.cutoff);
  }

  BenchmarkConfig config;
  config.algorithm = ParseAlgorithm(flags.algo);
  config.params = flags.Params(instances.front().size());
  config.runs = runs;
  config.cutoff_override = flags.timeout;
  config.threads = threads;

  std::map<std::string, Reference> references;
  if (!ref_path.empty()) references = ReadReferencesFile(ref_path);

  const auto records = ExecuteRuns(instances, config, cutoffs);
  const std::string params = std::string(AlgorithmName(config.algorithm)) +
                             " " + config.params.Describe();
  const auto reports = Aggregate(records, params, references);

  fs::create_directories(out_dir);
  {
    auto f = OpenOutput(fs::path(out_dir) / "runs.csv");
    WriteRecordsCsv(records, f);
  }
  {
    auto f = OpenOutput(fs::path(out_dir) / "report.csv");
    WriteReportCsv(reports, f);
  }
  {
    auto f = OpenOutput(fs::path(out_dir) / "report.md");
    WriteReportMarkdown(reports, f);
  }
  WriteReportMarkdown(reports, out);
  return 0;
}

int RunConvert(const std::string& in_path, const std::string& out_path,
               std::ostream& out) {
  const Instance instance = ReadInstanceFile(in_path);
  if (out_path == "-") {
    WriteInstance(instance, out);
  } else {
    WriteInstanceFile(instance, out_path);
  }
  return 0;
}

}  // namespace

int Main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err) {
  ConfigureLogging();
  CLI::App app("Max-mean dispersion solver", "maxmean");
  app.require_subcommand(1);

  int gen_n = 0;
  int gen_type = 1;
  std::uint64_t gen_seed = 0;
  int gen_decimals = 2;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "Generate a random instance");
  gen->add_option("--n", gen_n, "Number of elements")->required();
  gen->add_option("--type", gen_type, "1: [-10,10], 2: [-10,-5]U[5,10]")
      ->check(CLI::IsMember({1, 2}))
      ->capture_default_str();
  gen->add_option("--seed", gen_seed, "Random seed")->capture_default_str();
  gen->add_option("--decimals", gen_decimals, "Rounding precision")
      ->check(CLI::Range(0, 9))
      ->capture_default_str();
  gen->add_option("--out", gen_out, "Output file, '-' for stdout")->required();

  std::string solve_file;
  std::string solve_events;
  std::string solve_trace;
  SolverFlags solve_flags;
  auto* solve = app.add_subcommand("solve", "Solve an instance");
  solve->add_option("file", solve_file, "Instance file")->required();
  solve_flags.Register(solve);
  solve->add_option("--events", solve_events, "Write the event log CSV here");
  solve->add_option("--trace", solve_trace,
                    "Write the tabu move trace CSV here (--algo ts)");

  std::string oracle_file;
  auto* oracle = app.add_subcommand("oracle", "Exact optimum by enumeration");
  oracle->add_option("file", oracle_file, "Instance file (n <= 24)")
      ->required();

  std::string bench_manifest;
  int bench_runs = 20;
  std::string bench_ref;
  std::string bench_out;
  int bench_threads = 1;
  SolverFlags bench_flags;
  auto* bench = app.add_subcommand("bench", "Repeated runs and report tables");
  bench->add_option("--manifest", bench_manifest, "Instance list")->required();
  bench->add_option("--runs", bench_runs, "Runs per instance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench->add_option("--ref", bench_ref, "Reference CSV instance,f_pre");
  bench->add_option("--out", bench_out, "Report directory")->required();
  bench->add_option("--threads", bench_threads, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench_flags.Register(bench);

  std::string verify_file;
  std::int64_t verify_cases = 100000;
  std::uint64_t verify_seed = 0;
  auto* verify = app.add_subcommand(
      "verify", "Check incremental move values against recomputation");
  verify->add_option("file", verify_file, "Instance file")->required();
  verify->add_option("--cases", verify_cases, "Number of random flips")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  verify->add_option("--seed", verify_seed, "Random seed")
      ->capture_default_str();

  std::string convert_in;
  std::string convert_out;
  auto* convert = app.add_subcommand(
      "convert", "Rewrite a full-matrix or canonical file in canonical form");
  convert->add_option("file", convert_in, "Input instance")->required();
  convert->add_option("--out", convert_out, "Output file, '-' for stdout")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*gen) {
      return RunGen(gen_n, gen_type, gen_seed, gen_decimals, gen_out, out);
    }
    if (*solve) {
      return RunSolve(solve_file, solve_flags, solve_events, solve_trace, out);
    }
    if (*oracle) return RunOracle(oracle_file, out);
    if (*bench) {
      return RunBench(bench_manifest, bench_runs, bench_ref, bench_out,
                      bench_threads, bench_flags, out);
    }
    if (*verify) return RunVerify(verify_file, verify_cases, verify_seed, out);
    if (*convert) return RunConvert(convert_in, convert_out, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace maxmean::cli
