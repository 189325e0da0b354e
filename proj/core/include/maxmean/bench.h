#ifndef MAXMEAN_BENCH_H_
#define MAXMEAN_BENCH_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "maxmean/instance.h"
#include "maxmean/memetic.h"

namespace maxmean {

// Maps instance size to a wall-clock cutoff in seconds. Entries are
// (largest n covered, seconds), checked in ascending order; sizes above the
// last entry use the last cutoff.
class CutoffTable {
 public:
  explicit CutoffTable(std::vector<std::pair<int, double>> entries);
  // 10 s up to n=150, 100 s up to n=1000, 1000 s up to n=3000, 2000 s beyond.
  static CutoffTable Defaults();

  double For(int n) const;

 private:
  std::vector<std::pair<int, double>> entries_;
};

struct BenchmarkConfig {
  Algorithm algorithm = Algorithm::kMemetic;
  MemeticParams params;  // params.seed is the first seed; run r uses seed + r
  int runs = 20;
  CutoffTable cutoffs = CutoffTable::Defaults();
  std::optional<double> cutoff_override;  // replaces the table when set
  int threads = 1;
};

// One independent run. A benchmark's reports are a pure function of these.
struct RunRecord {
  std::string instance;
  int n = 0;
  int run = 0;
  std::uint64_t seed = 0;
  double objective = 0.0;
  double seconds_to_best = 0.0;
  double elapsed_seconds = 0.0;
  std::uint64_t moves_to_best = 0;
  std::int64_t generations = 0;
};

enum class Verdict { kBetter, kEqual, kWorse };
std::string_view VerdictName(Verdict verdict);

struct Reference {
  double value = 0.0;
  // 5e-3 for values printed with at most two decimals, 1e-6 otherwise.
  double tolerance = 1e-6;
};

Verdict Compare(double achieved, const Reference& reference);

// CSV "instance,value" with an optional header row. Malformed entries are
// skipped with a warning.
std::map<std::string, Reference> ReadReferences(std::istream& in);
std::map<std::string, Reference> ReadReferencesFile(
    const std::filesystem::path& path);

struct RunReport {
  std::string instance;
  int n = 0;
  int runs = 0;
  double f_best = 0.0;
  double f_avg = 0.0;
  int sr = 0;               // runs within 1e-6 of f_best
  double t_best_avg = 0.0;  // mean seconds to each run's own best
  std::string params;
  std::optional<double> f_pre;
  std::optional<Verdict> verdict;
};

struct ManifestEntry {
  std::filesystem::path path;
  std::optional<double> cutoff;
};

// One instance path per line with an optional ",seconds" cutoff; '#'
// comments. Relative paths resolve against the manifest's directory.
std::vector<ManifestEntry> ReadManifest(const std::filesystem::path& path);

// Executes config.runs runs per instance on a pool of config.threads workers.
// Records come back ordered by (instance, run) regardless of thread count.
std::vector<RunRecord> ExecuteRuns(
    const std::vector<Instance>& instances, const BenchmarkConfig& config,
    const std::vector<std::optional<double>>& cutoffs = {});

// Groups records by instance, in first-appearance order.
std::vector<RunReport> Aggregate(
    const std::vector<RunRecord>& records, const std::string& params,
    const std::map<std::string, Reference>& references = {});

std::vector<RunReport> RunBenchmark(
    const std::vector<Instance>& instances, const BenchmarkConfig& config,
    const std::map<std::string, Reference>& references = {});

void WriteRecordsCsv(const std::vector<RunRecord>& records, std::ostream& out);
std::vector<RunRecord> ReadRecordsCsv(std::istream& in);

void WriteReportCsv(const std::vector<RunReport>& reports, std::ostream& out);
// Columns: Instance | n | f_pre | f_best | f_avg | SR | t(s), followed by
// #Better / #Equal / #Worse counts when references were supplied.
void WriteReportMarkdown(const std::vector<RunReport>& reports,
                         std::ostream& out);

}  // namespace maxmean

#endif  // MAXMEAN_BENCH_H_
