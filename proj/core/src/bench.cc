#include "maxmean/bench.h"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <spdlog/spdlog.h>

namespace maxmean {
namespace {

constexpr double kSameValue = 1e-6;

std::string Shortest(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string Fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  for (std::string field; std::getline(ss, field, ',');) {
    while (!field.empty() && (field.back() == '\r' || field.back() == ' ')) {
      field.pop_back();
    }
    while (!field.empty() && field.front() == ' ') field.erase(0, 1);
    fields.push_back(field);
  }
  return fields;
}

template <typename T>
bool ParseField(const std::string& text, T& out) {
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end;
}

int DecimalsOf(const std::string& text) {
  const auto dot = text.find('.');
  if (dot == std::string::npos) return 0;
  int digits = 0;
  for (std::size_t i = dot + 1; i < text.size() && std::isdigit(
                                                       static_cast<unsigned char>(text[i]));
       ++i) {
    ++digits;
  }
  return digits;
}

}  // namespace

CutoffTable::CutoffTable(std::vector<std::pair<int, double>> entries)
    : entries_(std::move(entries)) {
  if (entries_.empty()) throw std::invalid_argument("empty cutoff table");
  std::sort(entries_.begin(), entries_.end());
}

CutoffTable CutoffTable::Defaults() {
  return CutoffTable({{150, 10.0}, {1000, 100.0}, {3000, 1000.0},
                      {5000, 2000.0}});
}

double CutoffTable::For(int n) const {
  for (const auto& [max_n, seconds] : entries_) {
    if (n <= max_n) return seconds;
  }
  return entries_.back().second;
}

std::string_view VerdictName(Verdict verdict) {
  switch (verdict) {
    case Verdict::kBetter:
      return "Better";
    case Verdict::kEqual:
      return "Equal";
    case Verdict::kWorse:
      return "Worse";
  }
  return "";
}

Verdict Compare(double achieved, const Reference& reference) {
  if (achieved > reference.value + reference.tolerance) return Verdict::kBetter;
  if (achieved < reference.value - reference.tolerance) return Verdict::kWorse;
  return Verdict::kEqual;
}

std::map<std::string, Reference> ReadReferences(std::istream& in) {
  std::map<std::string, Reference> refs;
  int number = 0;
  for (std::string line; std::getline(in, line);) {
    ++number;
    if (line.empty() || line.front() == '#') continue;
    const auto fields = SplitCsv(line);
    Reference ref;
    // Header row: any column names, e.g. "instance,f_pre".
    if (number == 1 && fields.size() >= 2 && !ParseField(fields[1], ref.value)) {
      continue;
    }
    if (fields.size() != 2 || fields[0].empty() ||
        !ParseField(fields[1], ref.value)) {
      spdlog::warn("reference line {} ignored: expected instance,f_pre", number);
      continue;
    }
    ref.tolerance = DecimalsOf(fields[1]) <= 2 ? 5e-3 : kSameValue;
    refs[fields[0]] = ref;
  }
  return refs;
}

std::map<std::string, Reference> ReadReferencesFile(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open reference file " + path.string());
  return ReadReferences(in);
}

std::vector<ManifestEntry> ReadManifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open manifest " + path.string());
  std::vector<ManifestEntry> entries;
  int number = 0;
  for (std::string line; std::getline(in, line);) {
    ++number;
    const auto fields = SplitCsv(line);
    if (fields.empty() || fields[0].empty() || fields[0].front() == '#') continue;
    ManifestEntry entry;
    entry.path = fields[0];
    if (entry.path.is_relative()) entry.path = path.parent_path() / entry.path;
    if (fields.size() > 1 && !fields[1].empty()) {
      double seconds = 0.0;
      if (!ParseField(fields[1], seconds) || seconds <= 0.0) {
        throw std::runtime_error("manifest line " + std::to_string(number) +
                                 ": bad cutoff '" + fields[1] + "'");
      }
      entry.cutoff = seconds;
    }
    if (!std::filesystem::exists(entry.path)) {
      throw std::runtime_error("manifest line " + std::to_string(number) +
                               ": missing instance file " + entry.path.string());
    }
    entries.push_back(std::move(entry));
  }
  return entries;
}

std::vector<RunRecord> ExecuteRuns(
    const std::vector<Instance>& instances, const BenchmarkConfig& config,
    const std::vector<std::optional<double>>& cutoffs) {
  if (config.runs < 1) throw std::invalid_argument("runs must be positive");
  const std::size_t total = instances.size() * config.runs;
  std::vector<RunRecord> records(total);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t task = next++; task < total; task = next++) {
      const Instance& instance = instances[task / config.runs];
      const int run = static_cast<int>(task % config.runs);
      MemeticParams params = config.params;
      params.seed = config.params.seed + static_cast<std::uint64_t>(run);
      const std::size_t index = task / config.runs;
      if (config.cutoff_override) {
        params.t_out = *config.cutoff_override;
      } else if (index < cutoffs.size() && cutoffs[index]) {
        params.t_out = *cutoffs[index];
      } else {
        params.t_out = config.cutoffs.For(instance.size());
      }
      const RunResult result =
          RunAlgorithm(config.algorithm, instance, params);
      RunRecord& r = records[task];
      r.instance = instance.name();
      r.n = instance.size();
      r.run = run;
      r.seed = params.seed;
      r.objective = result.best.objective();
      r.seconds_to_best = result.seconds_to_best;
      r.elapsed_seconds = result.elapsed_seconds;
      r.moves_to_best = result.moves_to_best;
      r.generations = result.generations;
      spdlog::debug("{} run {} seed {}: f={}", r.instance, run, r.seed,
                    FormatObjective(r.objective));
    }
  };

  const int threads =
      std::max(1, std::min<int>(config.threads, static_cast<int>(total)));
  {
    std::vector<std::jthread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  return records;
}

std::vector<RunReport> Aggregate(
    const std::vector<RunRecord>& records, const std::string& params,
    const std::map<std::string, Reference>& references) {
  std::vector<RunReport> reports;
  std::vector<std::vector<const RunRecord*>> groups;
  for (const RunRecord& r : records) {
    auto it = std::find_if(reports.begin(), reports.end(),
                           [&](const RunReport& rep) {
                             return rep.instance == r.instance;
                           });
    if (it == reports.end()) {
      RunReport rep;
      rep.instance = r.instance;
      rep.n = r.n;
      rep.params = params;
      reports.push_back(std::move(rep));
      groups.emplace_back();
      it = reports.end() - 1;
    }
    groups[it - reports.begin()].push_back(&r);
  }

  for (std::size_t k = 0; k < reports.size(); ++k) {
    RunReport& rep = reports[k];
    const auto& runs = groups[k];
    rep.runs = static_cast<int>(runs.size());
    rep.f_best = runs.front()->objective;
    double sum = 0.0;
    double time_sum = 0.0;
    for (const RunRecord* r : runs) {
      rep.f_best = std::max(rep.f_best, r->objective);
      sum += r->objective;
      time_sum += r->seconds_to_best;
    }
    rep.f_avg = std::min(rep.f_best, sum / rep.runs);
    rep.t_best_avg = time_sum / rep.runs;
    rep.sr = static_cast<int>(std::count_if(
        runs.begin(), runs.end(), [&](const RunRecord* r) {
          return r->objective >= rep.f_best - kSameValue;
        }));
    if (auto ref = references.find(rep.instance); ref != references.end()) {
      rep.f_pre = ref->second.value;
      rep.verdict = Compare(rep.f_best, ref->second);
    } else if (!references.empty()) {
      spdlog::warn("no reference value for instance {}", rep.instance);
    }
  }
  return reports;
}

std::vector<RunReport> RunBenchmark(
    const std::vector<Instance>& instances, const BenchmarkConfig& config,
    const std::map<std::string, Reference>& references) {
  std::string params = std::string(AlgorithmName(config.algorithm)) + " " +
                       config.params.Describe();
  return Aggregate(ExecuteRuns(instances, config), params, references);
}

void WriteRecordsCsv(const std::vector<RunRecord>& records, std::ostream& out) {
  out << "instance,n,run,seed,f,seconds_to_best,elapsed_seconds,moves_to_best,"
         "generations\n";
  for (const RunRecord& r : records) {
    out << r.instance << ',' << r.n << ',' << r.run << ',' << r.seed << ','
        << Shortest(r.objective) << ',' << Shortest(r.seconds_to_best) << ','
        << Shortest(r.elapsed_seconds) << ',' << r.moves_to_best << ','
        << r.generations << '\n';
  }
}

std::vector<RunRecord> ReadRecordsCsv(std::istream& in) {
  std::vector<RunRecord> records;
  int number = 0;
  for (std::string line; std::getline(in, line);) {
    ++number;
    if (line.empty() || (number == 1 && line.starts_with("instance,"))) continue;
    const auto f = SplitCsv(line);
    RunRecord r;
    const bool ok = f.size() == 9 && ParseField(f[1], r.n) &&
                    ParseField(f[2], r.run) && ParseField(f[3], r.seed) &&
                    ParseField(f[4], r.objective) &&
                    ParseField(f[5], r.seconds_to_best) &&
                    ParseField(f[6], r.elapsed_seconds) &&
                    ParseField(f[7], r.moves_to_best) &&
                    ParseField(f[8], r.generations);
    if (!ok) {
      throw std::runtime_error("run record line " + std::to_string(number) +
                               " is malformed");
    }
    r.instance = f[0];
    records.push_back(std::move(r));
  }
  return records;
}

void WriteReportCsv(const std::vector<RunReport>& reports, std::ostream& out) {
  out << "instance,n,runs,f_pre,f_best,f_avg,sr,t_best_avg,verdict,params\n";
  for (const RunReport& r : reports) {
    out << r.instance << ',' << r.n << ',' << r.runs << ','
        << (r.f_pre ? Shortest(*r.f_pre) : "") << ',' << Fixed(r.f_best, 6)
        << ',' << Fixed(r.f_avg, 6) << ',' << r.sr << ','
        << Fixed(r.t_best_avg, 2) << ','
        << (r.verdict ? VerdictName(*r.verdict) : "") << ',' << r.params
        << '\n';
  }
}

void WriteReportMarkdown(const std::vector<RunReport>& reports,
                         std::ostream& out) {
  out << "| Instance | n | f_pre | f_best | f_avg | SR | t(s) |\n";
  out << "|---|---:|---:|---:|---:|---:|---:|\n";
  int better = 0;
  int equal = 0;
  int worse = 0;
  bool any_reference = false;
  for (const RunReport& r : reports) {
    out << "| " << r.instance << " | " << r.n << " | "
        << (r.f_pre ? Shortest(*r.f_pre) : "") << " | " << Fixed(r.f_best, 6)
        << " | " << Fixed(r.f_avg, 6) << " | " << r.sr << '/' << r.runs
        << " | " << Fixed(r.t_best_avg, 2) << " |\n";
    if (r.verdict) {
      any_reference = true;
      better += *r.verdict == Verdict::kBetter;
      equal += *r.verdict == Verdict::kEqual;
      worse += *r.verdict == Verdict::kWorse;
    }
  }
  if (any_reference) {
    out << "\n#Better " << better << " | #Equal " << equal << " | #Worse "
        << worse << '\n';
  }
  if (!reports.empty()) out << "\nParameters: " << reports.front().params << '\n';
}

}  // namespace maxmean
