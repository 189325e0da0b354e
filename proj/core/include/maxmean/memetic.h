#ifndef MAXMEAN_MEMETIC_H_
#define MAXMEAN_MEMETIC_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "maxmean/budget.h"
#include "maxmean/crossover.h"
#include "maxmean/instance.h"
#include "maxmean/solution.h"
#include "maxmean/tabu.h"

namespace maxmean {

enum class Algorithm { kMemetic, kMultiStartTabu, kTabu };

std::string_view AlgorithmName(Algorithm algorithm);
Algorithm ParseAlgorithm(std::string_view text);

struct MemeticParams {
  int p = 10;
  std::int64_t alpha = 50000;
  int t_max = 120;
  double t_out = 10.0;  // wall-clock seconds
  // Deterministic mode: cap on total tabu-search iterations. When set, the
  // wall-clock limit is ignored and runs are exactly reproducible.
  std::optional<std::uint64_t> max_moves;
  CrossoverKind crossover = CrossoverKind::kUniform;
  std::uint64_t seed = 0;

  TabuParams tabu() const { return {alpha, t_max}; }
  Budget MakeBudget() const;
  // "p=10 alpha=50000 tmax=120 crossover=uniform ..." for reports.
  std::string Describe() const;
};

enum class EventType {
  kInitMember,
  kPairDrawn,
  kOffspringF,
  kInserted,
  kRejected,
  kNewBest,
  kRestart,
};

std::string_view EventName(EventType type);
EventType ParseEvent(std::string_view text);

struct Event {
  EventType type;
  double wall_ms;
  std::string detail;  // space-separated key=value fields, no commas
};

// Append-only record of a run. CSV form: event,wall_ms,detail
class EventLog {
 public:
  void Record(EventType type, double wall_ms, std::string detail) {
    events_.push_back({type, wall_ms, std::move(detail)});
  }
  const std::vector<Event>& events() const { return events_; }

  void WriteCsv(std::ostream& out) const;
  static EventLog ReadCsv(std::istream& in);

 private:
  std::vector<Event> events_;
};

// Value of `key` in a "k1=v1 k2=v2" detail string, if present.
std::optional<std::string> DetailField(std::string_view detail,
                                       std::string_view key);

struct Member {
  Solution solution;
  std::uint64_t id = 0;  // unique within a run, never reused
  // Budget clock and move counter when tabu search reached this solution.
  double found_seconds = 0.0;
  std::uint64_t found_moves = 0;
};

// The memetic population. pair_set holds slot pairs (i, j), i < j, that have
// not been recombined yet in the current epoch.
struct Population {
  std::vector<Member> members;
  std::vector<std::pair<int, int>> pair_set;
  Solution best;
  std::uint64_t next_id = 0;

  int size() const { return static_cast<int>(members.size()); }
  int WorstIndex() const;  // lowest index among ties
  int BestIndex() const;   // lowest index among ties
  bool Contains(const Solution& s) const;
  void ResetPairs();
};

// Fair-coin bits repaired to at least two selected elements.
Bits RandomBits(int n, Rng& rng);

// p random solutions, each improved by tabu search. A member that duplicates
// an earlier one is regenerated up to 20 times before being accepted anyway.
// `next_id` numbers the members. `duplicates` counts accepted duplicates.
Population InitPopulation(const Instance& instance, const MemeticParams& params,
                          Rng& rng, Budget& budget, std::uint64_t next_id = 0,
                          EventLog* log = nullptr, int* duplicates = nullptr);

enum class UpdateOutcome { kInserted, kRejected };

struct UpdateResult {
  UpdateOutcome outcome = UpdateOutcome::kRejected;
  int slot = -1;                 // slot written on insertion
  std::uint64_t replaced_id = 0;
  bool duplicate = false;        // rejection reason
};

// Replaces the worst member when `offspring` is distinct from every member and
// strictly better than the worst. Pairs of the replaced member leave pair_set
// and pairs of the newcomer with every other member join it. Does not touch
// pop.best. On insertion the newcomer receives id pop.next_id.
UpdateResult UpdatePopulation(Population& pop, Member offspring);

struct RunResult {
  Solution best;
  double seconds_to_best = 0.0;
  std::uint64_t moves_to_best = 0;
  double elapsed_seconds = 0.0;
  std::int64_t generations = 0;  // offspring produced
  std::int64_t restarts = 0;     // population re-initialisations after the first
  std::int64_t tabu_calls = 0;
  std::uint64_t moves = 0;       // total tabu-search iterations
  int duplicate_members = 0;
};

// The memetic algorithm: PairSet-driven recombination with restarts that carry
// the best solution into the next population, until the budget runs out.
RunResult Solve(const Instance& instance, const MemeticParams& params,
                EventLog* log = nullptr);

// Repeated tabu search from fresh random solutions until the budget runs out.
RunResult MultiStartTabu(const Instance& instance, const MemeticParams& params,
                         EventLog* log = nullptr);

// One tabu search from a random start. `trace` receives every move.
RunResult SingleTabu(const Instance& instance, const MemeticParams& params,
                     std::vector<MoveRecord>* trace = nullptr);

RunResult RunAlgorithm(Algorithm algorithm, const Instance& instance,
                       const MemeticParams& params, EventLog* log = nullptr);

}  // namespace maxmean

#endif  // MAXMEAN_MEMETIC_H_
