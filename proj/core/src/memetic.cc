#include "maxmean/memetic.h"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <spdlog/spdlog.h>

namespace maxmean {
namespace {

constexpr int kDuplicateRetries = 20;

std::string FormatMs(double ms) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", ms);
  return buf;
}

double WallMs(const Budget& budget) { return budget.ElapsedSeconds() * 1e3; }

std::string MemberIds(const Population& pop) {
  std::string out;
  for (const Member& m : pop.members) {
    if (!out.empty()) out += ';';
    out += std::to_string(m.id);
  }
  return out;
}

void Log(EventLog* log, const Budget& budget, EventType type,
         std::string detail) {
  if (log != nullptr) log->Record(type, WallMs(budget), std::move(detail));
}

// Records `candidate` as the run's best if it beats the current one.
bool Promote(RunResult& result, bool& have_best, const Member& candidate) {
  if (have_best && candidate.solution.objective() <=
                       result.best.objective() + kObjectiveEpsilon) {
    return false;
  }
  result.best = candidate.solution;
  result.seconds_to_best = candidate.found_seconds;
  result.moves_to_best = candidate.found_moves;
  have_best = true;
  return true;
}

Member Improve(const Instance& instance, Bits bits, const TabuParams& tabu,
               Rng& rng, Budget& budget, RunResult* result = nullptr,
               std::vector<MoveRecord>* trace = nullptr) {
  TabuStats stats;
  Member m;
  m.solution = TabuSearch(instance, Solution::FromBits(instance, std::move(bits)),
                          tabu, rng, budget, &stats, trace);
  m.found_seconds = stats.best_seconds;
  m.found_moves = stats.best_moves;
  if (result != nullptr) ++result->tabu_calls;
  return m;
}

}  // namespace

std::string_view AlgorithmName(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kMemetic:
      return "mammdp";
    case Algorithm::kMultiStartTabu:
      return "mts";
    case Algorithm::kTabu:
      return "ts";
  }
  return "mammdp";
}

Algorithm ParseAlgorithm(std::string_view text) {
  if (text == "mammdp") return Algorithm::kMemetic;
  if (text == "mts") return Algorithm::kMultiStartTabu;
  if (text == "ts") return Algorithm::kTabu;
  throw std::invalid_argument("unknown algorithm '" + std::string(text) + "'");
}

Budget MemeticParams::MakeBudget() const {
  if (max_moves) return Budget::Moves(*max_moves);
  return Budget::Seconds(t_out);
}

std::string MemeticParams::Describe() const {
  std::string out = "p=" + std::to_string(p) + " alpha=" +
                    std::to_string(alpha) + " tmax=" + std::to_string(t_max) +
                    " crossover=" + std::string(CrossoverName(crossover));
  if (max_moves) {
    out += " iters=" + std::to_string(*max_moves);
  } else {
    std::ostringstream t;
    t << t_out;
    out += " timeout=" + t.str();
  }
  return out;
}

std::string_view EventName(EventType type) {
  switch (type) {
    case EventType::kInitMember:
      return "init_member";
    case EventType::kPairDrawn:
      return "pair_drawn";
    case EventType::kOffspringF:
      return "offspring_f";
    case EventType::kInserted:
      return "inserted";
    case EventType::kRejected:
      return "rejected";
    case EventType::kNewBest:
      return "new_best";
    case EventType::kRestart:
      return "restart";
  }
  return "";
}

EventType ParseEvent(std::string_view text) {
  for (EventType t :
       {EventType::kInitMember, EventType::kPairDrawn, EventType::kOffspringF,
        EventType::kInserted, EventType::kRejected, EventType::kNewBest,
        EventType::kRestart}) {
    if (EventName(t) == text) return t;
  }
  throw std::invalid_argument("unknown event '" + std::string(text) + "'");
}

void EventLog::WriteCsv(std::ostream& out) const {
  out << "event,wall_ms,detail\n";
  for (const Event& e : events_) {
    out << EventName(e.type) << ',' << FormatMs(e.wall_ms) << ',' << e.detail
        << '\n';
  }
}

EventLog EventLog::ReadCsv(std::istream& in) {
  EventLog log;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (number == 1 && line.starts_with("event,")) continue;
    if (line.empty()) continue;
    const auto first = line.find(',');
    const auto second =
        first == std::string::npos ? first : line.find(',', first + 1);
    if (second == std::string::npos) {
      throw std::runtime_error("event log line " + std::to_string(number) +
                               ": expected event,wall_ms,detail");
    }
    log.Record(ParseEvent(std::string_view(line).substr(0, first)),
               std::stod(line.substr(first + 1, second - first - 1)),
               line.substr(second + 1));
  }
  return log;
}

std::optional<std::string> DetailField(std::string_view detail,
                                       std::string_view key) {
  std::size_t pos = 0;
  while (pos < detail.size()) {
    std::size_t end = detail.find(' ', pos);
    if (end == std::string_view::npos) end = detail.size();
    std::string_view field = detail.substr(pos, end - pos);
    if (field.size() > key.size() && field.starts_with(key) &&
        field[key.size()] == '=') {
      return std::string(field.substr(key.size() + 1));
    }
    pos = end + 1;
  }
  return std::nullopt;
}

int Population::WorstIndex() const {
  int worst = 0;
  for (int i = 1; i < size(); ++i) {
    if (members[i].solution.objective() <
        members[worst].solution.objective()) {
      worst = i;
    }
  }
  return worst;
}

int Population::BestIndex() const {
  int best = 0;
  for (int i = 1; i < size(); ++i) {
    if (members[i].solution.objective() > members[best].solution.objective()) {
      best = i;
    }
  }
  return best;
}

bool Population::Contains(const Solution& s) const {
  return std::any_of(members.begin(), members.end(), [&](const Member& m) {
    return m.solution.SameSubset(s);
  });
}

void Population::ResetPairs() {
  pair_set.clear();
  for (int i = 0; i < size(); ++i) {
    for (int j = i + 1; j < size(); ++j) pair_set.emplace_back(i, j);
  }
}

Bits RandomBits(int n, Rng& rng) {
  std::bernoulli_distribution coin(0.5);
  Bits bits(n);
  for (auto& bit : bits) bit = coin(rng) ? 1 : 0;
  RepairMinimumSize(bits, rng);
  return bits;
}

Population InitPopulation(const Instance& instance, const MemeticParams& params,
                          Rng& rng, Budget& budget, std::uint64_t next_id,
                          EventLog* log, int* duplicates) {
  if (params.p < 2) {
    throw std::invalid_argument("population size must be at least 2");
  }
  Population pop;
  pop.next_id = next_id;
  const TabuParams tabu = params.tabu();
  for (int k = 0; k < params.p; ++k) {
    Member m;
    bool duplicate = true;
    for (int attempt = 0; attempt <= kDuplicateRetries; ++attempt) {
      m = Improve(instance, RandomBits(instance.size(), rng), tabu, rng, budget);
      if (!pop.Contains(m.solution)) {
        duplicate = false;
        break;
      }
      if (budget.Exhausted()) break;
    }
    if (duplicate) {
      spdlog::warn("population member {} duplicates an existing member after "
                   "{} retries; keeping it",
                   k + 1, kDuplicateRetries);
      if (duplicates != nullptr) ++*duplicates;
    }
    m.id = pop.next_id++;
    Log(log, budget, EventType::kInitMember,
        "id=" + std::to_string(m.id) +
            " f=" + FormatObjective(m.solution.objective()) +
            " m=" + std::to_string(m.solution.count()) +
            " duplicate=" + (duplicate ? "1" : "0"));
    pop.members.push_back(std::move(m));
  }
  pop.best = pop.members[pop.BestIndex()].solution;
  pop.ResetPairs();
  return pop;
}

UpdateResult UpdatePopulation(Population& pop, Member offspring) {
  UpdateResult result;
  if (pop.Contains(offspring.solution)) {
    result.duplicate = true;
    return result;
  }
  const int worst = pop.WorstIndex();
  if (offspring.solution.objective() <=
      pop.members[worst].solution.objective() + kObjectiveEpsilon) {
    return result;
  }
  result.outcome = UpdateOutcome::kInserted;
  result.slot = worst;
  result.replaced_id = pop.members[worst].id;
  offspring.id = pop.next_id++;
  pop.members[worst] = std::move(offspring);

  std::erase_if(pop.pair_set, [worst](const std::pair<int, int>& pr) {
    return pr.first == worst || pr.second == worst;
  });
  for (int k = 0; k < pop.size(); ++k) {
    if (k == worst) continue;
    pop.pair_set.emplace_back(std::min(k, worst), std::max(k, worst));
  }
  return result;
}

RunResult Solve(const Instance& instance, const MemeticParams& params,
                EventLog* log) {
  Rng rng(params.seed);
  Budget budget = params.MakeBudget();
  const TabuParams tabu = params.tabu();
  RunResult result;
  bool have_best = false;
  std::uint64_t next_id = 0;
  Member best_member;

  for (std::int64_t epoch = 0;; ++epoch) {
    Population pop = InitPopulation(instance, params, rng, budget, next_id, log,
                                    &result.duplicate_members);
    result.tabu_calls += params.p;
    if (epoch > 0) {
      ++result.restarts;
      if (!pop.Contains(best_member.solution)) {
        const int worst = pop.WorstIndex();
        best_member.id = pop.next_id++;
        pop.members[worst] = best_member;
      }
    }
    const int top = pop.BestIndex();
    if (Promote(result, have_best, pop.members[top])) {
      best_member = pop.members[top];
      Log(log, budget, EventType::kNewBest,
          "f=" + FormatObjective(result.best.objective()) + " id=" +
              std::to_string(best_member.id));
    }
    pop.best = result.best;
    pop.ResetPairs();
    next_id = pop.next_id;
    std::uint64_t best_id = 0;
    for (const Member& m : pop.members) {
      if (m.solution.SameSubset(result.best)) best_id = m.id;
    }
    Log(log, budget, EventType::kRestart,
        "epoch=" + std::to_string(epoch) + " pairs=" +
            std::to_string(pop.pair_set.size()) + " members=" + MemberIds(pop) +
            " best=" + std::to_string(best_id) +
            " best_f=" + FormatObjective(result.best.objective()));

    while (!pop.pair_set.empty() && !budget.Exhausted()) {
      std::uniform_int_distribution<std::size_t> pick(0,
                                                      pop.pair_set.size() - 1);
      const std::size_t idx = pick(rng);
      const auto [i, j] = pop.pair_set[idx];
      pop.pair_set[idx] = pop.pair_set.back();
      pop.pair_set.pop_back();
      Log(log, budget, EventType::kPairDrawn,
          "a=" + std::to_string(pop.members[i].id) +
              " b=" + std::to_string(pop.members[j].id));

      const Solution& s1 = pop.members[i].solution;
      const Solution& s2 = pop.members[j].solution;
      Bits child = params.crossover == CrossoverKind::kUniform
                       ? UniformCrossover(s1.bits(), s2.bits(), rng)
                       : GreedyCrossover(instance, s1, s2);
      Member offspring =
          Improve(instance, std::move(child), tabu, rng, budget, &result);
      ++result.generations;
      Log(log, budget, EventType::kOffspringF,
          "f=" + FormatObjective(offspring.solution.objective()) +
              " m=" + std::to_string(offspring.solution.count()));

      if (Promote(result, have_best, offspring)) {
        best_member = offspring;
        pop.best = result.best;
        Log(log, budget, EventType::kNewBest,
            "f=" + FormatObjective(result.best.objective()));
      }
      const UpdateResult update = UpdatePopulation(pop, std::move(offspring));
      if (update.outcome == UpdateOutcome::kInserted) {
        Log(log, budget, EventType::kInserted,
            "id=" + std::to_string(pop.members[update.slot].id) +
                " replaced=" + std::to_string(update.replaced_id) +
                " pairs=" + std::to_string(pop.pair_set.size()));
      } else {
        Log(log, budget, EventType::kRejected,
            std::string("reason=") +
                (update.duplicate ? "duplicate" : "not_better"));
      }
    }
    next_id = pop.next_id;
    if (budget.Exhausted()) break;
  }

  result.best.Refresh(instance);
  result.elapsed_seconds = budget.ElapsedSeconds();
  result.moves = budget.moves_used();
  return result;
}

RunResult MultiStartTabu(const Instance& instance, const MemeticParams& params,
                         EventLog* log) {
  Rng rng(params.seed);
  Budget budget = params.MakeBudget();
  const TabuParams tabu = params.tabu();
  RunResult result;
  bool have_best = false;
  do {
    Member m = Improve(instance, RandomBits(instance.size(), rng), tabu, rng,
                       budget, &result);
    if (Promote(result, have_best, m)) {
      Log(log, budget, EventType::kNewBest,
          "f=" + FormatObjective(result.best.objective()));
    }
    if (result.tabu_calls > 1) ++result.restarts;
  } while (!budget.Exhausted());
  result.best.Refresh(instance);
  result.elapsed_seconds = budget.ElapsedSeconds();
  result.moves = budget.moves_used();
  return result;
}

RunResult SingleTabu(const Instance& instance, const MemeticParams& params,
                     std::vector<MoveRecord>* trace) {
  Rng rng(params.seed);
  Budget budget = params.MakeBudget();
  RunResult result;
  bool have_best = false;
  Promote(result, have_best,
          Improve(instance, RandomBits(instance.size(), rng), params.tabu(),
                  rng, budget, &result, trace));
  result.elapsed_seconds = budget.ElapsedSeconds();
  result.moves = budget.moves_used();
  return result;
}

RunResult RunAlgorithm(Algorithm algorithm, const Instance& instance,
                       const MemeticParams& params, EventLog* log) {
  switch (algorithm) {
    case Algorithm::kMemetic:
      return Solve(instance, params, log);
    case Algorithm::kMultiStartTabu:
      return MultiStartTabu(instance, params, log);
    case Algorithm::kTabu:
      return SingleTabu(instance, params);
  }
  throw std::invalid_argument("unknown algorithm");
}

}  // namespace maxmean
