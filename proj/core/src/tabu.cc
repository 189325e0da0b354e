#include "maxmean/tabu.h"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace maxmean {
namespace {

constexpr std::array<int, TenureSchedule::kSteps> kStepPattern = {
    1, 2, 1, 4, 1, 2, 1, 8, 1, 2, 1, 4, 1, 2, 1};

}  // namespace

TenureSchedule::TenureSchedule(int t_max) : t_max_(t_max) {
  if (t_max < 1) {
    throw std::invalid_argument("t_max must be positive, got " +
                                std::to_string(t_max));
  }
  margins_[0] = 1;
  for (int k = 0; k < kSteps; ++k) {
    // Small T_max would give zero-length steps; keep every step at least 1.
    steps_[k] = std::max(1, t_max * kStepPattern[k] / 8);
    margins_[k + 1] = margins_[k] + 5 * steps_[k];
  }
}

int TenureSchedule::TenureAt(std::int64_t y, int r) const {
  const std::int64_t phase = (y - 1) % period() + 1;
  // margins_ is strictly increasing; find the step whose interval holds phase.
  const auto it = std::upper_bound(margins_.begin(), margins_.end(), phase);
  const int step = static_cast<int>(it - margins_.begin()) - 1;
  return steps_[step] + r;
}

Solution TabuSearch(const Instance& instance, Solution start,
                    const TabuParams& params, Rng& rng, Budget& budget,
                    TabuStats* stats, std::vector<MoveRecord>* trace) {
  if (!start.feasible()) {
    throw std::invalid_argument(
        "tabu search needs a starting solution with at least 2 elements");
  }
  const int n = instance.size();
  Solution current = std::move(start);
  current.Refresh(instance);

  const TenureSchedule schedule(params.t_max);
  TabuList tabu(n);
  std::uniform_int_distribution<int> tenure_offset(0, 2);

  Bits best_bits(current.bits().begin(), current.bits().end());
  double best_f = current.objective();
  TabuStats local;
  local.best_seconds = budget.ElapsedSeconds();
  local.best_moves = budget.moves_used();

  std::int64_t idle = 0;
  std::int64_t y = 1;
  while (idle < params.alpha && !budget.Exhausted()) {
    int chosen = -1;
    double chosen_delta = 0.0;
    bool chosen_tabu = false;
    int ties = 0;
    int fallback = -1;
    const double f = current.objective();

    for (int i = 0; i < n; ++i) {
      if (!current.CanFlip(i)) continue;
      const double delta = current.FlipDelta(i);
      const bool is_tabu = tabu.IsTabu(i, y);
      if (is_tabu && f + delta <= best_f + kObjectiveEpsilon) {
        // With no eligible move, take the tabu move closest to expiring.
        // Ordering by forbid time instead cycles through the elements in a
        // fixed order whenever every tenure exceeds n.
        if (fallback < 0 || tabu.expiry(i) < tabu.expiry(fallback) ||
            (tabu.expiry(i) == tabu.expiry(fallback) &&
             tabu.last_forbidden(i) < tabu.last_forbidden(fallback))) {
          fallback = i;
        }
        continue;
      }
      if (chosen < 0 || delta > chosen_delta + kObjectiveEpsilon) {
        chosen = i;
        chosen_delta = delta;
        chosen_tabu = is_tabu;
        ties = 1;
      } else if (delta >= chosen_delta - kObjectiveEpsilon) {
        // Reservoir sampling keeps the pick uniform over the tied set.
        ++ties;
        if (std::uniform_int_distribution<int>(0, ties - 1)(rng) == 0) {
          chosen = i;
          chosen_delta = delta;
          chosen_tabu = is_tabu;
        }
      }
    }

    if (chosen < 0) {
      if (fallback < 0) {
        // No legal flip at all (e.g. n = 2 with both selected).
        budget.Charge();
        break;
      }
      chosen = fallback;
      chosen_delta = current.FlipDelta(chosen);
      chosen_tabu = true;
      ++local.fallbacks;
    } else if (chosen_tabu) {
      ++local.aspirations;
    }

    current.Flip(instance, chosen);
    tabu.Forbid(chosen, y, schedule.TenureAt(y, tenure_offset(rng)));
    budget.Charge();

    if (current.objective() > best_f + kObjectiveEpsilon) {
      best_f = current.objective();
      std::copy(current.bits().begin(), current.bits().end(),
                best_bits.begin());
      idle = 0;
      local.best_iteration = y;
      local.best_seconds = budget.ElapsedSeconds();
      local.best_moves = budget.moves_used();
    } else {
      ++idle;
    }
    if (trace != nullptr) {
      trace->push_back({y, chosen, chosen_delta, current.objective(),
                        tabu.expiry(chosen), chosen_tabu});
    }
    ++y;
  }
  local.iterations = y - 1;
  if (stats != nullptr) *stats = local;
  return Solution::FromBits(instance, std::move(best_bits));
}

void WriteMoveTrace(std::span<const MoveRecord> trace, std::ostream& out) {
  out << "iteration,element,delta,f,expiry,was_tabu\n";
  for (const MoveRecord& r : trace) {
    out << r.iteration << ',' << (r.element + 1) << ','
        << FormatObjective(r.delta) << ',' << FormatObjective(r.objective)
        << ',' << r.expiry << ',' << (r.was_tabu ? 1 : 0) << '\n';
  }
}

}  // namespace maxmean
