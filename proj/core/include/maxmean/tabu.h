#ifndef MAXMEAN_TABU_H_
#define MAXMEAN_TABU_H_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <vector>

#include "maxmean/budget.h"
#include "maxmean/instance.h"
#include "maxmean/solution.h"

namespace maxmean {

using Rng = std::mt19937_64;

// Two objective values closer than this are treated as equal when deciding
// improvement, aspiration and ties.
inline constexpr double kObjectiveEpsilon = 1e-10;

// Periodic step function for the tabu tenure. One period holds 15 steps; step
// k lasts 5*a_k iterations and has base tenure a_k, where
// a = (T_max/8) * (1,2,1,4,1,2,1,8,1,2,1,4,1,2,1).
class TenureSchedule {
 public:
  static constexpr int kSteps = 15;

  explicit TenureSchedule(int t_max = 120);

  int t_max() const { return t_max_; }
  const std::array<int, kSteps>& steps() const { return steps_; }
  // margins()[k] is the first iteration of step k; margins()[15] is the first
  // iteration of the next period.
  const std::array<int, kSteps + 1>& margins() const { return margins_; }
  int period() const { return margins_[kSteps] - 1; }

  // Tenure for iteration y >= 1 given the random offset r in {0, 1, 2}.
  int TenureAt(std::int64_t y, int r) const;

 private:
  int t_max_;
  std::array<int, kSteps> steps_{};
  std::array<int, kSteps + 1> margins_{};
};

// Per-element tabu status. Element i is tabu at iteration y iff
// y < expiry(i).
class TabuList {
 public:
  explicit TabuList(int n) : expiry_(n, 0), last_forbidden_(n, 0) {}

  bool IsTabu(int i, std::int64_t y) const { return y < expiry_[i]; }
  std::int64_t expiry(int i) const { return expiry_[i]; }
  std::int64_t last_forbidden(int i) const { return last_forbidden_[i]; }

  // Called at iteration y after flipping i; i stays tabu for `tenure`
  // further iterations.
  void Forbid(int i, std::int64_t y, int tenure) {
    expiry_[i] = y + tenure + 1;
    last_forbidden_[i] = y;
  }

 private:
  std::vector<std::int64_t> expiry_;
  std::vector<std::int64_t> last_forbidden_;
};

struct TabuParams {
  std::int64_t alpha = 50000;  // consecutive non-improving iterations
  int t_max = 120;
};

struct MoveRecord {
  std::int64_t iteration;
  int element;           // 0-based
  double delta;          // predicted objective change
  double objective;      // objective after the move
  std::int64_t expiry;   // first iteration the element may flip again
  bool was_tabu;         // selected through aspiration or as the fallback
};

struct TabuStats {
  std::int64_t iterations = 0;
  std::int64_t best_iteration = 0;   // 0 when s0 was never improved
  double best_seconds = 0.0;         // budget clock when s_b was last improved
  std::uint64_t best_moves = 0;      // budget move counter at the same point
  std::int64_t aspirations = 0;
  std::int64_t fallbacks = 0;        // iterations with no eligible move
};

// Tabu search over the one-flip neighbourhood. Each iteration applies the best
// eligible flip (not tabu, or tabu but improving on the best solution of this
// call), ties broken uniformly at random. When every legal flip is tabu and
// none aspirates, the one whose tabu status expires first is applied. Stops after `alpha` consecutive
// iterations without improving the best, when no legal flip exists, or when
// the budget runs out. Every iteration charges one unit to `budget`.
//
// Throws std::invalid_argument if `start` has fewer than two elements.
Solution TabuSearch(const Instance& instance, Solution start,
                    const TabuParams& params, Rng& rng, Budget& budget,
                    TabuStats* stats = nullptr,
                    std::vector<MoveRecord>* trace = nullptr);

// CSV with header iteration,element,delta,f,expiry,was_tabu; 1-based elements.
void WriteMoveTrace(std::span<const MoveRecord> trace, std::ostream& out);

}  // namespace maxmean

#endif  // MAXMEAN_TABU_H_
