#ifndef MAXMEAN_BUDGET_H_
#define MAXMEAN_BUDGET_H_

#include <chrono>
#include <cstdint>
#include <optional>

namespace maxmean {

// Stopping rule shared by every search routine in a run. Either a wall-clock
// limit, a cap on the total number of tabu-search iterations (the
// deterministic mode used for reproducible runs), both, or neither.
class Budget {
 public:
  using Clock = std::chrono::steady_clock;

  Budget(std::optional<double> seconds, std::optional<std::uint64_t> moves);

  static Budget Unlimited() { return Budget(std::nullopt, std::nullopt); }
  static Budget Seconds(double seconds) { return Budget(seconds, std::nullopt); }
  static Budget Moves(std::uint64_t moves) { return Budget(std::nullopt, moves); }

  bool Exhausted() const;
  void Charge(std::uint64_t moves = 1) { moves_used_ += moves; }

  std::uint64_t moves_used() const { return moves_used_; }
  double ElapsedSeconds() const;
  bool deterministic() const { return !deadline_ && move_limit_.has_value(); }

 private:
  Clock::time_point start_;
  std::optional<Clock::time_point> deadline_;
  std::optional<std::uint64_t> move_limit_;
  std::uint64_t moves_used_ = 0;
};

}  // namespace maxmean

#endif  // MAXMEAN_BUDGET_H_
