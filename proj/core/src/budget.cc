#include "maxmean/budget.h"

namespace maxmean {

Budget::Budget(std::optional<double> seconds,
               std::optional<std::uint64_t> moves)
    : start_(Clock::now()), move_limit_(moves) {
  if (seconds) {
    deadline_ = start_ + std::chrono::duration_cast<Clock::duration>(
                             std::chrono::duration<double>(*seconds));
  }
}

bool Budget::Exhausted() const {
  if (move_limit_ && moves_used_ >= *move_limit_) return true;
  return deadline_ && Clock::now() >= *deadline_;
}

double Budget::ElapsedSeconds() const {
  return std::chrono::duration<double>(Clock::now() - start_).count();
}

}  // namespace maxmean
