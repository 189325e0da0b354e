#include "maxmean/solution.h"

#include <cstdio>
#include <utility>

namespace maxmean {

Evaluation EvaluateFull(const Instance& instance,
                        std::span<const std::uint8_t> bits) {
  const int n = instance.size();
  if (static_cast<int>(bits.size()) != n) {
    throw std::invalid_argument("bit vector length " +
                                std::to_string(bits.size()) +
                                " does not match instance size " +
                                std::to_string(n));
  }
  Evaluation eval;
  eval.gains.assign(n, 0.0);
  double pair_sum = 0.0;
  for (int j = 0; j < n; ++j) {
    if (!bits[j]) continue;
    ++eval.count;
    const auto row = instance.row(j);
    for (int i = 0; i < n; ++i) eval.gains[i] += row[i];
  }
  for (int i = 0; i < n; ++i) {
    if (bits[i]) pair_sum += eval.gains[i];
  }
  // Every selected pair was counted twice.
  eval.objective = eval.count >= 2 ? 0.5 * pair_sum / eval.count : 0.0;
  return eval;
}

Solution Solution::FromBits(const Instance& instance, Bits bits) {
  Solution s;
  s.bits_ = std::move(bits);
  s.Refresh(instance);
  return s;
}

void Solution::Refresh(const Instance& instance) {
  Evaluation eval = EvaluateFull(instance, bits_);
  objective_ = eval.objective;
  gains_ = std::move(eval.gains);
  count_ = eval.count;
}

double Solution::FlipDelta(int i) const {
  if (!CanFlip(i)) {
    throw ForbiddenMoveError("removing element " + std::to_string(i + 1) +
                             " would leave fewer than 2 selected");
  }
  if (bits_[i]) return (objective_ - gains_[i]) / (count_ - 1);
  return (gains_[i] - objective_) / (count_ + 1);
}

void Solution::Flip(const Instance& instance, int i) {
  const double delta = FlipDelta(i);
  const auto row = instance.row(i);
  const int n = size();
  if (bits_[i]) {
    for (int j = 0; j < n; ++j) gains_[j] -= row[j];
    --count_;
  } else {
    for (int j = 0; j < n; ++j) gains_[j] += row[j];
    ++count_;
  }
  bits_[i] ^= 1;
  objective_ = count_ >= 2 ? objective_ + delta : 0.0;
}

std::vector<int> Solution::Selected() const {
  std::vector<int> out;
  out.reserve(count_);
  for (int i = 0; i < size(); ++i) {
    if (bits_[i]) out.push_back(i);
  }
  return out;
}

std::string FormatObjective(double f) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", f);
  return buf;
}

std::string ToString(const Solution& solution) {
  std::string out = "f=" + FormatObjective(solution.objective()) +
                    " m=" + std::to_string(solution.count()) + " M={";
  bool first = true;
  for (int i : solution.Selected()) {
    if (!first) out += ',';
    out += std::to_string(i + 1);
    first = false;
  }
  out += '}';
  return out;
}

}  // namespace maxmean
