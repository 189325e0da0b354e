#include "maxmean/crossover.h"

#include <stdexcept>
#include <string>

namespace maxmean {
namespace {

// Index of the element in `donor` (still unselected in `partial`) whose
// addition gains the most; -1 when `donor` has nothing left.
int BestAddition(const Solution& partial, std::span<const int> donor,
                 std::span<const std::uint8_t> used) {
  int best = -1;
  double best_delta = 0.0;
  for (int v : donor) {
    if (used[v]) continue;
    const double delta = partial.FlipDelta(v);
    if (best < 0 || delta > best_delta) {
      best = v;
      best_delta = delta;
    }
  }
  return best;
}

}  // namespace

std::string_view CrossoverName(CrossoverKind kind) {
  return kind == CrossoverKind::kUniform ? "uniform" : "greedy";
}

CrossoverKind ParseCrossover(std::string_view text) {
  if (text == "uniform") return CrossoverKind::kUniform;
  if (text == "greedy") return CrossoverKind::kGreedy;
  throw std::invalid_argument("unknown crossover '" + std::string(text) + "'");
}

void RepairMinimumSize(Bits& bits, Rng& rng) {
  int count = 0;
  for (auto bit : bits) count += bit;
  const int n = static_cast<int>(bits.size());
  while (count < 2 && count < n) {
    std::uniform_int_distribution<int> pick(0, n - count - 1);
    int skip = pick(rng);
    for (int i = 0; i < n; ++i) {
      if (bits[i]) continue;
      if (skip-- == 0) {
        bits[i] = 1;
        ++count;
        break;
      }
    }
  }
}

Bits UniformMix(std::span<const std::uint8_t> a,
                std::span<const std::uint8_t> b, Rng& rng) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("parents differ in length");
  }
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  Bits child(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    child[i] = coin(rng) < 0.5 ? a[i] : b[i];
  }
  return child;
}

Bits UniformCrossover(std::span<const std::uint8_t> a,
                      std::span<const std::uint8_t> b, Rng& rng) {
  Bits child = UniformMix(a, b, rng);
  RepairMinimumSize(child, rng);
  return child;
}

Bits GreedyCrossover(const Instance& instance, const Solution& a,
                     const Solution& b, std::vector<int>* added) {
  if (!a.feasible() || !b.feasible()) {
    throw std::invalid_argument("greedy crossover needs feasible parents");
  }
  const int n = instance.size();
  // Round half up.
  const int target = (a.count() + b.count() + 1) / 2;

  Bits common(n, 0);
  std::vector<int> only_a;
  std::vector<int> only_b;
  for (int i = 0; i < n; ++i) {
    if (a.selected(i) && b.selected(i)) {
      common[i] = 1;
    } else if (a.selected(i)) {
      only_a.push_back(i);
    } else if (b.selected(i)) {
      only_b.push_back(i);
    }
  }
  Solution child = Solution::FromBits(instance, std::move(common));

  // The size test runs before every single addition, not once per pair of
  // additions, so the child never overshoots the target by one.
  std::span<const int> donors[2] = {only_a, only_b};
  int turn = 0;
  int exhausted = 0;
  while (child.count() < target && exhausted < 2) {
    const int v = BestAddition(child, donors[turn], child.bits());
    if (v < 0) {
      ++exhausted;
    } else {
      exhausted = 0;
      child.Flip(instance, v);
      if (added != nullptr) added->push_back(v);
    }
    turn ^= 1;
  }
  return Bits(child.bits().begin(), child.bits().end());
}

}  // namespace maxmean
