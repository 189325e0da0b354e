#include "maxmean/oracle.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <string>

#include "maxmean/solution.h"

namespace maxmean {
namespace {

constexpr double kTieTolerance = 1e-12;

double MeanOfPairs(const Instance& instance, std::span<const int> selected) {
  if (selected.size() < 2) return 0.0;
  double sum = 0.0;
  for (std::size_t a = 0; a < selected.size(); ++a) {
    for (std::size_t b = a + 1; b < selected.size(); ++b) {
      sum += instance.distance(selected[a], selected[b]);
    }
  }
  return sum / static_cast<double>(selected.size());
}

std::vector<int> SelectedOf(std::span<const std::uint8_t> bits) {
  std::vector<int> out;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) out.push_back(static_cast<int>(i));
  }
  return out;
}

}  // namespace

double SubsetObjective(const Instance& instance,
                       std::span<const std::uint8_t> bits) {
  return MeanOfPairs(instance, SelectedOf(bits));
}

OracleResult BruteForce(const Instance& instance) {
  const int n = instance.size();
  if (n > kBruteForceMaxN) {
    throw OracleRefusedError("brute force is limited to n <= " +
                             std::to_string(kBruteForceMaxN) + ", got n=" +
                             std::to_string(n));
  }
  OracleResult best;
  bool have = false;
  std::vector<int> selected;
  selected.reserve(n);
  const std::uint32_t limit = std::uint32_t{1} << n;
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    if (std::popcount(mask) < 2) continue;
    selected.clear();
    for (int i = 0; i < n; ++i) {
      if (mask >> i & 1u) selected.push_back(i);
    }
    const double f = MeanOfPairs(instance, selected);
    const bool better = !have || f > best.objective + kTieTolerance;
    const bool tie = have && !better && f >= best.objective - kTieTolerance &&
                     std::lexicographical_compare(
                         selected.begin(), selected.end(),
                         best.subset.begin(), best.subset.end());
    if (better || tie) {
      best.objective = f;
      best.subset = selected;
      have = true;
    }
  }
  return best;
}

ConsistencyReport CheckConsistency(const Instance& instance,
                                   std::int64_t cases, std::uint64_t seed) {
  constexpr int kFlipsPerStart = 20;
  const int n = instance.size();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> element(0, n - 1);
  ConsistencyReport report;

  while (report.cases < cases) {
    // Vary density so both sparse and dense selections are covered.
    const double density = unit(rng);
    Bits bits(n, 0);
    int count = 0;
    for (auto& bit : bits) {
      bit = unit(rng) < density ? 1 : 0;
      count += bit;
    }
    for (int i = 0; count < 2; ++i) {
      if (!bits[i]) {
        bits[i] = 1;
        ++count;
      }
    }
    Solution s = Solution::FromBits(instance, bits);
    double f_direct = SubsetObjective(instance, bits);

    if (s.count() == n && n <= 2) break;  // no legal flip exists
    for (int step = 0; step < kFlipsPerStart && report.cases < cases; ++step) {
      int i = element(rng);
      while (!s.CanFlip(i)) i = element(rng);
      const double predicted = s.FlipDelta(i);
      bits[i] ^= 1;
      const double f_next = SubsetObjective(instance, bits);
      const double scale = std::max(1.0, std::abs(f_direct));
      report.max_delta_error = std::max(
          report.max_delta_error, std::abs(predicted - (f_next - f_direct)) / scale);

      // Involution: flip twice, then once more to continue the walk.
      const Bits before(s.bits().begin(), s.bits().end());
      const int count_before = s.count();
      const double f_before = s.objective();
      s.Flip(instance, i);
      s.Flip(instance, i);
      if (!std::equal(before.begin(), before.end(), s.bits().begin()) ||
          s.count() != count_before) {
        report.involution_exact = false;
      }
      report.max_involution_error = std::max(
          report.max_involution_error, std::abs(s.objective() - f_before));
      s.Flip(instance, i);
      f_direct = f_next;
      ++report.cases;
    }

    for (int i = 0; i < n; ++i) {
      double gain = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j != i && bits[j]) gain += instance.distance(i, j);
      }
      report.max_gain_error =
          std::max(report.max_gain_error, std::abs(gain - s.gains()[i]));
    }
  }
  return report;
}

}  // namespace maxmean
