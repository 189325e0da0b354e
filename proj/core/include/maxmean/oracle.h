#ifndef MAXMEAN_ORACLE_H_
#define MAXMEAN_ORACLE_H_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "maxmean/instance.h"

namespace maxmean {

// Ground truth for small instances. Nothing here uses the cached gain vector
// or the incremental move values, so it can check them.

inline constexpr int kBruteForceMaxN = 24;

class OracleRefusedError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Mean of d(i, j) over selected pairs i < j, summed in ascending (i, j) order.
// 0 when fewer than two elements are selected.
double SubsetObjective(const Instance& instance,
                       std::span<const std::uint8_t> bits);

struct OracleResult {
  double objective = 0.0;
  std::vector<int> subset;  // sorted 0-based elements of the optimum
};

// Exhaustive maximisation over all subsets with at least two elements. Among
// equal optima the lexicographically smallest sorted index list wins. Throws
// OracleRefusedError for n > kBruteForceMaxN.
OracleResult BruteForce(const Instance& instance);

struct ConsistencyReport {
  std::int64_t cases = 0;
  double max_delta_error = 0.0;       // |incremental - recomputed| / max(1,|f|)
  double max_involution_error = 0.0;  // |f after flip-flip - f before|
  bool involution_exact = true;       // bits and counts restored exactly
  double max_gain_error = 0.0;        // cached vs recomputed gains after walk
};

// Random (solution, legal flip) cases: compares Solution::FlipDelta with the
// change of SubsetObjective, and checks that flipping twice restores the
// solution. Used by the `verify` command.
ConsistencyReport CheckConsistency(const Instance& instance,
                                   std::int64_t cases, std::uint64_t seed);

}  // namespace maxmean

#endif  // MAXMEAN_ORACLE_H_
