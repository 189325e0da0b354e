#ifndef MAXMEAN_SOLUTION_H_
#define MAXMEAN_SOLUTION_H_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "maxmean/instance.h"

namespace maxmean {

// One byte per element; 1 means selected.
using Bits = std::vector<std::uint8_t>;

// Thrown when a flip would drop the selection below two elements.
class ForbiddenMoveError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct Evaluation {
  double objective = 0.0;    // mean dispersion; 0 when fewer than 2 selected
  std::vector<double> gains; // gains[i] = sum of d(i, j) over selected j != i
  int count = 0;             // number of selected elements
};

// O(n^2) evaluation from scratch.
Evaluation EvaluateFull(const Instance& instance,
                        std::span<const std::uint8_t> bits);

// A subset of elements together with its cached size, objective value and
// gain vector. The cache is kept exact up to floating-point rounding by Flip;
// Refresh() recomputes it from scratch.
class Solution {
 public:
  Solution() = default;
  static Solution FromBits(const Instance& instance, Bits bits);

  int size() const { return static_cast<int>(bits_.size()); }
  int count() const { return count_; }
  double objective() const { return objective_; }
  bool feasible() const { return count_ >= 2; }
  bool selected(int i) const { return bits_[i] != 0; }
  std::span<const std::uint8_t> bits() const { return bits_; }
  std::span<const double> gains() const { return gains_; }

  // False only for a removal that would leave fewer than two elements.
  bool CanFlip(int i) const { return !bits_[i] || count_ > 2; }

  // Objective change of toggling element i, in O(1). Throws
  // ForbiddenMoveError when !CanFlip(i).
  double FlipDelta(int i) const;

  // Toggles element i and updates the cache in O(n).
  void Flip(const Instance& instance, int i);

  void Refresh(const Instance& instance);

  // Sorted 0-based indices of selected elements.
  std::vector<int> Selected() const;

  bool SameSubset(const Solution& other) const { return bits_ == other.bits_; }

 private:
  Bits bits_;
  std::vector<double> gains_;
  double objective_ = 0.0;
  int count_ = 0;
};

// "f=<value> m=<count> M={i,j,...}" with 1-based indices and f to 6 decimals.
std::string ToString(const Solution& solution);

// Objective values are reported with 6 decimals.
std::string FormatObjective(double f);

}  // namespace maxmean

#endif  // MAXMEAN_SOLUTION_H_
