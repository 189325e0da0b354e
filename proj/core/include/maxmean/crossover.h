#ifndef MAXMEAN_CROSSOVER_H_
#define MAXMEAN_CROSSOVER_H_

#include <string_view>
#include <vector>

#include "maxmean/instance.h"
#include "maxmean/solution.h"
#include "maxmean/tabu.h"

namespace maxmean {

enum class CrossoverKind { kUniform, kGreedy };

std::string_view CrossoverName(CrossoverKind kind);
CrossoverKind ParseCrossover(std::string_view text);

// Adds uniformly random unselected elements until at least two are selected.
void RepairMinimumSize(Bits& bits, Rng& rng);

// Each child bit copies parent a with probability 0.5, otherwise parent b.
// The child may hold fewer than two elements.
Bits UniformMix(std::span<const std::uint8_t> a,
                std::span<const std::uint8_t> b, Rng& rng);

// UniformMix followed by RepairMinimumSize.
Bits UniformCrossover(std::span<const std::uint8_t> a,
                      std::span<const std::uint8_t> b, Rng& rng);

// Keeps the common elements of both parents, then alternately adds the best
// element (largest objective gain, smallest index on ties) from a's and b's
// remaining elements until the child holds round((|Ma| + |Mb|) / 2)
// elements. `added`, when given, receives the 0-based elements in the order
// they were added.
Bits GreedyCrossover(const Instance& instance, const Solution& a,
                     const Solution& b, std::vector<int>* added = nullptr);

}  // namespace maxmean

#endif  // MAXMEAN_CROSSOVER_H_
