#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "fusionlab/fusion_ring.hpp"

namespace fusionlab {

inline constexpr int kWalkStepBudget = 256;

/// p(c | a) = N(g, a; c) d(c) / (d(g) d(a)).
class WalkKernel {
 public:
  WalkKernel(FusionRing ring, Label g);

  const FusionRing& ring() const { return ring_; }
  Label generator() const { return g_; }
  std::vector<std::pair<Label, Number>> row(Label a) const;

 private:
  FusionRing ring_;
  Label g_;
  Number dg_;
};

/// Exact distribution after n steps from the unit, keyed by label id.
std::map<Label, Number> walk_distribution(const FusionRing& ring, Label g, int n);

struct EmpiricalDistribution {
  std::map<Label, std::uint64_t> counts;
  std::uint64_t trials = 0;
};

/// Independent trajectories; trial t draws from Philox stream (seed, t), so
/// counts do not depend on the thread count.
EmpiricalDistribution walk_simulate(const FusionRing& ring, Label g, int n, std::uint64_t trials,
                                    std::uint64_t seed, int threads = 1);

double total_variation(const std::map<Label, Number>& exact, const EmpiricalDistribution& sample);

}  // namespace fusionlab
