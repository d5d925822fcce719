#include "fusionlab/walk.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <unordered_map>

#include "fusionlab/error.hpp"
#include "fusionlab/random.hpp"

namespace fusionlab {

WalkKernel::WalkKernel(FusionRing ring, Label g) : ring_(std::move(ring)), g_(g) {
  if (!ring_.contains(g_)) throw InputError("walk generator is not a label of " + ring_.spec());
  dg_ = ring_.dim(g_);
}

std::vector<std::pair<Label, Number>> WalkKernel::row(Label a) const {
  const Number denom = dg_ * ring_.dim(a);
  std::vector<std::pair<Label, Number>> out;
  for (const FusionTerm& t : ring_.fuse(g_, a)) {
    out.emplace_back(t.label, Number(static_cast<long long>(t.multiplicity)) * ring_.dim(t.label) / denom);
  }
  return out;
}

std::map<Label, Number> walk_distribution(const FusionRing& ring, Label g, int n) {
  if (n < 0) throw InputError("walk steps must be non-negative");
  if (n > kWalkStepBudget) throw InputError("walk steps exceed the budget of " + std::to_string(kWalkStepBudget));
  const WalkKernel kernel(ring, g);
  std::map<Label, Number> dist{{ring.unit(), Number(1)}};
  for (int step = 0; step < n; ++step) {
    std::map<Label, Number> next;
    for (const auto& [a, p] : dist) {
      for (const auto& [c, q] : kernel.row(a)) next[c] += p * q;
    }
    dist = std::move(next);
  }
  return dist;
}

namespace {

struct CumulativeRow {
  std::vector<Label> labels;
  std::vector<double> cumulative;
};

}  // namespace

EmpiricalDistribution walk_simulate(const FusionRing& ring, Label g, int n, std::uint64_t trials, std::uint64_t seed,
                                    int threads) {
  if (n < 0) throw InputError("walk steps must be non-negative");
  if (trials < 1) throw InputError("trials must be at least 1");
  const WalkKernel kernel(ring, g);
  const auto workers = static_cast<std::uint64_t>(std::clamp(threads, 1, 256));

  std::vector<std::map<Label, std::uint64_t>> partial(workers);
  auto work = [&](std::uint64_t w) {
    std::unordered_map<Label, CumulativeRow, LabelHash> cache;
    auto row = [&](Label a) -> const CumulativeRow& {
      auto it = cache.find(a);
      if (it != cache.end()) return it->second;
      CumulativeRow r;
      double total = 0;
      for (const auto& [c, p] : kernel.row(a)) {
        total += p.to_double();
        r.labels.push_back(c);
        r.cumulative.push_back(total);
      }
      return cache.emplace(a, std::move(r)).first->second;
    };
    const std::uint64_t begin = trials * w / workers;
    const std::uint64_t end = trials * (w + 1) / workers;
    for (std::uint64_t t = begin; t < end; ++t) {
      Philox4x32 rng(seed, t);
      Label at = ring.unit();
      for (int step = 0; step < n; ++step) {
        const CumulativeRow& r = row(at);
        const double u = rng.uniform() * r.cumulative.back();
        const auto pos = std::upper_bound(r.cumulative.begin(), r.cumulative.end(), u) - r.cumulative.begin();
        at = r.labels[std::min<std::size_t>(static_cast<std::size_t>(pos), r.labels.size() - 1)];
      }
      ++partial[w][at];
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::uint64_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  EmpiricalDistribution out;
  out.trials = trials;
  for (const auto& p : partial) {
    for (const auto& [l, c] : p) out.counts[l] += c;
  }
  return out;
}

double total_variation(const std::map<Label, Number>& exact, const EmpiricalDistribution& sample) {
  std::map<Label, double> diff;
  for (const auto& [l, p] : exact) diff[l] += p.to_double();
  for (const auto& [l, c] : sample.counts) diff[l] -= static_cast<double>(c) / static_cast<double>(sample.trials);
  double total = 0;
  for (const auto& [l, v] : diff) total += std::abs(v);
  return total / 2;
}

}  // namespace fusionlab
