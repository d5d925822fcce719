#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fusionlab/fourier.hpp"
#include "fusionlab/spectral.hpp"

namespace fusionlab {

/// phi_F = coefficient(xi_F, xi_F) with xi_F(b) = d(b) / sqrt(sum_F d^2).
Multiplier folner_coefficient(const FusionRing& ring, const std::vector<Label>& set);

/// Parses `fejer:n`, `geometric:r`, `constant:c`, `delta:<label>`,
/// `folner:<radius>` or `{"support": {"<label>": value, ...}}` where a value
/// is a number or a [re, im] pair.
Multiplier parse_multiplier(const FusionRing& ring, std::string_view text);

struct KestenThresholds {
  double amenable = 1e-3;
  double non_amenable = 0.05;
};

struct KestenReport {
  std::vector<Label> generators;
  std::string element;  // printed x
  double dim = 0;       // d(x)
  NormBounds bounds;
  double defect_lower = 0;  // d(x) - certified upper
  double defect_upper = 0;  // d(x) - certified lower
  double heuristic_defect = 0;
  std::string verdict;  // amenable-consistent | non-amenable-evidence | inconclusive
  bool heuristic_verdict = false;
  KestenThresholds thresholds;
};

KestenReport kesten_report(const FusionRing& ring, const std::vector<Label>& generators,
                           const SpectralBudget& budget = {}, const KestenThresholds& thresholds = {});

struct LeptinRow {
  std::size_t net_index = 0;
  std::size_t test_index = 0;
  double lower = 0;
  double upper = 0;
};

struct LeptinReport {
  std::vector<std::string> net;
  std::vector<std::string> tests;
  std::vector<LeptinRow> rows;
  /// Per test: defect uppers non-increasing along the net.
  std::vector<bool> monotone;
  std::vector<std::string> warnings;

  bool all_monotone() const;
};

LeptinReport leptin_check(const FusionRing& ring, const std::vector<Multiplier>& net,
                          const std::vector<Multiplier>& tests, const ANormBudget& budget = {});

}  // namespace fusionlab
