#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sqkd/channel.hpp"
#include "sqkd/keyrate.hpp"

namespace sqkd {

// One key-rate curve: dimension, number of bases and the noise reading.
struct RateConfig {
  int dim = 3;
  int n_mubs = 3;
  Scenario scenario = Scenario::kDependent;
  MubConvention convention = MubConvention::kPerOutcome;
  KeyRateOptions options;

  NoiseModel model(double q) const { return NoiseModel{dim, q, scenario, convention}; }
};

struct SweepRow {
  int dim;
  int n_mubs;
  Scenario scenario;
  MubConvention convention;
  double q;
  double r;
  TPartition t;
  double lambda1;
  int warnings;
};

// Inclusive grid start, start+step, ..., stop. Points are start + k*step so
// there is no accumulated drift; stop is included when it lies within
// step*1e-9 of a grid point.
std::vector<double> make_grid(double start, double stop, double step);

// One row per grid point, in grid order. The grid must lie in [0, 1/d] and
// be strictly ascending. Points are evaluated on `threads` workers.
std::vector<SweepRow> sweep(const RateConfig& config, std::span<const double> q_grid, unsigned threads = 1);

struct ThresholdResult {
  RateConfig config;
  double q_star = 0.0;
  double bracket_width = 0.0;
  int iterations = 0;
  bool open = false;       // r > 0 on the whole interval; q_star = 1/d
  bool reentrant = false;  // r turns positive again after the first crossing
};

// First zero crossing of r(Q) on [0, 1/d]: a 1e-3 grid pre-scan brackets
// the first sign change, then bisection shrinks it to width <= 1e-7 and
// q_star is the left edge. Throws NoPositiveRateError if r(0) <= 0.
ThresholdResult find_threshold(const RateConfig& config);

struct ReferenceThreshold {
  int dim;
  int n_mubs;           // number of bases; 2 for the computational+B variant
  std::string variant;  // "standard" or "comp+B"
  Scenario scenario;
  double value;
  bool reference_only;  // no analytic bound in this library
};

// Published reference thresholds.
std::vector<ReferenceThreshold> reference_thresholds();

// The standard-variant entry for (d, n_mubs, scenario), if any.
std::optional<double> reference_threshold(int d, int n_mubs, Scenario scenario);

// All (d, n_mubs) pairs with an analytic bound, in table order.
std::vector<std::pair<int, int>> supported_configurations();

}  // namespace sqkd
