#pragma once

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "sqkd/analysis.hpp"
#include "sqkd/keyrate.hpp"

namespace sqkd {

// Shortest round-trip-free rendering with 9 significant digits, '.' as the
// decimal separator regardless of locale.
std::string format_double(double value);

inline constexpr const char* kSweepHeader = "d,n_mubs,scenario,convention,Q,r,t1,t2,t3,t4,lambda1,warnings";
inline constexpr const char* kThresholdHeader = "d,n_mubs,scenario,convention,q_star,paper_reference,abs_diff";

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows, bool header = true);
void write_threshold_csv(std::ostream& out, std::span<const ThresholdResult> results);

// Human-readable dump of every intermediate.
void write_breakdown(std::ostream& out, const KeyRateBreakdown& b);

struct Curve {
  std::string label;
  std::vector<SweepRow> rows;
};

// Minimal line chart: axes, one polyline per curve, legend.
void write_svg(std::ostream& out, std::span<const Curve> curves, const std::string& title);

}  // namespace sqkd
