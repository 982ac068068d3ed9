#include "sqkd/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "sqkd/errors.hpp"

namespace sqkd {

namespace {

constexpr double kScanStep = 1e-3;
constexpr double kBracketWidth = 1e-7;

double rate_at(const RateConfig& config, double q) {
  return key_rate(config.model(q), config.n_mubs, config.options).r;
}

}  // namespace

std::vector<double> make_grid(double start, double stop, double step) {
  if (!(step > 0.0) || !(stop >= start)) throw DomainError("grid needs step > 0 and stop >= start");
  const double span = (stop - start) / step;
  const auto n = static_cast<long>(std::floor(span + 1e-9));
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(n + 1));
  for (long k = 0; k <= n; ++k) grid.push_back(start + static_cast<double>(k) * step);
  if (!grid.empty() && grid.back() > stop) grid.back() = stop;
  return grid;
}

std::vector<SweepRow> sweep(const RateConfig& config, std::span<const double> q_grid, unsigned threads) {
  if (q_grid.empty()) throw DomainError("empty noise grid");
  const double q_max = 1.0 / config.dim;
  for (std::size_t k = 0; k < q_grid.size(); ++k) {
    if (q_grid[k] < 0.0 || q_grid[k] > q_max) {
      std::ostringstream msg;
      msg << "grid point " << q_grid[k] << " outside [0, 1/" << config.dim << "]";
      throw DomainError(msg.str());
    }
    if (k > 0 && !(q_grid[k] > q_grid[k - 1])) throw DomainError("noise grid must be strictly ascending");
  }

  std::vector<SweepRow> rows(q_grid.size());
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      const KeyRateBreakdown b = key_rate(config.model(q_grid[k]), config.n_mubs, config.options);
      rows[k] = SweepRow{config.dim, config.n_mubs, config.scenario, config.convention, q_grid[k], b.r, b.t,
                         b.lambda1, static_cast<int>(b.warnings.size())};
    }
  };

  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(q_grid.size())));
  if (threads == 1) {
    work(0, rows.size());
    return rows;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (rows.size() + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t begin = t * chunk;
    const std::size_t end = std::min(rows.size(), begin + chunk);
    if (begin >= end) break;
    pool.emplace_back(work, begin, end);
  }
  for (auto& th : pool) th.join();
  return rows;
}

ThresholdResult find_threshold(const RateConfig& config) {
  config.model(0.0).validate();
  const double q_max = 1.0 / config.dim;
  ThresholdResult out;
  out.config = config;

  if (rate_at(config, 0.0) <= 0.0) {
    throw NoPositiveRateError("key rate is not positive at Q=0");
  }

  const std::vector<double> grid = make_grid(0.0, q_max, kScanStep);
  std::vector<double> scan_points = grid;
  if (scan_points.back() < q_max) scan_points.push_back(q_max);

  std::size_t first_bad = scan_points.size();
  for (std::size_t k = 1; k < scan_points.size(); ++k) {
    if (rate_at(config, scan_points[k]) <= 0.0) {
      first_bad = k;
      break;
    }
  }
  if (first_bad == scan_points.size()) {
    out.q_star = q_max;
    out.open = true;
    return out;
  }
  for (std::size_t k = first_bad + 1; k < scan_points.size(); ++k) {
    if (rate_at(config, scan_points[k]) > 0.0) {
      out.reentrant = true;
      break;
    }
  }

  double lo = scan_points[first_bad - 1];
  double hi = scan_points[first_bad];
  while (hi - lo > kBracketWidth) {
    const double mid = 0.5 * (lo + hi);
    if (rate_at(config, mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    ++out.iterations;
  }
  out.q_star = lo;
  out.bracket_width = hi - lo;
  return out;
}

std::vector<ReferenceThreshold> reference_thresholds() {
  const auto dep = Scenario::kDependent;
  const auto ind = Scenario::kIndependent;
  return {
      {3, 2, "standard", dep, 0.04247, true}, {3, 2, "standard", ind, 0.0305, true},
      {3, 3, "standard", dep, 0.0689, false}, {3, 3, "standard", ind, 0.0395, false},
      {3, 4, "standard", dep, 0.0932, false}, {3, 4, "standard", ind, 0.0443, false},
      {4, 2, "standard", dep, 0.03, false},   {4, 2, "standard", ind, 0.0162, false},
      {4, 3, "standard", dep, 0.0477, false}, {4, 3, "standard", ind, 0.0224, false},
      {4, 4, "standard", dep, 0.0579, false}, {4, 4, "standard", ind, 0.0258, false},
      {4, 5, "standard", dep, 0.0648, false}, {4, 5, "standard", ind, 0.0265, false},
      {4, 2, "comp+B", dep, 0.1205, true},    {4, 2, "comp+B", ind, 0.0322, true},
  };
}

std::optional<double> reference_threshold(int d, int n_mubs, Scenario scenario) {
  for (const auto& ref : reference_thresholds()) {
    if (ref.dim == d && ref.n_mubs == n_mubs && ref.scenario == scenario && ref.variant == "standard") {
      return ref.value;
    }
  }
  return std::nullopt;
}

std::vector<std::pair<int, int>> supported_configurations() {
  return {{3, 3}, {3, 4}, {4, 2}, {4, 3}, {4, 4}, {4, 5}};
}

}  // namespace sqkd
