#include "sqkd/keyrate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>

#include "sqkd/errors.hpp"

namespace sqkd {

namespace {

// p_{abc} index triple: a sent, b Bob, c Alice's final result.
struct Idx {
  int a, b, c;
};

// sqrt(p_x p_y)
struct RootTerm {
  Idx x, y;
};

// The reverse groups are not symmetric completions: the qutrit one has 8
// terms and the ququart one 15.

// qutrit, coefficient 3/2 (three-basis bound only)
constexpr std::array<RootTerm, 9> kQutritForward = {{
    {{0, 0, 1}, {1, 0, 2}}, {{0, 1, 1}, {1, 0, 2}}, {{0, 2, 1}, {1, 0, 2}},
    {{0, 0, 1}, {1, 1, 2}}, {{0, 1, 1}, {1, 1, 2}}, {{0, 2, 1}, {1, 1, 2}},
    {{0, 0, 1}, {1, 2, 2}}, {{0, 1, 1}, {1, 2, 2}}, {{0, 2, 1}, {1, 2, 2}},
}};

// qutrit, coefficient 3 (both bounds)
constexpr std::array<RootTerm, 8> kQutritReverse = {{
    {{0, 0, 0}, {1, 0, 1}}, {{0, 1, 0}, {1, 0, 1}}, {{0, 2, 0}, {1, 0, 1}},
    {{0, 1, 0}, {1, 1, 1}}, {{0, 2, 0}, {1, 1, 1}},
    {{0, 0, 0}, {1, 2, 1}}, {{0, 1, 0}, {1, 2, 1}}, {{0, 2, 0}, {1, 2, 1}},
}};

// ququart, sqrt(P_{1k0} P_{0l1}) for k, l = 0..3
constexpr std::array<RootTerm, 16> kQuquartForward = {{
    {{1, 0, 0}, {0, 0, 1}}, {{1, 1, 0}, {0, 0, 1}}, {{1, 2, 0}, {0, 0, 1}}, {{1, 3, 0}, {0, 0, 1}},
    {{1, 0, 0}, {0, 1, 1}}, {{1, 1, 0}, {0, 1, 1}}, {{1, 2, 0}, {0, 1, 1}}, {{1, 3, 0}, {0, 1, 1}},
    {{1, 0, 0}, {0, 2, 1}}, {{1, 1, 0}, {0, 2, 1}}, {{1, 2, 0}, {0, 2, 1}}, {{1, 3, 0}, {0, 2, 1}},
    {{1, 0, 0}, {0, 3, 1}}, {{1, 1, 0}, {0, 3, 1}}, {{1, 2, 0}, {0, 3, 1}}, {{1, 3, 0}, {0, 3, 1}},
}};

// ququart, sqrt(P_{1k1} P_{0l0}); (k,l) = (1,0) is absent
constexpr std::array<RootTerm, 15> kQuquartReverse = {{
    {{1, 0, 1}, {0, 0, 0}}, {{1, 2, 1}, {0, 0, 0}}, {{1, 3, 1}, {0, 0, 0}},
    {{1, 0, 1}, {0, 1, 0}}, {{1, 1, 1}, {0, 1, 0}}, {{1, 2, 1}, {0, 1, 0}}, {{1, 3, 1}, {0, 1, 0}},
    {{1, 0, 1}, {0, 2, 0}}, {{1, 1, 1}, {0, 2, 0}}, {{1, 2, 1}, {0, 2, 0}}, {{1, 3, 1}, {0, 2, 0}},
    {{1, 0, 1}, {0, 3, 0}}, {{1, 1, 1}, {0, 3, 0}}, {{1, 2, 1}, {0, 3, 0}}, {{1, 3, 1}, {0, 3, 0}},
}};

// Coefficients of x >= base - c_err * (sum of MUB errors) - c_fwd * forward - c_rev * reverse.
struct BoundShape {
  double base;
  double c_err;
  double c_fwd;
  double c_rev;
};

BoundShape bound_shape(int d, int n_mubs) {
  if (d == 3) {
    switch (n_mubs) {
      case 3: return {3.0, 3.0 / 4.0, 3.0 / 2.0, 3.0};
      case 4: return {3.0, 1.0 / 2.0, 0.0, 3.0};
      default: break;
    }
  } else if (d == 4) {
    switch (n_mubs) {
      case 2: return {6.0, 2.0, 18.0, 6.0};
      case 3: return {6.0, 1.0, 6.0, 6.0};
      case 4: return {6.0, 2.0 / 3.0, 2.0, 6.0};
      case 5: return {6.0, 1.0 / 2.0, 0.0, 6.0};
      default: break;
    }
  }
  throw DomainError("unsupported configuration d=" + std::to_string(d) + ", " + std::to_string(n_mubs) +
                    " MUBs");
}

template <std::size_t N>
double root_sum(const StatsTensor& stats, const std::array<RootTerm, N>& terms) {
  double sum = 0.0;
  for (const auto& [x, y] : terms) sum += std::sqrt(stats.p(x.a, x.b, x.c) * stats.p(y.a, y.b, y.c));
  return sum;
}

double lambda_entropy(const EigenPair& lambdas, LambdaEntropy reading) {
  if (reading == LambdaEntropy::kPair) return shannon_entropy(ProbDist{lambdas.lambda1, lambdas.lambda2});
  return binary_entropy(lambdas.lambda1) + binary_entropy(lambdas.lambda2);
}

}  // namespace

std::string_view to_string(LambdaEntropy reading) {
  return reading == LambdaEntropy::kPair ? "pair" : "binary-sum";
}

LambdaEntropy parse_lambda_entropy(std::string_view text) {
  if (text == "pair") return LambdaEntropy::kPair;
  if (text == "binary-sum") return LambdaEntropy::kBinarySum;
  throw DomainError("unknown lambda entropy reading '" + std::string(text) + "'");
}

bool is_supported(int d, int n_mubs) {
  return (d == 3 && (n_mubs == 3 || n_mubs == 4)) || (d == 4 && n_mubs >= 2 && n_mubs <= 5);
}

int overlap_pairs(int d) { return d * (d - 1) / 2; }

TPartition t_partition(const StatsTensor& stats) {
  const int d = stats.dim();
  TPartition t;
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      for (int c = 0; c < d; ++c) {
        const double v = stats.p(a, b, c);
        if (a == b && b == c) {
          t.t1 += v;
        } else if (a != b && b == c) {
          t.t2 += v;
        } else if (a == b) {
          t.t3 += v;
        } else {
          t.t4 += v;
        }
      }
    }
  }
  return t;
}

OverlapBound overlap_bound(const StatsTensor& stats, int d, int n_mubs) {
  if (stats.dim() != d) throw DomainError("statistics dimension does not match d");
  const BoundShape shape = bound_shape(d, n_mubs);

  double errors = 0.0;
  for (BasisLabel label : active_mub_labels(d, n_mubs)) errors += stats.mub_error(label).total();

  double forward = 0.0;
  double reverse = 0.0;
  if (d == 3) {
    forward = root_sum(stats, kQutritForward);
    reverse = root_sum(stats, kQutritReverse);
  } else {
    forward = root_sum(stats, kQuquartForward);
    reverse = root_sum(stats, kQuquartReverse);
  }

  OverlapBound out;
  out.n_mubs = n_mubs;
  out.x_or_w = shape.base - shape.c_err * errors - shape.c_fwd * forward - shape.c_rev * reverse;
  out.s = out.x_or_w >= 0.0 ? out.x_or_w * out.x_or_w : 0.0;
  out.p_eig = out.s / overlap_pairs(d);
  return out;
}

EigenPair eigen_pair(std::span<const double> p_diag, double p_eig, int d, std::vector<std::string>* warnings) {
  if (static_cast<int>(p_diag.size()) != d || (d != 3 && d != 4)) {
    throw DomainError("eigen_pair expects d = 3 or 4 diagonal entries");
  }
  if (p_eig < 0.0) throw DomainError("eigen_pair: p_eig must be non-negative");
  const double total = std::accumulate(p_diag.begin(), p_diag.end(), 0.0);
  if (total <= 0.0) throw DegenerateInputError("eigen_pair: diagonal probabilities sum to zero");

  double radicand = 0.0;
  if (d == 3) {
    const double p0 = p_diag[0], p1 = p_diag[1], p2 = p_diag[2];
    radicand = 4.0 * p_eig + p0 * p0 - 2.0 * p0 * p1 + p1 * p1 - 2.0 * p0 * p2 - 2.0 * p1 * p2 + p2 * p2;
  } else {
    const double p0 = p_diag[0], p1 = p_diag[1], p2 = p_diag[2], p3 = p_diag[3];
    const double mix = p0 - p1 - p2 + p3;
    radicand = 4.0 * p_eig - 4.0 * p1 * p2 - 4.0 * p0 * p3 + mix * mix;
  }

  const double denom = 2.0 * total;
  EigenPair out;
  out.radicand = radicand;
  double clamped = radicand;
  if (radicand < 0.0) {
    clamped = 0.0;
  } else if (radicand > denom * denom) {
    clamped = denom * denom;
  }
  if (clamped != radicand) {
    out.clamped = true;
    if (warnings) {
      std::ostringstream msg;
      msg << "eigenvalue radicand " << radicand << " clamped to " << clamped;
      warnings->push_back(msg.str());
    }
  }
  const double half_gap = std::sqrt(clamped) / denom;
  out.lambda1 = 0.5 + half_gap;
  out.lambda2 = 0.5 - half_gap;
  return out;
}

double sec_upper(const TPartition& t, const EigenPair& lambdas, int d, LambdaEntropy reading) {
  const double inv = 1.0 / d;
  const double h_t = shannon_entropy(ProbDist{t.t1 * inv, t.t2 * inv, t.t3 * inv, t.t4 * inv});
  return h_t + inv * (t.t2 + t.t3 + t.t4) + inv * t.t1 * lambda_entropy(lambdas, reading);
}

double sbec(const StatsTensor& stats, int d) {
  std::vector<double> weights(stats.flat());
  for (double& w : weights) w /= d;
  return shannon_entropy(ProbDist(std::move(weights)));
}

KeyRateBreakdown key_rate_from_stats(const NoiseModel& model, const StatsTensor& stats,
                                     const RawKeyJoint& raw, int n_mubs, const KeyRateOptions& options) {
  const int d = stats.dim();
  if (!is_supported(d, n_mubs)) {
    throw DomainError("unsupported configuration d=" + std::to_string(d) + ", " + std::to_string(n_mubs) +
                      " MUBs");
  }
  KeyRateBreakdown out;
  out.model = model;
  out.n_mubs = n_mubs;
  out.t = t_partition(stats);
  out.overlap = overlap_bound(stats, d, n_mubs);

  std::vector<double> diag(d);
  for (int a = 0; a < d; ++a) diag[a] = stats.p(a, a, a);
  const EigenPair lambdas = eigen_pair(diag, out.overlap.p_eig, d, &out.warnings);
  out.lambda1 = lambdas.lambda1;
  out.lambda2 = lambdas.lambda2;

  out.s_bec = sbec(stats, d);
  out.s_ec_upper = sec_upper(out.t, lambdas, d, options.lambda_entropy);

  std::vector<double> flat;
  for (const auto& row : raw.joint) flat.insert(flat.end(), row.begin(), row.end());
  out.h_joint = shannon_entropy(flat);
  out.h_a = shannon_entropy(raw.p_a);
  out.h_b_given_a = out.h_joint - out.h_a;
  out.r = out.s_bec - out.s_ec_upper - out.h_b_given_a;
  return out;
}

KeyRateBreakdown key_rate(const NoiseModel& model, int n_mubs, const KeyRateOptions& options) {
  model.validate();
  if (!is_supported(model.dim, n_mubs)) {
    throw DomainError("unsupported configuration d=" + std::to_string(model.dim) + ", " +
                      std::to_string(n_mubs) + " MUBs");
  }
  const ReflectedError reflected = reflected_mub_error(model);
  const StatsTensor stats = analytic_stats(model, n_mubs);
  KeyRateBreakdown out = key_rate_from_stats(model, stats, raw_key_joint(model), n_mubs, options);
  out.warnings.insert(out.warnings.begin(), reflected.warnings.begin(), reflected.warnings.end());
  return out;
}

}  // namespace sqkd
