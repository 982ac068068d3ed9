#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sqkd/channel.hpp"

namespace sqkd {

// How the lambda term of the S(EC) bound is read. kPair is the entropy of
// the pair (lambda1, lambda2); kBinarySum adds the binary entropies of both
// eigenvalues, i.e. 2 h(lambda1). Only kPair feeds the acceptance gate.
enum class LambdaEntropy { kPair, kBinarySum };

std::string_view to_string(LambdaEntropy reading);
LambdaEntropy parse_lambda_entropy(std::string_view text);

struct KeyRateOptions {
  LambdaEntropy lambda_entropy = LambdaEntropy::kPair;
};

// Probability mass of the four error events, scaled so that t1+..+t4 = d:
// no error, forward error only, reverse error only, error on both legs.
struct TPartition {
  double t1 = 0.0;
  double t2 = 0.0;
  double t3 = 0.0;
  double t4 = 0.0;

  double sum() const { return t1 + t2 + t3 + t4; }
};

struct OverlapBound {
  int n_mubs = 0;
  double x_or_w = 0.0;  // lower bound on the real overlap sum; may be negative
  double s = 0.0;       // x^2 when x >= 0, else 0
  double p_eig = 0.0;   // s / n_pairs
};

struct EigenPair {
  double lambda1 = 1.0;
  double lambda2 = 0.0;
  double radicand = 0.0;  // before clamping
  bool clamped = false;
};

struct KeyRateBreakdown {
  NoiseModel model;
  int n_mubs = 0;
  TPartition t;
  OverlapBound overlap;
  double lambda1 = 1.0;
  double lambda2 = 0.0;
  double s_bec = 0.0;
  double s_ec_upper = 0.0;
  double h_joint = 0.0;      // H({p(i,j)})
  double h_a = 0.0;          // H(p_A)
  double h_b_given_a = 0.0;  // h_joint - h_a
  double r = 0.0;
  std::vector<std::string> warnings;

  double reconstructed_rate() const { return s_bec - s_ec_upper - h_b_given_a; }
};

// d=3 supports 3 and 4 bases, d=4 supports 2..5.
bool is_supported(int d, int n_mubs);
int overlap_pairs(int d);  // d(d-1)/2

TPartition t_partition(const StatsTensor& stats);

// Right-hand side of the Cauchy-Schwarz lower bound on the overlap sum for
// the (d, n_mubs) protocol, with its clamp. Throws DomainError for an
// unsupported combination or when a required MUB error table is missing.
OverlapBound overlap_bound(const StatsTensor& stats, int d, int n_mubs);

// Non-zero eigenvalues of the normalised no-error operator. Exact for a
// rank-2 Gram matrix with diagonal p_diag and sum of squared off-diagonal
// moduli p_eig. The radicand is clamped to [0, D^2], D = 2 sum(p_diag), and a
// clamp is appended to *warnings when given.
EigenPair eigen_pair(std::span<const double> p_diag, double p_eig, int d,
                     std::vector<std::string>* warnings = nullptr);

// H(t/d) + (t2+t3+t4)/d + (t1/d) * H_lambda
double sec_upper(const TPartition& t, const EigenPair& lambdas, int d,
                 LambdaEntropy reading = LambdaEntropy::kPair);

// H over the d^3 values p[a][b][c] / d.
double sbec(const StatsTensor& stats, int d);

KeyRateBreakdown key_rate(const NoiseModel& model, int n_mubs, const KeyRateOptions& options = {});

// Same pipeline on externally supplied statistics (e.g. simulated counts).
KeyRateBreakdown key_rate_from_stats(const NoiseModel& model, const StatsTensor& stats,
                                     const RawKeyJoint& raw, int n_mubs,
                                     const KeyRateOptions& options = {});

}  // namespace sqkd
