#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "sqkd/mub.hpp"

namespace sqkd {

enum class Scenario { kDependent, kIndependent };

// How the reflected-branch error Q_dep / Q_ind is spread over the d-1 wrong
// outcomes of a MUB measurement.
enum class MubConvention {
  kPerOutcome,  // every wrong outcome has probability E
  kTotalSplit,  // E is the total, each wrong outcome gets E / (d - 1)
};

std::string_view to_string(Scenario s);
std::string_view to_string(MubConvention c);
Scenario parse_scenario(std::string_view text);
MubConvention parse_convention(std::string_view text);

// Q is the per-wrong-outcome flip probability of one channel pass.
struct NoiseModel {
  int dim = 3;
  double q = 0.0;
  Scenario scenario = Scenario::kDependent;
  MubConvention convention = MubConvention::kPerOutcome;

  // Throws DomainError unless d is 3 or 4 and 0 <= Q <= 1/d.
  void validate() const;
};

// Row-stochastic d x d matrix, row = sent symbol.
using RealMatrix = std::vector<std::vector<double>>;

// Per-basis table of reflected-branch error probabilities P_{K_i K_j}.
// Diagonal entries are unused and stay zero.
struct MubErrorTable {
  BasisLabel label;
  RealMatrix pair_error;

  // Sum over all ordered pairs i != j.
  double total() const;
};

// Everything the bound evaluator consumes: the computational tensor
// p[a][b][c] (a sent, b Bob's result, c Alice's final measurement; each
// a-slice sums to one) and MUB error tables for the reflected branch.
class StatsTensor {
 public:
  explicit StatsTensor(int dim);

  int dim() const { return dim_; }
  double& p(int a, int b, int c) { return p_[index(a, b, c)]; }
  double p(int a, int b, int c) const { return p_[index(a, b, c)]; }
  const std::vector<double>& flat() const { return p_; }

  const std::vector<MubErrorTable>& mub_errors() const { return mub_errors_; }
  void set_mub_errors(MubErrorTable table);
  const MubErrorTable& mub_error(BasisLabel label) const;
  bool has_mub_error(BasisLabel label) const;

  // Checks entries in [0,1], slice sums within 1e-12 (or the caller's
  // tolerance) and MUB error ranges. Throws DomainError.
  void validate(double slice_tolerance = 1e-12) const;

 private:
  std::size_t index(int a, int b, int c) const {
    return (static_cast<std::size_t>(a) * dim_ + b) * dim_ + c;
  }

  int dim_;
  std::vector<double> p_;
  std::vector<MubErrorTable> mub_errors_;
};

// p_A is Alice's sent symbol (uniform), joint[i][j] = P(Bob = i, Alice = j).
struct RawKeyJoint {
  std::vector<double> p_a;
  RealMatrix joint;

  // H({p(i,j)}) - H(p_A)
  double conditional_entropy() const;
};

struct ReflectedError {
  double total;     // E
  double per_pair;  // value assigned to each ordered pair under the convention
  std::vector<std::string> warnings;
};

// Diagonal 1 - (d-1)Q, off-diagonal Q.
RealMatrix transition_matrix(int d, double q);

// p[a][b][c] = T(a->b) T(b->c) in both scenarios; MUB tables left empty.
StatsTensor joint_stats(const NoiseModel& model);

// E = Q (dependent) or 1 - [(1-(d-1)Q)^2 + (d-1)Q^2] (independent), which is
// 2Q(2-3Q) at d = 3 and 2Q(3-6Q) at d = 4.
ReflectedError reflected_mub_error(const NoiseModel& model);

// joint_stats plus a MUB error table for every non-computational basis among
// the first n_mubs of the family.
StatsTensor analytic_stats(const NoiseModel& model, int n_mubs);

RawKeyJoint raw_key_joint(const NoiseModel& model);

// Basis labels whose error tables the n-MUB protocol needs.
std::vector<BasisLabel> active_mub_labels(int d, int n_mubs);

}  // namespace sqkd
