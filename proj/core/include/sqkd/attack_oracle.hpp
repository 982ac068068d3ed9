#pragma once

#include <string>
#include <vector>

#include "sqkd/channel.hpp"
#include "sqkd/keyrate.hpp"
#include "sqkd/mub.hpp"
#include "sqkd/numerics.hpp"

namespace sqkd {

// Isometry C^d -> C^d (system) x C^{d^2} (Eve). Row index is
// system * d^2 + environment.
struct AttackIsometry {
  int dim;
  ComplexMatrix v;

  std::size_t env_dim() const { return static_cast<std::size_t>(dim) * dim; }
};

// Stinespring dilation of rho -> (1-lambda) rho + lambda I/d with
// lambda = d Q, using the d^2 shift/clock operators X^a Z^b as Kraus
// operators. Environment slot a*d + b records which operator fired.
AttackIsometry depolarizing_isometry(int d, double q);

// max |V^dagger V - I|
double isometry_residual(const AttackIsometry& attack);

// Partial trace over Eve of V rho V^dagger.
ComplexMatrix induced_channel(const AttackIsometry& attack, const ComplexMatrix& rho);

// T[i][j] = P(output j | input |i>), computational basis.
RealMatrix induced_transition(const AttackIsometry& attack);

// f_j such that V|psi> = sum_j |b_j> (x) |f_j> for basis b.
std::vector<ComplexVector> eve_components(const AttackIsometry& attack, std::span<const Complex> input,
                                          const Basis& basis);

// Class averages of Eve's scalar products with the largest deviation of any
// member from its class mean.
struct SymmetryParams {
  Complex a, b, c, z, m, t;
  double spread = 0.0;
  // Largest |entry| among the Gram entries outside every class.
  double unclassified_max = 0.0;
};

struct EveOverlaps {
  int dim;
  // f[i][j]: Eve's state when |b_i> enters and |b_j> is found.
  std::vector<std::vector<ComplexVector>> f;
  // gram[i*d+j][k*d+l] = <f_ij|f_kl>
  std::vector<std::vector<Complex>> gram;
  SymmetryParams params;
  // max over i != j of |sum_k <f_ik|f_jk>| and max over i of |sum_k <f_ik|f_ik> - 1|
  double unitarity_residual = 0.0;

  Complex overlap(int i, int j, int k, int l) const { return gram[i * dim + j][k * dim + l]; }
};

EveOverlaps eve_overlaps(const AttackIsometry& attack, const Basis& basis);

// P_{K_i K_j} from sending |K_i> through V and measuring in K.
MubErrorTable attack_mub_errors(const AttackIsometry& attack, const Basis& basis);

struct TIdentityCheck {
  double lhs = 0.0;  // t from the computational-basis Gram
  double rhs = 0.0;  // closed form in the MUB errors and Re(m)
  double residual = 0.0;
};

// Evaluates both sides of the t-expression for the n-MUB protocol.
TIdentityCheck check_t_identity(int d, int n_mubs, const AttackIsometry& attack);

// The measure-resend branch with independent forward and reverse attacks:
// Eve holds e_{ab} (x) g_{bc} when a is sent, Bob finds b and Alice finds c.
struct TwoWayAttack {
  AttackIsometry forward;
  AttackIsometry reverse;
};

TwoWayAttack depolarizing_two_way(int d, double q);

// e^c_{a,b} for the computational basis, length d^4.
ComplexVector eve_state(const TwoWayAttack& attack, int a, int b, int c);

// Statistics the two-way attack produces: computational tensor from the
// measure-resend branch, MUB error tables from the reflect branch where the
// state passes both attacks unmeasured.
StatsTensor attack_stats(const TwoWayAttack& attack, int n_mubs);

// Reflect-branch error probabilities for basis K under V_R V_F.
MubErrorTable two_way_mub_errors(const TwoWayAttack& attack, const Basis& basis);

struct OverlapTruth {
  double real_sum = 0.0;    // sum_{a<b} Re <e^a_{a,aa}|e^b_{b,bb}>
  double abs2_sum = 0.0;    // sum_{a<b} |<e^a_{a,aa}|e^b_{b,bb}>|^2
  ComplexMatrix gram;       // Gram matrix of the d no-error states
  double t1 = 0.0;          // trace of gram
  double entropy = 0.0;     // S of gram / t1
};

OverlapTruth overlap_truth(const TwoWayAttack& attack);

struct BoundCheck {
  OverlapBound bound;
  OverlapTruth truth;
  double slack = 0.0;  // truth.real_sum - bound.x_or_w
  KeyRateBreakdown pipeline;
  // pipeline (t1/d) H_lambda minus the true (t1/d) S(sigma_1)
  double entropy_margin = 0.0;
};

BoundCheck check_overlap_bound(int d, int n_mubs, double q);

}  // namespace sqkd
