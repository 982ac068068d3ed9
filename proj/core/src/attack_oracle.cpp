#include "sqkd/attack_oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>

#include "sqkd/errors.hpp"

namespace sqkd {

namespace {

enum class ScalarClass { kA, kB, kC, kZ, kM, kT };

bool distinct(std::initializer_list<int> xs) {
  for (auto i = xs.begin(); i != xs.end(); ++i) {
    for (auto j = std::next(i); j != xs.end(); ++j) {
      if (*i == *j) return false;
    }
  }
  return true;
}

// Class of <f_ij|f_kl>, or nothing when none of the six groups covers it.
std::optional<ScalarClass> classify(int d, int i, int j, int k, int l) {
  const bool left_diag = i == j;
  const bool right_diag = k == l;
  if (left_diag && right_diag) {
    if (i != k) return ScalarClass::kT;
    return std::nullopt;
  }
  if (left_diag) {
    if (k == i && l != i) return ScalarClass::kA;
    if (distinct({i, k, l})) return ScalarClass::kB;
    return std::nullopt;
  }
  if (right_diag) return std::nullopt;
  // <f_ij|f_kl>, i != j and k != l
  if (k == i && distinct({i, j, l})) return ScalarClass::kC;
  if (d == 3) {
    if (k == j && l == i) return ScalarClass::kZ;
    if (l == i && distinct({i, j, k})) return ScalarClass::kM;
  } else {
    if (k == j && distinct({i, j, l})) return ScalarClass::kZ;
    if (k == j && l == i) return ScalarClass::kM;
    if (distinct({i, j, k, l})) return ScalarClass::kM;
  }
  return std::nullopt;
}

void check_dim(int d) {
  if (d != 3 && d != 4) throw DomainError("attack oracle supports d = 3 or 4");
}

}  // namespace

AttackIsometry depolarizing_isometry(int d, double q) {
  check_dim(d);
  NoiseModel{d, q}.validate();
  const double lambda = d * q;
  const double d2 = static_cast<double>(d) * d;
  const double w_identity = std::sqrt(1.0 - lambda + lambda / d2);
  const double w_other = std::sqrt(lambda / d2);
  const auto env = static_cast<std::size_t>(d * d);

  AttackIsometry out{d, ComplexMatrix(static_cast<std::size_t>(d) * env, static_cast<std::size_t>(d))};
  for (int i = 0; i < d; ++i) {
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) {
        const double w = (a == 0 && b == 0) ? w_identity : w_other;
        const Complex phase = std::polar(1.0, 2.0 * std::numbers::pi * b * i / d);
        const std::size_t sys = static_cast<std::size_t>((i + a) % d);
        out.v(sys * env + static_cast<std::size_t>(a * d + b), static_cast<std::size_t>(i)) = w * phase;
      }
    }
  }
  return out;
}

double isometry_residual(const AttackIsometry& attack) {
  return max_abs_diff(attack.v.adjoint() * attack.v, ComplexMatrix::identity(attack.v.cols()));
}

ComplexMatrix induced_channel(const AttackIsometry& attack, const ComplexMatrix& rho) {
  const int d = attack.dim;
  const std::size_t env = attack.env_dim();
  const ComplexMatrix big = attack.v * rho * attack.v.adjoint();
  ComplexMatrix out(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
  for (int s = 0; s < d; ++s) {
    for (int t = 0; t < d; ++t) {
      Complex acc = 0.0;
      for (std::size_t e = 0; e < env; ++e) acc += big(s * env + e, t * env + e);
      out(s, t) = acc;
    }
  }
  return out;
}

RealMatrix induced_transition(const AttackIsometry& attack) {
  const int d = attack.dim;
  RealMatrix out(d, std::vector<double>(d));
  for (int i = 0; i < d; ++i) {
    ComplexVector ket(d);
    ket[i] = 1.0;
    const ComplexMatrix rho = induced_channel(attack, ComplexMatrix::outer(ket, ket));
    for (int j = 0; j < d; ++j) out[i][j] = rho(j, j).real();
  }
  return out;
}

std::vector<ComplexVector> eve_components(const AttackIsometry& attack, std::span<const Complex> input,
                                          const Basis& basis) {
  if (basis.dim != attack.dim) throw DomainError("eve_components: basis dimension mismatch");
  const int d = attack.dim;
  const std::size_t env = attack.env_dim();
  const ComplexVector out = matvec(attack.v, input);
  std::vector<ComplexVector> f(d, ComplexVector(env));
  for (int j = 0; j < d; ++j) {
    const ComplexVector bj = basis.vector(j);
    for (std::size_t e = 0; e < env; ++e) {
      Complex acc = 0.0;
      for (int s = 0; s < d; ++s) acc += std::conj(bj[s]) * out[s * env + e];
      f[j][e] = acc;
    }
  }
  return f;
}

EveOverlaps eve_overlaps(const AttackIsometry& attack, const Basis& basis) {
  const int d = attack.dim;
  EveOverlaps out;
  out.dim = d;
  for (int i = 0; i < d; ++i) out.f.push_back(eve_components(attack, basis.vector(i), basis));

  const int n = d * d;
  out.gram.assign(n, std::vector<Complex>(n));
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) out.gram[x][y] = inner(out.f[x / d][x % d], out.f[y / d][y % d]);
  }

  std::array<std::vector<Complex>, 6> members;
  double unclassified = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      for (int k = 0; k < d; ++k) {
        for (int l = 0; l < d; ++l) {
          if (i == k && j == l) continue;
          const Complex value = out.overlap(i, j, k, l);
          if (auto cls = classify(d, i, j, k, l)) {
            members[static_cast<int>(*cls)].push_back(value);
          } else if (!classify(d, k, l, i, j)) {
            unclassified = std::max(unclassified, std::abs(value));
          }
        }
      }
    }
  }

  std::array<Complex, 6> means{};
  double spread = 0.0;
  for (std::size_t c = 0; c < members.size(); ++c) {
    if (members[c].empty()) continue;
    Complex sum = 0.0;
    for (const auto& v : members[c]) sum += v;
    means[c] = sum / static_cast<double>(members[c].size());
    for (const auto& v : members[c]) spread = std::max(spread, std::abs(v - means[c]));
  }
  out.params = SymmetryParams{means[0], means[1], means[2], means[3], means[4], means[5], spread, unclassified};

  double residual = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      Complex sum = 0.0;
      for (int k = 0; k < d; ++k) sum += out.overlap(i, k, j, k);
      residual = std::max(residual, std::abs(sum - (i == j ? 1.0 : 0.0)));
    }
  }
  out.unitarity_residual = residual;
  return out;
}

MubErrorTable attack_mub_errors(const AttackIsometry& attack, const Basis& basis) {
  const int d = attack.dim;
  MubErrorTable table{basis.label, RealMatrix(d, std::vector<double>(d, 0.0))};
  for (int i = 0; i < d; ++i) {
    const auto f = eve_components(attack, basis.vector(i), basis);
    for (int j = 0; j < d; ++j) {
      if (i != j) table.pair_error[i][j] = norm_squared(f[j]);
    }
  }
  return table;
}

TIdentityCheck check_t_identity(int d, int n_mubs, const AttackIsometry& attack) {
  if (!is_supported(d, n_mubs) || attack.dim != d) {
    throw DomainError("no t-expression for d=" + std::to_string(d) + ", " + std::to_string(n_mubs) + " MUBs");
  }
  const MubFamily family = mubs_for_dim(d);
  const EveOverlaps comp = eve_overlaps(attack, family.bases.front());
  const double re_m = comp.params.m.real();

  double errors = 0.0;
  for (BasisLabel label : active_mub_labels(d, n_mubs)) {
    errors += attack_mub_errors(attack, family.at(label)).total();
  }

  double rhs = 0.0;
  if (d == 3) {
    rhs = n_mubs == 3 ? 1.0 - errors / 4.0 - re_m / 2.0 : 1.0 - errors / 6.0;
  } else {
    switch (n_mubs) {
      case 2: rhs = 1.0 - errors / 3.0 - 3.0 * re_m; break;
      case 3: rhs = 1.0 - errors / 6.0 - re_m; break;
      case 4: rhs = 1.0 - errors / 9.0 - re_m / 3.0; break;
      default: rhs = 1.0 - errors / 12.0; break;
    }
  }
  TIdentityCheck out;
  out.lhs = comp.params.t.real();
  out.rhs = rhs;
  out.residual = std::abs(out.lhs - out.rhs);
  return out;
}

TwoWayAttack depolarizing_two_way(int d, double q) {
  return TwoWayAttack{depolarizing_isometry(d, q), depolarizing_isometry(d, q)};
}

namespace {

ComplexVector kron(std::span<const Complex> x, std::span<const Complex> y) {
  ComplexVector out;
  out.reserve(x.size() * y.size());
  for (const auto& xi : x) {
    for (const auto& yj : y) out.push_back(xi * yj);
  }
  return out;
}

ComplexVector ket(int d, int i) {
  ComplexVector v(d);
  v[i] = 1.0;
  return v;
}

}  // namespace

ComplexVector eve_state(const TwoWayAttack& attack, int a, int b, int c) {
  const int d = attack.forward.dim;
  const Basis comp{d, BasisLabel::kComp, ComplexMatrix::identity(d)};
  const auto forward = eve_components(attack.forward, ket(d, a), comp);
  const auto reverse = eve_components(attack.reverse, ket(d, b), comp);
  return kron(forward[b], reverse[c]);
}

MubErrorTable two_way_mub_errors(const TwoWayAttack& attack, const Basis& basis) {
  const int d = attack.forward.dim;
  const std::size_t env = attack.forward.env_dim();
  MubErrorTable table{basis.label, RealMatrix(d, std::vector<double>(d, 0.0))};
  for (int i = 0; i < d; ++i) {
    const ComplexVector first = matvec(attack.forward.v, basis.vector(i));
    std::vector<double> prob(d, 0.0);
    // Forward environment slots are orthogonal, so probabilities add.
    for (std::size_t e1 = 0; e1 < env; ++e1) {
      ComplexVector system(d);
      for (int s = 0; s < d; ++s) system[s] = first[s * env + e1];
      if (norm_squared(system) == 0.0) continue;
      const auto f = eve_components(attack.reverse, system, basis);
      for (int j = 0; j < d; ++j) prob[j] += norm_squared(f[j]);
    }
    for (int j = 0; j < d; ++j) {
      if (i != j) table.pair_error[i][j] = prob[j];
    }
  }
  return table;
}

StatsTensor attack_stats(const TwoWayAttack& attack, int n_mubs) {
  const int d = attack.forward.dim;
  StatsTensor stats(d);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      for (int c = 0; c < d; ++c) stats.p(a, b, c) = norm_squared(eve_state(attack, a, b, c));
    }
  }
  const MubFamily family = mubs_for_dim(d);
  for (BasisLabel label : active_mub_labels(d, n_mubs)) {
    stats.set_mub_errors(two_way_mub_errors(attack, family.at(label)));
  }
  return stats;
}

OverlapTruth overlap_truth(const TwoWayAttack& attack) {
  const int d = attack.forward.dim;
  std::vector<ComplexVector> states;
  for (int a = 0; a < d; ++a) states.push_back(eve_state(attack, a, a, a));

  OverlapTruth out{0.0, 0.0, ComplexMatrix(d, d), 0.0, 0.0};
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) out.gram(a, b) = inner(states[a], states[b]);
  }
  for (int a = 0; a < d; ++a) {
    out.t1 += out.gram(a, a).real();
    for (int b = a + 1; b < d; ++b) {
      out.real_sum += out.gram(a, b).real();
      out.abs2_sum += std::norm(out.gram(a, b));
    }
  }
  if (out.t1 > 0.0) out.entropy = von_neumann_entropy((1.0 / out.t1) * out.gram);
  return out;
}

BoundCheck check_overlap_bound(int d, int n_mubs, double q) {
  const TwoWayAttack attack = depolarizing_two_way(d, q);
  const StatsTensor stats = attack_stats(attack, n_mubs);
  const NoiseModel model{d, q, Scenario::kIndependent, MubConvention::kTotalSplit};

  BoundCheck out;
  out.bound = overlap_bound(stats, d, n_mubs);
  out.truth = overlap_truth(attack);
  out.slack = out.truth.real_sum - out.bound.x_or_w;
  out.pipeline = key_rate_from_stats(model, stats, raw_key_joint(model), n_mubs);
  const double pipeline_h = shannon_entropy(ProbDist{out.pipeline.lambda1, out.pipeline.lambda2});
  out.entropy_margin = out.truth.t1 / d * (pipeline_h - out.truth.entropy);
  return out;
}

}  // namespace sqkd
