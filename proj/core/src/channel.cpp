#include "sqkd/channel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sqkd/errors.hpp"

namespace sqkd {

std::string_view to_string(Scenario s) {
  return s == Scenario::kDependent ? "dependent" : "independent";
}

std::string_view to_string(MubConvention c) {
  return c == MubConvention::kPerOutcome ? "per-outcome" : "total-split";
}

Scenario parse_scenario(std::string_view text) {
  if (text == "dependent" || text == "dep") return Scenario::kDependent;
  if (text == "independent" || text == "indep" || text == "ind") return Scenario::kIndependent;
  throw DomainError("unknown scenario '" + std::string(text) + "'");
}

MubConvention parse_convention(std::string_view text) {
  if (text == "per-outcome") return MubConvention::kPerOutcome;
  if (text == "total-split") return MubConvention::kTotalSplit;
  throw DomainError("unknown MUB convention '" + std::string(text) + "'");
}

void NoiseModel::validate() const {
  if (dim != 3 && dim != 4) {
    throw DomainError("dimension must be 3 or 4, got " + std::to_string(dim));
  }
  if (!(q >= 0.0 && q <= 1.0 / dim)) {
    std::ostringstream msg;
    msg << "noise Q=" << q << " outside [0, 1/" << dim << "]";
    throw DomainError(msg.str());
  }
}

double MubErrorTable::total() const {
  double sum = 0.0;
  for (std::size_t i = 0; i < pair_error.size(); ++i) {
    for (std::size_t j = 0; j < pair_error[i].size(); ++j) {
      if (i != j) sum += pair_error[i][j];
    }
  }
  return sum;
}

StatsTensor::StatsTensor(int dim) : dim_(dim), p_(static_cast<std::size_t>(dim * dim * dim), 0.0) {
  if (dim != 3 && dim != 4) throw DomainError("StatsTensor dimension must be 3 or 4");
}

void StatsTensor::set_mub_errors(MubErrorTable table) {
  if (table.pair_error.size() != static_cast<std::size_t>(dim_)) {
    throw DomainError("MUB error table has wrong dimension");
  }
  auto it = std::find_if(mub_errors_.begin(), mub_errors_.end(),
                         [&](const MubErrorTable& t) { return t.label == table.label; });
  if (it != mub_errors_.end()) {
    *it = std::move(table);
  } else {
    mub_errors_.push_back(std::move(table));
  }
}

bool StatsTensor::has_mub_error(BasisLabel label) const {
  return std::any_of(mub_errors_.begin(), mub_errors_.end(),
                     [&](const MubErrorTable& t) { return t.label == label; });
}

const MubErrorTable& StatsTensor::mub_error(BasisLabel label) const {
  auto it = std::find_if(mub_errors_.begin(), mub_errors_.end(),
                         [&](const MubErrorTable& t) { return t.label == label; });
  if (it == mub_errors_.end()) {
    throw DomainError("statistics carry no error table for basis " + std::string(to_string(label)));
  }
  return *it;
}

void StatsTensor::validate(double slice_tolerance) const {
  for (int a = 0; a < dim_; ++a) {
    double slice = 0.0;
    for (int b = 0; b < dim_; ++b) {
      for (int c = 0; c < dim_; ++c) {
        const double v = p(a, b, c);
        if (v < 0.0 || v > 1.0) throw DomainError("tensor entry outside [0,1]");
        slice += v;
      }
    }
    if (std::abs(slice - 1.0) > slice_tolerance) {
      std::ostringstream msg;
      msg << "slice a=" << a << " sums to " << slice;
      throw DomainError(msg.str());
    }
  }
  const double cap = 1.0 / (dim_ - 1);
  for (const auto& table : mub_errors_) {
    for (int i = 0; i < dim_; ++i) {
      double row = 0.0;
      for (int j = 0; j < dim_; ++j) {
        if (i == j) continue;
        const double v = table.pair_error[i][j];
        if (v < 0.0 || v > cap + 1e-12) {
          throw DomainError("MUB pair error outside [0, 1/(d-1)] for basis " +
                            std::string(to_string(table.label)));
        }
        row += v;
      }
      if (row > 1.0 + 1e-12) throw DomainError("MUB pair errors for one prepared state exceed 1");
    }
  }
}

double RawKeyJoint::conditional_entropy() const {
  std::vector<double> flat;
  for (const auto& row : joint) flat.insert(flat.end(), row.begin(), row.end());
  return shannon_entropy(flat) - shannon_entropy(p_a);
}

RealMatrix transition_matrix(int d, double q) {
  NoiseModel{d, q}.validate();
  RealMatrix t(static_cast<std::size_t>(d), std::vector<double>(static_cast<std::size_t>(d), q));
  for (int i = 0; i < d; ++i) t[i][i] = 1.0 - (d - 1) * q;
  return t;
}

StatsTensor joint_stats(const NoiseModel& model) {
  model.validate();
  const RealMatrix t = transition_matrix(model.dim, model.q);
  StatsTensor stats(model.dim);
  for (int a = 0; a < model.dim; ++a) {
    for (int b = 0; b < model.dim; ++b) {
      for (int c = 0; c < model.dim; ++c) stats.p(a, b, c) = t[a][b] * t[b][c];
    }
  }
  return stats;
}

ReflectedError reflected_mub_error(const NoiseModel& model) {
  model.validate();
  const int d = model.dim;
  const double q = model.q;
  ReflectedError out{};
  if (model.scenario == Scenario::kDependent) {
    out.total = q;
  } else {
    const double correct = 1.0 - (d - 1) * q;
    out.total = 1.0 - (correct * correct + (d - 1) * q * q);
  }
  if (out.total > 1.0) {
    out.warnings.push_back("reflected error clamped to 1");
    out.total = 1.0;
  }
  out.per_pair = model.convention == MubConvention::kPerOutcome ? out.total : out.total / (d - 1);
  const double cap = 1.0 / (d - 1);
  if (out.per_pair > cap) {
    std::ostringstream msg;
    msg << "per-pair MUB error " << out.per_pair << " clamped to 1/(d-1)";
    out.warnings.push_back(msg.str());
    out.per_pair = cap;
  }
  return out;
}

std::vector<BasisLabel> active_mub_labels(int d, int n_mubs) {
  const MubFamily family = mubs_for_dim(d);
  if (n_mubs < 1 || n_mubs > static_cast<int>(family.bases.size())) {
    throw DomainError("unsupported number of MUBs " + std::to_string(n_mubs) + " for d=" + std::to_string(d));
  }
  std::vector<BasisLabel> labels;
  for (int k = 1; k < n_mubs; ++k) labels.push_back(family.bases[k].label);
  return labels;
}

StatsTensor analytic_stats(const NoiseModel& model, int n_mubs) {
  StatsTensor stats = joint_stats(model);
  const ReflectedError err = reflected_mub_error(model);
  for (BasisLabel label : active_mub_labels(model.dim, n_mubs)) {
    MubErrorTable table{label, RealMatrix(model.dim, std::vector<double>(model.dim, 0.0))};
    for (int i = 0; i < model.dim; ++i) {
      for (int j = 0; j < model.dim; ++j) {
        if (i != j) table.pair_error[i][j] = err.per_pair;
      }
    }
    stats.set_mub_errors(std::move(table));
  }
  return stats;
}

RawKeyJoint raw_key_joint(const NoiseModel& model) {
  model.validate();
  const int d = model.dim;
  const RealMatrix t = transition_matrix(d, model.q);
  RawKeyJoint out{std::vector<double>(d, 1.0 / d), RealMatrix(d, std::vector<double>(d, 0.0))};
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) out.joint[i][j] = t[j][i] / d;
  }
  return out;
}

}  // namespace sqkd
