#include "sqkd/sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

#include "sqkd/errors.hpp"

namespace sqkd {

namespace {

std::uint64_t splitmix(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

ComplexVector basis_state(int d, int i) {
  ComplexVector v(d);
  v[i] = 1.0;
  return v;
}

}  // namespace

RoundRng::RoundRng(std::uint64_t seed, std::uint64_t round) {
  std::uint64_t s = seed;
  const std::uint64_t seed_key = splitmix(s);
  std::uint64_t r = round ^ seed_key;
  state_ = splitmix(r);
}

std::uint64_t RoundRng::next() { return splitmix(state_); }

double RoundRng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

__extension__ typedef unsigned __int128 Uint128;

int RoundRng::below(int n) {
  return static_cast<int>((static_cast<Uint128>(next()) * static_cast<unsigned>(n)) >> 64);
}

std::vector<double> born_probabilities(std::span<const Complex> state, const Basis& basis) {
  if (static_cast<int>(state.size()) != basis.dim) throw DomainError("state dimension does not match basis");
  std::vector<double> probs(basis.dim);
  for (int j = 0; j < basis.dim; ++j) probs[j] = std::norm(inner(basis.vector(j), state));
  return probs;
}

Measurement measure_in_basis(std::span<const Complex> state, const Basis& basis, RoundRng& rng) {
  const double norm = norm_squared(state);
  if (std::abs(norm - 1.0) > 1e-9) {
    std::ostringstream msg;
    msg << "state is not normalized (|psi|^2 = " << norm << ")";
    throw DomainError(msg.str());
  }
  const std::vector<double> probs = born_probabilities(state, basis);
  const double u = rng.uniform() * norm;
  double acc = 0.0;
  int outcome = basis.dim - 1;
  for (int j = 0; j < basis.dim; ++j) {
    acc += probs[j];
    if (u < acc) {
      outcome = j;
      break;
    }
  }
  return Measurement{outcome, basis.vector(outcome)};
}

ComplexVector apply_channel(std::span<const Complex> state, double q, RoundRng& rng) {
  const int d = static_cast<int>(state.size());
  NoiseModel{d, q}.validate();
  ComplexVector out(state.begin(), state.end());
  const double lambda = d * q;
  if (!(rng.uniform() < lambda)) return out;
  const int op = rng.below(d * d);
  const int shift = op / d;
  const int clock = op % d;
  for (int i = 0; i < d; ++i) {
    out[(i + shift) % d] = std::polar(1.0, 2.0 * std::numbers::pi * clock * i / d) * state[i];
  }
  return out;
}

void ProtocolConfig::validate() const {
  NoiseModel{dim, q, scenario}.validate();
  if (!is_supported(dim, n_mubs)) {
    throw DomainError("unsupported configuration d=" + std::to_string(dim) + ", " + std::to_string(n_mubs) +
                      " MUBs");
  }
  if (rounds < 1) throw DomainError("rounds must be at least 1");
  if (!(prob_reflect > 0.0 && prob_reflect < 1.0)) throw DomainError("prob_reflect must lie in (0, 1)");
}

std::uint64_t EmpiricalStats::slice_total(int a) const {
  std::uint64_t total = 0;
  for (int b = 0; b < dim; ++b) {
    for (int c = 0; c < dim; ++c) total += n(a, b, c);
  }
  return total;
}

StatsTensor EmpiricalStats::frequencies() const {
  StatsTensor stats(dim);
  for (int a = 0; a < dim; ++a) {
    const std::uint64_t total = slice_total(a);
    if (total == 0) {
      throw InsufficientDataError("no measure-resend rounds with Alice sending |" + std::to_string(a) + ">");
    }
    for (int b = 0; b < dim; ++b) {
      for (int c = 0; c < dim; ++c) {
        stats.p(a, b, c) = static_cast<double>(n(a, b, c)) / static_cast<double>(total);
      }
    }
  }
  for (const auto& [label, table] : mub_counts) {
    MubErrorTable errors{label, RealMatrix(dim, std::vector<double>(dim, 0.0))};
    for (int i = 0; i < dim; ++i) {
      std::uint64_t total = 0;
      for (int j = 0; j < dim; ++j) total += table[i * dim + j];
      if (total == 0) {
        throw InsufficientDataError("no reflect rounds prepared in state " + std::string(to_string(label)) +
                                    std::to_string(i));
      }
      for (int j = 0; j < dim; ++j) {
        if (i != j) errors.pair_error[i][j] = static_cast<double>(table[i * dim + j]) / static_cast<double>(total);
      }
    }
    stats.set_mub_errors(std::move(errors));
  }
  return stats;
}

RawKeyJoint EmpiricalStats::raw_key() const {
  if (resend_rounds == 0) throw InsufficientDataError("no measure-resend rounds for the raw key");
  RawKeyJoint out{std::vector<double>(dim, 0.0), RealMatrix(dim, std::vector<double>(dim, 0.0))};
  const auto total = static_cast<double>(resend_rounds);
  for (int a = 0; a < dim; ++a) {
    for (int b = 0; b < dim; ++b) {
      std::uint64_t count = 0;
      for (int c = 0; c < dim; ++c) count += n(a, b, c);
      out.joint[b][a] = static_cast<double>(count) / total;
      out.p_a[a] += static_cast<double>(count) / total;
    }
  }
  return out;
}

MubConvention physical_convention(Scenario scenario) {
  return scenario == Scenario::kDependent ? MubConvention::kPerOutcome : MubConvention::kTotalSplit;
}

EmpiricalStats simulate_counts(const ProtocolConfig& config) {
  config.validate();
  const int d = config.dim;
  const MubFamily family = mubs_for_dim(d);
  const Basis& comp = family.bases.front();
  const std::vector<BasisLabel> labels = active_mub_labels(d, config.n_mubs);
  const int passes = config.scenario == Scenario::kDependent ? 1 : 2;

  auto run_range = [&](std::uint64_t begin, std::uint64_t end) {
    EmpiricalStats local;
    local.dim = d;
    local.counts.assign(static_cast<std::size_t>(d * d * d), 0);
    for (BasisLabel label : labels) local.mub_counts[label].assign(static_cast<std::size_t>(d * d), 0);

    for (std::uint64_t round = begin; round < end; ++round) {
      RoundRng rng(config.seed, round);
      if (rng.uniform() < config.prob_reflect) {
        const BasisLabel label = labels[static_cast<std::size_t>(rng.below(static_cast<int>(labels.size())))];
        const Basis& basis = family.at(label);
        const int prepared = rng.below(d);
        ComplexVector state = basis.vector(prepared);
        for (int k = 0; k < passes; ++k) state = apply_channel(state, config.q, rng);
        const int found = measure_in_basis(state, basis, rng).outcome;
        ++local.mub_counts[label][static_cast<std::size_t>(prepared * d + found)];
        ++local.reflect_rounds;
      } else {
        const int a = rng.below(d);
        ComplexVector state = apply_channel(basis_state(d, a), config.q, rng);
        const Measurement bob = measure_in_basis(state, comp, rng);
        state = apply_channel(bob.post_state, config.q, rng);
        const int c = measure_in_basis(state, comp, rng).outcome;
        ++local.counts[static_cast<std::size_t>((a * d + bob.outcome) * d + c)];
        ++local.resend_rounds;
      }
    }
    return local;
  };

  const unsigned threads =
      static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(config.threads, config.rounds)));
  std::vector<EmpiricalStats> parts(threads);
  if (threads == 1) {
    parts[0] = run_range(0, config.rounds);
  } else {
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (config.rounds + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::uint64_t begin = std::min(config.rounds, t * chunk);
      const std::uint64_t end = std::min(config.rounds, begin + chunk);
      pool.emplace_back([&, t, begin, end] { parts[t] = run_range(begin, end); });
    }
    for (auto& th : pool) th.join();
  }

  EmpiricalStats merged = parts.front();
  for (std::size_t t = 1; t < parts.size(); ++t) {
    for (std::size_t k = 0; k < merged.counts.size(); ++k) merged.counts[k] += parts[t].counts[k];
    for (auto& [label, table] : merged.mub_counts) {
      const auto& other = parts[t].mub_counts.at(label);
      for (std::size_t k = 0; k < table.size(); ++k) table[k] += other[k];
    }
    merged.resend_rounds += parts[t].resend_rounds;
    merged.reflect_rounds += parts[t].reflect_rounds;
  }
  return merged;
}

ProtocolResult run_protocol(const ProtocolConfig& config) {
  ProtocolResult out{simulate_counts(config), {}};
  const NoiseModel model{config.dim, config.q, config.scenario, physical_convention(config.scenario)};
  out.key_rate = key_rate_from_stats(model, out.stats.frequencies(), out.stats.raw_key(), config.n_mubs);
  return out;
}

}  // namespace sqkd
