#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "sqkd/channel.hpp"
#include "sqkd/keyrate.hpp"
#include "sqkd/mub.hpp"

namespace sqkd {

// SplitMix64 stream. Each protocol round gets its own stream keyed by
// (seed, round index), so results do not depend on how rounds are split
// across threads.
class RoundRng {
 public:
  RoundRng(std::uint64_t seed, std::uint64_t round);
  explicit RoundRng(std::uint64_t seed) : RoundRng(seed, 0) {}

  std::uint64_t next();
  double uniform();                      // [0, 1), 53 bits
  int below(int n);                      // uniform in [0, n)

 private:
  std::uint64_t state_;
};

struct Measurement {
  int outcome;
  ComplexVector post_state;
};

// Born-rule measurement. Throws DomainError unless |state| = 1 within 1e-9.
Measurement measure_in_basis(std::span<const Complex> state, const Basis& basis, RoundRng& rng);

// Outcome probabilities |<b_j|psi>|^2.
std::vector<double> born_probabilities(std::span<const Complex> state, const Basis& basis);

// Depolarizing pass with lambda = d Q: with probability lambda one of the d^2
// operators X^a Z^b (uniformly, identity included) is applied.
ComplexVector apply_channel(std::span<const Complex> state, double q, RoundRng& rng);

struct ProtocolConfig {
  int dim = 3;
  int n_mubs = 3;
  double q = 0.0;
  Scenario scenario = Scenario::kDependent;
  std::uint64_t rounds = 100000;
  std::uint64_t seed = 1;
  double prob_reflect = 0.5;
  unsigned threads = 1;

  void validate() const;
};

struct EmpiricalStats {
  int dim = 3;
  std::vector<std::uint64_t> counts;  // n[a][b][c], row-major
  std::map<BasisLabel, std::vector<std::uint64_t>> mub_counts;  // [prepared][found]
  std::uint64_t resend_rounds = 0;
  std::uint64_t reflect_rounds = 0;

  std::uint64_t n(int a, int b, int c) const { return counts[(static_cast<std::size_t>(a) * dim + b) * dim + c]; }
  std::uint64_t slice_total(int a) const;

  // Frequencies conditioned on the sent symbol / prepared state. Throws
  // InsufficientDataError naming the first empty slice.
  StatsTensor frequencies() const;
  // Bob's raw key against Alice's sent symbol, from the resend rounds.
  RawKeyJoint raw_key() const;

  friend bool operator==(const EmpiricalStats&, const EmpiricalStats&) = default;
};

struct ProtocolResult {
  EmpiricalStats stats;
  KeyRateBreakdown key_rate;
};

// Measure-resend rounds: Alice sends |a> (uniform), one channel pass, Bob
// measures and resends, one channel pass, Alice measures. Reflect rounds:
// Alice sends a uniformly chosen state of a uniformly chosen
// non-computational active basis, Bob returns it untouched and Alice
// measures in the same basis; the round trip is one channel pass in the
// dependent scenario and two in the independent one. Rounds whose basis
// choices would be discarded at sifting are not simulated.
//
// The frequencies go through key_rate_from_stats; the echoed model uses the
// convention under which the analytic statistics equal the simulated
// physics (per-outcome for dependent, total-split for independent).
ProtocolResult run_protocol(const ProtocolConfig& config);

// Simulate without evaluating the key rate.
EmpiricalStats simulate_counts(const ProtocolConfig& config);

MubConvention physical_convention(Scenario scenario);

}  // namespace sqkd
