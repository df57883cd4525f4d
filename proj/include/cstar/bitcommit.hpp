// A commitment protocol over classically correlated states, its honest
// runs, and the entanglement attack that breaks binding.
//
// The committed bit selects one of two equal-weight product-state
// mixtures with identical marginals, so the receiver learns nothing
// before reveal; a sender restricted to separable states is then bound,
// while one who can hold half of an entangled vector can steer the
// receiver's collective into either mixture after the fact.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cstar/gns.hpp"
#include "cstar/theorems.hpp"

namespace cstar {

struct CommitmentPair {
  StarAlgebra alg;        // single-party observable algebra
  AmbiguousMixture mix;   // omega1/omega2 and omega_plus/omega_minus
  State rho0, rho1;       // committed composite states, doubled ambient
  State mu;               // shared marginal of both
};

// rho_b = (omega_b1 (x) omega_b1 + omega_b2 (x) omega_b2) / 2 over the
// bit's pair; equal marginals on both legs are certified to 1e-12.
CommitmentPair build_commit_states(const StarAlgebra& alg,
                                   const AmbiguousMixture& mix);

// Best two-outcome test in the algebra separating target from other:
// the positive-part projector of the blockwise density difference.  For
// an orthogonal pair the effect is certified to identify the target
// with probability >= 1 - epsilon and the other with <= epsilon.
Effect discriminating_effect(const State& target, const State& other,
                             const StarAlgebra& alg, double epsilon = 1e-9,
                             double tol = kTolAlgebra);

struct Transcript {
  int bit = 0;            // committed
  int announced_bit = 0;  // revealed
  int rounds = 0;
  std::string strategy;   // honest | honest-lying | epr
  bool accept = false;
  double agreement_rate = 0.0;
  double epsilon = 0.0;
  double threshold = 0.0;  // agreement cut: 1 - eps - 3 sqrt(eps(1-eps)/n)
  std::uint64_t seed = 0;
  std::vector<int> outcome_tally;  // receiver outcome counts, sums to rounds
  double marginal_residual = 0.0;     // attack: receiver marginal vs mu
  double conditional_residual = 0.0;  // attack: worst steered-state error
};

// Sender commits `bit`, sampling that bit's mixture each round; at
// reveal she announces `announced_bit` (defaults to the truth) with her
// per-round records, and the receiver measures the announced pair's
// discriminating effect.  Announcing the other bit without
// entanglement drives the agreement rate to 1/2 and the run is
// rejected.
Transcript run_honest(const CommitmentPair& pair, int bit, int rounds,
                      double epsilon, std::uint64_t seed,
                      int announced_bit = -1);

// Sender keeps half of (x1 (x) x1 + x2 (x) x2)/sqrt(2) per round and
// measures her half in the basis of whichever bit she reveals; the
// receiver's collective is steered into that bit's mixture exactly.
// Requires a multiplicity-one mixture so the four states are ambient
// vector states.
Transcript run_epr_attack(const CommitmentPair& pair, int revealed_bit,
                          int rounds, std::uint64_t seed,
                          double epsilon = 0.01);

// Search evidence for binding against a separable sender: minimizes
// |T0 sigma - rho0|_1 + |T1 sigma - rho1|_1 over separable states sigma
// with `components` product terms and sender-local channel pairs
// (T_b (x) id).  The entangled attack state drives the same objective
// to zero and is reported as the sanity contrast.
CheckReport separable_attack_search(const CommitmentPair& pair,
                                    int components = 4, int restarts = 20,
                                    int iterations = 200,
                                    std::uint64_t seed = 6);

// Two +-1-valued observables per party.
struct ObservablePair {
  Mat first, second;
};

ObservablePair make_observable_pair(Mat first, Mat second,
                                    double tol = kTolAlgebra);

// Qubit spin along the Bloch direction (theta, phi).
Mat spin_observable(double theta, double phi);

// |<A1 B1> + <A1 B2> + <A2 B1> - <A2 B2>| in the given composite state.
double chsh_value(const State& s, const ObservablePair& alice,
                  const ObservablePair& bob);

// Maximizes chsh_value over qubit settings on both sides for a fixed
// two-qubit state.
CheckReport chsh_settings_search(const State& s, int restarts = 8,
                                 int iterations = 200, std::uint64_t seed = 8);

// Random product states against random settings never beat the
// classical bound of 2.
CheckReport chsh_product_sweep(int trials = 10000, std::uint64_t seed = 9);

}  // namespace cstar
