// Executable verdicts for the structural results: measurement operations
// on one of a pair of subalgebras signal to the other exactly when the
// pair fails to commute; finite phase spaces broadcast universally; a
// noncommuting state pair cannot be broadcast, and the channel search
// over nonselective operations quantifies the gap.
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cstar/channel.hpp"

namespace cstar {

enum class Verdict { Pass, Fail, Evidence };

std::string to_string(Verdict v);

// Evidence bundle a checker returns: the verdict plus the named
// residuals and witnesses behind it.  Failing checks always carry a
// witness entry.
struct CheckReport {
  std::string check;
  Verdict verdict = Verdict::Fail;
  std::vector<std::pair<std::string, double>> residuals;
  std::vector<std::string> witnesses;
  std::uint64_t seed = 0;
  int trials = 0;

  void add(std::string name, double value);
  double residual(const std::string& name) const;
};

// Both directions of the no-signaling criterion for a pair of unital
// subalgebras of the same matrix algebra.  If the pair commutes
// elementwise, `trials` random two-outcome measurement operations built
// from effects of either algebra must leave the other fixed.  If it
// does not, an explicit effect E and self-adjoint B with
// T_E(B) = sqrt(E) B sqrt(E) + sqrt(I-E) B sqrt(I-E) != B
// is constructed, together with the nonzero double commutator
// [sqrt(E), [sqrt(E), B]] that drives the defect.  Pass means the
// operational behaviour matched the commutation structure.
CheckReport check_nosignaling_equivalence(const StarAlgebra& a,
                                          const StarAlgebra& b,
                                          int trials = 20,
                                          std::uint64_t seed = 2,
                                          double tol = kTolAlgebra);

// Universal broadcaster on a doubled finite phase space of x_size
// points: Kraus family { |x,x><x,y| }.  On diagonal product functions
// the Heisenberg action is (f,g) -> fg (x) I, so every diagonal state,
// mixed included, is reproduced on both output legs for any ready
// state on the second leg.
Channel classical_broadcaster(Eigen::Index x_size);

// Copying as reversible dynamics: the permutation unitary
// (x, y) -> (x, x + y mod x_size) of the doubled phase space, which
// clones every point mass from ready point 0.
Channel reversible_classical_clone(Eigen::Index x_size);

// Broadcaster for a commuting pair of densities: rotate into a common
// eigenbasis, copy there, rotate back.  The returned channel is
// certified internally to reproduce both marginals for both inputs.
Channel broadcast_commuting(const State& d0, const State& d1,
                            double tol = kTolAlgebra);

// Worst-case broadcast score of a composite channel for the pair with
// the given ready state on the second leg: the minimum over input
// state and output leg of the fidelity (squared-overlap convention)
// between the output marginal and the input state.
double broadcast_fidelity(const Channel& t, const State& rho0,
                          const State& rho1, const State& sigma);

// Search evidence against broadcasting a noncommuting pair: maximizes
// broadcast_fidelity over nonselective channels on the composite
// (ansatz_rank Kraus operators, Adam over a trace-preserving
// parameterization, one warm start from the common-eigenbasis copier
// plus random restarts).  Reports the best fidelity found and the
// transition probabilities p and p(x)p whose ordering exact
// broadcasting would violate.  Pass when a broadcaster is found
// (commuting or orthogonal pairs); Evidence with a positive gap
// otherwise.
CheckReport no_broadcast_search(const State& rho0, const State& rho1,
                                int ansatz_rank = 4, int restarts = 20,
                                int iterations = 250, std::uint64_t seed = 3);

// Product states inherit transition probabilities:
// p(r (x) s, w (x) s) = p(r, w) for any common s, and
// p(r (x) r, w (x) w) = p(r, w)^2 for pure r, w.
CheckReport check_duplication_identities(Eigen::Index dim, int trials = 200,
                                         std::uint64_t seed = 4);

// Nonselective operations never decrease transition probabilities:
// p(T* r, T* w) >= p(r, w) over random channels and state pairs.
CheckReport check_transition_monotonicity(Eigen::Index dim, int trials = 1000,
                                          std::uint64_t seed = 5);

}  // namespace cstar
