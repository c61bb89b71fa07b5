// Copyright 2026 The twinlab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <vector>

#include "twinlab/twin_observables.hpp"

namespace twinlab {

/// Events E (at the initial moment) and F (after the delay) paired with the
/// state and evolution they are delayed twins in.
struct DelayedPair {
    EventProjector initial_event;
    EventProjector delayed_event;
    StateVector initial_state;
    UnitaryEvolution evolution;

    DelayedPair(EventProjector e, EventProjector f, StateVector psi0, UnitaryEvolution u,
                const Tolerances &tol = {});

    StateVector delayed_state(const Tolerances &tol = {}) const;
};

/// Delayed twins: U E psi0 = F U psi0. Equivalently F is a simultaneous twin
/// of the transported event U E U† in the delayed state.
TwinVerdict is_delayed_twin(const EventProjector &e, const EventProjector &f,
                            const StateVector &psi0, const UnitaryEvolution &u,
                            const Tolerances &tol = {});

/// The trivial delayed twin of E: the transported projector U E U†, a delayed
/// twin of E in every state.
EventProjector trivial_delayed_twin(const EventProjector &e, const UnitaryEvolution &u,
                                    const Tolerances &tol = {});

struct SampleSweepReport {
    std::vector<double> residuals;
    double max_residual = 0.0;
    bool all_ok = true;
};

/// Proposition 1: evolution transports the whole twin class, both ways.
/// Sampled: transported members of [E] land in [U E U†] at the delayed state,
/// pulled-back members of [U E U†] land in [E], and the minimal elements map
/// onto each other.
struct Proposition1Report {
    SampleSweepReport forward;
    SampleSweepReport backward;
    double minimal_transport_residual = 0.0;
    bool ok = false;
};

Proposition1Report verify_proposition1(const EventProjector &e, const StateVector &psi0,
                                       const UnitaryEvolution &u, int samples, std::uint64_t seed,
                                       const Tolerances &tol = {});

struct BiconditionalCheck {
    bool lhs = false;
    bool rhs = false;
    double lhs_residual = 0.0;
    double rhs_residual = 0.0;
    bool agree = false;
};

/// Proposition 2 (requires (E, F) to be delayed twins): (E, F') are delayed
/// twins iff F' is a simultaneous twin of F at the delayed state (part A), and
/// (E', F) are delayed twins iff E' is a simultaneous twin of E initially
/// (part B).
struct Proposition2Report {
    BiconditionalCheck part_a;
    BiconditionalCheck part_b;
    bool ok = false;
};

Proposition2Report verify_proposition2(const EventProjector &e, const EventProjector &e_prime,
                                       const EventProjector &f, const EventProjector &f_prime,
                                       const StateVector &psi0, const UnitaryEvolution &u,
                                       const Tolerances &tol = {});

/// Theorem 4 (requires E' to be in the twin class of E): (E', F) are delayed
/// twins iff F is a simultaneous twin of U E U† at the delayed state (A), iff
/// E is a simultaneous twin of U† F U at the initial state (B).
struct Theorem4Report {
    BiconditionalCheck part_a;
    BiconditionalCheck part_b;
    bool ok = false;
};

Theorem4Report verify_theorem4(const EventProjector &e, const EventProjector &e_prime,
                               const EventProjector &f, const StateVector &psi0,
                               const UnitaryEvolution &u, const Tolerances &tol = {});

/// Equivalence of two delayed twin pairs (both pairs are checked to satisfy
/// the delayed-twin equality first). The two defining conjuncts can never
/// disagree for genuine pairs; a numeric disagreement raises ValidationError.
bool pairs_equivalent(const EventProjector &e, const EventProjector &f,
                      const EventProjector &e_prime, const EventProjector &f_prime,
                      const StateVector &psi0, const UnitaryEvolution &u,
                      const Tolerances &tol = {});

/// Theorem 5 (requires E psi0 != 0): the delayed-twin equality is equivalent
/// to each of four condition sets. Condition entries: "(i)" opposite events
/// delayed twins; "(ii)(a)" equal probability across the delay, "(ii)(b)"
/// collapse and evolution commute; "(iii)(a)" F certain in the delayed
/// collapsed state, "(iii)(b)" E certain in the inversely delayed collapsed
/// state; "(iv)(a)"/"(iv)(b)" the certainty statements for the pair and for
/// the opposite pair.
TwinVerdict verify_theorem5(const EventProjector &e, const EventProjector &f,
                            const StateVector &psi0, const UnitaryEvolution &u,
                            const Tolerances &tol = {});

/// Common renumeration with the delayed criterion U E_k psi0 = F_l (U psi0);
/// probabilities are taken in the respective states (initial for the left
/// observable, delayed for the right one).
EigenMatching match_eigenprojectors_delayed(const DiscreteObservable &left,
                                            const DiscreteObservable &right,
                                            const StateVector &psi0, const UnitaryEvolution &u,
                                            const Tolerances &tol = {});

/// Delayed twin observables: no unmatched positive-probability branch.
TwinVerdict is_delayed_twin_observables(const DiscreteObservable &left,
                                        const DiscreteObservable &right, const StateVector &psi0,
                                        const UnitaryEvolution &u, const Tolerances &tol = {});

/// Theorem 6: delayed twin observables are equivalently characterized by
/// (i) a renumeration with equal probabilities in the respective states and
/// equal collapsed states up to the delay, and by (ii) a renumeration under
/// which each F_m is certain in the delayed collapsed state. Condition
/// entries: "(i)(a)", "(i)(b)", "(i)(c)", "(ii)(a)", "(ii)(b)".
TwinVerdict verify_theorem6(const DiscreteObservable &left, const DiscreteObservable &right,
                            const StateVector &psi0, const UnitaryEvolution &u,
                            const Tolerances &tol = {});

struct WeightPair {
    int m = 0;
    double weight_initial = 0.0;
    double weight_delayed = 0.0;
};

/// Theorem 7 comparison: nonselective ideal measurement of the left observable
/// at the initial moment followed by evolution, against evolution followed by
/// nonselective measurement of the delayed twin observable.
struct NonselectiveComparison {
    /// U rho_initial U† as a mixture (initial Lüders components, evolved).
    MixedState evolved_mixture;
    /// Mixture produced by measuring the right observable in the delayed state.
    MixedState late_mixture;
    std::vector<WeightPair> weight_pairs;
    /// ||U rho_initial U† - rho_delayed||_F.
    double frobenius_residual = 0.0;
    double max_weight_gap = 0.0;
};

/// Throws PreconditionError when the observables are not delayed twins,
/// unless `force` is set (counterexample exploration).
NonselectiveComparison compare_nonselective(const DiscreteObservable &left,
                                            const DiscreteObservable &right,
                                            const StateVector &psi0, const UnitaryEvolution &u,
                                            const Tolerances &tol = {}, bool force = false);

/// Corollary 2, chaining: with (left, middle) delayed twins over the first
/// interval and (middle, right) delayed twins over the second, (left, right)
/// are delayed twins over the composite interval. Both links are checked as
/// preconditions; the returned verdict carries the composed residual.
TwinVerdict chain(const DiscreteObservable &left, const DiscreteObservable &middle,
                  const DiscreteObservable &right, const StateVector &psi0,
                  const UnitaryEvolution &u1, const UnitaryEvolution &u2,
                  const Tolerances &tol = {});

/// Construction oracle: a delayed twin observable of `obs`, sampled from the
/// transported twin classes at the delayed state.
DiscreteObservable sample_delayed_twin_observable(const DiscreteObservable &obs,
                                                  const StateVector &psi0,
                                                  const UnitaryEvolution &u, Rng &rng,
                                                  const Tolerances &tol = {});
DiscreteObservable sample_delayed_twin_observable(const DiscreteObservable &obs,
                                                  const StateVector &psi0,
                                                  const UnitaryEvolution &u, std::uint64_t seed,
                                                  const Tolerances &tol = {});

} // namespace twinlab
