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

#include "twinlab/delayed_twins.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace twinlab {

namespace {

ConditionCheck checked(std::string label, double residual, double threshold) {
    ConditionCheck c;
    c.label = std::move(label);
    c.residual = residual;
    c.holds = residual <= threshold;
    return c;
}

ConditionCheck vacuous(std::string label) {
    ConditionCheck c;
    c.label = std::move(label);
    c.holds = true;
    c.vacuous = true;
    return c;
}

ConditionCheck failed(std::string label, double residual) {
    ConditionCheck c;
    c.label = std::move(label);
    c.residual = residual;
    c.holds = false;
    return c;
}

std::vector<double> probabilities_in(const DiscreteObservable &obs, const Vector &state) {
    std::vector<double> probs;
    probs.reserve(obs.branches().size());
    for (const auto &b : obs.branches()) {
        probs.push_back(b.projector.apply(state).squaredNorm());
    }
    return probs;
}

} // namespace

DelayedPair::DelayedPair(EventProjector e, EventProjector f, StateVector psi0, UnitaryEvolution u,
                         const Tolerances &tol)
    : initial_event(std::move(e)), delayed_event(std::move(f)), initial_state(std::move(psi0)),
      evolution(std::move(u)) {
    detail::require_same_dim(initial_event.dim(), delayed_event.dim(), "DelayedPair");
    detail::require_same_dim(initial_event.dim(), initial_state.dim(), "DelayedPair");
    detail::require_same_dim(initial_event.dim(), evolution.dim(), "DelayedPair");
    (void)tol;
}

StateVector DelayedPair::delayed_state(const Tolerances &tol) const {
    return evolution.apply(initial_state, tol);
}

TwinVerdict is_delayed_twin(const EventProjector &e, const EventProjector &f,
                            const StateVector &psi0, const UnitaryEvolution &u,
                            const Tolerances &tol) {
    detail::require_same_dim(e.dim(), f.dim(), "is_delayed_twin");
    detail::require_same_dim(e.dim(), psi0.dim(), "is_delayed_twin");
    detail::require_same_dim(e.dim(), u.dim(), "is_delayed_twin");
    Vector moved_collapse = u.apply(e.apply(psi0.vec()));
    Vector late_collapse = f.apply(u.apply(psi0.vec()));

    TwinVerdict verdict;
    verdict.residual = (moved_collapse - late_collapse).norm();
    verdict.is_twin = verdict.residual <= tol.op;
    verdict.degenerate =
        moved_collapse.squaredNorm() <= tol.p_min && late_collapse.squaredNorm() <= tol.p_min;
    verdict.marginal = detail::is_marginal(verdict.residual, tol.op);
    return verdict;
}

EventProjector trivial_delayed_twin(const EventProjector &e, const UnitaryEvolution &u,
                                    const Tolerances &tol) {
    return u.transport(e, tol);
}

Proposition1Report verify_proposition1(const EventProjector &e, const StateVector &psi0,
                                       const UnitaryEvolution &u, int samples, std::uint64_t seed,
                                       const Tolerances &tol) {
    detail::require_same_dim(e.dim(), psi0.dim(), "verify_proposition1");
    detail::require_same_dim(e.dim(), u.dim(), "verify_proposition1");
    Rng rng(seed);
    StateVector psi_t = u.apply(psi0, tol);
    EventProjector moved = u.transport(e, tol);

    Proposition1Report report;
    int initial_room = twin_class(e, psi0, tol).max_extra_rank();
    for (int i = 0; i < samples; ++i) {
        EventProjector member = sample_twin(e, psi0, rng.uniform_int(0, initial_room), rng, tol);
        double residual = is_twin(u.transport(member, tol), moved, psi_t, tol).residual;
        report.forward.residuals.push_back(residual);
        report.forward.max_residual = std::max(report.forward.max_residual, residual);
    }
    report.forward.all_ok = report.forward.max_residual <= tol.op;

    int delayed_room = twin_class(moved, psi_t, tol).max_extra_rank();
    UnitaryEvolution back = u.dagger();
    for (int i = 0; i < samples; ++i) {
        EventProjector member = sample_twin(moved, psi_t, rng.uniform_int(0, delayed_room), rng, tol);
        double residual = is_twin(back.transport(member, tol), e, psi0, tol).residual;
        report.backward.residuals.push_back(residual);
        report.backward.max_residual = std::max(report.backward.max_residual, residual);
    }
    report.backward.all_ok = report.backward.max_residual <= tol.op;

    // The minimal elements of the two classes are each other's transports.
    report.minimal_transport_residual =
        (u.transport(minimal_twin(e, psi0, tol), tol).matrix() -
         minimal_twin(moved, psi_t, tol).matrix())
            .norm();
    report.ok = report.forward.all_ok && report.backward.all_ok &&
                report.minimal_transport_residual <= tol.op;
    return report;
}

Proposition2Report verify_proposition2(const EventProjector &e, const EventProjector &e_prime,
                                       const EventProjector &f, const EventProjector &f_prime,
                                       const StateVector &psi0, const UnitaryEvolution &u,
                                       const Tolerances &tol) {
    TwinVerdict base = is_delayed_twin(e, f, psi0, u, tol);
    if (!base.is_twin) {
        throw PreconditionError("verify_proposition2: (E, F) are not delayed twins (residual " +
                                std::to_string(base.residual) + ")");
    }
    StateVector psi_t = u.apply(psi0, tol);

    Proposition2Report report;
    TwinVerdict a_lhs = is_delayed_twin(e, f_prime, psi0, u, tol);
    TwinVerdict a_rhs = is_twin(f, f_prime, psi_t, tol);
    report.part_a = {a_lhs.is_twin, a_rhs.is_twin, a_lhs.residual, a_rhs.residual,
                     a_lhs.is_twin == a_rhs.is_twin};

    TwinVerdict b_lhs = is_delayed_twin(e_prime, f, psi0, u, tol);
    TwinVerdict b_rhs = is_twin(e, e_prime, psi0, tol);
    report.part_b = {b_lhs.is_twin, b_rhs.is_twin, b_lhs.residual, b_rhs.residual,
                     b_lhs.is_twin == b_rhs.is_twin};

    report.ok = report.part_a.agree && report.part_b.agree;
    return report;
}

Theorem4Report verify_theorem4(const EventProjector &e, const EventProjector &e_prime,
                               const EventProjector &f, const StateVector &psi0,
                               const UnitaryEvolution &u, const Tolerances &tol) {
    if (!in_class(e_prime, e, psi0, tol)) {
        throw PreconditionError("verify_theorem4: E' is not in the twin class of E");
    }
    StateVector psi_t = u.apply(psi0, tol);

    Theorem4Report report;
    TwinVerdict lhs = is_delayed_twin(e_prime, f, psi0, u, tol);
    TwinVerdict a_rhs = is_twin(u.transport(e, tol), f, psi_t, tol);
    report.part_a = {lhs.is_twin, a_rhs.is_twin, lhs.residual, a_rhs.residual,
                     lhs.is_twin == a_rhs.is_twin};

    TwinVerdict b_rhs = is_twin(u.dagger().transport(f, tol), e, psi0, tol);
    report.part_b = {lhs.is_twin, b_rhs.is_twin, lhs.residual, b_rhs.residual,
                     lhs.is_twin == b_rhs.is_twin};

    report.ok = report.part_a.agree && report.part_b.agree;
    return report;
}

bool pairs_equivalent(const EventProjector &e, const EventProjector &f,
                      const EventProjector &e_prime, const EventProjector &f_prime,
                      const StateVector &psi0, const UnitaryEvolution &u, const Tolerances &tol) {
    TwinVerdict first = is_delayed_twin(e, f, psi0, u, tol);
    if (!first.is_twin) {
        throw PreconditionError("pairs_equivalent: (E, F) are not delayed twins");
    }
    TwinVerdict second = is_delayed_twin(e_prime, f_prime, psi0, u, tol);
    if (!second.is_twin) {
        throw PreconditionError("pairs_equivalent: (E', F') are not delayed twins");
    }
    StateVector psi_t = u.apply(psi0, tol);
    bool initial_twins = is_twin(e, e_prime, psi0, tol).is_twin;
    bool delayed_twins = is_twin(f, f_prime, psi_t, tol).is_twin;
    if (initial_twins != delayed_twins) {
        // For genuine delayed twin pairs the two conjuncts are equal claims.
        throw ValidationError("pairs_equivalent: the initial-state and delayed-state conjuncts "
                              "disagree on genuine delayed twin pairs");
    }
    return initial_twins && delayed_twins;
}

TwinVerdict verify_theorem5(const EventProjector &e, const EventProjector &f,
                            const StateVector &psi0, const UnitaryEvolution &u,
                            const Tolerances &tol) {
    detail::require_same_dim(e.dim(), f.dim(), "verify_theorem5");
    detail::require_same_dim(e.dim(), psi0.dim(), "verify_theorem5");
    detail::require_same_dim(e.dim(), u.dim(), "verify_theorem5");

    Vector e_psi = e.apply(psi0.vec());
    double p_initial = e_psi.squaredNorm();
    if (p_initial <= tol.p_min) {
        throw PreconditionError("verify_theorem5: E must not nullify the initial state");
    }

    TwinVerdict verdict = is_delayed_twin(e, f, psi0, u, tol);
    Vector psi_t = u.apply(psi0.vec());
    Vector f_psi_t = f.apply(psi_t);
    double p_delayed = f_psi_t.squaredNorm();

    // (i) The opposite events are delayed twins.
    Vector moved_opposite = u.apply(psi0.vec() - e_psi);
    Vector late_opposite = psi_t - f_psi_t;
    verdict.per_condition.push_back(checked("(i)", (moved_opposite - late_opposite).norm(), tol.op));

    // (ii)(a) Equal probability across the delay.
    verdict.per_condition.push_back(checked("(ii)(a)", std::abs(p_initial - p_delayed), tol.prob));

    // (ii)(b) Collapse and evolution commute.
    Vector moved_collapsed = u.apply(e_psi / std::sqrt(p_initial));
    if (p_delayed > tol.p_min) {
        Vector late_collapsed = f_psi_t / std::sqrt(p_delayed);
        verdict.per_condition.push_back(
            checked("(ii)(b)", (moved_collapsed - late_collapsed).norm(), tol.op));
    } else {
        verdict.per_condition.push_back(failed("(ii)(b)", 1.0));
    }

    // (iii)(a) F is certain in the delayed collapsed state.
    double certainty_forward = (moved_collapsed - f.apply(moved_collapsed)).norm();
    verdict.per_condition.push_back(checked("(iii)(a)", certainty_forward, tol.op));

    // (iii)(b) E is certain in the inversely delayed collapsed state.
    if (p_delayed > tol.p_min) {
        Vector pulled_back = u.matrix().adjoint() * (f_psi_t / std::sqrt(p_delayed));
        verdict.per_condition.push_back(
            checked("(iii)(b)", (pulled_back - e.apply(pulled_back)).norm(), tol.op));
    } else {
        verdict.per_condition.push_back(failed("(iii)(b)", 1.0));
    }

    // (iv)(a) coincides with the forward certainty statement.
    verdict.per_condition.push_back(checked("(iv)(a)", certainty_forward, tol.op));

    // (iv)(b) The analogous statement for the opposite events.
    Vector opposite = psi0.vec() - e_psi;
    double p_opposite = opposite.squaredNorm();
    if (p_opposite > tol.p_min) {
        Vector moved = u.apply(opposite / std::sqrt(p_opposite));
        // F^c certain in the delayed state means F annihilates it.
        verdict.per_condition.push_back(checked("(iv)(b)", f.apply(moved).norm(), tol.op));
    } else {
        verdict.per_condition.push_back(vacuous("(iv)(b)"));
    }
    return verdict;
}

EigenMatching match_eigenprojectors_delayed(const DiscreteObservable &left,
                                            const DiscreteObservable &right,
                                            const StateVector &psi0, const UnitaryEvolution &u,
                                            const Tolerances &tol) {
    detail::require_same_dim(left.dim(), right.dim(), "match_eigenprojectors_delayed");
    detail::require_same_dim(left.dim(), psi0.dim(), "match_eigenprojectors_delayed");
    detail::require_same_dim(left.dim(), u.dim(), "match_eigenprojectors_delayed");

    Vector psi_t = u.apply(psi0.vec());
    std::vector<double> left_probs = probabilities_in(left, psi0.vec());
    std::vector<double> right_probs = probabilities_in(right, psi_t);

    std::vector<Vector> moved_actions;
    moved_actions.reserve(left.branches().size());
    for (const auto &b : left.branches()) {
        moved_actions.push_back(u.apply(b.projector.apply(psi0.vec())));
    }
    std::vector<Vector> late_actions;
    late_actions.reserve(right.branches().size());
    for (const auto &b : right.branches()) {
        late_actions.push_back(b.projector.apply(psi_t));
    }
    auto residual_fn = [&](int k, int l) {
        return (moved_actions[static_cast<size_t>(k)] - late_actions[static_cast<size_t>(l)])
            .norm();
    };
    return detail::match_positive_branches(left_probs, right_probs, residual_fn, tol.op,
                                           tol.p_min);
}

TwinVerdict is_delayed_twin_observables(const DiscreteObservable &left,
                                        const DiscreteObservable &right, const StateVector &psi0,
                                        const UnitaryEvolution &u, const Tolerances &tol) {
    EigenMatching matching = match_eigenprojectors_delayed(left, right, psi0, u, tol);
    TwinVerdict verdict;
    verdict.is_twin = matching.complete();
    verdict.residual = matching.worst_residual();
    verdict.marginal = detail::is_marginal(verdict.residual, tol.op);
    return verdict;
}

TwinVerdict verify_theorem6(const DiscreteObservable &left, const DiscreteObservable &right,
                            const StateVector &psi0, const UnitaryEvolution &u,
                            const Tolerances &tol) {
    TwinVerdict verdict = is_delayed_twin_observables(left, right, psi0, u, tol);

    Vector psi_t = u.apply(psi0.vec());
    std::vector<double> left_probs = probabilities_in(left, psi0.vec());
    std::vector<double> right_probs = probabilities_in(right, psi_t);

    auto moved_collapsed = [&](int k) {
        Vector v = left.branch(k).projector.apply(psi0.vec());
        return Vector(u.apply(v) / std::sqrt(left_probs[static_cast<size_t>(k)]));
    };
    auto late_collapsed = [&](int l) {
        return Vector(right.branch(l).projector.apply(psi_t) /
                      std::sqrt(right_probs[static_cast<size_t>(l)]));
    };

    // Condition set (i): renumerate by equal collapsed states up to the delay,
    // then compare probabilities in the respective states.
    auto same_state = [&](int k, int l) { return (moved_collapsed(k) - late_collapsed(l)).norm(); };
    EigenMatching by_state = detail::match_positive_branches(left_probs, right_probs, same_state,
                                                             tol.op, tol.p_min);
    ConditionCheck ia;
    ia.label = "(i)(a)";
    ia.holds = by_state.complete();
    ia.residual = by_state.complete() ? 0.0 : by_state.worst_residual();
    verdict.per_condition.push_back(ia);

    ConditionCheck ib;
    ib.label = "(i)(b)";
    for (const auto &p : by_state.pairs) {
        ib.residual = std::max(ib.residual, std::abs(p.probability_left - p.probability_right));
    }
    ib.holds = ib.residual <= tol.prob;
    ib.vacuous = by_state.pairs.empty();
    verdict.per_condition.push_back(ib);

    ConditionCheck ic;
    ic.label = "(i)(c)";
    ic.residual = by_state.max_pair_residual();
    ic.holds = ic.residual <= tol.op;
    ic.vacuous = by_state.pairs.empty();
    verdict.per_condition.push_back(ic);

    // Condition set (ii): renumerate by certainty of F_m in the delayed
    // collapsed state.
    auto certain_after = [&](int k, int l) {
        Vector moved = moved_collapsed(k);
        return (moved - right.branch(l).projector.apply(moved)).norm();
    };
    EigenMatching by_certainty = detail::match_positive_branches(left_probs, right_probs,
                                                                 certain_after, tol.op, tol.p_min);
    ConditionCheck iia;
    iia.label = "(ii)(a)";
    iia.holds = by_certainty.complete();
    iia.residual = by_certainty.complete() ? 0.0 : by_certainty.worst_residual();
    verdict.per_condition.push_back(iia);

    ConditionCheck iib;
    iib.label = "(ii)(b)";
    iib.residual = by_certainty.max_pair_residual();
    iib.holds = iib.residual <= tol.op;
    iib.vacuous = by_certainty.pairs.empty();
    verdict.per_condition.push_back(iib);

    return verdict;
}

NonselectiveComparison compare_nonselective(const DiscreteObservable &left,
                                            const DiscreteObservable &right,
                                            const StateVector &psi0, const UnitaryEvolution &u,
                                            const Tolerances &tol, bool force) {
    EigenMatching matching = match_eigenprojectors_delayed(left, right, psi0, u, tol);
    if (!matching.complete() && !force) {
        throw PreconditionError("compare_nonselective: observables are not delayed twins "
                                "(worst residual " +
                                std::to_string(matching.worst_residual()) + ")");
    }

    StateVector psi_t_state = u.apply(psi0, tol);
    auto mixture_of = [&tol](const DiscreteObservable &obs, const StateVector &state) {
        std::vector<WeightedPure> parts;
        for (const auto &b : obs.branches()) {
            CollapseResult collapsed = luders_collapse(state, b.projector, tol);
            if (collapsed.post.has_value()) {
                parts.push_back({collapsed.probability, *collapsed.post});
            }
        }
        return MixedState(std::move(parts), tol);
    };

    MixedState initial_mixture = mixture_of(left, psi0);
    MixedState late = mixture_of(right, psi_t_state);

    NonselectiveComparison comparison{initial_mixture.evolved(u, tol), late, {}, 0.0, 0.0};
    comparison.frobenius_residual =
        (comparison.evolved_mixture.density() - comparison.late_mixture.density()).norm();
    for (const auto &p : matching.pairs) {
        comparison.weight_pairs.push_back({p.m, p.probability_left, p.probability_right});
        comparison.max_weight_gap = std::max(
            comparison.max_weight_gap, std::abs(p.probability_left - p.probability_right));
    }
    return comparison;
}

TwinVerdict chain(const DiscreteObservable &left, const DiscreteObservable &middle,
                  const DiscreteObservable &right, const StateVector &psi0,
                  const UnitaryEvolution &u1, const UnitaryEvolution &u2, const Tolerances &tol) {
    TwinVerdict first_link = is_delayed_twin_observables(left, middle, psi0, u1, tol);
    if (!first_link.is_twin) {
        throw PreconditionError("chain: first link is not a delayed twin pair (residual " +
                                std::to_string(first_link.residual) + ")");
    }
    StateVector psi_t = u1.apply(psi0, tol);
    TwinVerdict second_link = is_delayed_twin_observables(middle, right, psi_t, u2, tol);
    if (!second_link.is_twin) {
        throw PreconditionError("chain: second link is not a delayed twin pair (residual " +
                                std::to_string(second_link.residual) + ")");
    }
    return is_delayed_twin_observables(left, right, psi0, u2 * u1, tol);
}

DiscreteObservable sample_delayed_twin_observable(const DiscreteObservable &obs,
                                                  const StateVector &psi0,
                                                  const UnitaryEvolution &u, Rng &rng,
                                                  const Tolerances &tol) {
    return sample_twin_observable(u.transport(obs, tol), u.apply(psi0, tol), rng, tol);
}

DiscreteObservable sample_delayed_twin_observable(const DiscreteObservable &obs,
                                                  const StateVector &psi0,
                                                  const UnitaryEvolution &u, std::uint64_t seed,
                                                  const Tolerances &tol) {
    Rng rng(seed);
    return sample_delayed_twin_observable(obs, psi0, u, rng, tol);
}

} // namespace twinlab
