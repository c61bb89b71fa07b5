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

#include "twinlab/scenarios.hpp"

#include <cmath>
#include <utility>

namespace twinlab {

namespace {

// Seeds the one random element of the coincidence scenario (the left photon's
// flight) and its probe; fixed so every run reproduces the same instance.
constexpr std::uint64_t kScullyFlightSeed = 901247;
constexpr std::uint64_t kScullyProbeSeed = 901248;

} // namespace

const char *to_string(CheckType type) {
    switch (type) {
        case CheckType::simultaneous_twin: return "simultaneous_twin";
        case CheckType::theorem1: return "theorem1";
        case CheckType::theorem2: return "theorem2";
        case CheckType::class_membership: return "class_membership";
        case CheckType::twin_observables: return "twin_observables";
        case CheckType::corollary1: return "corollary1";
        case CheckType::delayed_twin: return "delayed_twin";
        case CheckType::theorem5: return "theorem5";
        case CheckType::theorem6: return "theorem6";
        case CheckType::theorem7: return "theorem7";
        case CheckType::proposition1: return "proposition1";
        case CheckType::proposition2: return "proposition2";
        case CheckType::pair_equivalence: return "pair_equivalence";
        case CheckType::chain: return "chain";
        case CheckType::calibration: return "calibration";
        case CheckType::probability_reproducibility: return "probability_reproducibility";
        case CheckType::branch_relation: return "branch_relation";
        case CheckType::delayed_twin_observables: return "delayed_twin_observables";
    }
    return "unknown";
}

std::optional<CheckType> check_type_from_string(const std::string &name) {
    static const std::map<std::string, CheckType> lookup = {
        {"simultaneous_twin", CheckType::simultaneous_twin},
        {"theorem1", CheckType::theorem1},
        {"theorem2", CheckType::theorem2},
        {"class_membership", CheckType::class_membership},
        {"twin_observables", CheckType::twin_observables},
        {"corollary1", CheckType::corollary1},
        {"delayed_twin", CheckType::delayed_twin},
        {"theorem5", CheckType::theorem5},
        {"theorem6", CheckType::theorem6},
        {"theorem7", CheckType::theorem7},
        {"proposition1", CheckType::proposition1},
        {"proposition2", CheckType::proposition2},
        {"pair_equivalence", CheckType::pair_equivalence},
        {"chain", CheckType::chain},
        {"calibration", CheckType::calibration},
        {"probability_reproducibility", CheckType::probability_reproducibility},
        {"branch_relation", CheckType::branch_relation},
        {"delayed_twin_observables", CheckType::delayed_twin_observables},
    };
    auto it = lookup.find(name);
    if (it == lookup.end()) {
        return std::nullopt;
    }
    return it->second;
}

DiscreteObservable resolve_observable(const Scenario &scenario, const std::string &name,
                                      const Tolerances &tol) {
    auto spec_it = scenario.observables.find(name);
    if (spec_it == scenario.observables.end()) {
        throw ValidationError("unknown observable '" + name + "'");
    }
    const ObservableSpec &spec = spec_it->second;
    if (!spec.is_spectral()) {
        auto op_it = scenario.operators.find(spec.hermitian_name);
        if (op_it == scenario.operators.end()) {
            throw ValidationError("observable '" + name + "' references unknown operator '" +
                                  spec.hermitian_name + "'");
        }
        return spectral_decompose(op_it->second, spec.cluster_tol, tol);
    }
    if (spec.values.size() != spec.projector_names.size() || spec.values.empty()) {
        throw ValidationError("observable '" + name + "' needs one value per projector");
    }
    std::vector<ObservableBranch> branches;
    branches.reserve(spec.values.size());
    for (size_t i = 0; i < spec.values.size(); ++i) {
        auto op_it = scenario.operators.find(spec.projector_names[i]);
        if (op_it == scenario.operators.end()) {
            throw ValidationError("observable '" + name + "' references unknown operator '" +
                                  spec.projector_names[i] + "'");
        }
        branches.push_back({spec.values[i], EventProjector(op_it->second, tol)});
    }
    return DiscreteObservable(std::move(branches), tol);
}

Scenario singlet_scenario(const Tolerances &tol) {
    // Qubit basis per side: e0 = spin up, e1 = spin down along z.
    Matrix up = Matrix::Zero(2, 2);
    up(0, 0) = 1.0;
    Matrix down = Matrix::Zero(2, 2);
    down(1, 1) = 1.0;
    Matrix id2 = Matrix::Identity(2, 2);

    Vector psi = Vector::Zero(4);
    psi(1) = 1.0 / std::sqrt(2.0);  // |up down>
    psi(2) = -1.0 / std::sqrt(2.0); // |down up>

    Scenario s{"singlet", 4, StateVector(psi, tol), {}, {}, {}, {}, {}, tol};
    s.operators.emplace("spin_up_A", kron(up, id2));
    s.operators.emplace("spin_down_A", kron(down, id2));
    s.operators.emplace("spin_up_B", kron(id2, up));
    s.operators.emplace("spin_down_B", kron(id2, down));

    // Spin eigenvalues in units where +-1/2 label the two outcomes; the twin
    // verdicts depend on the projectors only.
    ObservableSpec spin_a;
    spin_a.values = {0.5, -0.5};
    spin_a.projector_names = {"spin_up_A", "spin_down_A"};
    s.observables.emplace("spin_z_A", spin_a);

    // The negated z spin of side B: value +1/2 sits on spin-down of B.
    ObservableSpec neg_spin_b;
    neg_spin_b.values = {0.5, -0.5};
    neg_spin_b.projector_names = {"spin_down_B", "spin_up_B"};
    s.observables.emplace("minus_spin_z_B", neg_spin_b);

    CheckRequest twins;
    twins.name = "spin_twin_observables";
    twins.type = CheckType::twin_observables;
    twins.args = {{"O", "spin_z_A"}, {"O_prime", "minus_spin_z_B"}};
    twins.expect = true;
    s.checks.push_back(twins);

    CheckRequest corollary = twins;
    corollary.name = "spin_corollary1";
    corollary.type = CheckType::corollary1;
    s.checks.push_back(corollary);

    CheckRequest events;
    events.name = "up_a_down_b_twin_events";
    events.type = CheckType::simultaneous_twin;
    events.args = {{"E", "spin_up_A"}, {"F", "spin_down_B"}};
    events.expect = true;
    s.checks.push_back(events);

    CheckRequest theorem1 = events;
    theorem1.name = "up_a_down_b_theorem1";
    theorem1.type = CheckType::theorem1;
    s.checks.push_back(theorem1);

    CheckRequest theorem2 = events;
    theorem2.name = "up_a_down_b_theorem2";
    theorem2.type = CheckType::theorem2;
    s.checks.push_back(theorem2);

    return s;
}

Scenario stern_gerlach_scenario(const Tolerances &tol) {
    // Basis: 0 upper path, 1 lower path, 2 right-hand region, 3 screen.
    Vector psi = Vector::Zero(4);
    psi(0) = 1.0 / std::sqrt(2.0);
    psi(1) = 1.0 / std::sqrt(2.0);

    // Transport: upper -> right region, lower -> screen (and back, to close
    // the permutation unitarily).
    Matrix transport = Matrix::Zero(4, 4);
    transport(2, 0) = 1.0;
    transport(3, 1) = 1.0;
    transport(0, 2) = 1.0;
    transport(1, 3) = 1.0;

    Matrix upper = Matrix::Zero(4, 4);
    upper(0, 0) = 1.0;
    Matrix right = Matrix::Zero(4, 4);
    right(2, 2) = 1.0;

    Scenario s{"stern-gerlach", 4, StateVector(psi, tol), {}, {}, {}, {}, {}, tol};
    s.operators.emplace("upper_path", upper);
    s.operators.emplace("right_region", right);
    s.unitaries.emplace("transport", UnitaryEvolution(transport, tol));

    CheckRequest delayed;
    delayed.name = "upper_right_delayed_twin";
    delayed.type = CheckType::delayed_twin;
    delayed.args = {{"E", "upper_path"}, {"F", "right_region"}, {"U", "transport"}};
    delayed.expect = true;
    s.checks.push_back(delayed);

    CheckRequest theorem5 = delayed;
    theorem5.name = "upper_right_theorem5";
    theorem5.type = CheckType::theorem5;
    s.checks.push_back(theorem5);

    return s;
}

ScullyPieces scully_pieces(double entanglement_angle, const Tolerances &tol) {
    if (!(entanglement_angle >= 0.0 && entanglement_angle <= M_PI / 2.0)) {
        throw ValidationError("scully scenario: entanglement angle must lie in [0, pi/2]");
    }
    // Right photon (x) left photon, one qubit each: slot 1 / slot 2 per side.
    Vector psi = Vector::Zero(4);
    psi(0) = std::cos(entanglement_angle); // |r1 l1>
    psi(3) = std::sin(entanglement_angle); // |r2 l2>

    Matrix slot1 = Matrix::Zero(2, 2);
    slot1(0, 0) = 1.0;
    Matrix slot2 = Matrix::Zero(2, 2);
    slot2(1, 1) = 1.0;
    Matrix id2 = Matrix::Identity(2, 2);

    DiscreteObservable detector({{1.0, EventProjector(kron(slot1, id2), tol)},
                                 {2.0, EventProjector(kron(slot2, id2), tol)}},
                                tol);

    // Only the left photon evolves between the two readings.
    UnitaryEvolution flight =
        tensor(UnitaryEvolution::identity(2), haar_unitary(2, kScullyFlightSeed), tol);
    DiscreteObservable detector_delayed = flight.transport(detector, tol);

    // A fixed probe measured on the left photon at the late moment.
    UnitaryEvolution probe_basis = haar_unitary(2, kScullyProbeSeed);
    Matrix t0 = probe_basis.matrix().col(0) * probe_basis.matrix().col(0).adjoint();
    Matrix t1 = probe_basis.matrix().col(1) * probe_basis.matrix().col(1).adjoint();
    DiscreteObservable left_probe(
        {{1.0, EventProjector(kron(id2, t0), tol)}, {2.0, EventProjector(kron(id2, t1), tol)}},
        tol);

    return ScullyPieces{StateVector(psi, tol), detector, detector_delayed, flight, left_probe};
}

Scenario scully_scenario(double entanglement_angle, const Tolerances &tol) {
    ScullyPieces pieces = scully_pieces(entanglement_angle, tol);

    Scenario s{"scully", 4, pieces.initial_state, {}, {}, {}, {}, {}, tol};
    s.operators.emplace("right_slot_1", pieces.detector.branch(0).projector.matrix());
    s.operators.emplace("right_slot_2", pieces.detector.branch(1).projector.matrix());
    s.operators.emplace("right_slot_1_delayed", pieces.detector_delayed.branch(0).projector.matrix());
    s.operators.emplace("right_slot_2_delayed", pieces.detector_delayed.branch(1).projector.matrix());
    s.unitaries.emplace("left_flight", pieces.evolution);

    ObservableSpec detector_spec;
    detector_spec.values = {1.0, 2.0};
    detector_spec.projector_names = {"right_slot_1", "right_slot_2"};
    s.observables.emplace("detector", detector_spec);

    ObservableSpec delayed_spec;
    delayed_spec.values = {1.0, 2.0};
    delayed_spec.projector_names = {"right_slot_1_delayed", "right_slot_2_delayed"};
    s.observables.emplace("detector_delayed", delayed_spec);

    CheckRequest twins;
    twins.name = "record_delayed_twins";
    twins.type = CheckType::delayed_twin_observables;
    twins.args = {{"O", "detector"}, {"O_prime", "detector_delayed"}, {"U", "left_flight"}};
    twins.expect = true;
    s.checks.push_back(twins);

    CheckRequest theorem6 = twins;
    theorem6.name = "record_theorem6";
    theorem6.type = CheckType::theorem6;
    s.checks.push_back(theorem6);

    CheckRequest theorem7 = twins;
    theorem7.name = "collapse_commutes_with_flight";
    theorem7.type = CheckType::theorem7;
    s.checks.push_back(theorem7);

    return s;
}

CoincidenceComparison scully_coincidence(double entanglement_angle, const Tolerances &tol) {
    ScullyPieces pieces = scully_pieces(entanglement_angle, tol);
    int outcomes = pieces.detector.branch_count();
    int probes = pieces.left_probe.branch_count();

    CoincidenceComparison comparison;
    comparison.collapse_first = Eigen::MatrixXd::Zero(outcomes, probes);
    comparison.evolve_first = Eigen::MatrixXd::Zero(outcomes, probes);

    StateVector late_state = pieces.evolution.apply(pieces.initial_state, tol);
    for (int k = 0; k < outcomes; ++k) {
        // Reading the record early: collapse, then let the left photon fly.
        CollapseResult early =
            luders_collapse(pieces.initial_state, pieces.detector.branch(k).projector, tol);
        if (early.post.has_value()) {
            Vector flown = pieces.evolution.apply(early.post->vec());
            for (int j = 0; j < probes; ++j) {
                comparison.collapse_first(k, j) =
                    early.probability *
                    pieces.left_probe.branch(j).projector.apply(flown).squaredNorm();
            }
        }
        // Reading the record late: fly first, then collapse.
        CollapseResult late =
            luders_collapse(late_state, pieces.detector_delayed.branch(k).projector, tol);
        if (late.post.has_value()) {
            for (int j = 0; j < probes; ++j) {
                comparison.evolve_first(k, j) =
                    late.probability *
                    pieces.left_probe.branch(j).projector.apply(late.post->vec()).squaredNorm();
            }
        }
    }
    comparison.max_gap =
        (comparison.collapse_first - comparison.evolve_first).cwiseAbs().maxCoeff();
    return comparison;
}

} // namespace twinlab
