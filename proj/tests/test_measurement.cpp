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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "test_util.hpp"
#include "twinlab/measurement.hpp"

using namespace twinlab;
using namespace twinlab::testing;

namespace {

DiscreteObservable qubit_z() {
    return DiscreteObservable{
        {{1.0, EventProjector{qubit_up()}}, {-1.0, EventProjector{qubit_down()}}}};
}

StateVector plus_state() {
    Vector v(2);
    v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    return StateVector(v);
}

} // namespace

TEST_CASE("the qubit controlled-shift premeasurement is calibrated") {
    MeasurementScheme scheme = build_nondemolition_premeasurement(qubit_z(), 2, {0.0, 1.0});
    CHECK(check_calibration(scheme).pass);
    CHECK(check_nondemolition(scheme).pass);

    // Eigenbasis action: |0>|ready> -> |0>|b0>, |1>|ready> -> |1>|b1>.
    Vector f0 = scheme.final_state(StateVector::basis(2, 0)).vec();
    CHECK((f0 - kron(StateVector::basis(2, 0).vec(), StateVector::basis(2, 0).vec())).norm() <=
          1e-12);
    Vector f1 = scheme.final_state(StateVector::basis(2, 1)).vec();
    CHECK((f1 - kron(StateVector::basis(2, 1).vec(), StateVector::basis(2, 1).vec())).norm() <=
          1e-12);

    // A superposition entangles object and pointer.
    Vector fp = scheme.final_state(plus_state()).vec();
    Vector bell(4);
    bell << 1.0 / std::sqrt(2.0), 0.0, 0.0, 1.0 / std::sqrt(2.0);
    CHECK((fp - bell).norm() <= 1e-12);
}

TEST_CASE("a single-branch observable leaves the pointer at rest") {
    DiscreteObservable trivial{{{1.0, EventProjector::identity(3)}}};
    MeasurementScheme scheme = build_nondemolition_premeasurement(trivial, 2, {0.0});
    CHECK(check_calibration(scheme).pass);
    StateVector psi_a = random_state(3, 5);
    Vector expected = kron(psi_a.vec(), StateVector::basis(2, 0).vec());
    CHECK((scheme.final_state(psi_a).vec() - expected).norm() <= 1e-12);
}

TEST_CASE("three-branch calibration passes for every eigenbasis input") {
    Rng rng(7);
    DiscreteObservable measured = random_observable(3, 3, rng);
    MeasurementScheme scheme = build_nondemolition_premeasurement(measured, 3, {0.0, 1.0, 2.0});
    MeasurementVerdict v = check_calibration(scheme);
    CHECK(v.pass);
    CHECK(v.branches.size() == 3);
    CHECK(v.max_residual <= 1e-12);
}

TEST_CASE("builder preconditions: instrument size and distinct pointer values") {
    DiscreteObservable measured = qubit_z();
    CHECK_THROWS_AS(build_nondemolition_premeasurement(measured, 1, {0.0, 1.0}),
                    PreconditionError);
    CHECK_THROWS_AS(build_nondemolition_premeasurement(measured, 2, {1.0, 1.0}),
                    PreconditionError);
    CHECK_THROWS_AS(build_nondemolition_premeasurement(measured, 2, {1.0}), PreconditionError);
}

TEST_CASE("demolition schemes register the result without preserving it") {
    MeasurementScheme scheme =
        build_demolition_premeasurement(qubit_z(), 2, {0.0, 1.0}, StateVector::basis(2, 0));
    CHECK(check_calibration(scheme).pass);
    MeasurementVerdict preservation = check_nondemolition(scheme);
    CHECK(!preservation.pass);

    // The object lands on the sink regardless of the measured branch.
    Vector f0 = scheme.final_state(StateVector::basis(2, 0)).vec();
    Vector f1 = scheme.final_state(StateVector::basis(2, 1)).vec();
    CHECK((f0 - kron(StateVector::basis(2, 0).vec(), StateVector::basis(2, 0).vec())).norm() <=
          1e-12);
    CHECK((f1 - kron(StateVector::basis(2, 0).vec(), StateVector::basis(2, 1).vec())).norm() <=
          1e-12);
}

TEST_CASE("single-branch demolition coincides with nondemolition") {
    DiscreteObservable trivial{{{1.0, EventProjector::identity(2)}}};
    MeasurementScheme scheme =
        build_demolition_premeasurement(trivial, 2, {0.0}, StateVector::basis(2, 0));
    CHECK(check_calibration(scheme).pass);
    CHECK(check_nondemolition(scheme).pass);
}

TEST_CASE("a pointer that never moves fails calibration") {
    DiscreteObservable measured = qubit_z();
    DiscreteObservable pointer{
        {{0.0, EventProjector{qubit_up()}}, {1.0, EventProjector{qubit_down()}}}};
    MeasurementScheme frozen(measured, pointer, StateVector::basis(2, 0),
                             UnitaryEvolution::identity(4), MeasurementKind::nondemolition);
    MeasurementVerdict v = check_calibration(frozen);
    CHECK(!v.pass);
}

TEST_CASE("probability reproducibility on eigenstates and superpositions") {
    MeasurementScheme scheme = build_nondemolition_premeasurement(qubit_z(), 2, {0.0, 1.0});

    MeasurementVerdict eigen = check_probability_reproducibility(scheme, StateVector::basis(2, 0));
    CHECK(eigen.pass);
    CHECK(eigen.max_residual <= 1e-12);

    Vector fp = scheme.final_state(plus_state()).vec();
    Matrix pointer_up = kron(Matrix::Identity(2, 2), qubit_up());
    CHECK((pointer_up * fp).squaredNorm() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(check_probability_reproducibility(scheme, plus_state()).pass);
}

TEST_CASE("probability reproducibility over random inputs of a 3-branch scheme") {
    Rng rng(11);
    DiscreteObservable measured = random_observable(4, 3, rng);
    MeasurementScheme scheme = build_nondemolition_premeasurement(measured, 3, {0.0, 1.0, 2.0});
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        MeasurementVerdict v = check_probability_reproducibility(scheme, random_state(4, rng));
        CHECK(v.pass);
        worst = std::max(worst, v.max_residual);
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("the sharp-pointer part of the final state is the evolved sharp branch") {
    MeasurementScheme scheme = build_nondemolition_premeasurement(qubit_z(), 2, {0.0, 1.0});

    // Eigenstate input: the single positive branch reproduces the final state.
    BranchRelationVerdict eigen = check_branch_relation(scheme, StateVector::basis(2, 0));
    CHECK(eigen.pass);
    REQUIRE(eigen.state_match.size() == 1);
    CHECK(eigen.state_match[0].residual <= 1e-12);

    BranchRelationVerdict super = check_branch_relation(scheme, plus_state());
    CHECK(super.pass);
    CHECK(super.state_match.size() == 2);
    CHECK(super.norm_match.size() == 2);

    MeasurementScheme demolition =
        build_demolition_premeasurement(qubit_z(), 2, {0.0, 1.0}, StateVector::basis(2, 0));
    CHECK(check_branch_relation(demolition, plus_state()).pass);
}

TEST_CASE("measured and pointer observables are delayed twins") {
    Rng rng(13);
    MeasurementScheme scheme = build_nondemolition_premeasurement(qubit_z(), 2, {0.0, 1.0});
    for (int i = 0; i < 10; ++i) {
        CHECK(measured_pointer_delayed_twins(scheme, random_state(2, rng)).is_twin);
    }
    MeasurementScheme demolition =
        build_demolition_premeasurement(qubit_z(), 2, {0.0, 1.0}, StateVector::basis(2, 0));
    CHECK(measured_pointer_delayed_twins(demolition, random_state(2, rng)).is_twin);

    // A scheme that does nothing is not a measurement of a superposition.
    DiscreteObservable pointer{
        {{0.0, EventProjector{qubit_up()}}, {1.0, EventProjector{qubit_down()}}}};
    MeasurementScheme frozen(qubit_z(), pointer, StateVector::basis(2, 0),
                             UnitaryEvolution::identity(4), MeasurementKind::nondemolition);
    CHECK(!measured_pointer_delayed_twins(frozen, plus_state()).is_twin);
}

TEST_CASE("calibration implies delayed twins for every object state") {
    Rng rng(17);
    for (int branches = 2; branches <= 4; ++branches) {
        int dim_a = branches;
        DiscreteObservable measured = random_observable(dim_a, branches, rng);
        std::vector<double> values;
        for (int k = 0; k < branches; ++k) {
            values.push_back(static_cast<double>(k));
        }
        MeasurementScheme scheme =
            build_nondemolition_premeasurement(measured, branches, values);
        REQUIRE(check_calibration(scheme).pass);
        for (int i = 0; i < 50; ++i) {
            CHECK(measured_pointer_delayed_twins(scheme, random_state(dim_a, rng)).is_twin);
        }
    }
}

TEST_CASE("reproducibility agrees with the delayed-twin matched probabilities") {
    Rng rng(19);
    DiscreteObservable measured = random_observable(3, 3, rng);
    MeasurementScheme scheme = build_nondemolition_premeasurement(measured, 3, {0.0, 1.0, 2.0});
    StateVector psi_a = random_state(3, rng);
    MeasurementVerdict repro = check_probability_reproducibility(scheme, psi_a);
    EigenMatching matching =
        match_eigenprojectors_delayed(scheme.measured_extended(), scheme.pointer_extended(),
                                      scheme.initial_state(psi_a), scheme.premeasurement());
    CHECK(repro.pass);
    for (const auto &pair : matching.pairs) {
        CHECK(std::abs(pair.probability_left - pair.probability_right) <= 1e-9);
    }
}

TEST_CASE("delayed twins in one state do not make a measurement") {
    // The do-nothing unitary leaves measured and pointer observables delayed
    // twins for a branch-certain object state, yet calibration fails on the
    // other eigenbasis input.
    Rng rng(23);
    for (std::uint64_t seed = 100; seed < 105; ++seed) {
        DiscreteObservable measured = random_observable(2, 2, seed);
        DiscreteObservable pointer{
            {{0.0, EventProjector{qubit_up()}}, {1.0, EventProjector{qubit_down()}}}};
        MeasurementScheme frozen(measured, pointer, StateVector::basis(2, 0),
                                 UnitaryEvolution::identity(4), MeasurementKind::nondemolition);
        // Branch 0's eigenstate: only the idle pointer branch has probability.
        Vector eigen = measured.branch(0).projector.range_basis().col(0);
        CHECK(measured_pointer_delayed_twins(frozen, StateVector{eigen}).is_twin);
        CHECK(!check_calibration(frozen).pass);
    }
}

TEST_CASE("theorem 6 holds for a premeasurement on a 2x3 composite") {
    MeasurementScheme scheme = build_nondemolition_premeasurement(qubit_z(), 3, {0.0, 1.0});
    StateVector psi_a = plus_state();
    TwinVerdict v = verify_theorem6(scheme.measured_extended(), scheme.pointer_extended(),
                                    scheme.initial_state(psi_a), scheme.premeasurement());
    CHECK(v.is_twin);
    CHECK(condition_set_holds(v, "(i)"));
    CHECK(condition_set_holds(v, "(ii)"));
}

TEST_CASE("a three-system chain: object to pointer to observer") {
    // The object observable is read by a pointer, whose record is in turn
    // read by a second instrument; the first and third observables are
    // delayed twins across the composed interval.
    Rng rng(29);
    DiscreteObservable object_obs = random_observable(2, 2, rng);
    MeasurementScheme first = build_nondemolition_premeasurement(object_obs, 2, {0.0, 1.0});
    MeasurementScheme second =
        build_nondemolition_premeasurement(first.pointer(), 2, {0.0, 1.0});

    EventProjector id2 = EventProjector::identity(2);
    UnitaryEvolution u1 =
        tensor(first.premeasurement(), UnitaryEvolution::identity(2)); // acts on A,B
    UnitaryEvolution u2 = tensor(UnitaryEvolution::identity(2), second.premeasurement()); // B,C

    auto extend = [&](const DiscreteObservable &obs, int position) {
        std::vector<ObservableBranch> branches;
        for (const auto &b : obs.branches()) {
            EventProjector grown =
                position == 0 ? tensor(tensor(b.projector, id2), id2)
                : position == 1 ? tensor(tensor(id2, b.projector), id2)
                                : tensor(tensor(id2, id2), b.projector);
            branches.push_back({b.value, grown});
        }
        return DiscreteObservable{branches};
    };
    DiscreteObservable on_object = extend(object_obs, 0);
    DiscreteObservable on_pointer = extend(first.pointer(), 1);
    DiscreteObservable on_observer = extend(second.pointer(), 2);

    StateVector psi0 = tensor(tensor(random_state(2, rng), first.pointer_init()),
                              second.pointer_init());
    TwinVerdict link1 = is_delayed_twin_observables(on_object, on_pointer, psi0, u1);
    REQUIRE(link1.is_twin);
    TwinVerdict composed = chain(on_object, on_pointer, on_observer, psi0, u1, u2);
    CHECK(composed.is_twin);
    CHECK(composed.residual <= 2e-9);
}

TEST_CASE("scheme constructor rejects mismatched branch counts") {
    DiscreteObservable pointer3{{{0.0, EventProjector{(Matrix(3, 3) << 1, 0, 0, 0, 1, 0, 0, 0, 0)
                                                          .finished()}},
                                 {1.0, EventProjector{(Matrix(3, 3) << 0, 0, 0, 0, 0, 0, 0, 0, 1)
                                                          .finished()}}}};
    DiscreteObservable trivial{{{1.0, EventProjector::identity(2)}}};
    CHECK_THROWS_AS(MeasurementScheme(trivial, pointer3, StateVector::basis(3, 0),
                                      UnitaryEvolution::identity(6),
                                      MeasurementKind::nondemolition),
                    ValidationError);
}
