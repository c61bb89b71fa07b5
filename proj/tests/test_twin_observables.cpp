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
#include "twinlab/twin_observables.hpp"

using namespace twinlab;
using namespace twinlab::testing;

namespace {

DiscreteObservable spin_z_a() {
    return DiscreteObservable{{{0.5, EventProjector{kron(qubit_up(), Matrix::Identity(2, 2))}},
                               {-0.5, EventProjector{kron(qubit_down(), Matrix::Identity(2, 2))}}}};
}

DiscreteObservable minus_spin_z_b() {
    return DiscreteObservable{{{0.5, EventProjector{kron(Matrix::Identity(2, 2), qubit_down())}},
                               {-0.5, EventProjector{kron(Matrix::Identity(2, 2), qubit_up())}}}};
}

} // namespace

TEST_CASE("matching an observable against itself pairs every positive branch") {
    Rng rng(3);
    StateVector psi = random_state(6, rng);
    DiscreteObservable obs = random_observable(6, 3, rng);
    EigenMatching matching = match_eigenprojectors(obs, obs, psi);
    CHECK(matching.complete());
    for (const auto &pair : matching.pairs) {
        CHECK(pair.left_index == pair.right_index);
        CHECK(pair.residual <= 1e-12);
        CHECK(std::abs(pair.probability_left - pair.probability_right) <= 1e-12);
    }
}

TEST_CASE("the singlet's spin observables match branchwise with probability one half") {
    EigenMatching matching = match_eigenprojectors(spin_z_a(), minus_spin_z_b(), singlet());
    CHECK(matching.complete());
    REQUIRE(matching.pairs.size() == 2);
    for (const auto &pair : matching.pairs) {
        CHECK(pair.probability_left == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(pair.probability_right == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(pair.residual <= 1e-12);
    }
}

TEST_CASE("zero-probability branches do not take part in the matching") {
    // In |0> only the up branch of the binary observable has probability.
    DiscreteObservable binary = DiscreteObservable::binary(EventProjector{qubit_up()});
    EigenMatching matching = match_eigenprojectors(binary, binary, StateVector::basis(2, 0));
    CHECK(matching.complete());
    REQUIRE(matching.pairs.size() == 1);
    CHECK(matching.pairs[0].probability_left == doctest::Approx(1.0));
}

TEST_CASE("the singlet observables are twins") {
    TwinVerdict v = is_twin_observables(spin_z_a(), minus_spin_z_b(), singlet());
    CHECK(v.is_twin);
    CHECK(v.residual <= 1e-12);
}

TEST_CASE("z and x spin observables on |0> are not twins") {
    Matrix sx = Matrix::Zero(2, 2);
    sx(0, 1) = 1.0;
    sx(1, 0) = 1.0;
    DiscreteObservable z{{{1.0, EventProjector{qubit_up()}}, {-1.0, EventProjector{qubit_down()}}}};
    DiscreteObservable x = spectral_decompose(sx, 1e-8);
    TwinVerdict v = is_twin_observables(z, x, StateVector::basis(2, 0));
    CHECK(!v.is_twin);
}

TEST_CASE("relabeling eigenvalues does not change the twin verdict") {
    Rng rng(7);
    StateVector psi = random_state(5, rng);
    DiscreteObservable obs = random_observable(5, 3, rng);
    std::vector<ObservableBranch> relabeled;
    for (const auto &b : obs.branches()) {
        relabeled.push_back({b.value * 7.5 - 3.0, b.projector});
    }
    TwinVerdict v = is_twin_observables(obs, DiscreteObservable{relabeled}, psi);
    CHECK(v.is_twin);
    CHECK(v.residual <= 1e-12);

    // Remark on binary observables: 1E + 0E^c versus any o1 E + o2 E^c.
    EventProjector e = random_projector(5, 2, rng);
    DiscreteObservable canonical = DiscreteObservable::binary(e);
    DiscreteObservable shifted = DiscreteObservable::binary(e, 4.25, -1.5);
    CHECK(is_twin_observables(canonical, shifted, psi).is_twin);
}

TEST_CASE("corollary 1 holds on the singlet") {
    TwinVerdict v = verify_corollary1(spin_z_a(), minus_spin_z_b(), singlet());
    CHECK(v.is_twin);
    CHECK(condition_set_holds(v, "(i)"));
    CHECK(condition_set_holds(v, "(ii)"));
}

TEST_CASE("corollary 1 holds on constructed twins at dimension 9") {
    Rng rng(11);
    StateVector psi = random_state(9, rng);
    DiscreteObservable obs = random_observable(9, 3, rng);
    DiscreteObservable twin = sample_twin_observable(obs, psi, rng);
    TwinVerdict def = is_twin_observables(obs, twin, psi);
    CHECK(def.is_twin);
    TwinVerdict v = verify_corollary1(obs, twin, psi);
    CHECK(condition_set_holds(v, "(i)"));
    CHECK(condition_set_holds(v, "(ii)"));
}

TEST_CASE("corollary 1 certainty set fails for z versus x on |0>") {
    Matrix sx = Matrix::Zero(2, 2);
    sx(0, 1) = 1.0;
    sx(1, 0) = 1.0;
    DiscreteObservable z{{{1.0, EventProjector{qubit_up()}}, {-1.0, EventProjector{qubit_down()}}}};
    DiscreteObservable x = spectral_decompose(sx, 1e-8);
    TwinVerdict v = verify_corollary1(z, x, StateVector::basis(2, 0));
    CHECK(!v.is_twin);
    CHECK(!condition_set_holds(v, "(ii)"));
    CHECK(!condition_set_holds(v, "(i)"));
}

TEST_CASE("matched branches have unique partners") {
    Rng rng(13);
    for (int i = 0; i < 30; ++i) {
        StateVector psi = random_state(8, rng);
        DiscreteObservable left = random_observable(8, rng.uniform_int(2, 4), rng);
        DiscreteObservable right = (i % 2 == 0) ? sample_twin_observable(left, psi, rng)
                                                : random_observable(8, rng.uniform_int(2, 4), rng);
        EigenMatching matching = match_eigenprojectors(left, right, psi);
        std::vector<bool> left_seen(static_cast<size_t>(left.branch_count()), false);
        std::vector<bool> right_seen(static_cast<size_t>(right.branch_count()), false);
        for (const auto &pair : matching.pairs) {
            CHECK(!left_seen[static_cast<size_t>(pair.left_index)]);
            CHECK(!right_seen[static_cast<size_t>(pair.right_index)]);
            left_seen[static_cast<size_t>(pair.left_index)] = true;
            right_seen[static_cast<size_t>(pair.right_index)] = true;
        }
    }
}

TEST_CASE("matched probabilities sum to one for twin observables") {
    Rng rng(17);
    for (int i = 0; i < 20; ++i) {
        StateVector psi = random_state(7, rng);
        DiscreteObservable obs = random_observable(7, rng.uniform_int(2, 4), rng);
        DiscreteObservable twin = sample_twin_observable(obs, psi, rng);
        EigenMatching matching = match_eigenprojectors(obs, twin, psi);
        REQUIRE(matching.complete());
        double total = 0.0;
        for (const auto &pair : matching.pairs) {
            total += pair.probability_left;
            CHECK(std::abs(pair.probability_left - pair.probability_right) <= 1e-9);
        }
        CHECK(std::abs(total - 1.0) <= 1e-9);
    }
}

TEST_CASE("definition and corollary verdicts agree over a mixed sweep") {
    Rng rng(19);
    for (int dim : {4, 8, 16}) {
        for (int i = 0; i < 40; ++i) {
            StateVector psi = random_state(dim, rng);
            DiscreteObservable left = random_observable(dim, rng.uniform_int(2, 4), rng);
            DiscreteObservable right = (i % 2 == 0)
                                           ? sample_twin_observable(left, psi, rng)
                                           : random_observable(dim, rng.uniform_int(2, 4), rng);
            TwinVerdict def = is_twin_observables(left, right, psi);
            if (i % 2 == 0) {
                CHECK(def.is_twin);
            }
            TwinVerdict c1 = verify_corollary1(left, right, psi);
            CHECK(condition_set_holds(c1, "(i)") == def.is_twin);
            CHECK(condition_set_holds(c1, "(ii)") == def.is_twin);
        }
    }
}

TEST_CASE("observables with different positive branch counts are not twins") {
    Rng rng(23);
    StateVector psi = random_state(6, rng);
    DiscreteObservable two = random_observable(6, 2, rng);
    DiscreteObservable three = random_observable(6, 3, rng);
    EigenMatching matching = match_eigenprojectors(two, three, psi);
    CHECK(!matching.complete());
    CHECK(!is_twin_observables(two, three, psi).is_twin);
}
