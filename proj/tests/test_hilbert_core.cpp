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
#include "twinlab/hilbert.hpp"

using namespace twinlab;
using namespace twinlab::testing;

TEST_CASE("type invariants are enforced on construction") {
    Vector bad = Vector::Ones(3); // norm sqrt(3)
    CHECK_THROWS_AS(StateVector{bad}, ValidationError);
    CHECK_NOTHROW(StateVector::normalized(bad));

    Matrix not_hermitian = Matrix::Zero(2, 2);
    not_hermitian(0, 1) = 1.0;
    CHECK_THROWS_AS(EventProjector{not_hermitian}, ValidationError);

    Matrix hermitian_not_idempotent = 0.5 * Matrix::Identity(2, 2);
    CHECK_THROWS_AS(EventProjector{hermitian_not_idempotent}, ValidationError);

    Matrix skew = Matrix::Identity(2, 2);
    skew(0, 0) = 2.0;
    CHECK_THROWS_AS(UnitaryEvolution{skew}, ValidationError);

    // Duplicate eigenvalues, overlapping projectors, incompleteness.
    EventProjector up{qubit_up()};
    EventProjector down{qubit_down()};
    CHECK_THROWS_AS(DiscreteObservable({{1.0, up}, {1.0, down}}), ValidationError);
    CHECK_THROWS_AS(DiscreteObservable({{1.0, up}, {2.0, up}}), ValidationError);
    CHECK_THROWS_AS(DiscreteObservable({{1.0, up}}), ValidationError);
    CHECK_NOTHROW(DiscreteObservable({{1.0, up}, {2.0, down}}));

    StateVector zero_state = StateVector::basis(2, 0);
    CHECK_THROWS_AS(MixedState({{0.7, zero_state}, {0.7, zero_state}}), ValidationError);
    CHECK_THROWS_AS(MixedState({{-0.5, zero_state}, {1.5, zero_state}}), ValidationError);
}

TEST_CASE("luders_collapse on the identity and zero events") {
    StateVector psi = random_state(5, 7);
    CollapseResult sure = luders_collapse(psi, EventProjector::identity(5));
    CHECK(sure.probability == doctest::Approx(1.0).epsilon(1e-12));
    REQUIRE(sure.post.has_value());
    CHECK((sure.post->vec() - psi.vec()).norm() <= 1e-12);

    CollapseResult never = luders_collapse(psi, EventProjector::zero(5));
    CHECK(never.probability <= 1e-15);
    CHECK(!never.post.has_value());
}

TEST_CASE("luders_collapse of the singlet through one side's up event") {
    StateVector psi = singlet();
    EventProjector up_a{kron(qubit_up(), Matrix::Identity(2, 2))};
    CollapseResult result = luders_collapse(psi, up_a);
    // Hand computation: E psi = (0, 1/sqrt(2), 0, 0), so probability 1/2 and
    // the collapsed state is the product basis vector |u d> (index 1).
    CHECK(result.probability == doctest::Approx(0.5).epsilon(1e-12));
    REQUIRE(result.post.has_value());
    CHECK((result.post->vec() - StateVector::basis(4, 1).vec()).norm() <= 1e-12);
}

TEST_CASE("collapse probability agrees with the expectation-value route") {
    Rng rng(11);
    for (int i = 0; i < 50; ++i) {
        StateVector psi = random_state(6, rng);
        EventProjector e = random_projector(6, rng.uniform_int(0, 6), rng);
        double via_norm = luders_collapse(psi, e).probability;
        double via_expectation = naive_expectation(e.matrix(), psi.vec());
        CHECK(std::abs(via_norm - via_expectation) <= 1e-12);
    }
}

TEST_CASE("coherent_decompose against the identity event") {
    StateVector psi = random_state(4, 3);
    CoherentDecomposition d = coherent_decompose(psi, EventProjector::identity(4));
    CHECK(d.inside.weight == doctest::Approx(1.0).epsilon(1e-12));
    REQUIRE(d.inside.state.has_value());
    CHECK(d.outside.weight <= 1e-12);
    CHECK(!d.outside.state.has_value());
}

TEST_CASE("coherent_decompose splits a superposition into its basis parts") {
    Vector plus(2);
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    StateVector psi{plus};
    CoherentDecomposition d = coherent_decompose(psi, EventProjector{qubit_up()});
    CHECK(d.inside.weight == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(d.outside.weight == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    REQUIRE(d.inside.state.has_value());
    REQUIRE(d.outside.state.has_value());
    CHECK((d.inside.state->vec() - StateVector::basis(2, 0).vec()).norm() <= 1e-12);
    CHECK((d.outside.state->vec() - StateVector::basis(2, 1).vec()).norm() <= 1e-12);
}

TEST_CASE("coherent_decompose reconstructs the state over random instances") {
    Rng rng(19);
    for (int i = 0; i < 100; ++i) {
        StateVector psi = random_state(8, rng);
        EventProjector e = random_projector(8, rng.uniform_int(0, 8), rng);
        CoherentDecomposition d = coherent_decompose(psi, e);
        Vector rebuilt = Vector::Zero(8);
        if (d.inside.state.has_value()) {
            rebuilt += d.inside.weight * d.inside.state->vec();
        }
        if (d.outside.state.has_value()) {
            rebuilt += d.outside.weight * d.outside.state->vec();
        }
        CHECK((rebuilt - psi.vec()).norm() <= 1e-9);
        // Pythagoras over the two coherent components.
        CHECK(std::abs(d.inside.weight * d.inside.weight +
                       d.outside.weight * d.outside.weight - 1.0) <= 1e-10);
    }
}

TEST_CASE("spectral_decompose of the identity yields one branch") {
    DiscreteObservable obs = spectral_decompose(Matrix::Identity(3, 3), 1e-8);
    REQUIRE(obs.branch_count() == 1);
    CHECK(obs.branch(0).value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK((obs.branch(0).projector.matrix() - Matrix::Identity(3, 3)).norm() <= 1e-12);
}

TEST_CASE("spectral_decompose merges a degenerate diagonal") {
    Matrix h = Matrix::Zero(3, 3);
    h(0, 0) = 1.0;
    h(1, 1) = 1.0;
    h(2, 2) = -1.0;
    DiscreteObservable obs = spectral_decompose(h, 1e-8);
    REQUIRE(obs.branch_count() == 2);
    // Ascending eigenvalue order: -1 first.
    CHECK(obs.branch(0).value == doctest::Approx(-1.0));
    CHECK(obs.branch(0).projector.rank() == 1);
    CHECK(obs.branch(1).value == doctest::Approx(1.0));
    CHECK(obs.branch(1).projector.rank() == 2);
    Matrix expected_minus = Matrix::Zero(3, 3);
    expected_minus(2, 2) = 1.0;
    CHECK((obs.branch(0).projector.matrix() - expected_minus).norm() <= 1e-12);
}

TEST_CASE("spectral_decompose of the z spin on a qubit") {
    Matrix sz = qubit_up() - qubit_down();
    DiscreteObservable obs = spectral_decompose(sz, 1e-8);
    REQUIRE(obs.branch_count() == 2);
    CHECK((obs.branch(1).projector.matrix() - qubit_up()).norm() <= 1e-12);
    CHECK((obs.branch(0).projector.matrix() - qubit_down()).norm() <= 1e-12);

    Matrix off = Matrix::Zero(2, 2);
    off(0, 1) = Complex(0.0, 1.0);
    CHECK_THROWS_AS(spectral_decompose(off, 1e-8), ValidationError);
}

TEST_CASE("eigenvalue clusters merge transitively and stay within the bound") {
    // Neighbors 0, 0.9e-8, 1.8e-8 each sit within the 1e-8 threshold, so the
    // whole chain collapses into one branch even though its ends are farther
    // apart than the threshold.
    Matrix h = Matrix::Zero(4, 4);
    h(1, 1) = 0.9e-8;
    h(2, 2) = 1.8e-8;
    h(3, 3) = 1.0;
    DiscreteObservable obs = spectral_decompose(h, 1e-8);
    REQUIRE(obs.branch_count() == 2);
    CHECK(obs.branch(0).projector.rank() == 3);
    CHECK((obs.to_matrix() - h).norm() <= 4 * 1e-8);
}

TEST_CASE("re-decomposing a reconstructed observable is stable") {
    Rng rng(23);
    for (int i = 0; i < 20; ++i) {
        UnitaryEvolution basis = haar_unitary(5, rng);
        Matrix h = Matrix::Zero(5, 5);
        // Three well-separated eigenvalues with multiplicities 2, 2, 1.
        double values[3] = {-1.5, 0.25, 2.0};
        int sizes[3] = {2, 2, 1};
        int col = 0;
        for (int b = 0; b < 3; ++b) {
            for (int k = 0; k < sizes[b]; ++k) {
                Vector v = basis.matrix().col(col++);
                h += values[b] * (v * v.adjoint());
            }
        }
        DiscreteObservable first = spectral_decompose(h, 1e-8);
        DiscreteObservable second = spectral_decompose(first.to_matrix(), 1e-8);
        REQUIRE(first.branch_count() == second.branch_count());
        for (int b = 0; b < first.branch_count(); ++b) {
            CHECK(std::abs(first.branch(b).value - second.branch(b).value) <= 1e-8);
            CHECK((first.branch(b).projector.matrix() - second.branch(b).projector.matrix())
                      .norm() <= 1e-8);
        }
    }
}

TEST_CASE("tensor products follow row-major composite indexing") {
    EventProjector i4 = tensor(EventProjector::identity(2), EventProjector::identity(2));
    CHECK((i4.matrix() - Matrix::Identity(4, 4)).norm() <= 1e-12);

    StateVector up_down = tensor(StateVector::basis(2, 0), StateVector::basis(2, 1));
    CHECK((up_down.vec() - StateVector::basis(4, 1).vec()).norm() == 0.0);

    // Library kron against the index-level definition.
    Rng rng(5);
    Matrix a(2, 2), b(3, 3);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) a(i, j) = rng.complex_gaussian();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) b(i, j) = rng.complex_gaussian();
    CHECK((kron(a, b) - naive_kron(a, b)).norm() <= 1e-12);

    EventProjector up_a = tensor(EventProjector{qubit_up()}, EventProjector::identity(2));
    CHECK(up_a.apply(singlet().vec()).squaredNorm() == doctest::Approx(0.5).epsilon(1e-12));

    UnitaryEvolution u = tensor(haar_unitary(2, 71), haar_unitary(3, 72));
    CHECK(u.dim() == 6);
}

TEST_CASE("partial_trace recovers the factors of a product state") {
    StateVector a = random_state(2, 31);
    StateVector b = random_state(3, 32);
    Matrix rho = kron(Matrix(a.vec() * a.vec().adjoint()), Matrix(b.vec() * b.vec().adjoint()));
    Matrix rho_a = partial_trace(rho, 2, 3, Subsystem::A);
    Matrix rho_b = partial_trace(rho, 2, 3, Subsystem::B);
    CHECK((rho_a - a.vec() * a.vec().adjoint()).norm() <= 1e-9);
    CHECK((rho_b - b.vec() * b.vec().adjoint()).norm() <= 1e-9);
}

TEST_CASE("partial_trace of the singlet is maximally mixed on both sides") {
    Vector psi = singlet().vec();
    Matrix rho = psi * psi.adjoint();
    CHECK((partial_trace(rho, 2, 2, Subsystem::A) - 0.5 * Matrix::Identity(2, 2)).norm() <= 1e-12);
    CHECK((partial_trace(rho, 2, 2, Subsystem::B) - 0.5 * Matrix::Identity(2, 2)).norm() <= 1e-12);
}

TEST_CASE("partial_trace preserves the trace on random bipartite states") {
    Rng rng(41);
    for (int i = 0; i < 50; ++i) {
        StateVector psi = random_state(12, rng);
        Matrix rho = psi.vec() * psi.vec().adjoint();
        Matrix reduced = partial_trace(rho, 3, 4, Subsystem::A);
        CHECK(std::abs(reduced.trace().real() - 1.0) <= 1e-9);
        CHECK(std::abs(reduced.trace().imag()) <= 1e-9);
    }
    Matrix not_density = 2.0 * Matrix::Identity(4, 4);
    CHECK_THROWS_AS(partial_trace(not_density, 2, 2, Subsystem::A), ValidationError);
}

TEST_CASE("haar_unitary determinism and unitarity") {
    UnitaryEvolution one = haar_unitary(1, 99);
    CHECK(std::abs(std::abs(one.matrix()(0, 0)) - 1.0) <= 1e-12);

    UnitaryEvolution u1 = haar_unitary(6, 1234);
    UnitaryEvolution u2 = haar_unitary(6, 1234);
    CHECK((u1.matrix() - u2.matrix()).norm() == 0.0);
    CHECK((haar_unitary(6, 1235).matrix() - u1.matrix()).norm() > 1e-3);

    Rng rng(77);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        UnitaryEvolution u = haar_unitary(16, rng);
        worst = std::max(worst,
                         (u.matrix().adjoint() * u.matrix() - Matrix::Identity(16, 16)).norm());
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("random_projector edge ranks and trace sweep") {
    CHECK(random_projector(5, 0, 1).matrix().norm() == 0.0);
    CHECK((random_projector(5, 5, 2).matrix() - Matrix::Identity(5, 5)).norm() <= 1e-9);
    CHECK_THROWS_AS(random_projector(5, 6, 3), ValidationError);
    CHECK_THROWS_AS(random_projector(5, -1, 3), ValidationError);

    Rng rng(53);
    for (int i = 0; i < 100; ++i) {
        int rank = rng.uniform_int(0, 7);
        EventProjector p = random_projector(7, rank, rng);
        CHECK(p.rank() == rank);
        CHECK(std::abs(p.matrix().trace().real() - rank) <= 1e-10);
    }
    CHECK((random_projector(7, 3, 420).matrix() - random_projector(7, 3, 420).matrix()).norm() ==
          0.0);
}

TEST_CASE("random_state determinism and normalization") {
    StateVector s1 = random_state(9, 1001);
    StateVector s2 = random_state(9, 1001);
    CHECK((s1.vec() - s2.vec()).norm() == 0.0);
    CHECK(std::abs(s1.vec().norm() - 1.0) <= 1e-12);
}

TEST_CASE("state equality modes: literal versus up-to-phase") {
    StateVector psi = random_state(4, 8);
    Vector rotated = std::exp(Complex(0.0, 0.4)) * psi.vec();
    StateVector phi{rotated};
    CHECK(!states_equal(psi, phi));
    CHECK(states_equal_up_to_phase(psi, phi));
    CHECK(states_equal(psi, psi));
}

TEST_CASE("assorted constructor edge paths") {
    CHECK_THROWS_AS(StateVector::basis(3, 3), ValidationError);
    CHECK_THROWS_AS(StateVector::basis(0, 0), ValidationError);

    // The binary observable of the identity has a single branch.
    DiscreteObservable certain = DiscreteObservable::binary(EventProjector::identity(3));
    CHECK(certain.branch_count() == 1);

    CHECK(tensor(EventProjector::zero(2), EventProjector::identity(2)).rank() == 0);

    Matrix not_orthonormal(2, 2);
    not_orthonormal << 1.0, 1.0, 0.0, 0.0;
    CHECK_THROWS_AS(EventProjector::span(not_orthonormal), ValidationError);

    CHECK_THROWS_AS(haar_unitary(3, 1) * haar_unitary(4, 1), DimensionError);
    CHECK_THROWS_AS(partial_trace(Matrix::Identity(6, 6) / 6.0, 4, 2, Subsystem::A),
                    DimensionError);

    UnitaryEvolution u = haar_unitary(4, 19);
    CHECK(((u.dagger() * u).matrix() - Matrix::Identity(4, 4)).norm() <= 1e-12);
}

TEST_CASE("complete_orthonormal_basis returns an exact complement") {
    Rng rng(61);
    Matrix cols = random_projector(6, 2, rng).range_basis();
    Matrix rest = complete_orthonormal_basis(cols, 6);
    REQUIRE(rest.cols() == 4);
    CHECK((rest.adjoint() * rest - Matrix::Identity(4, 4)).norm() <= 1e-12);
    CHECK((cols.adjoint() * rest).norm() <= 1e-12);
}
