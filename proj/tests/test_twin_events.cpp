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
#include "twinlab/twin_events.hpp"

using namespace twinlab;
using namespace twinlab::testing;

namespace {

StateVector plus_state() {
    Vector v(2);
    v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    return StateVector(v);
}

} // namespace

TEST_CASE("an event is certain exactly when it leaves the state fixed") {
    StateVector any = random_state(4, 2);
    CHECK(is_certain(EventProjector::identity(4), any));

    EventProjector up{qubit_up()};
    CHECK(!is_certain(up, StateVector::basis(2, 1)));
    CHECK(is_certain(up, StateVector::basis(2, 0)));
    // Certainty and probability one go together.
    CHECK(luders_collapse(StateVector::basis(2, 0), up).probability ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("certainty matches probability one on constructed families") {
    Rng rng(13);
    for (int i = 0; i < 30; ++i) {
        EventProjector e = random_projector(6, rng.uniform_int(1, 5), rng);
        // A state inside the range is certain; a generic one is not.
        Vector coeff(e.rank());
        for (int k = 0; k < e.rank(); ++k) {
            coeff(k) = rng.complex_gaussian();
        }
        StateVector inside = StateVector::normalized(e.range_basis() * coeff);
        CHECK(is_certain(e, inside));
        CHECK(std::abs(luders_collapse(inside, e).probability - 1.0) <= 1e-9);

        StateVector generic = random_state(6, rng);
        double p = luders_collapse(generic, e).probability;
        CHECK(is_certain(e, generic) == (p >= 1.0 - 1e-9));
    }
}

TEST_CASE("every projector is its own twin") {
    Rng rng(17);
    StateVector psi = random_state(5, rng);
    EventProjector e = random_projector(5, 2, rng);
    TwinVerdict v = is_twin(e, e, psi);
    CHECK(v.is_twin);
    CHECK(v.residual == 0.0);
}

TEST_CASE("the singlet's one-side-up and other-side-down events are twins") {
    EventProjector up_a{kron(qubit_up(), Matrix::Identity(2, 2))};
    EventProjector down_b{kron(Matrix::Identity(2, 2), qubit_down())};
    TwinVerdict v = is_twin(up_a, down_b, singlet());
    CHECK(v.is_twin);
    CHECK(v.residual <= 1e-12);
    CHECK(!v.degenerate);
}

TEST_CASE("events that both nullify the state are degenerate twins") {
    StateVector psi = StateVector::basis(4, 0);
    Matrix p2 = Matrix::Zero(4, 4);
    p2(2, 2) = 1.0;
    Matrix p3 = Matrix::Zero(4, 4);
    p3(3, 3) = 1.0;
    TwinVerdict v = is_twin(EventProjector{p2}, EventProjector{p3}, psi);
    CHECK(v.is_twin);
    CHECK(v.degenerate);
}

TEST_CASE("dimension mismatches are rejected") {
    CHECK_THROWS_AS(is_twin(EventProjector::identity(2), EventProjector::identity(3),
                            StateVector::basis(2, 0)),
                    DimensionError);
    CHECK_THROWS_AS(is_certain(EventProjector::identity(3), StateVector::basis(2, 0)),
                    DimensionError);
    CHECK_THROWS_AS(minimal_twin(EventProjector::identity(3), StateVector::basis(2, 0)),
                    DimensionError);
}

TEST_CASE("theorem 1 holds on constructed twins and rejects near misses") {
    Rng rng(29);
    for (int i = 0; i < 25; ++i) {
        StateVector psi = random_state(6, rng);
        EventProjector e = random_projector(6, rng.uniform_int(0, 6), rng);
        int room = twin_class(e, psi).max_extra_rank();
        EventProjector f = sample_twin(e, psi, rng.uniform_int(0, room), rng);
        TwinVerdict v = verify_theorem1(e, f, psi);
        CHECK(v.is_twin);
        CHECK(condition_set_holds(v, "(i)"));
        CHECK(condition_set_holds(v, "(ii)"));
    }
}

TEST_CASE("equal probabilities alone do not make twins") {
    // Both events have probability 1/2 in (|0>+|1>)/sqrt(2) but collapse to
    // different states.
    TwinVerdict v = verify_theorem1(EventProjector{qubit_up()}, EventProjector{qubit_down()},
                                    plus_state());
    CHECK(!v.is_twin);
    CHECK(v.condition_holds("(ii)(a)"));
    CHECK(!v.condition_holds("(ii)(b)"));
    CHECK(!condition_set_holds(v, "(i)"));
}

TEST_CASE("theorem 1 conditions carry zero residual for identical events") {
    StateVector psi = random_state(3, 41);
    EventProjector e = random_projector(3, 2, 42);
    TwinVerdict v = verify_theorem1(e, e, psi);
    CHECK(v.is_twin);
    for (const auto &c : v.per_condition) {
        CHECK(c.holds);
        CHECK(c.residual <= 1e-14);
    }
}

TEST_CASE("theorem 2 on the singlet twins") {
    EventProjector up_a{kron(qubit_up(), Matrix::Identity(2, 2))};
    EventProjector down_b{kron(Matrix::Identity(2, 2), qubit_down())};
    TwinVerdict v = verify_theorem2(up_a, down_b, singlet());
    CHECK(v.is_twin);
    REQUIRE(v.per_condition.size() == 5);
    for (const auto &c : v.per_condition) {
        CHECK(c.holds);
    }
}

TEST_CASE("theorem 2 on a random constructed twin") {
    Rng rng(31);
    StateVector psi = random_state(6, rng);
    EventProjector e = random_projector(6, 3, rng);
    EventProjector f = sample_twin(e, psi, 1, rng);
    if (luders_collapse(psi, e).probability > 1e-12) {
        TwinVerdict v = verify_theorem2(e, f, psi);
        CHECK(v.is_twin);
        CHECK(condition_set_holds(v, "(i)"));
        CHECK(condition_set_holds(v, "(ii)"));
    }
}

TEST_CASE("theorem 2 rejects non-commuting certainty failures") {
    // E = |0><0|, F = |+x><+x| on psi = |0>: F is not certain after E occurs.
    Matrix plus_x = Matrix::Constant(2, 2, 0.5);
    TwinVerdict v =
        verify_theorem2(EventProjector{qubit_up()}, EventProjector{plus_x}, StateVector::basis(2, 0));
    CHECK(!v.is_twin);
    CHECK(!v.condition_holds("(i)(a)"));
}

TEST_CASE("theorem 2 requires positive probabilities") {
    CHECK_THROWS_AS(verify_theorem2(EventProjector{qubit_down()}, EventProjector{qubit_up()},
                                    StateVector::basis(2, 0)),
                    PreconditionError);
}

TEST_CASE("minimal twin of the identity is the state projector") {
    StateVector psi = random_state(5, 47);
    EventProjector minimal = minimal_twin(EventProjector::identity(5), psi);
    CHECK(minimal.rank() == 1);
    CHECK((minimal.matrix() - psi.vec() * psi.vec().adjoint()).norm() <= 1e-12);
}

TEST_CASE("minimal twin of a nullifying event is zero") {
    EventProjector down{qubit_down()};
    EventProjector minimal = minimal_twin(down, StateVector::basis(2, 0));
    CHECK(minimal.rank() == 0);
    CHECK(minimal.matrix().norm() == 0.0);
}

TEST_CASE("minimal twin on the singlet is the collapsed product direction") {
    EventProjector up_a{kron(qubit_up(), Matrix::Identity(2, 2))};
    EventProjector minimal = minimal_twin(up_a, singlet());
    Vector ud = StateVector::basis(4, 1).vec();
    CHECK((minimal.matrix() - ud * ud.adjoint()).norm() <= 1e-12);
}

TEST_CASE("class structure of the event itself and of the minimal element") {
    Rng rng(53);
    StateVector psi = random_state(6, rng);
    EventProjector e = random_projector(6, 3, rng);
    CHECK(in_class(e, e, psi));
    ClassStructure self = class_structure(e, e, psi);
    CHECK(self.structure_ok);

    EventProjector minimal = minimal_twin(e, psi);
    CHECK(in_class(minimal, e, psi));
    ClassStructure min_structure = class_structure(minimal, e, psi);
    CHECK(min_structure.projector_residual <= 1e-12); // D = 0 exactly
}

TEST_CASE("sampled class members pass membership for many seeds") {
    Rng rng(59);
    StateVector psi = random_state(8, rng);
    EventProjector e = random_projector(8, 4, rng);
    int room = twin_class(e, psi).max_extra_rank();
    EventProjector minimal = minimal_twin(e, psi);
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        EventProjector member = sample_twin(e, psi, static_cast<int>(seed) % (room + 1), seed);
        CHECK(in_class(member, e, psi));
        // The minimal element is a subprojector of every member.
        CHECK((member.matrix() * minimal.matrix() - minimal.matrix()).norm() <= 1e-9);
    }
}

TEST_CASE("sample_twin with no extra rank returns the minimal element") {
    StateVector psi = random_state(5, 61);
    EventProjector e = random_projector(5, 2, 62);
    EventProjector sampled = sample_twin(e, psi, 0, 63);
    CHECK((sampled.matrix() - minimal_twin(e, psi).matrix()).norm() <= 1e-12);
}

TEST_CASE("sample_twin builds higher-rank members on the singlet") {
    EventProjector up_a{kron(qubit_up(), Matrix::Identity(2, 2))};
    StateVector psi = singlet();
    EventProjector member = sample_twin(up_a, psi, 2, 7);
    CHECK(member.rank() == 3);
    CHECK(is_twin(member, up_a, psi).is_twin);
    CHECK_THROWS_AS(sample_twin(up_a, psi, 3, 7), PreconditionError);
}

TEST_CASE("twinhood is an equivalence relation on constructed families") {
    Rng rng(67);
    StateVector psi = random_state(7, rng);
    EventProjector e = random_projector(7, 3, rng);
    int room = twin_class(e, psi).max_extra_rank();
    std::vector<EventProjector> family;
    for (int i = 0; i < 6; ++i) {
        family.push_back(sample_twin(e, psi, rng.uniform_int(0, room), rng));
    }
    for (const auto &a : family) {
        CHECK(is_twin(a, a, psi).is_twin); // reflexive
        for (const auto &b : family) {
            TwinVerdict ab = is_twin(a, b, psi);
            TwinVerdict ba = is_twin(b, a, psi);
            CHECK(ab.is_twin);            // transitivity through e
            CHECK(ba.is_twin);            // symmetric
            CHECK(ab.residual == ba.residual);
        }
    }
}

TEST_CASE("structure test equals membership on random candidates") {
    Rng rng(71);
    for (int i = 0; i < 40; ++i) {
        StateVector psi = random_state(6, rng);
        EventProjector e = random_projector(6, rng.uniform_int(1, 6), rng);
        EventProjector candidate = random_projector(6, rng.uniform_int(0, 6), rng);
        ClassStructure s = class_structure(candidate, e, psi);
        CHECK(s.member == s.structure_ok);
    }
}

TEST_CASE("theorem 1 and 2 equivalence over a small mixed sweep") {
    Rng rng(73);
    for (int dim : {2, 3, 5}) {
        for (int i = 0; i < 60; ++i) {
            StateVector psi = random_state(dim, rng);
            EventProjector e = random_projector(dim, rng.uniform_int(0, dim), rng);
            EventProjector f =
                (i % 2 == 0)
                    ? sample_twin(e, psi, rng.uniform_int(0, twin_class(e, psi).max_extra_rank()),
                                  rng)
                    : random_projector(dim, rng.uniform_int(0, dim), rng);
            TwinVerdict def = is_twin(e, f, psi);
            TwinVerdict t1 = verify_theorem1(e, f, psi);
            CHECK(condition_set_holds(t1, "(i)") == def.is_twin);
            CHECK(condition_set_holds(t1, "(ii)") == def.is_twin);
            double p_e = luders_collapse(psi, e).probability;
            double p_f = luders_collapse(psi, f).probability;
            if (p_e > 1e-12 && p_f > 1e-12) {
                TwinVerdict t2 = verify_theorem2(e, f, psi);
                CHECK(condition_set_holds(t2, "(i)") == def.is_twin);
                CHECK(condition_set_holds(t2, "(ii)") == def.is_twin);
            }
        }
    }
}
