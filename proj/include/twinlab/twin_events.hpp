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

#include "twinlab/hilbert.hpp"
#include "twinlab/types.hpp"
#include "twinlab/verdict.hpp"

namespace twinlab {

/// An event is certain (probability one) in a state exactly when the state is
/// invariant under it: phi = E phi.
bool is_certain(const EventProjector &event, const StateVector &phi, const Tolerances &tol = {});

/// Simultaneous twin events: E and F act equally on psi, E psi = F psi.
/// When both events act as zero on psi the pair is reported as twins with the
/// `degenerate` flag set, so callers can filter the irrelevant extreme.
TwinVerdict is_twin(const EventProjector &e, const EventProjector &f, const StateVector &psi,
                    const Tolerances &tol = {});

/// Theorem 1: twin-ness is equivalent to (i) the opposite events being twins,
/// and to (ii)(a) equal probabilities plus (ii)(b) the same collapsed state
/// at positive probability. Condition entries: "(i)", "(ii)(a)", "(ii)(b)".
TwinVerdict verify_theorem1(const EventProjector &e, const EventProjector &f,
                            const StateVector &psi, const Tolerances &tol = {});

/// Theorem 2 (both events must have positive probability in psi): twin-ness is
/// equivalent to (i)(a) F certain after E collapses, (i)(b) vice versa,
/// (i)(c) E and F commuting on psi; and to (ii)(a) = (i)(a) plus (ii)(b) the
/// same certainty statement for the opposite events. Condition entries:
/// "(i)(a)", "(i)(b)", "(i)(c)", "(ii)(a)", "(ii)(b)".
/// Throws PreconditionError when either probability is below the zero cutoff.
TwinVerdict verify_theorem2(const EventProjector &e, const EventProjector &f,
                            const StateVector &psi, const Tolerances &tol = {});

/// Minimal element of the twin class of E in psi: the rank-one projector onto
/// the direction of E psi, or the zero projector when E psi = 0. It is a
/// subprojector of every member of the class.
EventProjector minimal_twin(const EventProjector &e, const StateVector &psi,
                            const Tolerances &tol = {});

/// Structure of the twin class [E] in psi: every member is
/// minimal + (projector orthogonal to both the minimal element and psi).
struct TwinClassDescriptor {
    EventProjector minimal;
    /// Orthonormal basis of span(range(minimal) + {psi}); members' extra parts
    /// live in the orthogonal complement of these columns.
    Matrix forbidden_subspace;
    int ambient_dim = 0;

    /// Largest extra rank a sampled member may carry.
    int max_extra_rank() const { return ambient_dim - minimal.rank() - 1; }
};

TwinClassDescriptor twin_class(const EventProjector &e, const StateVector &psi,
                               const Tolerances &tol = {});

/// Residuals of the structural decomposition candidate = minimal + D.
struct ClassStructure {
    bool member = false;
    double definition_residual = 0.0;
    /// ||D^2 - D||_F for D = candidate - minimal.
    double projector_residual = 0.0;
    /// ||D psi||.
    double state_orthogonality = 0.0;
    /// ||D * minimal||_F.
    double minimal_orthogonality = 0.0;
    /// ||candidate * minimal - minimal||_F (the minimal element is a
    /// subprojector of every member).
    double minimality_residual = 0.0;
    bool structure_ok = false;
};

ClassStructure class_structure(const EventProjector &candidate, const EventProjector &e,
                               const StateVector &psi, const Tolerances &tol = {});

/// Twin-class membership. For members, the structural decomposition is also
/// verified; a member failing it indicates an internal inconsistency and
/// raises ValidationError.
bool in_class(const EventProjector &candidate, const EventProjector &e, const StateVector &psi,
              const Tolerances &tol = {});

/// Random member of the twin class of E in psi: minimal element plus a seeded
/// random projector of rank `extra_rank` inside the orthogonal complement of
/// the forbidden subspace. Throws PreconditionError when `extra_rank` exceeds
/// max_extra_rank().
EventProjector sample_twin(const EventProjector &e, const StateVector &psi, int extra_rank,
                           std::uint64_t seed, const Tolerances &tol = {});
EventProjector sample_twin(const EventProjector &e, const StateVector &psi, int extra_rank,
                           Rng &rng, const Tolerances &tol = {});

} // namespace twinlab
