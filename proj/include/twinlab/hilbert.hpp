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
#include <optional>

#include "twinlab/rng.hpp"
#include "twinlab/types.hpp"

namespace twinlab {

/// Outcome of a selective ideal (Lüders) measurement of an event.
struct CollapseResult {
    /// <psi|E|psi> = ||E psi||^2.
    double probability = 0.0;
    /// Collapsed state E psi / ||E psi||; absent when the probability is
    /// below the zero cutoff.
    std::optional<StateVector> post;
};

/// Ideal occurrence of `event` in `psi`: probability and collapsed state.
CollapseResult luders_collapse(const StateVector &psi, const EventProjector &event,
                               const Tolerances &tol = {});

struct CoherentComponent {
    /// ||E psi|| (respectively ||E^c psi||); the amplitude, not the probability.
    double weight = 0.0;
    std::optional<StateVector> state;
};

/// psi split into its two coherent components with sharp value 1 / 0 of the
/// binary observable 1*E + 0*E^c. Satisfies
/// psi = inside.weight * inside.state + outside.weight * outside.state.
struct CoherentDecomposition {
    CoherentComponent inside;
    CoherentComponent outside;
};

CoherentDecomposition coherent_decompose(const StateVector &psi, const EventProjector &event,
                                         const Tolerances &tol = {});

/// Spectral form of a Hermitian matrix. Raw eigenvalues closer than
/// `cluster_tol` are merged (transitively, by sorted gaps) into one branch.
DiscreteObservable spectral_decompose(const Matrix &hermitian, double cluster_tol,
                                      const Tolerances &tol = {});

/// Kronecker composites. Row-major index convention throughout:
/// composite index = index_A * dim_B + index_B.
Matrix kron(const Matrix &a, const Matrix &b);
Vector kron(const Vector &a, const Vector &b);
StateVector tensor(const StateVector &a, const StateVector &b, const Tolerances &tol = {});
EventProjector tensor(const EventProjector &a, const EventProjector &b, const Tolerances &tol = {});
UnitaryEvolution tensor(const UnitaryEvolution &a, const UnitaryEvolution &b,
                        const Tolerances &tol = {});

enum class Subsystem { A, B };

/// Reduced density matrix of a bipartite density matrix (dim_a * dim_b total).
/// Validates that rho is Hermitian, unit trace and positive semidefinite
/// within tolerance.
Matrix partial_trace(const Matrix &rho, int dim_a, int dim_b, Subsystem keep,
                     const Tolerances &tol = {});

/// Haar-distributed random unitary: QR orthonormalization of a complex
/// standard-gaussian matrix with phase-normalized diagonal. Deterministic for
/// a fixed seed.
UnitaryEvolution haar_unitary(int dim, std::uint64_t seed);
UnitaryEvolution haar_unitary(int dim, Rng &rng);

/// Projector onto the span of `rank` Haar-random orthonormal vectors.
EventProjector random_projector(int dim, int rank, std::uint64_t seed);
EventProjector random_projector(int dim, int rank, Rng &rng);

/// Haar-random unit vector.
StateVector random_state(int dim, std::uint64_t seed);
StateVector random_state(int dim, Rng &rng);

/// Literal vector equality ||u - v|| <= tol.op. Twin relations are literal
/// equalities, so this is the default comparison.
bool vectors_equal(const Vector &u, const Vector &v, const Tolerances &tol = {});
bool states_equal(const StateVector &u, const StateVector &v, const Tolerances &tol = {});

/// Equality up to a global phase: min over phases of ||u - e^{i a} v||.
/// Offered as a separate, explicitly labeled mode; no twin check uses it.
bool states_equal_up_to_phase(const StateVector &u, const StateVector &v,
                              const Tolerances &tol = {});

/// Extends `orthonormal_columns` (dim x k, k orthonormal columns) to a full
/// basis; returns the dim x (dim - k) complement. Deterministic: sweeps the
/// canonical basis in order and Gram-Schmidts.
Matrix complete_orthonormal_basis(const Matrix &orthonormal_columns, int dim);

/// Orthonormal basis of the column span of `columns` (columns need not be
/// orthonormal or independent). Deterministic.
Matrix orthonormal_span(const Matrix &columns);

} // namespace twinlab
