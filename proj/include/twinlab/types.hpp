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

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "twinlab/tolerances.hpp"

namespace twinlab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Unit-norm vector in a finite-dimensional complex Hilbert space.
/// Immutable after construction; the constructor rejects non-unit input.
class StateVector {
  public:
    explicit StateVector(Vector amplitudes, const Tolerances &tol = {});

    /// Normalizes `raw` to unit length first. Throws ValidationError when the
    /// input is (numerically) the zero vector.
    static StateVector normalized(Vector raw, const Tolerances &tol = {});

    /// Computational basis vector e_index.
    static StateVector basis(int dim, int index);

    int dim() const { return static_cast<int>(amplitudes_.size()); }
    const Vector &vec() const { return amplitudes_; }

  private:
    Vector amplitudes_;
};

/// Event: a Hermitian idempotent matrix (orthogonal projector). The dense
/// matrix is canonical; an orthonormal basis of the range is cached on
/// construction for rank queries and subspace constructions.
class EventProjector {
  public:
    explicit EventProjector(Matrix matrix, const Tolerances &tol = {});

    static EventProjector zero(int dim);
    static EventProjector identity(int dim);
    /// Rank-one projector |v><v|.
    static EventProjector onto(const StateVector &v);
    /// Projector onto the span of orthonormal columns.
    static EventProjector span(const Matrix &orthonormal_columns, const Tolerances &tol = {});

    int dim() const { return static_cast<int>(matrix_.rows()); }
    int rank() const { return rank_; }
    const Matrix &matrix() const { return matrix_; }
    /// dim x rank matrix whose orthonormal columns span the range.
    const Matrix &range_basis() const { return range_basis_; }

    /// The opposite event I - E.
    EventProjector complement() const;

    Vector apply(const Vector &v) const { return matrix_ * v; }

  private:
    EventProjector() = default;

    Matrix matrix_;
    Matrix range_basis_;
    int rank_ = 0;
};

struct ObservableBranch {
    double value = 0.0;
    EventProjector projector;
};

/// Observable with purely discrete spectrum, kept in spectral form: distinct
/// real eigenvalues paired with mutually orthogonal eigenprojectors that sum
/// to the identity.
class DiscreteObservable {
  public:
    explicit DiscreteObservable(std::vector<ObservableBranch> branches, const Tolerances &tol = {});

    /// The binary observable on*E + off*E^c.
    static DiscreteObservable binary(const EventProjector &event, double on = 1.0,
                                     double off = 0.0, const Tolerances &tol = {});

    int dim() const { return branches_.front().projector.dim(); }
    int branch_count() const { return static_cast<int>(branches_.size()); }
    const std::vector<ObservableBranch> &branches() const { return branches_; }
    const ObservableBranch &branch(int k) const { return branches_.at(static_cast<size_t>(k)); }

    /// Dense matrix sum over branches of value * projector.
    Matrix to_matrix() const;

  private:
    std::vector<ObservableBranch> branches_;
};

/// Unitary evolution operator for a fixed time interval.
class UnitaryEvolution {
  public:
    explicit UnitaryEvolution(Matrix matrix, const Tolerances &tol = {});

    static UnitaryEvolution identity(int dim);

    int dim() const { return static_cast<int>(matrix_.rows()); }
    const Matrix &matrix() const { return matrix_; }

    /// Conjugate transpose; equals the inverse by unitarity (never computed
    /// by matrix inversion).
    UnitaryEvolution dagger() const;

    Vector apply(const Vector &v) const { return matrix_ * v; }
    StateVector apply(const StateVector &psi, const Tolerances &tol = {}) const;

    /// Transported projector U E U†.
    EventProjector transport(const EventProjector &event, const Tolerances &tol = {}) const;
    /// Branchwise transported observable (same eigenvalues).
    DiscreteObservable transport(const DiscreteObservable &obs, const Tolerances &tol = {}) const;

  private:
    Matrix matrix_;
};

/// Composition: (second * first) applies `first`, then `second`.
UnitaryEvolution operator*(const UnitaryEvolution &second, const UnitaryEvolution &first);

struct WeightedPure {
    double weight = 0.0;
    StateVector state;
};

/// Convex mixture of pure states. Weights are nonnegative and sum to one.
class MixedState {
  public:
    explicit MixedState(std::vector<WeightedPure> components, const Tolerances &tol = {});

    int dim() const { return components_.front().state.dim(); }
    const std::vector<WeightedPure> &components() const { return components_; }

    /// Density matrix: sum of weight * |state><state|.
    Matrix density() const;

    /// Unitarily evolved mixture (each component state evolved, weights kept).
    MixedState evolved(const UnitaryEvolution &u, const Tolerances &tol = {}) const;

  private:
    std::vector<WeightedPure> components_;
};

} // namespace twinlab
