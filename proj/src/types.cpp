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

#include "twinlab/types.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace twinlab {

namespace {

void require_square(const Matrix &m, const char *where) {
    if (m.rows() != m.cols() || m.rows() < 1) {
        throw ValidationError(std::string(where) + ": expected a nonempty square matrix, got " +
                              std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
}

} // namespace

// ---------------------------------------------------------------- StateVector

StateVector::StateVector(Vector amplitudes, const Tolerances &tol)
    : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() < 1) {
        throw ValidationError("StateVector: dimension must be at least 1");
    }
    double norm2 = amplitudes_.squaredNorm();
    if (std::abs(norm2 - 1.0) > tol.norm) {
        throw ValidationError("StateVector: squared norm " + std::to_string(norm2) +
                              " deviates from 1 beyond tolerance");
    }
}

StateVector StateVector::normalized(Vector raw, const Tolerances &tol) {
    double n = raw.norm();
    if (!(n > 1e-100)) {
        throw ValidationError("StateVector::normalized: input vector is numerically zero");
    }
    return StateVector(raw / n, tol);
}

StateVector StateVector::basis(int dim, int index) {
    if (dim < 1 || index < 0 || index >= dim) {
        throw ValidationError("StateVector::basis: index " + std::to_string(index) +
                              " out of range for dimension " + std::to_string(dim));
    }
    Vector v = Vector::Zero(dim);
    v(index) = 1.0;
    return StateVector(std::move(v));
}

// ------------------------------------------------------------- EventProjector

EventProjector::EventProjector(Matrix matrix, const Tolerances &tol) : matrix_(std::move(matrix)) {
    require_square(matrix_, "EventProjector");
    int d = dim();

    double herm_residual = (matrix_ - matrix_.adjoint()).norm();
    if (herm_residual > tol.op) {
        throw ValidationError("EventProjector: not Hermitian (residual " +
                              std::to_string(herm_residual) + ")");
    }
    double idem_residual = (matrix_ * matrix_ - matrix_).norm();
    if (idem_residual > tol.op) {
        throw ValidationError("EventProjector: not idempotent (residual " +
                              std::to_string(idem_residual) + ")");
    }

    double tr = matrix_.trace().real();
    rank_ = static_cast<int>(std::lround(tr));
    if (rank_ < 0 || rank_ > d || std::abs(tr - rank_) > tol.op) {
        throw ValidationError("EventProjector: trace " + std::to_string(tr) +
                              " is not close to an admissible integer rank");
    }

    // Orthonormal range basis: eigenvectors of the (two-valued) spectrum at 1.
    if (rank_ == 0) {
        range_basis_ = Matrix::Zero(d, 0);
    } else if (rank_ == d) {
        range_basis_ = Matrix::Identity(d, d);
    } else {
        Eigen::SelfAdjointEigenSolver<Matrix> solver(matrix_);
        int found = 0;
        for (int i = 0; i < d; ++i) {
            if (solver.eigenvalues()(i) > 0.5) {
                ++found;
            }
        }
        if (found != rank_) {
            throw ValidationError("EventProjector: spectral rank " + std::to_string(found) +
                                  " disagrees with trace rank " + std::to_string(rank_));
        }
        // Eigenvalues are ascending, so the range eigenvectors are the last columns.
        range_basis_ = solver.eigenvectors().rightCols(rank_);
    }
}

EventProjector EventProjector::zero(int dim) {
    EventProjector p;
    p.matrix_ = Matrix::Zero(dim, dim);
    p.range_basis_ = Matrix::Zero(dim, 0);
    p.rank_ = 0;
    return p;
}

EventProjector EventProjector::identity(int dim) {
    EventProjector p;
    p.matrix_ = Matrix::Identity(dim, dim);
    p.range_basis_ = Matrix::Identity(dim, dim);
    p.rank_ = dim;
    return p;
}

EventProjector EventProjector::onto(const StateVector &v) {
    EventProjector p;
    p.matrix_ = v.vec() * v.vec().adjoint();
    p.range_basis_ = v.vec();
    p.rank_ = 1;
    return p;
}

EventProjector EventProjector::span(const Matrix &orthonormal_columns, const Tolerances &tol) {
    int d = static_cast<int>(orthonormal_columns.rows());
    int r = static_cast<int>(orthonormal_columns.cols());
    if (d < 1 || r > d) {
        throw ValidationError("EventProjector::span: bad column count");
    }
    if (r == 0) {
        return zero(d);
    }
    Matrix gram = orthonormal_columns.adjoint() * orthonormal_columns;
    if ((gram - Matrix::Identity(r, r)).norm() > tol.op) {
        throw ValidationError("EventProjector::span: columns are not orthonormal");
    }
    EventProjector p;
    p.matrix_ = orthonormal_columns * orthonormal_columns.adjoint();
    p.range_basis_ = orthonormal_columns;
    p.rank_ = r;
    return p;
}

EventProjector EventProjector::complement() const {
    return EventProjector(Matrix::Identity(dim(), dim()) - matrix_);
}

// --------------------------------------------------------- DiscreteObservable

DiscreteObservable::DiscreteObservable(std::vector<ObservableBranch> branches,
                                       const Tolerances &tol)
    : branches_(std::move(branches)) {
    if (branches_.empty()) {
        throw ValidationError("DiscreteObservable: needs at least one branch");
    }
    int d = branches_.front().projector.dim();
    for (const auto &b : branches_) {
        detail::require_same_dim(b.projector.dim(), d, "DiscreteObservable");
        if (b.projector.rank() == 0) {
            throw ValidationError("DiscreteObservable: branch with empty eigenprojector");
        }
    }
    size_t n = branches_.size();
    for (size_t k = 0; k < n; ++k) {
        for (size_t j = k + 1; j < n; ++j) {
            if (std::abs(branches_[k].value - branches_[j].value) <= tol.spec_gap) {
                throw ValidationError("DiscreteObservable: eigenvalues " +
                                      std::to_string(branches_[k].value) + " and " +
                                      std::to_string(branches_[j].value) + " are not distinct");
            }
            double ortho = (branches_[k].projector.matrix() * branches_[j].projector.matrix()).norm();
            if (ortho > tol.op) {
                throw ValidationError("DiscreteObservable: eigenprojectors overlap (residual " +
                                      std::to_string(ortho) + ")");
            }
        }
    }
    Matrix sum = Matrix::Zero(d, d);
    for (const auto &b : branches_) {
        sum += b.projector.matrix();
    }
    double completeness = (sum - Matrix::Identity(d, d)).norm();
    if (completeness > tol.op) {
        throw ValidationError("DiscreteObservable: eigenprojectors do not sum to identity "
                              "(residual " +
                              std::to_string(completeness) + ")");
    }
}

DiscreteObservable DiscreteObservable::binary(const EventProjector &event, double on, double off,
                                              const Tolerances &tol) {
    std::vector<ObservableBranch> branches;
    if (event.rank() > 0) {
        branches.push_back({on, event});
    }
    EventProjector opposite = event.complement();
    if (opposite.rank() > 0) {
        branches.push_back({off, opposite});
    }
    return DiscreteObservable(std::move(branches), tol);
}

Matrix DiscreteObservable::to_matrix() const {
    Matrix m = Matrix::Zero(dim(), dim());
    for (const auto &b : branches_) {
        m += b.value * b.projector.matrix();
    }
    return m;
}

// ----------------------------------------------------------- UnitaryEvolution

UnitaryEvolution::UnitaryEvolution(Matrix matrix, const Tolerances &tol)
    : matrix_(std::move(matrix)) {
    require_square(matrix_, "UnitaryEvolution");
    int d = dim();
    double residual = (matrix_.adjoint() * matrix_ - Matrix::Identity(d, d)).norm();
    if (residual > tol.op) {
        throw ValidationError("UnitaryEvolution: not unitary (residual " +
                              std::to_string(residual) + ")");
    }
}

UnitaryEvolution UnitaryEvolution::identity(int dim) {
    return UnitaryEvolution(Matrix::Identity(dim, dim));
}

UnitaryEvolution UnitaryEvolution::dagger() const { return UnitaryEvolution(matrix_.adjoint()); }

StateVector UnitaryEvolution::apply(const StateVector &psi, const Tolerances &tol) const {
    detail::require_same_dim(dim(), psi.dim(), "UnitaryEvolution::apply");
    return StateVector(matrix_ * psi.vec(), tol);
}

EventProjector UnitaryEvolution::transport(const EventProjector &event,
                                           const Tolerances &tol) const {
    detail::require_same_dim(dim(), event.dim(), "UnitaryEvolution::transport");
    return EventProjector(matrix_ * event.matrix() * matrix_.adjoint(), tol);
}

DiscreteObservable UnitaryEvolution::transport(const DiscreteObservable &obs,
                                               const Tolerances &tol) const {
    detail::require_same_dim(dim(), obs.dim(), "UnitaryEvolution::transport");
    std::vector<ObservableBranch> branches;
    branches.reserve(obs.branches().size());
    for (const auto &b : obs.branches()) {
        branches.push_back({b.value, transport(b.projector, tol)});
    }
    return DiscreteObservable(std::move(branches), tol);
}

UnitaryEvolution operator*(const UnitaryEvolution &second, const UnitaryEvolution &first) {
    detail::require_same_dim(second.dim(), first.dim(), "UnitaryEvolution composition");
    return UnitaryEvolution(second.matrix() * first.matrix());
}

// ----------------------------------------------------------------- MixedState

MixedState::MixedState(std::vector<WeightedPure> components, const Tolerances &tol)
    : components_(std::move(components)) {
    if (components_.empty()) {
        throw ValidationError("MixedState: needs at least one component");
    }
    int d = components_.front().state.dim();
    double total = 0.0;
    for (const auto &c : components_) {
        detail::require_same_dim(c.state.dim(), d, "MixedState");
        if (c.weight < 0.0) {
            throw ValidationError("MixedState: negative weight " + std::to_string(c.weight));
        }
        total += c.weight;
    }
    if (std::abs(total - 1.0) > tol.norm) {
        throw ValidationError("MixedState: weights sum to " + std::to_string(total));
    }
}

Matrix MixedState::density() const {
    Matrix rho = Matrix::Zero(dim(), dim());
    for (const auto &c : components_) {
        rho += c.weight * (c.state.vec() * c.state.vec().adjoint());
    }
    return rho;
}

MixedState MixedState::evolved(const UnitaryEvolution &u, const Tolerances &tol) const {
    std::vector<WeightedPure> moved;
    moved.reserve(components_.size());
    for (const auto &c : components_) {
        moved.push_back({c.weight, u.apply(c.state, tol)});
    }
    return MixedState(std::move(moved), tol);
}

} // namespace twinlab
