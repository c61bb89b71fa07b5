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

#include "twinlab/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace twinlab {

MeasurementScheme::MeasurementScheme(DiscreteObservable measured, DiscreteObservable pointer,
                                     StateVector pointer_init, UnitaryEvolution premeasurement,
                                     MeasurementKind kind, const Tolerances &tol)
    : measured_(std::move(measured)), pointer_(std::move(pointer)),
      pointer_init_(std::move(pointer_init)), premeasurement_(std::move(premeasurement)),
      kind_(kind) {
    (void)tol;
    if (measured_.branch_count() != pointer_.branch_count()) {
        throw ValidationError("MeasurementScheme: measured and pointer observables must share "
                              "one branch index (got " +
                              std::to_string(measured_.branch_count()) + " vs " +
                              std::to_string(pointer_.branch_count()) + " branches)");
    }
    detail::require_same_dim(pointer_.dim(), pointer_init_.dim(), "MeasurementScheme");
    detail::require_same_dim(measured_.dim() * pointer_.dim(), premeasurement_.dim(),
                             "MeasurementScheme");
}

StateVector MeasurementScheme::initial_state(const StateVector &psi_a,
                                             const Tolerances &tol) const {
    detail::require_same_dim(psi_a.dim(), dim_a(), "MeasurementScheme::initial_state");
    return tensor(psi_a, pointer_init_, tol);
}

StateVector MeasurementScheme::final_state(const StateVector &psi_a, const Tolerances &tol) const {
    return premeasurement_.apply(initial_state(psi_a, tol), tol);
}

DiscreteObservable MeasurementScheme::measured_extended(const Tolerances &tol) const {
    std::vector<ObservableBranch> branches;
    branches.reserve(static_cast<size_t>(measured_.branch_count()));
    EventProjector id_b = EventProjector::identity(dim_b());
    for (const auto &b : measured_.branches()) {
        branches.push_back({b.value, tensor(b.projector, id_b, tol)});
    }
    return DiscreteObservable(std::move(branches), tol);
}

DiscreteObservable MeasurementScheme::pointer_extended(const Tolerances &tol) const {
    std::vector<ObservableBranch> branches;
    branches.reserve(static_cast<size_t>(pointer_.branch_count()));
    EventProjector id_a = EventProjector::identity(dim_a());
    for (const auto &b : pointer_.branches()) {
        branches.push_back({b.value, tensor(id_a, b.projector, tol)});
    }
    return DiscreteObservable(std::move(branches), tol);
}

namespace {

void require_pointer_setup(const DiscreteObservable &measured, int pointer_dim,
                           const std::vector<double> &pointer_values, const Tolerances &tol) {
    int k = measured.branch_count();
    if (pointer_dim < k) {
        throw PreconditionError("premeasurement builder: instrument dimension " +
                                std::to_string(pointer_dim) + " cannot register " +
                                std::to_string(k) + " outcomes");
    }
    if (static_cast<int>(pointer_values.size()) != k) {
        throw PreconditionError("premeasurement builder: need one pointer value per branch");
    }
    for (size_t i = 0; i < pointer_values.size(); ++i) {
        for (size_t j = i + 1; j < pointer_values.size(); ++j) {
            if (std::abs(pointer_values[i] - pointer_values[j]) <= tol.spec_gap) {
                throw PreconditionError("premeasurement builder: pointer values must be distinct");
            }
        }
    }
}

/// Pointer observable on computational basis states e_0 .. e_{K-1}; branch 0
/// also absorbs the unused rest of the instrument space so the branches stay
/// complete.
DiscreteObservable pointer_observable(int pointer_dim, const std::vector<double> &pointer_values,
                                      const Tolerances &tol) {
    int k = static_cast<int>(pointer_values.size());
    std::vector<ObservableBranch> branches;
    branches.reserve(static_cast<size_t>(k));
    for (int m = 0; m < k; ++m) {
        Matrix proj = Matrix::Zero(pointer_dim, pointer_dim);
        proj(m, m) = 1.0;
        if (m == 0) {
            for (int extra = k; extra < pointer_dim; ++extra) {
                proj(extra, extra) = 1.0;
            }
        }
        branches.push_back({pointer_values[static_cast<size_t>(m)], EventProjector(proj, tol)});
    }
    return DiscreteObservable(std::move(branches), tol);
}

/// Unitary mapping the orthonormal `domain` columns onto the orthonormal
/// `image` columns, extended deterministically on the complements.
UnitaryEvolution unitary_from_mapping(const Matrix &domain, const Matrix &image, int dim,
                                      const Tolerances &tol) {
    Matrix domain_rest = complete_orthonormal_basis(domain, dim);
    Matrix image_rest = complete_orthonormal_basis(image, dim);
    Matrix u = image * domain.adjoint() + image_rest * domain_rest.adjoint();
    return UnitaryEvolution(std::move(u), tol);
}

} // namespace

MeasurementScheme build_nondemolition_premeasurement(const DiscreteObservable &measured,
                                                     int pointer_dim,
                                                     const std::vector<double> &pointer_values,
                                                     const Tolerances &tol) {
    require_pointer_setup(measured, pointer_dim, pointer_values, tol);
    int dim_a = measured.dim();
    int composite = dim_a * pointer_dim;
    StateVector ready = StateVector::basis(pointer_dim, 0);

    Matrix domain(composite, dim_a);
    Matrix image(composite, dim_a);
    int column = 0;
    for (int k = 0; k < measured.branch_count(); ++k) {
        const Matrix &eigenbasis = measured.branch(k).projector.range_basis();
        Vector pointer_state = StateVector::basis(pointer_dim, k).vec();
        for (int j = 0; j < eigenbasis.cols(); ++j) {
            domain.col(column) = kron(Vector(eigenbasis.col(j)), ready.vec());
            image.col(column) = kron(Vector(eigenbasis.col(j)), pointer_state);
            ++column;
        }
    }
    UnitaryEvolution u = unitary_from_mapping(domain, image, composite, tol);
    return MeasurementScheme(measured, pointer_observable(pointer_dim, pointer_values, tol), ready,
                             std::move(u), MeasurementKind::nondemolition, tol);
}

MeasurementScheme build_demolition_premeasurement(const DiscreteObservable &measured,
                                                  int pointer_dim,
                                                  const std::vector<double> &pointer_values,
                                                  const StateVector &sink_state,
                                                  const Tolerances &tol) {
    require_pointer_setup(measured, pointer_dim, pointer_values, tol);
    detail::require_same_dim(sink_state.dim(), measured.dim(), "build_demolition_premeasurement");
    int dim_a = measured.dim();
    int composite = dim_a * pointer_dim;
    StateVector ready = StateVector::basis(pointer_dim, 0);

    // Deterministic orthonormal sequence on A starting at the sink state; the
    // branch-k inputs land on its first vectors, independent of the branch.
    Matrix sink_chain(dim_a, dim_a);
    sink_chain.col(0) = sink_state.vec();
    sink_chain.rightCols(dim_a - 1) = complete_orthonormal_basis(sink_state.vec(), dim_a);

    Matrix domain(composite, dim_a);
    Matrix image(composite, dim_a);
    int column = 0;
    for (int k = 0; k < measured.branch_count(); ++k) {
        const Matrix &eigenbasis = measured.branch(k).projector.range_basis();
        Vector pointer_state = StateVector::basis(pointer_dim, k).vec();
        for (int j = 0; j < eigenbasis.cols(); ++j) {
            domain.col(column) = kron(Vector(eigenbasis.col(j)), ready.vec());
            image.col(column) = kron(Vector(sink_chain.col(j)), pointer_state);
            ++column;
        }
    }
    UnitaryEvolution u = unitary_from_mapping(domain, image, composite, tol);
    return MeasurementScheme(measured, pointer_observable(pointer_dim, pointer_values, tol), ready,
                             std::move(u), MeasurementKind::demolition, tol);
}

namespace {

void record(MeasurementVerdict &verdict, int branch, double residual, double threshold) {
    verdict.branches.push_back({branch, residual <= threshold, residual});
    verdict.max_residual = std::max(verdict.max_residual, residual);
    verdict.pass = verdict.pass && residual <= threshold;
}

} // namespace

MeasurementVerdict check_calibration(const MeasurementScheme &scheme, const Tolerances &tol) {
    MeasurementVerdict verdict;
    for (int k = 0; k < scheme.branch_count(); ++k) {
        const Matrix &eigenbasis = scheme.measured().branch(k).projector.range_basis();
        const Matrix &pointer_event = scheme.pointer().branch(k).projector.matrix();
        double worst = 0.0;
        for (int j = 0; j < eigenbasis.cols(); ++j) {
            Vector final_state = scheme.premeasurement().apply(
                kron(Vector(eigenbasis.col(j)), scheme.pointer_init().vec()));
            Vector pointed =
                kron(Matrix::Identity(scheme.dim_a(), scheme.dim_a()), pointer_event) * final_state;
            worst = std::max(worst, (final_state - pointed).norm());
        }
        record(verdict, k, worst, tol.op);
    }
    return verdict;
}

MeasurementVerdict check_calibration(const MeasurementScheme &scheme, const StateVector &psi_a,
                                     const Tolerances &tol) {
    MeasurementVerdict verdict;
    Matrix id_a = Matrix::Identity(scheme.dim_a(), scheme.dim_a());
    for (int k = 0; k < scheme.branch_count(); ++k) {
        if (!is_certain(scheme.measured().branch(k).projector, psi_a, tol)) {
            continue; // calibration constrains only certain inputs
        }
        Vector final_state = scheme.final_state(psi_a, tol).vec();
        Vector pointed = kron(id_a, scheme.pointer().branch(k).projector.matrix()) * final_state;
        record(verdict, k, (final_state - pointed).norm(), tol.op);
    }
    return verdict;
}

MeasurementVerdict check_probability_reproducibility(const MeasurementScheme &scheme,
                                                     const StateVector &psi_a,
                                                     const Tolerances &tol) {
    MeasurementVerdict verdict;
    Vector final_state = scheme.final_state(psi_a, tol).vec();
    Matrix id_a = Matrix::Identity(scheme.dim_a(), scheme.dim_a());
    for (int k = 0; k < scheme.branch_count(); ++k) {
        double measured_prob =
            scheme.measured().branch(k).projector.apply(psi_a.vec()).squaredNorm();
        double pointer_prob =
            (kron(id_a, scheme.pointer().branch(k).projector.matrix()) * final_state)
                .squaredNorm();
        record(verdict, k, std::abs(measured_prob - pointer_prob), tol.prob);
    }
    return verdict;
}

BranchRelationVerdict check_branch_relation(const MeasurementScheme &scheme,
                                            const StateVector &psi_a, const Tolerances &tol) {
    BranchRelationVerdict verdict;
    Vector final_state = scheme.final_state(psi_a, tol).vec();
    Matrix id_a = Matrix::Identity(scheme.dim_a(), scheme.dim_a());
    for (int k = 0; k < scheme.branch_count(); ++k) {
        Vector measured_part = scheme.measured().branch(k).projector.apply(psi_a.vec());
        double amplitude = measured_part.norm();
        if (amplitude * amplitude <= tol.p_min) {
            continue;
        }
        Vector collapsed_then_evolved = scheme.premeasurement().apply(
            kron(Vector(measured_part / amplitude), scheme.pointer_init().vec()));
        Vector pointer_part =
            kron(id_a, scheme.pointer().branch(k).projector.matrix()) * final_state;
        double pointer_amplitude = pointer_part.norm();

        double norm_gap = std::abs(amplitude - pointer_amplitude);
        verdict.norm_match.push_back({k, norm_gap <= tol.prob, norm_gap});
        verdict.pass = verdict.pass && norm_gap <= tol.prob;
        verdict.max_residual = std::max(verdict.max_residual, norm_gap);

        double state_gap = 1.0;
        if (pointer_amplitude * pointer_amplitude > tol.p_min) {
            state_gap = (collapsed_then_evolved - pointer_part / pointer_amplitude).norm();
        }
        verdict.state_match.push_back({k, state_gap <= tol.op, state_gap});
        verdict.pass = verdict.pass && state_gap <= tol.op;
        verdict.max_residual = std::max(verdict.max_residual, state_gap);
    }
    return verdict;
}

MeasurementVerdict check_nondemolition(const MeasurementScheme &scheme, const Tolerances &tol) {
    MeasurementVerdict verdict;
    Matrix id_b = Matrix::Identity(scheme.dim_b(), scheme.dim_b());
    for (int k = 0; k < scheme.branch_count(); ++k) {
        const Matrix &eigenbasis = scheme.measured().branch(k).projector.range_basis();
        Matrix extended = kron(scheme.measured().branch(k).projector.matrix(), id_b);
        double worst = 0.0;
        for (int j = 0; j < eigenbasis.cols(); ++j) {
            Vector final_state = scheme.premeasurement().apply(
                kron(Vector(eigenbasis.col(j)), scheme.pointer_init().vec()));
            worst = std::max(worst, (final_state - extended * final_state).norm());
        }
        record(verdict, k, worst, tol.op);
    }
    return verdict;
}

TwinVerdict measured_pointer_delayed_twins(const MeasurementScheme &scheme,
                                           const StateVector &psi_a, const Tolerances &tol) {
    return is_delayed_twin_observables(scheme.measured_extended(tol), scheme.pointer_extended(tol),
                                       scheme.initial_state(psi_a, tol), scheme.premeasurement(),
                                       tol);
}

} // namespace twinlab
