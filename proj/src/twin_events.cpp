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

#include "twinlab/twin_events.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace twinlab {

namespace {

ConditionCheck checked(std::string label, double residual, double threshold) {
    ConditionCheck c;
    c.label = std::move(label);
    c.residual = residual;
    c.holds = residual <= threshold;
    return c;
}

ConditionCheck vacuous(std::string label) {
    ConditionCheck c;
    c.label = std::move(label);
    c.holds = true;
    c.vacuous = true;
    return c;
}

ConditionCheck failed(std::string label, double residual) {
    ConditionCheck c;
    c.label = std::move(label);
    c.residual = residual;
    c.holds = false;
    return c;
}

} // namespace

bool is_certain(const EventProjector &event, const StateVector &phi, const Tolerances &tol) {
    detail::require_same_dim(event.dim(), phi.dim(), "is_certain");
    return (phi.vec() - event.apply(phi.vec())).norm() <= tol.op;
}

TwinVerdict is_twin(const EventProjector &e, const EventProjector &f, const StateVector &psi,
                    const Tolerances &tol) {
    detail::require_same_dim(e.dim(), f.dim(), "is_twin");
    detail::require_same_dim(e.dim(), psi.dim(), "is_twin");
    Vector e_psi = e.apply(psi.vec());
    Vector f_psi = f.apply(psi.vec());

    TwinVerdict verdict;
    verdict.residual = (e_psi - f_psi).norm();
    verdict.is_twin = verdict.residual <= tol.op;
    verdict.degenerate = e_psi.squaredNorm() <= tol.p_min && f_psi.squaredNorm() <= tol.p_min;
    verdict.marginal = detail::is_marginal(verdict.residual, tol.op);
    return verdict;
}

TwinVerdict verify_theorem1(const EventProjector &e, const EventProjector &f,
                            const StateVector &psi, const Tolerances &tol) {
    TwinVerdict verdict = is_twin(e, f, psi, tol);
    Vector e_psi = e.apply(psi.vec());
    Vector f_psi = f.apply(psi.vec());
    double p_e = e_psi.squaredNorm();
    double p_f = f_psi.squaredNorm();

    // (i) The opposite events are twins.
    Vector ec_psi = psi.vec() - e_psi;
    Vector fc_psi = psi.vec() - f_psi;
    verdict.per_condition.push_back(checked("(i)", (ec_psi - fc_psi).norm(), tol.op));

    // (ii)(a) Equal probabilities.
    verdict.per_condition.push_back(checked("(ii)(a)", std::abs(p_e - p_f), tol.prob));

    // (ii)(b) Same collapsed state at positive probability. When exactly one
    // side has zero probability the condition fails outright; when both do,
    // it holds vacuously.
    if (p_e > tol.p_min && p_f > tol.p_min) {
        Vector l_e = e_psi / std::sqrt(p_e);
        Vector l_f = f_psi / std::sqrt(p_f);
        verdict.per_condition.push_back(checked("(ii)(b)", (l_e - l_f).norm(), tol.op));
    } else if (p_e <= tol.p_min && p_f <= tol.p_min) {
        verdict.per_condition.push_back(vacuous("(ii)(b)"));
    } else {
        verdict.per_condition.push_back(failed("(ii)(b)", 1.0));
    }
    return verdict;
}

TwinVerdict verify_theorem2(const EventProjector &e, const EventProjector &f,
                            const StateVector &psi, const Tolerances &tol) {
    detail::require_same_dim(e.dim(), f.dim(), "verify_theorem2");
    detail::require_same_dim(e.dim(), psi.dim(), "verify_theorem2");
    Vector e_psi = e.apply(psi.vec());
    Vector f_psi = f.apply(psi.vec());
    double p_e = e_psi.squaredNorm();
    double p_f = f_psi.squaredNorm();
    if (p_e <= tol.p_min || p_f <= tol.p_min) {
        throw PreconditionError("verify_theorem2: both events must have positive probability "
                                "(got " +
                                std::to_string(p_e) + " and " + std::to_string(p_f) + ")");
    }

    TwinVerdict verdict = is_twin(e, f, psi, tol);
    Vector l_e = e_psi / std::sqrt(p_e);
    Vector l_f = f_psi / std::sqrt(p_f);

    // (i)(a) F is certain in the state E collapses psi into.
    verdict.per_condition.push_back(checked("(i)(a)", (l_e - f.apply(l_e)).norm(), tol.op));
    // (i)(b) Vice versa.
    verdict.per_condition.push_back(checked("(i)(b)", (l_f - e.apply(l_f)).norm(), tol.op));
    // (i)(c) E and F commute on psi.
    verdict.per_condition.push_back(
        checked("(i)(c)", (e.apply(f_psi) - f.apply(e_psi)).norm(), tol.op));

    // (ii)(a) is claim (i)(a).
    ConditionCheck again = verdict.per_condition.front();
    again.label = "(ii)(a)";
    verdict.per_condition.push_back(again);

    // (ii)(b) The analogous certainty for the opposite events: F^c is certain
    // in the opposite component exactly when F annihilates it.
    Vector ec_psi = psi.vec() - e_psi;
    double p_ec = ec_psi.squaredNorm();
    if (p_ec > tol.p_min) {
        Vector l_ec = ec_psi / std::sqrt(p_ec);
        verdict.per_condition.push_back(checked("(ii)(b)", f.apply(l_ec).norm(), tol.op));
    } else {
        verdict.per_condition.push_back(vacuous("(ii)(b)"));
    }
    return verdict;
}

EventProjector minimal_twin(const EventProjector &e, const StateVector &psi,
                            const Tolerances &tol) {
    detail::require_same_dim(e.dim(), psi.dim(), "minimal_twin");
    Vector e_psi = e.apply(psi.vec());
    double n = e_psi.norm();
    if (n <= std::sqrt(tol.p_min)) {
        return EventProjector::zero(e.dim());
    }
    return EventProjector::onto(StateVector(e_psi / n, tol));
}

TwinClassDescriptor twin_class(const EventProjector &e, const StateVector &psi,
                               const Tolerances &tol) {
    TwinClassDescriptor descriptor{minimal_twin(e, psi, tol), Matrix(), psi.dim()};
    Matrix spanning(psi.dim(), descriptor.minimal.rank() + 1);
    spanning.leftCols(descriptor.minimal.rank()) = descriptor.minimal.range_basis();
    spanning.rightCols(1) = psi.vec();
    descriptor.forbidden_subspace = orthonormal_span(spanning);
    return descriptor;
}

ClassStructure class_structure(const EventProjector &candidate, const EventProjector &e,
                               const StateVector &psi, const Tolerances &tol) {
    TwinVerdict verdict = is_twin(candidate, e, psi, tol);
    EventProjector minimal = minimal_twin(e, psi, tol);

    ClassStructure s;
    s.member = verdict.is_twin;
    s.definition_residual = verdict.residual;
    Matrix d = candidate.matrix() - minimal.matrix();
    s.projector_residual = (d * d - d).norm();
    s.state_orthogonality = (d * psi.vec()).norm();
    s.minimal_orthogonality = (d * minimal.matrix()).norm();
    s.minimality_residual = (candidate.matrix() * minimal.matrix() - minimal.matrix()).norm();
    s.structure_ok = s.projector_residual <= tol.op && s.state_orthogonality <= tol.op &&
                     s.minimal_orthogonality <= tol.op && s.minimality_residual <= tol.op;
    return s;
}

bool in_class(const EventProjector &candidate, const EventProjector &e, const StateVector &psi,
              const Tolerances &tol) {
    ClassStructure s = class_structure(candidate, e, psi, tol);
    if (s.member && !s.structure_ok) {
        throw ValidationError("in_class: member fails the structural decomposition "
                              "(projector residual " +
                              std::to_string(s.projector_residual) + ")");
    }
    return s.member;
}

EventProjector sample_twin(const EventProjector &e, const StateVector &psi, int extra_rank,
                           Rng &rng, const Tolerances &tol) {
    detail::require_same_dim(e.dim(), psi.dim(), "sample_twin");
    TwinClassDescriptor descriptor = twin_class(e, psi, tol);
    if (extra_rank < 0 || extra_rank > descriptor.max_extra_rank()) {
        throw PreconditionError("sample_twin: extra rank " + std::to_string(extra_rank) +
                                " exceeds the room left by the class (max " +
                                std::to_string(descriptor.max_extra_rank()) + ")");
    }
    if (extra_rank == 0) {
        return descriptor.minimal;
    }
    Matrix complement =
        complete_orthonormal_basis(descriptor.forbidden_subspace, descriptor.ambient_dim);
    // Haar-random orthonormal set inside the allowed complement.
    Matrix coeffs(complement.cols(), extra_rank);
    for (int j = 0; j < extra_rank; ++j) {
        for (int i = 0; i < complement.cols(); ++i) {
            coeffs(i, j) = rng.complex_gaussian();
        }
    }
    Eigen::HouseholderQR<Matrix> qr(coeffs);
    Matrix thin = qr.householderQ() * Matrix::Identity(complement.cols(), extra_rank);
    Matrix extra = complement * thin;

    Matrix columns(descriptor.ambient_dim, descriptor.minimal.rank() + extra_rank);
    columns.leftCols(descriptor.minimal.rank()) = descriptor.minimal.range_basis();
    columns.rightCols(extra_rank) = extra;
    return EventProjector::span(columns, tol);
}

EventProjector sample_twin(const EventProjector &e, const StateVector &psi, int extra_rank,
                           std::uint64_t seed, const Tolerances &tol) {
    Rng rng(seed);
    return sample_twin(e, psi, extra_rank, rng, tol);
}

} // namespace twinlab
