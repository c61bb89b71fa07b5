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

#include "twinlab/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace twinlab {

CollapseResult luders_collapse(const StateVector &psi, const EventProjector &event,
                               const Tolerances &tol) {
    detail::require_same_dim(psi.dim(), event.dim(), "luders_collapse");
    Vector projected = event.apply(psi.vec());
    double probability = projected.squaredNorm();
    CollapseResult result;
    result.probability = probability;
    if (probability > tol.p_min) {
        result.post = StateVector(projected / std::sqrt(probability), tol);
    }
    return result;
}

CoherentDecomposition coherent_decompose(const StateVector &psi, const EventProjector &event,
                                         const Tolerances &tol) {
    detail::require_same_dim(psi.dim(), event.dim(), "coherent_decompose");
    Vector inside = event.apply(psi.vec());
    Vector outside = psi.vec() - inside;
    double amplitude_cut = std::sqrt(tol.p_min);

    CoherentDecomposition decomposition;
    decomposition.inside.weight = inside.norm();
    if (decomposition.inside.weight > amplitude_cut) {
        decomposition.inside.state = StateVector(inside / decomposition.inside.weight, tol);
    }
    decomposition.outside.weight = outside.norm();
    if (decomposition.outside.weight > amplitude_cut) {
        decomposition.outside.state = StateVector(outside / decomposition.outside.weight, tol);
    }
    return decomposition;
}

DiscreteObservable spectral_decompose(const Matrix &hermitian, double cluster_tol,
                                      const Tolerances &tol) {
    if (hermitian.rows() != hermitian.cols() || hermitian.rows() < 1) {
        throw ValidationError("spectral_decompose: expected a nonempty square matrix");
    }
    double herm_residual = (hermitian - hermitian.adjoint()).norm();
    if (herm_residual > tol.op) {
        throw ValidationError("spectral_decompose: matrix is not Hermitian (residual " +
                              std::to_string(herm_residual) + ")");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian);
    const auto &values = solver.eigenvalues(); // ascending
    const Matrix &vectors = solver.eigenvectors();
    int d = static_cast<int>(hermitian.rows());

    // Transitive merge: a gap <= cluster_tol between sorted neighbors keeps
    // them in the same branch.
    std::vector<ObservableBranch> branches;
    Tolerances branch_tol = tol;
    branch_tol.spec_gap = cluster_tol;
    int start = 0;
    for (int i = 1; i <= d; ++i) {
        if (i == d || values(i) - values(i - 1) > cluster_tol) {
            int count = i - start;
            double mean = values.segment(start, count).sum() / count;
            branches.push_back(
                {mean, EventProjector::span(vectors.middleCols(start, count), branch_tol)});
            start = i;
        }
    }
    return DiscreteObservable(std::move(branches), branch_tol);
}

Matrix kron(const Matrix &a, const Matrix &b) {
    // Composite index = index_A * dim_B + index_B (row-major bookkeeping).
    Matrix c(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            c.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return c;
}

Vector kron(const Vector &a, const Vector &b) {
    Vector c(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        c.segment(i * b.size(), b.size()) = a(i) * b;
    }
    return c;
}

StateVector tensor(const StateVector &a, const StateVector &b, const Tolerances &tol) {
    return StateVector(kron(a.vec(), b.vec()), tol);
}

EventProjector tensor(const EventProjector &a, const EventProjector &b, const Tolerances &tol) {
    if (a.rank() == 0 || b.rank() == 0) {
        return EventProjector::zero(a.dim() * b.dim());
    }
    // The range of a Kronecker product of projectors is spanned by the
    // Kronecker products of the range bases.
    return EventProjector::span(kron(a.range_basis(), b.range_basis()), tol);
}

UnitaryEvolution tensor(const UnitaryEvolution &a, const UnitaryEvolution &b,
                        const Tolerances &tol) {
    return UnitaryEvolution(kron(a.matrix(), b.matrix()), tol);
}

Matrix partial_trace(const Matrix &rho, int dim_a, int dim_b, Subsystem keep,
                     const Tolerances &tol) {
    if (dim_a < 1 || dim_b < 1 || rho.rows() != rho.cols() ||
        rho.rows() != static_cast<Eigen::Index>(dim_a) * dim_b) {
        throw DimensionError("partial_trace: matrix size does not factor as dim_a * dim_b");
    }
    if ((rho - rho.adjoint()).norm() > tol.op) {
        throw ValidationError("partial_trace: density matrix is not Hermitian");
    }
    if (std::abs(rho.trace().real() - 1.0) > tol.norm || std::abs(rho.trace().imag()) > tol.norm) {
        throw ValidationError("partial_trace: density matrix trace is not 1");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(rho);
    if (solver.eigenvalues()(0) < -tol.op) {
        throw ValidationError("partial_trace: density matrix has eigenvalue " +
                              std::to_string(solver.eigenvalues()(0)));
    }

    if (keep == Subsystem::A) {
        Matrix reduced = Matrix::Zero(dim_a, dim_a);
        for (int i = 0; i < dim_a; ++i) {
            for (int j = 0; j < dim_a; ++j) {
                Complex sum = 0.0;
                for (int b = 0; b < dim_b; ++b) {
                    sum += rho(static_cast<Eigen::Index>(i) * dim_b + b,
                               static_cast<Eigen::Index>(j) * dim_b + b);
                }
                reduced(i, j) = sum;
            }
        }
        return reduced;
    }
    Matrix reduced = Matrix::Zero(dim_b, dim_b);
    for (int a = 0; a < dim_b; ++a) {
        for (int b = 0; b < dim_b; ++b) {
            Complex sum = 0.0;
            for (int i = 0; i < dim_a; ++i) {
                sum += rho(static_cast<Eigen::Index>(i) * dim_b + a,
                           static_cast<Eigen::Index>(i) * dim_b + b);
            }
            reduced(a, b) = sum;
        }
    }
    return reduced;
}

namespace {

Matrix gaussian_matrix(int rows, int cols, Rng &rng) {
    Matrix m(rows, cols);
    for (int j = 0; j < cols; ++j) {
        for (int i = 0; i < rows; ++i) {
            m(i, j) = rng.complex_gaussian();
        }
    }
    return m;
}

/// Thin Q factor (first `cols` columns) of a Householder QR.
Matrix thin_q(const Matrix &m) {
    Eigen::HouseholderQR<Matrix> qr(m);
    return qr.householderQ() * Matrix::Identity(m.rows(), m.cols());
}

} // namespace

UnitaryEvolution haar_unitary(int dim, Rng &rng) {
    if (dim < 1) {
        throw ValidationError("haar_unitary: dimension must be at least 1");
    }
    Matrix gauss = gaussian_matrix(dim, dim, rng);
    Eigen::HouseholderQR<Matrix> qr(gauss);
    Matrix q = qr.householderQ();
    // Fixing the phases of the R diagonal makes the distribution Haar rather
    // than merely unitary.
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < dim; ++i) {
        Complex pivot = r(i, i);
        double mag = std::abs(pivot);
        q.col(i) *= (mag > 1e-300) ? pivot / mag : Complex(1.0, 0.0);
    }
    return UnitaryEvolution(std::move(q));
}

UnitaryEvolution haar_unitary(int dim, std::uint64_t seed) {
    Rng rng(seed);
    return haar_unitary(dim, rng);
}

EventProjector random_projector(int dim, int rank, Rng &rng) {
    if (dim < 1 || rank < 0 || rank > dim) {
        throw ValidationError("random_projector: rank " + std::to_string(rank) +
                              " out of range for dimension " + std::to_string(dim));
    }
    if (rank == 0) {
        return EventProjector::zero(dim);
    }
    return EventProjector::span(thin_q(gaussian_matrix(dim, rank, rng)));
}

EventProjector random_projector(int dim, int rank, std::uint64_t seed) {
    Rng rng(seed);
    return random_projector(dim, rank, rng);
}

StateVector random_state(int dim, Rng &rng) {
    if (dim < 1) {
        throw ValidationError("random_state: dimension must be at least 1");
    }
    while (true) {
        Vector v = gaussian_matrix(dim, 1, rng).col(0);
        double n = v.norm();
        if (n > 1e-8) {
            return StateVector(v / n);
        }
    }
}

StateVector random_state(int dim, std::uint64_t seed) {
    Rng rng(seed);
    return random_state(dim, rng);
}

bool vectors_equal(const Vector &u, const Vector &v, const Tolerances &tol) {
    detail::require_same_dim(static_cast<int>(u.size()), static_cast<int>(v.size()),
                             "vectors_equal");
    return (u - v).norm() <= tol.op;
}

bool states_equal(const StateVector &u, const StateVector &v, const Tolerances &tol) {
    return vectors_equal(u.vec(), v.vec(), tol);
}

bool states_equal_up_to_phase(const StateVector &u, const StateVector &v, const Tolerances &tol) {
    detail::require_same_dim(u.dim(), v.dim(), "states_equal_up_to_phase");
    // The minimizing phase is the argument of <u, v>; compare the aligned
    // vectors directly (the closed form sqrt(2 - 2|<u,v>|) loses half the
    // significant digits near zero).
    Complex overlap = u.vec().dot(v.vec());
    double mag = std::abs(overlap);
    Complex phase = mag > 1e-300 ? std::conj(overlap) / mag : Complex(1.0, 0.0);
    return (u.vec() - phase * v.vec()).norm() <= tol.op;
}

Matrix complete_orthonormal_basis(const Matrix &orthonormal_columns, int dim) {
    int k = static_cast<int>(orthonormal_columns.cols());
    if (orthonormal_columns.rows() != dim || k > dim) {
        throw DimensionError("complete_orthonormal_basis: bad input shape");
    }
    if (k == dim) {
        return Matrix::Zero(dim, 0);
    }
    // QR of [cols | I]: the first k columns of Q span the input, the rest are
    // a deterministic orthonormal complement.
    Matrix padded(dim, k + dim);
    padded.leftCols(k) = orthonormal_columns;
    padded.rightCols(dim) = Matrix::Identity(dim, dim);
    Eigen::HouseholderQR<Matrix> qr(padded);
    Matrix q = qr.householderQ();
    return q.rightCols(dim - k);
}

Matrix orthonormal_span(const Matrix &columns) {
    if (columns.cols() == 0) {
        return Matrix::Zero(columns.rows(), 0);
    }
    Eigen::ColPivHouseholderQR<Matrix> qr(columns);
    qr.setThreshold(1e-7);
    int rank = static_cast<int>(qr.rank());
    Matrix q = qr.householderQ();
    return q.leftCols(rank);
}

} // namespace twinlab
