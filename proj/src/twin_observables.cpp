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

#include "twinlab/twin_observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace twinlab {

double EigenMatching::max_pair_residual() const {
    double worst = 0.0;
    for (const auto &p : pairs) {
        worst = std::max(worst, p.residual);
    }
    return worst;
}

double EigenMatching::worst_residual() const {
    double worst = max_pair_residual();
    for (const auto &u : unmatched_positive) {
        worst = std::max(worst, u.best_residual);
    }
    return worst;
}

namespace detail {

EigenMatching match_positive_branches(const std::vector<double> &left_probs,
                                      const std::vector<double> &right_probs,
                                      const std::function<double(int, int)> &residual_fn,
                                      double threshold, double p_min) {
    int left_count = static_cast<int>(left_probs.size());
    int right_count = static_cast<int>(right_probs.size());

    EigenMatching matching;
    std::vector<bool> right_taken(static_cast<size_t>(right_count), false);

    for (int k = 0; k < left_count; ++k) {
        if (left_probs[static_cast<size_t>(k)] <= p_min) {
            continue;
        }
        int partner = -1;
        double best = std::numeric_limits<double>::infinity();
        for (int l = 0; l < right_count; ++l) {
            if (right_probs[static_cast<size_t>(l)] <= p_min) {
                continue;
            }
            double r = residual_fn(k, l);
            best = std::min(best, r);
            if (partner < 0 && !right_taken[static_cast<size_t>(l)] && r <= threshold) {
                partner = l;
                MatchedPair pair;
                pair.m = static_cast<int>(matching.pairs.size()) + 1;
                pair.left_index = k;
                pair.right_index = l;
                pair.probability_left = left_probs[static_cast<size_t>(k)];
                pair.probability_right = right_probs[static_cast<size_t>(l)];
                pair.residual = r;
                matching.pairs.push_back(pair);
                right_taken[static_cast<size_t>(l)] = true;
            }
        }
        if (partner < 0) {
            matching.unmatched_positive.push_back({MatchSide::left, k,
                                                   left_probs[static_cast<size_t>(k)],
                                                   std::isfinite(best) ? best : 1.0});
        }
    }
    for (int l = 0; l < right_count; ++l) {
        if (right_probs[static_cast<size_t>(l)] <= p_min || right_taken[static_cast<size_t>(l)]) {
            continue;
        }
        double best = std::numeric_limits<double>::infinity();
        for (int k = 0; k < left_count; ++k) {
            if (left_probs[static_cast<size_t>(k)] > p_min) {
                best = std::min(best, residual_fn(k, l));
            }
        }
        matching.unmatched_positive.push_back({MatchSide::right, l,
                                               right_probs[static_cast<size_t>(l)],
                                               std::isfinite(best) ? best : 1.0});
    }
    return matching;
}

namespace {

std::vector<double> branch_probabilities(const DiscreteObservable &obs, const Vector &psi) {
    std::vector<double> probs;
    probs.reserve(obs.branches().size());
    for (const auto &b : obs.branches()) {
        probs.push_back(b.projector.apply(psi).squaredNorm());
    }
    return probs;
}

} // namespace
} // namespace detail

EigenMatching match_eigenprojectors(const DiscreteObservable &left,
                                    const DiscreteObservable &right, const StateVector &psi,
                                    const Tolerances &tol) {
    detail::require_same_dim(left.dim(), right.dim(), "match_eigenprojectors");
    detail::require_same_dim(left.dim(), psi.dim(), "match_eigenprojectors");
    auto left_probs = detail::branch_probabilities(left, psi.vec());
    auto right_probs = detail::branch_probabilities(right, psi.vec());
    auto residual_fn = [&](int k, int l) {
        return (left.branch(k).projector.apply(psi.vec()) -
                right.branch(l).projector.apply(psi.vec()))
            .norm();
    };
    return detail::match_positive_branches(left_probs, right_probs, residual_fn, tol.op,
                                           tol.p_min);
}

TwinVerdict is_twin_observables(const DiscreteObservable &left, const DiscreteObservable &right,
                                const StateVector &psi, const Tolerances &tol) {
    EigenMatching matching = match_eigenprojectors(left, right, psi, tol);
    TwinVerdict verdict;
    verdict.is_twin = matching.complete();
    verdict.residual = matching.worst_residual();
    verdict.marginal = detail::is_marginal(verdict.residual, tol.op);
    return verdict;
}

TwinVerdict verify_corollary1(const DiscreteObservable &left, const DiscreteObservable &right,
                              const StateVector &psi, const Tolerances &tol) {
    TwinVerdict verdict = is_twin_observables(left, right, psi, tol);
    auto left_probs = detail::branch_probabilities(left, psi.vec());
    auto right_probs = detail::branch_probabilities(right, psi.vec());

    // Collapsed directions of the positive branches.
    auto lueders = [&](const DiscreteObservable &obs, const std::vector<double> &probs, int k) {
        return Vector(obs.branch(k).projector.apply(psi.vec()) /
                      std::sqrt(probs[static_cast<size_t>(k)]));
    };

    // Condition set (i): renumerate by equal collapsed states, then compare
    // probabilities branchwise.
    auto same_state = [&](int k, int l) {
        return (lueders(left, left_probs, k) - lueders(right, right_probs, l)).norm();
    };
    EigenMatching by_state = detail::match_positive_branches(left_probs, right_probs, same_state,
                                                             tol.op, tol.p_min);
    ConditionCheck ia;
    ia.label = "(i)(a)";
    ia.holds = by_state.complete();
    ia.residual = by_state.complete() ? 0.0 : by_state.worst_residual();
    verdict.per_condition.push_back(ia);

    ConditionCheck ib;
    ib.label = "(i)(b)";
    ib.residual = 0.0;
    for (const auto &p : by_state.pairs) {
        ib.residual = std::max(ib.residual, std::abs(p.probability_left - p.probability_right));
    }
    ib.holds = ib.residual <= tol.prob;
    ib.vacuous = by_state.pairs.empty();
    verdict.per_condition.push_back(ib);

    ConditionCheck ic;
    ic.label = "(i)(c)";
    ic.residual = by_state.max_pair_residual();
    ic.holds = ic.residual <= tol.op;
    ic.vacuous = by_state.pairs.empty();
    verdict.per_condition.push_back(ic);

    // Condition set (ii): renumerate by certainty of F_m in the state E_m
    // collapses psi into.
    auto certain_after = [&](int k, int l) {
        Vector collapsed = lueders(left, left_probs, k);
        return (collapsed - right.branch(l).projector.apply(collapsed)).norm();
    };
    EigenMatching by_certainty = detail::match_positive_branches(left_probs, right_probs,
                                                                 certain_after, tol.op, tol.p_min);
    ConditionCheck iia;
    iia.label = "(ii)(a)";
    iia.holds = by_certainty.complete();
    iia.residual = by_certainty.complete() ? 0.0 : by_certainty.worst_residual();
    verdict.per_condition.push_back(iia);

    ConditionCheck iib;
    iib.label = "(ii)(b)";
    iib.residual = by_certainty.max_pair_residual();
    iib.holds = iib.residual <= tol.op;
    iib.vacuous = by_certainty.pairs.empty();
    verdict.per_condition.push_back(iib);

    return verdict;
}

DiscreteObservable random_observable(int dim, int branch_count, Rng &rng, const Tolerances &tol) {
    if (branch_count < 1 || branch_count > dim) {
        throw ValidationError("random_observable: branch count " + std::to_string(branch_count) +
                              " out of range for dimension " + std::to_string(dim));
    }
    UnitaryEvolution basis = haar_unitary(dim, rng);

    std::vector<int> sizes(static_cast<size_t>(branch_count), 1);
    for (int extra = 0; extra < dim - branch_count; ++extra) {
        sizes[static_cast<size_t>(rng.uniform_int(0, branch_count - 1))] += 1;
    }

    std::vector<ObservableBranch> branches;
    branches.reserve(static_cast<size_t>(branch_count));
    int start = 0;
    for (int m = 0; m < branch_count; ++m) {
        int count = sizes[static_cast<size_t>(m)];
        // Values m + U(0, 0.5) keep pairwise gaps of at least 0.5.
        branches.push_back({m + 0.5 * rng.uniform(),
                            EventProjector::span(basis.matrix().middleCols(start, count), tol)});
        start += count;
    }
    return DiscreteObservable(std::move(branches), tol);
}

DiscreteObservable random_observable(int dim, int branch_count, std::uint64_t seed,
                                     const Tolerances &tol) {
    Rng rng(seed);
    return random_observable(dim, branch_count, rng, tol);
}

DiscreteObservable sample_twin_observable(const DiscreteObservable &obs, const StateVector &psi,
                                          Rng &rng, const Tolerances &tol) {
    detail::require_same_dim(obs.dim(), psi.dim(), "sample_twin_observable");
    int dim = obs.dim();
    auto probs = detail::branch_probabilities(obs, psi.vec());

    // Collapsed directions of the positive branches are orthonormal; together
    // with psi they span the subspace the extra supports must avoid.
    std::vector<Vector> directions;
    for (size_t k = 0; k < probs.size(); ++k) {
        if (probs[k] > tol.p_min) {
            directions.push_back(obs.branch(static_cast<int>(k)).projector.apply(psi.vec()) /
                                 std::sqrt(probs[k]));
        }
    }
    int positive = static_cast<int>(directions.size());
    Matrix spanning(dim, positive + 1);
    for (int m = 0; m < positive; ++m) {
        spanning.col(m) = directions[static_cast<size_t>(m)];
    }
    spanning.col(positive) = psi.vec();
    Matrix forbidden = orthonormal_span(spanning);
    Matrix complement = complete_orthonormal_basis(forbidden, dim);

    // Scatter the complement directions over the twin branches; whatever is
    // left over (plus any psi-residual) becomes the zero-probability
    // remainder branch.
    std::vector<std::vector<int>> groups(static_cast<size_t>(positive) + 1);
    for (int c = 0; c < complement.cols(); ++c) {
        groups[static_cast<size_t>(rng.uniform_int(0, positive))].push_back(c);
    }

    std::vector<ObservableBranch> branches;
    Matrix total = Matrix::Zero(dim, dim);
    for (int m = 0; m < positive; ++m) {
        const auto &extra = groups[static_cast<size_t>(m)];
        Matrix columns(dim, 1 + static_cast<int>(extra.size()));
        columns.col(0) = directions[static_cast<size_t>(m)];
        for (size_t j = 0; j < extra.size(); ++j) {
            columns.col(1 + static_cast<Eigen::Index>(j)) = complement.col(extra[j]);
        }
        EventProjector projector = EventProjector::span(columns, tol);
        total += projector.matrix();
        branches.push_back({m + 0.5 * rng.uniform(), projector});
    }
    EventProjector remainder(Matrix::Identity(dim, dim) - total, tol);
    if (remainder.rank() > 0) {
        branches.push_back({positive + 0.5 * rng.uniform(), remainder});
    }
    return DiscreteObservable(std::move(branches), tol);
}

DiscreteObservable sample_twin_observable(const DiscreteObservable &obs, const StateVector &psi,
                                          std::uint64_t seed, const Tolerances &tol) {
    Rng rng(seed);
    return sample_twin_observable(obs, psi, rng, tol);
}

} // namespace twinlab
