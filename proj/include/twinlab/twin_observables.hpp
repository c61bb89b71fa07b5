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
#include <functional>
#include <vector>

#include "twinlab/twin_events.hpp"

namespace twinlab {

/// A matched pair of positive-probability eigenbranches under the common
/// index m.
struct MatchedPair {
    int m = 0;
    int left_index = 0;
    int right_index = 0;
    double probability_left = 0.0;
    double probability_right = 0.0;
    double residual = 0.0;
};

enum class MatchSide { left, right };

struct UnmatchedBranch {
    MatchSide side = MatchSide::left;
    int index = 0;
    double probability = 0.0;
    /// Smallest criterion residual against any positive branch on the other
    /// side; quantifies how badly the renumeration fails.
    double best_residual = 0.0;
};

/// Common renumeration of the positive-probability eigenbranches of two
/// observables. Orthogonality of eigenprojectors forces at most one partner
/// per branch, so a greedy pairwise scan is exact.
struct EigenMatching {
    std::vector<MatchedPair> pairs;
    std::vector<UnmatchedBranch> unmatched_positive;

    bool complete() const { return unmatched_positive.empty(); }
    double max_pair_residual() const;
    /// Max over pair residuals and unmatched best-residuals.
    double worst_residual() const;
};

namespace detail {
/// Greedy pairwise matcher over positive-probability branches.
EigenMatching match_positive_branches(const std::vector<double> &left_probs,
                                      const std::vector<double> &right_probs,
                                      const std::function<double(int, int)> &residual_fn,
                                      double threshold, double p_min);
} // namespace detail

/// Definition-3 matching: positive-probability branches k of `left` and l of
/// `right` pair up when E_k psi = F_l psi within tolerance.
EigenMatching match_eigenprojectors(const DiscreteObservable &left,
                                    const DiscreteObservable &right, const StateVector &psi,
                                    const Tolerances &tol = {});

/// Twin observables: the Definition-3 matching leaves no positive-probability
/// branch unmatched on either side.
TwinVerdict is_twin_observables(const DiscreteObservable &left, const DiscreteObservable &right,
                                const StateVector &psi, const Tolerances &tol = {});

/// Corollary 1: twin observables are equivalently characterized by
/// (i) a common renumeration with (b) equal branch probabilities and (c) equal
/// collapsed states, and by (ii) a common renumeration under which each F_m is
/// certain in the state E_m collapses psi into. Condition entries: "(i)(a)",
/// "(i)(b)", "(i)(c)", "(ii)(a)", "(ii)(b)".
TwinVerdict verify_corollary1(const DiscreteObservable &left, const DiscreteObservable &right,
                              const StateVector &psi, const Tolerances &tol = {});

/// Random observable in spectral form: a Haar-random eigenbasis grouped into
/// `branch_count` nonempty branches with well-separated random eigenvalues.
DiscreteObservable random_observable(int dim, int branch_count, Rng &rng,
                                     const Tolerances &tol = {});
DiscreteObservable random_observable(int dim, int branch_count, std::uint64_t seed,
                                     const Tolerances &tol = {});

/// Construction oracle: a twin observable of `obs` in psi, built by replacing
/// every positive-probability eigenprojector with a random member of its twin
/// class (disjoint extra supports) and completing with a zero-probability
/// remainder branch. Eigenvalues are re-randomized; they play no role in the
/// twin relation.
DiscreteObservable sample_twin_observable(const DiscreteObservable &obs, const StateVector &psi,
                                          Rng &rng, const Tolerances &tol = {});
DiscreteObservable sample_twin_observable(const DiscreteObservable &obs, const StateVector &psi,
                                          std::uint64_t seed, const Tolerances &tol = {});

} // namespace twinlab
