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

#include <vector>

#include "twinlab/delayed_twins.hpp"

namespace twinlab {

enum class MeasurementKind { nondemolition, demolition };

/// Bipartite exact-measurement bundle: the measured observable on the object
/// system A, the pointer observable on the instrument B (one branch per
/// measured branch, common index), the trigger-ready pointer state, and the
/// premeasurement unitary on A (x) B.
class MeasurementScheme {
  public:
    MeasurementScheme(DiscreteObservable measured, DiscreteObservable pointer,
                      StateVector pointer_init, UnitaryEvolution premeasurement,
                      MeasurementKind kind, const Tolerances &tol = {});

    int dim_a() const { return measured_.dim(); }
    int dim_b() const { return pointer_.dim(); }
    int composite_dim() const { return dim_a() * dim_b(); }
    int branch_count() const { return measured_.branch_count(); }
    MeasurementKind kind() const { return kind_; }

    const DiscreteObservable &measured() const { return measured_; }
    const DiscreteObservable &pointer() const { return pointer_; }
    const StateVector &pointer_init() const { return pointer_init_; }
    const UnitaryEvolution &premeasurement() const { return premeasurement_; }

    /// psi_a (x) pointer_init.
    StateVector initial_state(const StateVector &psi_a, const Tolerances &tol = {}) const;
    /// U_AB (psi_a (x) pointer_init).
    StateVector final_state(const StateVector &psi_a, const Tolerances &tol = {}) const;

    /// Measured observable on the composite: branches E_A^k (x) I_B.
    DiscreteObservable measured_extended(const Tolerances &tol = {}) const;
    /// Pointer observable on the composite: branches I_A (x) F_B^k.
    DiscreteObservable pointer_extended(const Tolerances &tol = {}) const;

  private:
    DiscreteObservable measured_;
    DiscreteObservable pointer_;
    StateVector pointer_init_;
    UnitaryEvolution premeasurement_;
    MeasurementKind kind_;
};

/// Standard nondemolition premeasurement: every eigenvector |a> of measured
/// branch k is mapped |a> (x) pointer_init -> |a> (x) |b_k> with orthonormal
/// pointer states |b_k>, completed to a full unitary by a deterministic
/// orthonormal extension. Pointer branch 0 absorbs the unused remainder of
/// the instrument space. Throws PreconditionError when the instrument is too
/// small or the pointer values are not distinct.
MeasurementScheme build_nondemolition_premeasurement(const DiscreteObservable &measured,
                                                     int pointer_dim,
                                                     const std::vector<double> &pointer_values,
                                                     const Tolerances &tol = {});

/// Demolition variant: branch-k inputs land on (branch-independent A states
/// seeded from `sink_state`) (x) |b_k>, so the pointer still registers the
/// result while the measured value itself is destroyed.
MeasurementScheme build_demolition_premeasurement(const DiscreteObservable &measured,
                                                  int pointer_dim,
                                                  const std::vector<double> &pointer_values,
                                                  const StateVector &sink_state,
                                                  const Tolerances &tol = {});

struct BranchCheck {
    int branch = 0;
    bool holds = false;
    double residual = 0.0;
};

struct MeasurementVerdict {
    bool pass = true;
    std::vector<BranchCheck> branches;
    double max_residual = 0.0;
};

/// Calibration: whenever a measured branch is certain in the object state,
/// the matching pointer branch is certain in the final composite state.
/// The eigenbasis overload certifies all certain inputs at once (each branch
/// is spanned by its eigenbasis and the evolution is linear).
MeasurementVerdict check_calibration(const MeasurementScheme &scheme, const Tolerances &tol = {});
/// Checks only the branches that are certain in the supplied object state.
MeasurementVerdict check_calibration(const MeasurementScheme &scheme, const StateVector &psi_a,
                                     const Tolerances &tol = {});

/// Probability reproducibility: branch probabilities of the measured
/// observable in psi_a equal the pointer-branch probabilities in the final
/// state, branch by branch.
MeasurementVerdict check_probability_reproducibility(const MeasurementScheme &scheme,
                                                     const StateVector &psi_a,
                                                     const Tolerances &tol = {});

struct BranchRelationVerdict {
    bool pass = true;
    /// Collapsed-then-evolved branch state vs pointer-collapsed final state.
    std::vector<BranchCheck> state_match;
    /// | ||E_A^k psi_a|| - ||(I (x) F_B^k) Psi_final|| | per branch.
    std::vector<BranchCheck> norm_match;
    double max_residual = 0.0;
};

/// The part of the final state with a sharp pointer value is the evolved part
/// of the initial state with the sharp measured value; zero-probability
/// branches are skipped.
BranchRelationVerdict check_branch_relation(const MeasurementScheme &scheme,
                                            const StateVector &psi_a, const Tolerances &tol = {});

/// Nondemolition preservation: eigenstate inputs keep their measured branch
/// certain in the final state. Demolition schemes fail this on at least one
/// branch while still passing calibration.
MeasurementVerdict check_nondemolition(const MeasurementScheme &scheme, const Tolerances &tol = {});

/// The measured observable (extended) and the pointer observable (extended)
/// are delayed twins in psi_a (x) pointer_init for the premeasurement.
TwinVerdict measured_pointer_delayed_twins(const MeasurementScheme &scheme,
                                           const StateVector &psi_a, const Tolerances &tol = {});

} // namespace twinlab
