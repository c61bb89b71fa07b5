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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "twinlab/measurement.hpp"

namespace twinlab {

/// Check types runnable from a scenario; each maps one-to-one onto a public
/// operation of the math modules.
enum class CheckType {
    simultaneous_twin,
    theorem1,
    theorem2,
    class_membership,
    twin_observables,
    corollary1,
    delayed_twin,
    theorem5,
    theorem6,
    theorem7,
    proposition1,
    proposition2,
    pair_equivalence,
    chain,
    calibration,
    probability_reproducibility,
    branch_relation,
    delayed_twin_observables,
};

const char *to_string(CheckType type);
std::optional<CheckType> check_type_from_string(const std::string &name);

/// One check request: named operand references plus an optional expected
/// verdict (absent = run and report, nothing to contradict).
struct CheckRequest {
    std::string name;
    CheckType type = CheckType::simultaneous_twin;
    std::map<std::string, std::string> args;
    std::optional<bool> expect;
    /// Sampling controls, read by proposition1 only.
    int samples = 20;
    std::uint64_t seed = 1;
    /// Per-check tolerance overrides.
    std::optional<double> tol_op;
    std::optional<double> tol_prob;
    std::optional<double> tol_norm;
};

/// How a named observable is built from the scenario's operand maps: either a
/// spectral form over named projectors, or a clustered eigendecomposition of
/// a named Hermitian operator.
struct ObservableSpec {
    std::vector<double> values;
    std::vector<std::string> projector_names;
    std::string hermitian_name;
    double cluster_tol = 1e-8;

    bool is_spectral() const { return hermitian_name.empty(); }
};

/// Fully specified, serializable verification instance: one system state,
/// named operands, and a list of checks with expected verdicts.
struct Scenario {
    std::string name;
    int dim = 0;
    StateVector state;
    std::map<std::string, Matrix> operators;
    std::map<std::string, ObservableSpec> observables;
    std::map<std::string, UnitaryEvolution> unitaries;
    std::map<std::string, StateVector> states;
    std::vector<CheckRequest> checks;
    /// File-level tolerance defaults.
    Tolerances defaults;
};

/// Resolves a named observable against the scenario's operand maps.
DiscreteObservable resolve_observable(const Scenario &scenario, const std::string &name,
                                      const Tolerances &tol);

/// Spin singlet of two qubits: the z spin of one side and the negated z spin
/// of the other are twin observables, with both branch probabilities 1/2 and
/// maximally mixed reduced states.
Scenario singlet_scenario(const Tolerances &tol = {});

/// Spin-1/2 preparation geometry: passage through the open upper path at the
/// early moment and arrival in the right-hand region later are delayed twins
/// under the transport unitary.
Scenario stern_gerlach_scenario(const Tolerances &tol = {});

/// Two-photon coincidence setup: the right-side detection record read at the
/// early moment and the same record read after the left photon has flown are
/// delayed twin observables, so collapsing early or late gives identical
/// statistics. `entanglement_angle` in [0, pi/2] sets the Schmidt weights
/// cos^2 / sin^2.
Scenario scully_scenario(double entanglement_angle, const Tolerances &tol = {});

/// Typed building blocks of the coincidence scenario, for direct use.
struct ScullyPieces {
    StateVector initial_state;
    DiscreteObservable detector;
    DiscreteObservable detector_delayed;
    UnitaryEvolution evolution;
    /// Fixed probe observable on the left photon, measured at the late moment.
    DiscreteObservable left_probe;
};

ScullyPieces scully_pieces(double entanglement_angle, const Tolerances &tol = {});

/// Joint outcome distributions over (detector branch) x (probe branch) for the
/// two orderings: collapse at the early moment then evolve, versus evolve then
/// collapse at the late moment.
struct CoincidenceComparison {
    Eigen::MatrixXd collapse_first;
    Eigen::MatrixXd evolve_first;
    double max_gap = 0.0;
};

CoincidenceComparison scully_coincidence(double entanglement_angle, const Tolerances &tol = {});

} // namespace twinlab
