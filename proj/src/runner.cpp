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

#include "twinlab/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace twinlab {

namespace {

// Pinned bound for the nonselective commutation residual; the statement is an
// exact operator identity, so only rounding noise is allowed.
constexpr double kNonselectiveBound = 1e-10;

Tolerances effective_tolerances(const Scenario &scenario, const CheckRequest &check,
                                const RunOptions &options) {
    Tolerances tol = scenario.defaults;
    if (check.tol_op) tol.op = *check.tol_op;
    if (check.tol_prob) tol.prob = *check.tol_prob;
    if (check.tol_norm) tol.norm = *check.tol_norm;
    if (options.tol_op) tol.op = *options.tol_op;
    if (options.tol_prob) tol.prob = *options.tol_prob;
    if (options.tol_norm) tol.norm = *options.tol_norm;
    return tol;
}

const std::string &arg_ref(const CheckRequest &check, const std::string &role) {
    auto it = check.args.find(role);
    if (it == check.args.end()) {
        throw ValidationError("check '" + check.name + "' (" + to_string(check.type) +
                              "): missing argument '" + role + "'");
    }
    return it->second;
}

const Matrix &operator_ref(const Scenario &scenario, const std::string &name) {
    auto it = scenario.operators.find(name);
    if (it == scenario.operators.end()) {
        throw ValidationError("unknown operator '" + name + "'");
    }
    return it->second;
}

EventProjector projector_arg(const Scenario &scenario, const CheckRequest &check,
                             const std::string &role, const Tolerances &tol) {
    return EventProjector(operator_ref(scenario, arg_ref(check, role)), tol);
}

const UnitaryEvolution &unitary_arg(const Scenario &scenario, const CheckRequest &check,
                                    const std::string &role) {
    const std::string &name = arg_ref(check, role);
    auto it = scenario.unitaries.find(name);
    if (it == scenario.unitaries.end()) {
        throw ValidationError("unknown unitary '" + name + "'");
    }
    return it->second;
}

const StateVector &state_arg(const Scenario &scenario, const CheckRequest &check,
                             const std::string &role) {
    const std::string &name = arg_ref(check, role);
    auto it = scenario.states.find(name);
    if (it == scenario.states.end()) {
        throw ValidationError("unknown state '" + name + "'");
    }
    return it->second;
}

DiscreteObservable observable_arg(const Scenario &scenario, const CheckRequest &check,
                                  const std::string &role, const Tolerances &tol) {
    return resolve_observable(scenario, arg_ref(check, role), tol);
}

void record_conditions(CheckRecord &record, const TwinVerdict &verdict) {
    record.residuals["definition"] = verdict.residual;
    for (const auto &c : verdict.per_condition) {
        record.residuals[c.label] = c.residual;
    }
}

/// The theorem verifiers assert an equivalence; their check verdict is
/// whether every condition set agrees with the defining equality.
bool sets_agree(const TwinVerdict &verdict, const std::vector<std::string> &prefixes) {
    for (const auto &p : prefixes) {
        if (condition_set_holds(verdict, p) != verdict.is_twin) {
            return false;
        }
    }
    return true;
}

MeasurementScheme scheme_from_args(const Scenario &scenario, const CheckRequest &check,
                                   const Tolerances &tol) {
    return MeasurementScheme(observable_arg(scenario, check, "measured", tol),
                             observable_arg(scenario, check, "pointer", tol),
                             state_arg(scenario, check, "pointer_init"),
                             unitary_arg(scenario, check, "premeasurement"),
                             MeasurementKind::nondemolition, tol);
}

CheckRecord run_one(const Scenario &scenario, const CheckRequest &check,
                    const RunOptions &options) {
    CheckRecord record;
    record.name = check.name;
    record.type = to_string(check.type);
    record.expected = check.expect;
    Tolerances tol = effective_tolerances(scenario, check, options);
    record.tolerances_used = tol;

    const StateVector &psi = scenario.state;
    switch (check.type) {
        case CheckType::simultaneous_twin: {
            TwinVerdict v = is_twin(projector_arg(scenario, check, "E", tol),
                                    projector_arg(scenario, check, "F", tol), psi, tol);
            record.verdict = v.is_twin;
            record.marginal = v.marginal;
            record.residuals["definition"] = v.residual;
            break;
        }
        case CheckType::theorem1: {
            TwinVerdict v = verify_theorem1(projector_arg(scenario, check, "E", tol),
                                            projector_arg(scenario, check, "F", tol), psi, tol);
            record.verdict = sets_agree(v, {"(i)", "(ii)"});
            record.marginal = v.marginal;
            record_conditions(record, v);
            break;
        }
        case CheckType::theorem2: {
            TwinVerdict v = verify_theorem2(projector_arg(scenario, check, "E", tol),
                                            projector_arg(scenario, check, "F", tol), psi, tol);
            record.verdict = sets_agree(v, {"(i)", "(ii)"});
            record.marginal = v.marginal;
            record_conditions(record, v);
            break;
        }
        case CheckType::class_membership: {
            EventProjector candidate = projector_arg(scenario, check, "candidate", tol);
            EventProjector base = projector_arg(scenario, check, "E", tol);
            ClassStructure s = class_structure(candidate, base, psi, tol);
            record.verdict = in_class(candidate, base, psi, tol);
            record.residuals["definition"] = s.definition_residual;
            record.residuals["projector"] = s.projector_residual;
            record.residuals["state_orthogonality"] = s.state_orthogonality;
            record.residuals["minimal_orthogonality"] = s.minimal_orthogonality;
            record.residuals["minimality"] = s.minimality_residual;
            break;
        }
        case CheckType::twin_observables: {
            TwinVerdict v = is_twin_observables(observable_arg(scenario, check, "O", tol),
                                                observable_arg(scenario, check, "O_prime", tol),
                                                psi, tol);
            record.verdict = v.is_twin;
            record.marginal = v.marginal;
            record.residuals["definition"] = v.residual;
            break;
        }
        case CheckType::corollary1: {
            TwinVerdict v = verify_corollary1(observable_arg(scenario, check, "O", tol),
                                              observable_arg(scenario, check, "O_prime", tol), psi,
                                              tol);
            record.verdict = sets_agree(v, {"(i)", "(ii)"});
            record.marginal = v.marginal;
            record_conditions(record, v);
            break;
        }
        case CheckType::delayed_twin: {
            TwinVerdict v = is_delayed_twin(projector_arg(scenario, check, "E", tol),
                                            projector_arg(scenario, check, "F", tol), psi,
                                            unitary_arg(scenario, check, "U"), tol);
            record.verdict = v.is_twin;
            record.marginal = v.marginal;
            record.residuals["definition"] = v.residual;
            break;
        }
        case CheckType::theorem5: {
            TwinVerdict v = verify_theorem5(projector_arg(scenario, check, "E", tol),
                                            projector_arg(scenario, check, "F", tol), psi,
                                            unitary_arg(scenario, check, "U"), tol);
            record.verdict = sets_agree(v, {"(i)", "(ii)", "(iii)", "(iv)"});
            record.marginal = v.marginal;
            record_conditions(record, v);
            break;
        }
        case CheckType::theorem6: {
            TwinVerdict v = verify_theorem6(observable_arg(scenario, check, "O", tol),
                                            observable_arg(scenario, check, "O_prime", tol), psi,
                                            unitary_arg(scenario, check, "U"), tol);
            record.verdict = sets_agree(v, {"(i)", "(ii)"});
            record.marginal = v.marginal;
            record_conditions(record, v);
            break;
        }
        case CheckType::theorem7: {
            DiscreteObservable left = observable_arg(scenario, check, "O", tol);
            DiscreteObservable right = observable_arg(scenario, check, "O_prime", tol);
            const UnitaryEvolution &u = unitary_arg(scenario, check, "U");
            TwinVerdict tw = is_delayed_twin_observables(left, right, psi, u, tol);
            record.residuals["definition"] = tw.residual;
            record.marginal = tw.marginal;
            if (!tw.is_twin && !options.force) {
                record.verdict = false;
                break;
            }
            NonselectiveComparison cmp = compare_nonselective(left, right, psi, u, tol, true);
            record.residuals["frobenius"] = cmp.frobenius_residual;
            record.residuals["max_weight_gap"] = cmp.max_weight_gap;
            record.verdict = tw.is_twin && cmp.frobenius_residual <= tol.op &&
                             cmp.max_weight_gap <= tol.prob;
            break;
        }
        case CheckType::proposition1: {
            Proposition1Report rep =
                verify_proposition1(projector_arg(scenario, check, "E", tol), psi,
                                    unitary_arg(scenario, check, "U"), check.samples, check.seed,
                                    tol);
            record.verdict = rep.ok;
            record.residuals["forward_max"] = rep.forward.max_residual;
            record.residuals["backward_max"] = rep.backward.max_residual;
            record.residuals["minimal_transport"] = rep.minimal_transport_residual;
            break;
        }
        case CheckType::proposition2: {
            Proposition2Report rep = verify_proposition2(
                projector_arg(scenario, check, "E", tol),
                projector_arg(scenario, check, "E_prime", tol),
                projector_arg(scenario, check, "F", tol),
                projector_arg(scenario, check, "F_prime", tol), psi,
                unitary_arg(scenario, check, "U"), tol);
            record.verdict = rep.ok;
            record.residuals["a_delayed"] = rep.part_a.lhs_residual;
            record.residuals["a_simultaneous"] = rep.part_a.rhs_residual;
            record.residuals["b_delayed"] = rep.part_b.lhs_residual;
            record.residuals["b_simultaneous"] = rep.part_b.rhs_residual;
            break;
        }
        case CheckType::pair_equivalence: {
            EventProjector e = projector_arg(scenario, check, "E", tol);
            EventProjector f = projector_arg(scenario, check, "F", tol);
            EventProjector e2 = projector_arg(scenario, check, "E_prime", tol);
            EventProjector f2 = projector_arg(scenario, check, "F_prime", tol);
            const UnitaryEvolution &u = unitary_arg(scenario, check, "U");
            record.verdict = pairs_equivalent(e, f, e2, f2, psi, u, tol);
            record.residuals["initial"] = is_twin(e, e2, psi, tol).residual;
            record.residuals["delayed"] = is_twin(f, f2, u.apply(psi, tol), tol).residual;
            break;
        }
        case CheckType::chain: {
            TwinVerdict v = chain(observable_arg(scenario, check, "O", tol),
                                  observable_arg(scenario, check, "O_prime", tol),
                                  observable_arg(scenario, check, "O_second", tol), psi,
                                  unitary_arg(scenario, check, "U1"),
                                  unitary_arg(scenario, check, "U2"), tol);
            record.verdict = v.is_twin;
            record.marginal = v.marginal;
            record.residuals["definition"] = v.residual;
            break;
        }
        case CheckType::calibration: {
            MeasurementScheme scheme = scheme_from_args(scenario, check, tol);
            MeasurementVerdict v = check.args.count("psi_a") != 0
                                       ? check_calibration(scheme,
                                                           state_arg(scenario, check, "psi_a"), tol)
                                       : check_calibration(scheme, tol);
            record.verdict = v.pass;
            record.residuals["max_residual"] = v.max_residual;
            break;
        }
        case CheckType::probability_reproducibility: {
            MeasurementScheme scheme = scheme_from_args(scenario, check, tol);
            MeasurementVerdict v = check_probability_reproducibility(
                scheme, state_arg(scenario, check, "psi_a"), tol);
            record.verdict = v.pass;
            record.residuals["max_gap"] = v.max_residual;
            break;
        }
        case CheckType::branch_relation: {
            MeasurementScheme scheme = scheme_from_args(scenario, check, tol);
            BranchRelationVerdict v =
                check_branch_relation(scheme, state_arg(scenario, check, "psi_a"), tol);
            record.verdict = v.pass;
            record.residuals["max_residual"] = v.max_residual;
            break;
        }
        case CheckType::delayed_twin_observables: {
            TwinVerdict v = is_delayed_twin_observables(
                observable_arg(scenario, check, "O", tol),
                observable_arg(scenario, check, "O_prime", tol), psi,
                unitary_arg(scenario, check, "U"), tol);
            record.verdict = v.is_twin;
            record.marginal = v.marginal;
            record.residuals["definition"] = v.residual;
            break;
        }
    }

    record.matched = !record.expected.has_value() || record.verdict == record.expected;
    return record;
}

/// Required operand kinds per check type, for load-time name resolution.
struct ArgSpec {
    const char *role;
    enum Kind { op, observable, unitary, state } kind;
    bool optional = false;
};

std::vector<ArgSpec> args_for(CheckType type) {
    switch (type) {
        case CheckType::simultaneous_twin:
        case CheckType::theorem1:
        case CheckType::theorem2:
            return {{"E", ArgSpec::op}, {"F", ArgSpec::op}};
        case CheckType::class_membership:
            return {{"candidate", ArgSpec::op}, {"E", ArgSpec::op}};
        case CheckType::twin_observables:
        case CheckType::corollary1:
            return {{"O", ArgSpec::observable}, {"O_prime", ArgSpec::observable}};
        case CheckType::delayed_twin:
        case CheckType::theorem5:
            return {{"E", ArgSpec::op}, {"F", ArgSpec::op}, {"U", ArgSpec::unitary}};
        case CheckType::theorem6:
        case CheckType::theorem7:
        case CheckType::delayed_twin_observables:
            return {{"O", ArgSpec::observable},
                    {"O_prime", ArgSpec::observable},
                    {"U", ArgSpec::unitary}};
        case CheckType::proposition1:
            return {{"E", ArgSpec::op}, {"U", ArgSpec::unitary}};
        case CheckType::proposition2:
            return {{"E", ArgSpec::op},
                    {"E_prime", ArgSpec::op},
                    {"F", ArgSpec::op},
                    {"F_prime", ArgSpec::op},
                    {"U", ArgSpec::unitary}};
        case CheckType::pair_equivalence:
            return {{"E", ArgSpec::op},
                    {"F", ArgSpec::op},
                    {"E_prime", ArgSpec::op},
                    {"F_prime", ArgSpec::op},
                    {"U", ArgSpec::unitary}};
        case CheckType::chain:
            return {{"O", ArgSpec::observable},
                    {"O_prime", ArgSpec::observable},
                    {"O_second", ArgSpec::observable},
                    {"U1", ArgSpec::unitary},
                    {"U2", ArgSpec::unitary}};
        case CheckType::calibration:
            return {{"measured", ArgSpec::observable},
                    {"pointer", ArgSpec::observable},
                    {"pointer_init", ArgSpec::state},
                    {"premeasurement", ArgSpec::unitary},
                    {"psi_a", ArgSpec::state, true}};
        case CheckType::probability_reproducibility:
        case CheckType::branch_relation:
            return {{"measured", ArgSpec::observable},
                    {"pointer", ArgSpec::observable},
                    {"pointer_init", ArgSpec::state},
                    {"premeasurement", ArgSpec::unitary},
                    {"psi_a", ArgSpec::state}};
    }
    return {};
}

} // namespace

void validate_scenario(const Scenario &scenario) {
    if (scenario.dim < 1) {
        throw ValidationError("scenario: dimension must be at least 1");
    }
    if (scenario.state.dim() != scenario.dim) {
        throw ValidationError("scenario: state length does not match the declared dimension");
    }
    for (const auto &[name, matrix] : scenario.operators) {
        if (matrix.rows() != matrix.cols() || matrix.rows() < 1) {
            throw ValidationError("operator '" + name + "' is not a nonempty square matrix");
        }
    }
    for (const auto &[name, spec] : scenario.observables) {
        (void)spec;
        resolve_observable(scenario, name, scenario.defaults);
    }
    for (const auto &check : scenario.checks) {
        for (const ArgSpec &spec : args_for(check.type)) {
            auto it = check.args.find(spec.role);
            if (it == check.args.end()) {
                if (spec.optional) {
                    continue;
                }
                throw ValidationError("check '" + check.name + "' (" + to_string(check.type) +
                                      "): missing argument '" + spec.role + "'");
            }
            const std::string &name = it->second;
            bool found = false;
            switch (spec.kind) {
                case ArgSpec::op: found = scenario.operators.count(name) != 0; break;
                case ArgSpec::observable: found = scenario.observables.count(name) != 0; break;
                case ArgSpec::unitary: found = scenario.unitaries.count(name) != 0; break;
                case ArgSpec::state: found = scenario.states.count(name) != 0; break;
            }
            if (!found) {
                throw ValidationError("check '" + check.name + "': argument '" + spec.role +
                                      "' references unknown operand '" + name + "'");
            }
        }
    }
}

Report run_checks(const Scenario &scenario, const RunOptions &options) {
    auto started = std::chrono::steady_clock::now();
    Report report;
    report.seed = options.seed;
    for (const auto &check : scenario.checks) {
        try {
            report.records.push_back(run_one(scenario, check, options));
        } catch (const Error &e) {
            CheckRecord record;
            record.name = check.name;
            record.type = to_string(check.type);
            record.expected = check.expect;
            record.matched = false;
            record.error = e.what();
            record.tolerances_used = effective_tolerances(scenario, check, options);
            report.records.push_back(std::move(record));
        }
    }
    report.finalize_summary();
    report.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return report;
}

const char *to_string(SweepSuite suite) {
    switch (suite) {
        case SweepSuite::theorem1: return "theorem1";
        case SweepSuite::theorem3: return "theorem3";
        case SweepSuite::corollary1: return "corollary1";
        case SweepSuite::theorem5: return "theorem5";
        case SweepSuite::theorem7: return "theorem7";
        case SweepSuite::proposition1: return "proposition1";
        case SweepSuite::measurement: return "measurement";
    }
    return "unknown";
}

std::optional<SweepSuite> sweep_suite_from_string(const std::string &name) {
    for (SweepSuite s :
         {SweepSuite::theorem1, SweepSuite::theorem3, SweepSuite::corollary1, SweepSuite::theorem5,
          SweepSuite::theorem7, SweepSuite::proposition1, SweepSuite::measurement}) {
        if (name == to_string(s)) {
            return s;
        }
    }
    return std::nullopt;
}

namespace {

void note_disagreement(SweepResult &result, int trial, const std::string &what) {
    ++result.disagreements;
    if (result.notes.size() < 10) {
        result.notes.push_back("trial " + std::to_string(trial) + ": " + what);
    }
}

void sweep_theorem1(SweepResult &result, int trial, Rng &rng, int dim, const Tolerances &tol) {
    StateVector psi = random_state(dim, rng);
    EventProjector e = random_projector(dim, rng.uniform_int(0, dim), rng);
    bool constructed = trial % 2 == 0;
    EventProjector f =
        constructed
            ? sample_twin(e, psi, rng.uniform_int(0, twin_class(e, psi, tol).max_extra_rank()),
                          rng, tol)
            : random_projector(dim, rng.uniform_int(0, dim), rng);

    TwinVerdict def = is_twin(e, f, psi, tol);
    if (constructed && !def.is_twin) {
        note_disagreement(result, trial, "constructed twin rejected by the definition");
    }
    if (def.is_twin) {
        result.max_residual = std::max(result.max_residual, def.residual);
    }

    TwinVerdict t1 = verify_theorem1(e, f, psi, tol);
    if (condition_set_holds(t1, "(i)") != def.is_twin) {
        note_disagreement(result, trial, "theorem1 condition (i) disagrees with the definition");
    }
    if (condition_set_holds(t1, "(ii)") != def.is_twin) {
        note_disagreement(result, trial, "theorem1 condition (ii) disagrees with the definition");
    }
    result.checks_run += 2;

    double p_e = e.apply(psi.vec()).squaredNorm();
    double p_f = f.apply(psi.vec()).squaredNorm();
    if (p_e > tol.p_min && p_f > tol.p_min) {
        TwinVerdict t2 = verify_theorem2(e, f, psi, tol);
        if (condition_set_holds(t2, "(i)") != def.is_twin) {
            note_disagreement(result, trial, "theorem2 condition (i) disagrees");
        }
        if (condition_set_holds(t2, "(ii)") != def.is_twin) {
            note_disagreement(result, trial, "theorem2 condition (ii) disagrees");
        }
        result.checks_run += 2;
    }
}

void sweep_theorem3(SweepResult &result, int trial, Rng &rng, int dim, const Tolerances &tol) {
    StateVector psi = random_state(dim, rng);
    EventProjector e = random_projector(dim, rng.uniform_int(1, dim), rng);
    int room = twin_class(e, psi, tol).max_extra_rank();

    for (int i = 0; i < 25; ++i) {
        EventProjector member = sample_twin(e, psi, rng.uniform_int(0, room), rng, tol);
        ClassStructure s = class_structure(member, e, psi, tol);
        if (!s.member || !s.structure_ok) {
            note_disagreement(result, trial, "sampled member fails membership or structure");
        }
        result.max_residual = std::max({result.max_residual, s.projector_residual,
                                        s.state_orthogonality, s.minimal_orthogonality,
                                        s.minimality_residual});
        ++result.checks_run;
    }
    for (int i = 0; i < 5; ++i) {
        EventProjector candidate = random_projector(dim, rng.uniform_int(0, dim), rng);
        ClassStructure s = class_structure(candidate, e, psi, tol);
        if (s.member != s.structure_ok) {
            note_disagreement(result, trial, "membership and structure verdicts disagree");
        }
        ++result.checks_run;
    }
}

void sweep_corollary1(SweepResult &result, int trial, Rng &rng, int dim, const Tolerances &tol) {
    StateVector psi = random_state(dim, rng);
    int max_branches = std::min(4, dim);
    DiscreteObservable left = random_observable(dim, rng.uniform_int(2, max_branches), rng, tol);
    bool constructed = trial % 2 == 0;
    DiscreteObservable right =
        constructed ? sample_twin_observable(left, psi, rng, tol)
                    : random_observable(dim, rng.uniform_int(2, max_branches), rng, tol);

    TwinVerdict def = is_twin_observables(left, right, psi, tol);
    if (constructed && !def.is_twin) {
        note_disagreement(result, trial, "constructed twin observable rejected");
    }
    if (def.is_twin) {
        result.max_residual = std::max(result.max_residual, def.residual);
    }
    TwinVerdict c1 = verify_corollary1(left, right, psi, tol);
    if (condition_set_holds(c1, "(i)") != def.is_twin) {
        note_disagreement(result, trial, "corollary1 condition (i) disagrees");
    }
    if (condition_set_holds(c1, "(ii)") != def.is_twin) {
        note_disagreement(result, trial, "corollary1 condition (ii) disagrees");
    }
    result.checks_run += 2;
}

void sweep_theorem5(SweepResult &result, int trial, Rng &rng, int dim, const Tolerances &tol) {
    StateVector psi0 = random_state(dim, rng);
    UnitaryEvolution u = haar_unitary(dim, rng);
    EventProjector e = random_projector(dim, rng.uniform_int(1, dim), rng);
    while (e.apply(psi0.vec()).squaredNorm() <= tol.p_min) {
        e = random_projector(dim, rng.uniform_int(1, dim), rng);
    }
    StateVector psi_t = u.apply(psi0, tol);
    EventProjector moved = u.transport(e, tol);
    bool constructed = trial % 2 == 0;
    EventProjector f =
        constructed ? sample_twin(moved, psi_t,
                                  rng.uniform_int(0, twin_class(moved, psi_t, tol).max_extra_rank()),
                                  rng, tol)
                    : random_projector(dim, rng.uniform_int(0, dim), rng);

    TwinVerdict def = is_delayed_twin(e, f, psi0, u, tol);
    if (constructed && !def.is_twin) {
        note_disagreement(result, trial, "constructed delayed twin rejected");
    }
    if (def.is_twin) {
        result.max_residual = std::max(result.max_residual, def.residual);
    }
    TwinVerdict t5 = verify_theorem5(e, f, psi0, u, tol);
    for (const char *set : {"(i)", "(ii)", "(iii)", "(iv)"}) {
        if (condition_set_holds(t5, set) != def.is_twin) {
            note_disagreement(result, trial,
                              std::string("theorem5 condition set ") + set + " disagrees");
        }
        ++result.checks_run;
    }
}

void sweep_theorem7(SweepResult &result, int trial, Rng &rng, int dim, const Tolerances &tol) {
    StateVector psi0 = random_state(dim, rng);
    UnitaryEvolution u = haar_unitary(dim, rng);
    int max_branches = std::min(4, dim);
    DiscreteObservable left = random_observable(dim, rng.uniform_int(2, max_branches), rng, tol);
    DiscreteObservable right = trial % 2 == 0
                                   ? u.transport(left, tol)
                                   : sample_delayed_twin_observable(left, psi0, u, rng, tol);
    NonselectiveComparison cmp = compare_nonselective(left, right, psi0, u, tol);
    result.max_residual =
        std::max({result.max_residual, cmp.frobenius_residual, cmp.max_weight_gap});
    if (cmp.frobenius_residual > kNonselectiveBound || cmp.max_weight_gap > kNonselectiveBound) {
        note_disagreement(result, trial, "nonselective collapse does not commute with evolution");
    }
    ++result.checks_run;
}

void sweep_proposition1(SweepResult &result, int trial, Rng &rng, int dim, const Tolerances &tol) {
    StateVector psi0 = random_state(dim, rng);
    UnitaryEvolution u = haar_unitary(dim, rng);
    EventProjector e = random_projector(dim, rng.uniform_int(0, dim), rng);
    Proposition1Report rep = verify_proposition1(e, psi0, u, 10, rng.next_seed(), tol);
    result.max_residual = std::max({result.max_residual, rep.forward.max_residual,
                                    rep.backward.max_residual, rep.minimal_transport_residual});
    if (!rep.ok) {
        note_disagreement(result, trial, "class transport failed");
    }
    ++result.checks_run;
}

void sweep_measurement(SweepResult &result, int trial, Rng &rng, int dim, const Tolerances &tol) {
    int dim_a = std::clamp(dim, 2, 4);
    int branches = rng.uniform_int(2, dim_a);
    int dim_b = rng.uniform_int(branches, 4);
    DiscreteObservable measured = random_observable(dim_a, branches, rng, tol);
    std::vector<double> pointer_values;
    for (int k = 0; k < branches; ++k) {
        pointer_values.push_back(k + 0.5 * rng.uniform());
    }

    MeasurementScheme scheme =
        build_nondemolition_premeasurement(measured, dim_b, pointer_values, tol);
    if (!check_calibration(scheme, tol).pass) {
        note_disagreement(result, trial, "nondemolition scheme fails calibration");
    }
    if (!check_nondemolition(scheme, tol).pass) {
        note_disagreement(result, trial, "nondemolition scheme fails value preservation");
    }
    for (int i = 0; i < 3; ++i) {
        StateVector psi_a = random_state(dim_a, rng);
        MeasurementVerdict repro = check_probability_reproducibility(scheme, psi_a, tol);
        BranchRelationVerdict relation = check_branch_relation(scheme, psi_a, tol);
        TwinVerdict twins = measured_pointer_delayed_twins(scheme, psi_a, tol);
        result.max_residual = std::max(
            {result.max_residual, repro.max_residual, relation.max_residual, twins.residual});
        if (!repro.pass || !relation.pass || !twins.is_twin) {
            note_disagreement(result, trial, "nondemolition scheme fails a measurement property");
        }
        result.checks_run += 3;
    }

    MeasurementScheme demolition = build_demolition_premeasurement(
        measured, dim_b, pointer_values, random_state(dim_a, rng), tol);
    if (!check_calibration(demolition, tol).pass) {
        note_disagreement(result, trial, "demolition scheme fails calibration");
    }
    if (check_nondemolition(demolition, tol).pass) {
        note_disagreement(result, trial, "demolition scheme preserves every measured value");
    }
    result.checks_run += 4;
}

} // namespace

SweepResult run_sweep(SweepSuite suite, int dim, int trials, std::uint64_t seed,
                      const Tolerances &tol) {
    if (dim < 2 || dim > 64) {
        throw ValidationError("run_sweep: dimension must lie in [2, 64]");
    }
    if (trials < 1) {
        throw ValidationError("run_sweep: need at least one trial");
    }
    SweepResult result;
    result.suite = suite;
    result.dim = dim;
    result.trials = trials;
    result.seed = seed;
    for (int trial = 0; trial < trials; ++trial) {
        Rng rng(seed + static_cast<std::uint64_t>(trial));
        switch (suite) {
            case SweepSuite::theorem1: sweep_theorem1(result, trial, rng, dim, tol); break;
            case SweepSuite::theorem3: sweep_theorem3(result, trial, rng, dim, tol); break;
            case SweepSuite::corollary1: sweep_corollary1(result, trial, rng, dim, tol); break;
            case SweepSuite::theorem5: sweep_theorem5(result, trial, rng, dim, tol); break;
            case SweepSuite::theorem7: sweep_theorem7(result, trial, rng, dim, tol); break;
            case SweepSuite::proposition1: sweep_proposition1(result, trial, rng, dim, tol); break;
            case SweepSuite::measurement: sweep_measurement(result, trial, rng, dim, tol); break;
        }
    }
    return result;
}

Report sweep_report(const SweepResult &result) {
    Report report;
    report.seed = result.seed;
    CheckRecord record;
    record.name = std::string("sweep_") + to_string(result.suite);
    record.type = "sweep";
    record.verdict = result.ok();
    record.expected = true;
    record.matched = result.ok();
    record.residuals["max_residual"] = result.max_residual;
    record.residuals["disagreements"] = result.disagreements;
    record.residuals["checks_run"] = result.checks_run;
    record.residuals["trials"] = result.trials;
    record.residuals["dim"] = result.dim;
    report.records.push_back(std::move(record));
    report.finalize_summary();
    return report;
}

} // namespace twinlab
