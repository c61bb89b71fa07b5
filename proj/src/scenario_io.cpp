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

#include "twinlab/scenario_io.hpp"

#include <fstream>
#include <utility>

namespace twinlab {

namespace {

using nlohmann::json;

json complex_to_json(const Complex &z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json &j, const std::string &where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw ValidationError(where + ": expected a [re, im] pair");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

json vector_to_json(const Vector &v) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        rows.push_back(complex_to_json(v(i)));
    }
    return rows;
}

Vector vector_from_json(const json &j, const std::string &where) {
    if (!j.is_array() || j.empty()) {
        throw ValidationError(where + ": expected a nonempty list of [re, im] pairs");
    }
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (size_t i = 0; i < j.size(); ++i) {
        v(static_cast<Eigen::Index>(i)) =
            complex_from_json(j[i], where + "[" + std::to_string(i) + "]");
    }
    return v;
}

json matrix_to_json(const Matrix &m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) {
            row.push_back(complex_to_json(m(i, k)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const json &j, const std::string &where) {
    if (!j.is_array() || j.empty()) {
        throw ValidationError(where + ": expected a nonempty list of rows");
    }
    size_t rows = j.size();
    Matrix m(static_cast<Eigen::Index>(rows), 0);
    for (size_t i = 0; i < rows; ++i) {
        const json &row = j[i];
        if (!row.is_array() || row.size() != rows) {
            throw ValidationError(where + ": row " + std::to_string(i) +
                                  " does not make the matrix square");
        }
        if (i == 0) {
            m.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(rows));
        }
        for (size_t k = 0; k < rows; ++k) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = complex_from_json(
                row[k], where + "[" + std::to_string(i) + "][" + std::to_string(k) + "]");
        }
    }
    return m;
}

json tolerances_to_json(const Tolerances &tol) {
    return json{{"op", tol.op}, {"prob", tol.prob}, {"norm", tol.norm}, {"p_min", tol.p_min}};
}

} // namespace

json scenario_to_json(const Scenario &scenario) {
    json j;
    j["schema_version"] = "1";
    j["name"] = scenario.name;
    j["dimension"] = scenario.dim;
    j["state"] = vector_to_json(scenario.state.vec());

    json operators = json::object();
    for (const auto &[name, matrix] : scenario.operators) {
        operators[name] = matrix_to_json(matrix);
    }
    j["operators"] = std::move(operators);

    json observables = json::object();
    for (const auto &[name, spec] : scenario.observables) {
        if (spec.is_spectral()) {
            observables[name] =
                json{{"values", spec.values}, {"projectors", spec.projector_names}};
        } else {
            observables[name] =
                json{{"hermitian", spec.hermitian_name}, {"cluster_tol", spec.cluster_tol}};
        }
    }
    j["observables"] = std::move(observables);

    json unitaries = json::object();
    for (const auto &[name, u] : scenario.unitaries) {
        unitaries[name] = matrix_to_json(u.matrix());
    }
    j["unitaries"] = std::move(unitaries);

    json states = json::object();
    for (const auto &[name, s] : scenario.states) {
        states[name] = vector_to_json(s.vec());
    }
    j["states"] = std::move(states);

    json checks = json::array();
    for (const auto &check : scenario.checks) {
        json c;
        c["name"] = check.name;
        c["type"] = to_string(check.type);
        c["args"] = check.args;
        if (check.expect.has_value()) {
            c["expect"] = *check.expect;
        }
        if (check.type == CheckType::proposition1) {
            c["samples"] = check.samples;
            c["seed"] = check.seed;
        }
        if (check.tol_op) c["tol_op"] = *check.tol_op;
        if (check.tol_prob) c["tol_prob"] = *check.tol_prob;
        if (check.tol_norm) c["tol_norm"] = *check.tol_norm;
        checks.push_back(std::move(c));
    }
    j["checks"] = std::move(checks);
    return j;
}

Scenario scenario_from_json(const json &j, const Tolerances &tol) {
    if (!j.is_object()) {
        throw ValidationError("scenario file: top level must be an object");
    }
    if (!j.contains("schema_version") || !j["schema_version"].is_string()) {
        throw ValidationError("scenario file: missing schema_version");
    }
    if (j["schema_version"].get<std::string>() != "1") {
        throw ValidationError("scenario file: unsupported schema_version '" +
                              j["schema_version"].get<std::string>() + "'");
    }
    if (!j.contains("dimension") || !j["dimension"].is_number_integer()) {
        throw ValidationError("scenario file: missing integer dimension");
    }
    int dim = j["dimension"].get<int>();
    if (dim < 1) {
        throw ValidationError("scenario file: dimension must be at least 1");
    }
    if (!j.contains("state")) {
        throw ValidationError("scenario file: missing state");
    }
    Vector state = vector_from_json(j["state"], "state");
    if (state.size() != dim) {
        throw ValidationError("scenario file: state length does not match dimension");
    }

    // File-level tolerance defaults govern load-time type validation; the
    // caller's tolerances only seed the fields the file does not set.
    Tolerances defaults = tol;
    if (j.contains("tolerances")) {
        const json &t = j["tolerances"];
        if (!t.is_object()) {
            throw ValidationError("scenario file: tolerances must be an object");
        }
        defaults.op = t.value("op", defaults.op);
        defaults.prob = t.value("prob", defaults.prob);
        defaults.norm = t.value("norm", defaults.norm);
        defaults.p_min = t.value("p_min", defaults.p_min);
    }

    Scenario scenario{j.value("name", std::string("scenario")),
                      dim,
                      StateVector(std::move(state), defaults),
                      {},
                      {},
                      {},
                      {},
                      {},
                      defaults};

    if (j.contains("operators")) {
        if (!j["operators"].is_object()) {
            throw ValidationError("scenario file: operators must be a named map");
        }
        for (const auto &[name, value] : j["operators"].items()) {
            scenario.operators.emplace(name, matrix_from_json(value, "operators." + name));
        }
    }
    if (j.contains("unitaries")) {
        if (!j["unitaries"].is_object()) {
            throw ValidationError("scenario file: unitaries must be a named map");
        }
        for (const auto &[name, value] : j["unitaries"].items()) {
            // Typed on load: a non-unitary matrix here is a file error.
            scenario.unitaries.emplace(
                name, UnitaryEvolution(matrix_from_json(value, "unitaries." + name),
                                       scenario.defaults));
        }
    }
    if (j.contains("states")) {
        if (!j["states"].is_object()) {
            throw ValidationError("scenario file: states must be a named map");
        }
        for (const auto &[name, value] : j["states"].items()) {
            scenario.states.emplace(name, StateVector(vector_from_json(value, "states." + name),
                                                      scenario.defaults));
        }
    }
    if (j.contains("observables")) {
        if (!j["observables"].is_object()) {
            throw ValidationError("scenario file: observables must be a named map");
        }
        for (const auto &[name, value] : j["observables"].items()) {
            if (!value.is_object()) {
                throw ValidationError("observables." + name + ": expected an object");
            }
            ObservableSpec spec;
            if (value.contains("hermitian")) {
                spec.hermitian_name = value["hermitian"].get<std::string>();
                spec.cluster_tol = value.value("cluster_tol", spec.cluster_tol);
            } else if (value.contains("values") && value.contains("projectors")) {
                spec.values = value["values"].get<std::vector<double>>();
                spec.projector_names = value["projectors"].get<std::vector<std::string>>();
                if (spec.values.size() != spec.projector_names.size() || spec.values.empty()) {
                    throw ValidationError("observables." + name +
                                          ": need one value per projector");
                }
            } else {
                throw ValidationError("observables." + name +
                                      ": expected values/projectors or hermitian/cluster_tol");
            }
            scenario.observables.emplace(name, std::move(spec));
        }
    }

    if (j.contains("checks")) {
        if (!j["checks"].is_array()) {
            throw ValidationError("scenario file: checks must be a list");
        }
        int index = 0;
        for (const auto &value : j["checks"]) {
            if (!value.is_object() || !value.contains("type") || !value["type"].is_string()) {
                throw ValidationError("checks[" + std::to_string(index) +
                                      "]: expected an object with a type");
            }
            CheckRequest check;
            std::string type_name = value["type"].get<std::string>();
            auto type = check_type_from_string(type_name);
            if (!type.has_value()) {
                throw ValidationError("checks[" + std::to_string(index) + "]: unknown type '" +
                                      type_name + "'");
            }
            check.type = *type;
            check.name = value.value("name", type_name + "_" + std::to_string(index));
            if (value.contains("args")) {
                if (!value["args"].is_object()) {
                    throw ValidationError("checks[" + std::to_string(index) +
                                          "]: args must be a named map");
                }
                for (const auto &[role, operand] : value["args"].items()) {
                    if (!operand.is_string()) {
                        throw ValidationError("checks[" + std::to_string(index) + "]: argument '" +
                                              role + "' must name an operand");
                    }
                    check.args.emplace(role, operand.get<std::string>());
                }
            }
            if (value.contains("expect")) {
                if (!value["expect"].is_boolean()) {
                    throw ValidationError("checks[" + std::to_string(index) +
                                          "]: expect must be true or false (or omitted)");
                }
                check.expect = value["expect"].get<bool>();
            }
            check.samples = value.value("samples", check.samples);
            check.seed = value.value("seed", check.seed);
            if (value.contains("tol_op")) check.tol_op = value["tol_op"].get<double>();
            if (value.contains("tol_prob")) check.tol_prob = value["tol_prob"].get<double>();
            if (value.contains("tol_norm")) check.tol_norm = value["tol_norm"].get<double>();
            scenario.checks.push_back(std::move(check));
            ++index;
        }
    }
    return scenario;
}

void save_scenario(const Scenario &scenario, const std::string &path) {
    std::ofstream out(path);
    if (!out) {
        throw ValidationError("cannot open '" + path + "' for writing");
    }
    out << scenario_to_json(scenario).dump(2) << "\n";
}

Scenario load_scenario(const std::string &path, const Tolerances &tol) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open '" + path + "'");
    }
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error &e) {
        throw ValidationError(std::string("parse error in '") + path + "': " + e.what());
    }
    return scenario_from_json(j, tol);
}

json report_to_json(const Report &report) {
    json checks = json::array();
    for (const auto &r : report.records) {
        json c;
        c["name"] = r.name;
        c["type"] = r.type;
        if (r.verdict.has_value()) {
            c["verdict"] = *r.verdict;
        } else {
            c["verdict"] = nullptr;
        }
        if (r.expected.has_value()) {
            c["expected"] = *r.expected;
        }
        c["matched"] = r.matched;
        if (!r.error.empty()) {
            c["error"] = r.error;
        }
        c["residuals"] = r.residuals;
        c["tolerances_used"] = tolerances_to_json(r.tolerances_used);
        c["marginal"] = r.marginal;
        checks.push_back(std::move(c));
    }

    json j;
    j["checks"] = std::move(checks);
    j["summary"] = json{{"total", report.summary.total},
                        {"passed", report.summary.passed},
                        {"failed", report.summary.failed},
                        {"errored", report.summary.errored}};
    j["provenance"] = json{{"seed", report.seed},
                           {"tool_version", report.tool_version},
                           {"wall_time_s", report.wall_time_s}};
    return j;
}

} // namespace twinlab
