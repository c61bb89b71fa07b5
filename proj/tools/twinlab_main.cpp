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

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "twinlab/runner.hpp"
#include "twinlab/scenario_io.hpp"

namespace {

using namespace twinlab;

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitInvalid = 2;

void print_report(const Report &report) {
    for (const auto &r : report.records) {
        const char *status = !r.error.empty() ? "ERR " : (r.matched ? " ok " : "FAIL");
        std::printf("[%s] %s (%s)", status, r.name.c_str(), r.type.c_str());
        if (r.verdict.has_value()) {
            std::printf(" verdict=%s", *r.verdict ? "true" : "false");
        }
        if (r.expected.has_value()) {
            std::printf(" expected=%s", *r.expected ? "true" : "false");
        }
        auto def = r.residuals.find("definition");
        if (def != r.residuals.end()) {
            std::printf(" residual=%.3e", def->second);
        }
        if (r.marginal) {
            std::printf(" [marginal]");
        }
        if (!r.error.empty()) {
            std::printf(" error: %s", r.error.c_str());
        }
        std::printf("\n");
    }
    std::printf("summary: %d checks, %d passed, %d failed, %d errored (%.1f ms)\n",
                report.summary.total, report.summary.passed, report.summary.failed,
                report.summary.errored, report.wall_time_s * 1e3);
}

int report_exit_code(const Report &report) { return report.all_matched() ? kExitOk : kExitMismatch; }

Scenario build_demo(const std::string &name, double theta, const Tolerances &tol) {
    if (name == "singlet") {
        return singlet_scenario(tol);
    }
    if (name == "stern-gerlach") {
        return stern_gerlach_scenario(tol);
    }
    if (name == "scully") {
        return scully_scenario(theta, tol);
    }
    throw ValidationError("unknown demo '" + name + "' (expected singlet, stern-gerlach, scully)");
}

void print_demo_facts(const std::string &name, double theta, const Tolerances &tol) {
    if (name == "singlet") {
        Scenario s = singlet_scenario(tol);
        DiscreteObservable spin_a = resolve_observable(s, "spin_z_A", tol);
        std::printf("branch probabilities:");
        for (const auto &b : spin_a.branches()) {
            std::printf(" %.6f", b.projector.apply(s.state.vec()).squaredNorm());
        }
        Matrix rho = s.state.vec() * s.state.vec().adjoint();
        Matrix reduced = partial_trace(rho, 2, 2, Subsystem::A, tol);
        std::printf("\nreduced state deviation from I/2: %.3e\n",
                    (reduced - 0.5 * Matrix::Identity(2, 2)).norm());
    } else if (name == "stern-gerlach") {
        Scenario s = stern_gerlach_scenario(tol);
        EventProjector upper(s.operators.at("upper_path"), tol);
        EventProjector right(s.operators.at("right_region"), tol);
        const UnitaryEvolution &u = s.unitaries.at("transport");
        CollapseResult early = luders_collapse(s.state, upper, tol);
        CollapseResult late = luders_collapse(u.apply(s.state, tol), right, tol);
        std::printf("path probability %.6f, region probability %.6f\n", early.probability,
                    late.probability);
        std::printf("collapse-then-evolve vs evolve-then-collapse: %.3e\n",
                    (u.apply(early.post->vec()) - late.post->vec()).norm());
    } else if (name == "scully") {
        CoincidenceComparison c = scully_coincidence(theta, tol);
        std::printf("coincidence tables max gap: %.3e\n", c.max_gap);
        std::printf("weights: cos^2=%.6f sin^2=%.6f\n", std::cos(theta) * std::cos(theta),
                    std::sin(theta) * std::sin(theta));
    }
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"twinlab: verification of twin events, twin observables and delayed twins"};
    app.require_subcommand(1);

    std::optional<double> tol_op;
    std::optional<double> tol_prob;
    std::optional<double> tol_norm;
    bool json_output = false;

    auto add_common = [&](CLI::App *cmd) {
        cmd->add_flag("--json", json_output, "emit the full report as JSON");
        cmd->add_option("--tol-op", tol_op, "operator residual tolerance")
            ->envname("TWINLAB_TOL_OP");
        cmd->add_option("--tol-prob", tol_prob, "probability comparison tolerance");
        cmd->add_option("--tol-norm", tol_norm, "norm comparison tolerance");
    };

    std::string check_path;
    bool force = false;
    CLI::App *check_cmd = app.add_subcommand("check", "run the checks of a scenario file");
    check_cmd->add_option("file", check_path, "scenario file (JSON)")->required();
    check_cmd->add_flag("--force", force,
                        "compute the nonselective comparison even for non-twin observables");
    add_common(check_cmd);

    std::string demo_name;
    double theta = M_PI / 4.0;
    CLI::App *demo_cmd = app.add_subcommand("demo", "run a built-in scenario");
    demo_cmd->add_option("name", demo_name, "singlet | stern-gerlach | scully")->required();
    demo_cmd->add_option("--theta", theta, "entanglement angle for the scully demo");
    add_common(demo_cmd);

    std::string export_name;
    std::string export_path;
    CLI::App *export_cmd =
        app.add_subcommand("export", "write a built-in scenario to a scenario file");
    export_cmd->add_option("name", export_name, "singlet | stern-gerlach | scully")->required();
    export_cmd->add_option("-o,--output", export_path, "output path (default <name>.json)");
    export_cmd->add_option("--theta", theta, "entanglement angle for the scully scenario");

    std::string suite_name;
    int sweep_dim = 8;
    int sweep_trials = 100;
    std::uint64_t sweep_seed = 42;
    CLI::App *sweep_cmd = app.add_subcommand("sweep", "run a seeded property sweep");
    sweep_cmd
        ->add_option("--suite", suite_name,
                     "theorem1 | theorem3 | corollary1 | theorem5 | theorem7 | proposition1 | "
                     "measurement")
        ->required();
    sweep_cmd->add_option("--dim", sweep_dim, "Hilbert space dimension (2..64)");
    sweep_cmd->add_option("--trials", sweep_trials, "number of seeded trials");
    sweep_cmd->add_option("--seed", sweep_seed, "base seed; trial i uses seed + i");
    add_common(sweep_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitInvalid;
    }

    Tolerances tol;
    if (tol_op) tol.op = *tol_op;
    if (tol_prob) tol.prob = *tol_prob;
    if (tol_norm) tol.norm = *tol_norm;
    RunOptions options;
    options.tol_op = tol_op;
    options.tol_prob = tol_prob;
    options.tol_norm = tol_norm;
    options.force = force;

    try {
        if (check_cmd->parsed()) {
            // Load-time type validation follows the file's own tolerance
            // defaults; the command-line overrides apply to the checks.
            Scenario scenario = load_scenario(check_path);
            validate_scenario(scenario);
            Report report = run_checks(scenario, options);
            if (json_output) {
                std::cout << report_to_json(report).dump(2) << "\n";
            } else {
                print_report(report);
            }
            return report_exit_code(report);
        }
        if (demo_cmd->parsed()) {
            Scenario scenario = build_demo(demo_name, theta, tol);
            Report report = run_checks(scenario, options);
            if (json_output) {
                std::cout << report_to_json(report).dump(2) << "\n";
            } else {
                std::printf("demo: %s\n", scenario.name.c_str());
                print_report(report);
                print_demo_facts(demo_name, theta, tol);
            }
            return report_exit_code(report);
        }
        if (export_cmd->parsed()) {
            Scenario scenario = build_demo(export_name, theta, tol);
            std::string path = export_path.empty() ? export_name + ".json" : export_path;
            save_scenario(scenario, path);
            std::fprintf(stderr, "wrote %s\n", path.c_str());
            return kExitOk;
        }
        if (sweep_cmd->parsed()) {
            auto suite = sweep_suite_from_string(suite_name);
            if (!suite.has_value()) {
                throw ValidationError("unknown sweep suite '" + suite_name + "'");
            }
            SweepResult result = run_sweep(*suite, sweep_dim, sweep_trials, sweep_seed, tol);
            if (json_output) {
                std::cout << report_to_json(sweep_report(result)).dump(2) << "\n";
            } else {
                std::printf("sweep %s: dim=%d trials=%d seed=%llu\n", to_string(result.suite),
                            result.dim, result.trials,
                            static_cast<unsigned long long>(result.seed));
                std::printf("checks run: %d, disagreements: %d, max residual: %.3e\n",
                            result.checks_run, result.disagreements, result.max_residual);
                for (const auto &note : result.notes) {
                    std::printf("  %s\n", note.c_str());
                }
            }
            return result.ok() ? kExitOk : kExitMismatch;
        }
    } catch (const Error &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInvalid;
    }
    return kExitInvalid;
}
