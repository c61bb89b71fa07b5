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

#include <optional>

#include "twinlab/report.hpp"
#include "twinlab/scenarios.hpp"

namespace twinlab {

struct RunOptions {
    /// Command-line tolerance overrides; highest priority, above file-level
    /// and per-check settings.
    std::optional<double> tol_op;
    std::optional<double> tol_prob;
    std::optional<double> tol_norm;
    /// Compute the nonselective comparison even for non-twin observables.
    bool force = false;
    /// Recorded in the report provenance.
    std::uint64_t seed = 0;
};

/// Structural validation beyond parsing: every referenced operand resolves,
/// observables build, per-check argument lists are complete. Throws
/// ValidationError; callers translate that into the invalid-input exit code.
void validate_scenario(const Scenario &scenario);

/// Runs every check in order. Dimension or validation errors inside a check
/// mark that check errored and execution continues.
Report run_checks(const Scenario &scenario, const RunOptions &options = {});

enum class SweepSuite {
    theorem1,
    theorem3,
    corollary1,
    theorem5,
    theorem7,
    proposition1,
    measurement,
};

const char *to_string(SweepSuite suite);
std::optional<SweepSuite> sweep_suite_from_string(const std::string &name);

/// Outcome of a seeded property sweep: instance counts, verdict
/// disagreements between the definition and the theorem characterizations,
/// and the largest residual seen on twin instances.
struct SweepResult {
    SweepSuite suite = SweepSuite::theorem1;
    int dim = 0;
    int trials = 0;
    std::uint64_t seed = 0;
    int disagreements = 0;
    int checks_run = 0;
    double max_residual = 0.0;
    /// First few diagnostics, one line per disagreement.
    std::vector<std::string> notes;

    bool ok() const { return disagreements == 0; }
};

/// Per-trial seeds are derived as seed + trial index, so sweeps are
/// reproducible and splittable.
SweepResult run_sweep(SweepSuite suite, int dim, int trials, std::uint64_t seed,
                      const Tolerances &tol = {});

/// Sweep result wrapped as a one-record report for uniform output.
Report sweep_report(const SweepResult &result);

} // namespace twinlab
