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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "twinlab/tolerances.hpp"

namespace twinlab {

inline constexpr const char *kToolVersion = "twinlab 0.1.0";

struct CheckRecord {
    std::string name;
    std::string type;
    /// Absent when the check errored before producing a verdict.
    std::optional<bool> verdict;
    std::optional<bool> expected;
    bool matched = false;
    /// Diagnostic when the check errored; empty otherwise.
    std::string error;
    std::map<std::string, double> residuals;
    Tolerances tolerances_used;
    bool marginal = false;
};

struct ReportSummary {
    int total = 0;
    int passed = 0;
    int failed = 0;
    int errored = 0;
};

struct Report {
    std::vector<CheckRecord> records;
    ReportSummary summary;
    std::uint64_t seed = 0;
    std::string tool_version = kToolVersion;
    double wall_time_s = 0.0;

    bool all_matched() const { return summary.failed == 0 && summary.errored == 0; }

    void finalize_summary() {
        summary = ReportSummary{};
        summary.total = static_cast<int>(records.size());
        for (const auto &r : records) {
            if (!r.error.empty()) {
                ++summary.errored;
            } else if (r.matched) {
                ++summary.passed;
            } else {
                ++summary.failed;
            }
        }
    }
};

} // namespace twinlab
