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

#include <string>
#include <vector>

#include "twinlab/tolerances.hpp"

namespace twinlab {

/// One labeled necessary-and-sufficient condition, with its residual.
struct ConditionCheck {
    std::string label;
    bool holds = false;
    double residual = 0.0;
    /// True when the condition's hypothesis is empty here (e.g. a statement
    /// about a zero-probability component) and it holds by default.
    bool vacuous = false;
};

/// Result of a twin check. `is_twin` always reflects the defining equality;
/// `per_condition` carries the alternative characterizations when a theorem
/// verifier produced the verdict.
struct TwinVerdict {
    bool is_twin = false;
    double residual = 0.0;
    std::vector<ConditionCheck> per_condition;
    /// Both events act as zero on the state (the extreme 0 = E psi = F psi).
    bool degenerate = false;
    /// The deciding residual lies within a factor 10 of the threshold; float
    /// noise near the decision boundary is flagged rather than hidden.
    bool marginal = false;

    const ConditionCheck *find(const std::string &label) const {
        for (const auto &c : per_condition) {
            if (c.label == label) {
                return &c;
            }
        }
        return nullptr;
    }

    bool condition_holds(const std::string &label) const {
        const ConditionCheck *c = find(label);
        return c != nullptr && c->holds;
    }
};

/// True when every condition whose label starts with `prefix` holds (and at
/// least one such condition exists). With labels like "(ii)(a)" this selects
/// whole condition sets by their roman-numeral prefix.
inline bool condition_set_holds(const TwinVerdict &verdict, const std::string &prefix) {
    bool any = false;
    for (const auto &c : verdict.per_condition) {
        if (c.label.rfind(prefix, 0) == 0) {
            any = true;
            if (!c.holds) {
                return false;
            }
        }
    }
    return any;
}

namespace detail {
inline bool is_marginal(double residual, double threshold) {
    return residual > threshold * 0.1 && residual < threshold * 10.0;
}
} // namespace detail

} // namespace twinlab
