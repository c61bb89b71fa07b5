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

#include <json.hpp>

#include "twinlab/report.hpp"
#include "twinlab/scenarios.hpp"

namespace twinlab {

/// Scenario file schema (schema_version "1"): complex numbers are [re, im]
/// pairs, matrices are row-major lists of rows. Parsing and intrinsic type
/// validation (state norms, unitarity, observable spectral form) throw
/// ValidationError; callers map that to the invalid-input exit code.
nlohmann::json scenario_to_json(const Scenario &scenario);
Scenario scenario_from_json(const nlohmann::json &j, const Tolerances &tol = {});

void save_scenario(const Scenario &scenario, const std::string &path);
Scenario load_scenario(const std::string &path, const Tolerances &tol = {});

nlohmann::json report_to_json(const Report &report);

} // namespace twinlab
