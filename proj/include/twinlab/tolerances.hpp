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

#include <stdexcept>
#include <string>

namespace twinlab {

/// Numerical thresholds used throughout the library. Defaults leave roughly
/// six digits of double-precision headroom at dimensions up to 64.
struct Tolerances {
    /// Vector-norm comparisons (state normalization, weight sums).
    double norm = 1e-10;
    /// Operator residuals, Frobenius norm (hermiticity, idempotency,
    /// unitarity, twin residuals).
    double op = 1e-9;
    /// Probability comparisons.
    double prob = 1e-9;
    /// Cutoff below which an event probability counts as zero.
    double p_min = 1e-12;
    /// Eigenvalue clustering threshold for spectral decomposition.
    double spec_gap = 1e-8;
};

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Operands of incompatible dimensions.
class DimensionError : public Error {
  public:
    using Error::Error;
};

/// A value failed its type invariants (non-unit state, non-projector, ...).
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// An operation was called outside its stated hypotheses.
class PreconditionError : public Error {
  public:
    using Error::Error;
};

namespace detail {
inline void require_same_dim(int a, int b, const char *where) {
    if (a != b) {
        throw DimensionError(std::string(where) + ": dimension mismatch (" + std::to_string(a) +
                             " vs " + std::to_string(b) + ")");
    }
}
} // namespace detail

} // namespace twinlab
