// Copyright 2026 The hamamp Authors
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

namespace hamamp {

/// Input that violates a documented precondition (dimensions, ranges).
class InvalidArgument : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// A computation left the regime where its result can be trusted
/// (symplecticity lost, Fock truncation too small, norm drift, ...).
class NumericalError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

class TruncationError : public NumericalError {
   public:
    using NumericalError::NumericalError;
};

/// |omega - cosh(2r) omega_r| vanishes: the qubits are resonant with the
/// amplified resonator. `crossing_r` is the squeezing parameter where
/// cosh(2r) = omega / omega_r.
class ResonanceError : public NumericalError {
   public:
    ResonanceError(const std::string& what, double crossing_r)
        : NumericalError(what), crossing_r_(crossing_r) {}
    double crossing_r() const noexcept { return crossing_r_; }

   private:
    double crossing_r_;
};

}  // namespace hamamp
