// Copyright 2026 The rus-adqc Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <stdexcept>
#include <string>

namespace rus_adqc {

/// Failure categories raised by the library. Precondition violations on
/// plain arguments use std::invalid_argument; everything that depends on the
/// physics of the inputs is reported through Error so callers can branch on
/// the kind.
enum class Errc {
    DimensionMismatch,
    NonUnitaryBranch,
    NotDiagonal,
    UnremovedLocalPart,
    NotAFiniteGroup,
    EffectivelyDense,
    SingularStrength,
    MissingEntry,
};

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string &what)
        : std::runtime_error(what), code_(code) {}

    [[nodiscard]] Errc code() const noexcept { return code_; }

  private:
    Errc code_;
};

} // namespace rus_adqc
