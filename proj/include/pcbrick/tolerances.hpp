// Copyright 2026 The pcbrick Authors
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

namespace pcbrick::tol {

/// Unitarity and norm-preservation checks.
inline constexpr double kUnitarity = 1e-10;
inline constexpr double kNorm = 1e-10;

/// Matrix-equality oracles that only involve a handful of floating-point
/// operations per entry.
inline constexpr double kExact = 1e-12;

/// Entries below this magnitude count as structurally zero when checking the
/// particle-conserving block pattern of an input matrix.
inline constexpr double kPattern = 1e-10;

/// Imaginary parts of an expectation value below this are rounding residue.
inline constexpr double kImagResidue = 1e-10;

/// Lanczos residual for the ground Ritz pair.
inline constexpr double kLanczos = 1e-9;

}  // namespace pcbrick::tol
