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

// Umbrella header.

#pragma once

#include "pcbrick/circuits.hpp"
#include "pcbrick/fock.hpp"
#include "pcbrick/gates.hpp"
#include "pcbrick/models.hpp"
#include "pcbrick/optimize.hpp"
#include "pcbrick/pauli.hpp"
#include "pcbrick/pc_gates.hpp"
#include "pcbrick/rng.hpp"
#include "pcbrick/statevector.hpp"
#include "pcbrick/tolerances.hpp"
#include "pcbrick/verify.hpp"
#include "pcbrick/vqe.hpp"
