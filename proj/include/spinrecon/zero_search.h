// Copyright 2026 The spinrecon Authors
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

#ifndef SPINRECON_ZERO_SEARCH_H_
#define SPINRECON_ZERO_SEARCH_H_

#include "spinrecon/measurement.h"

namespace spinrecon {

struct ZeroSearchOptions {
    /// Coarse lattice size per zero.
    int lattice_per_zero = 400;
    /// Times the lattice is doubled before giving up.
    int max_regrids = 2;
};

/// Locates the zeros of the oracle's Husimi function by querying it directly.
/// Repeated entries in the result are multiple zeros. Throws NotEnoughMinima
/// when no multiplicity assignment explains the data.
ZeroSet zero_search(MeasurementOracle &oracle, const ZeroSearchOptions &options = {});

}  // namespace spinrecon

#endif  // SPINRECON_ZERO_SEARCH_H_
