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


#ifndef SPINRECON_ZERO_FIT_H_
#define SPINRECON_ZERO_FIT_H_

#include <span>
#include <vector>

#include "spinrecon/spin.h"

namespace spinrecon {

struct ZeroFit {
    /// Fitted zeros, one entry per multiplicity copy, in the input order.
    std::vector<PhasePoint> zeros;
    /// Sum of squared weighted residuals at the optimum.
    double cost = 0.0;
};

/// Moves the distinct zeros of a ray (repeated entries are one zero held at
/// that multiplicity) to best explain Husimi values measured at the given
/// points, residuals divided by sigma (all ones when sigma is empty).
/// Levenberg-Marquardt in a local chart around each starting zero.
ZeroFit fit_zeros(Spin spin, std::span<const PhasePoint> zeros, std::span<const PhasePoint> points,
                  std::span<const double> values, std::span<const double> sigma = {});

}  // namespace spinrecon

#endif  // SPINRECON_ZERO_FIT_H_
