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

#ifndef SPINRECON_POLYNOMIAL_H_
#define SPINRECON_POLYNOMIAL_H_

#include <complex>
#include <span>
#include <vector>

namespace spinrecon::poly {

using cplx = std::complex<double>;

/// Coefficients in ascending powers: c[k] multiplies z^k.
using Coefficients = std::vector<cplx>;

cplx evaluate(std::span<const cplx> c, cplx z);

/// Coefficients of leading * prod_n (z - roots[n]).
Coefficients expand(std::span<const cplx> roots, cplx leading = cplx{1.0, 0.0});

struct RootOptions {
    /// Top coefficients with w_k |c_k| < deficiency_tolerance * max w|c| count as
    /// exact zeros; each one is reported as a root at infinity.
    double deficiency_tolerance = 1e-10;
    /// Gauss-Newton steps that polish the eigenvalues against the coefficients.
    int polish_steps = 4;
    /// Optional per-coefficient weights for the deficiency test and for the
    /// backward error that decides whether a cluster of roots is one multiple
    /// root. Empty means all ones.
    std::vector<double> weights;
    /// Largest weighted relative backward error tolerated after collapsing a cluster.
    double collapse_tolerance = 1e-12;
};

struct Roots {
    std::vector<cplx> finite;
    int at_infinity = 0;
};

/// Roots of the polynomial with ascending coefficients c.
///
/// Eigenvalues of the balanced companion matrix, polished by Gauss-Newton on the
/// coefficients. Clusters of roots that are numerically one multiple root are
/// merged and refitted with the multiplicity imposed; the merge stands when the
/// weighted backward error stays below collapse_tolerance (or within 10x of the
/// all-simple fit). Exact zero trailing coefficients give exact roots at the origin.
///
/// Throws InvalidArgument for the zero polynomial.
Roots find_roots(std::span<const cplx> c, const RootOptions &options = {});

/// max_k w_k |expand(roots, c_top)_k - c_k| / max_k w_k |c_k| over the
/// coefficients c (no degree deficiency: roots.size() == c.size() - 1).
double backward_error(std::span<const cplx> c, std::span<const cplx> roots, std::span<const double> weights);

}  // namespace spinrecon::poly

#endif  // SPINRECON_POLYNOMIAL_H_
