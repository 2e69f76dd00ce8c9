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

#include "spinrecon/polynomial.h"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "spinrecon/error.h"

namespace spinrecon::poly {

namespace {

// Parlett-Reinsch diagonal similarity scaling by powers of two.
template <typename Matrix>
void balance(Matrix &a) {
    constexpr double kRadix = 2.0;
    const Eigen::Index n = a.rows();
    bool done = false;
    while (!done) {
        done = true;
        for (Eigen::Index i = 0; i < n; ++i) {
            double c = 0.0;
            double r = 0.0;
            for (Eigen::Index j = 0; j < n; ++j) {
                if (j == i) continue;
                c += std::abs(a(j, i));
                r += std::abs(a(i, j));
            }
            if (c == 0.0 || r == 0.0) continue;
            double g = r / kRadix;
            double f = 1.0;
            double s = c + r;
            while (c < g) {
                f *= kRadix;
                c *= kRadix * kRadix;
            }
            g = r * kRadix;
            while (c > g) {
                f /= kRadix;
                c /= kRadix * kRadix;
            }
            if ((c + r) / f < 0.95 * s) {
                done = false;
                a.row(i) /= f;
                a.col(i) *= f;
            }
        }
    }
}

std::vector<cplx> companion_eigenvalues(std::span<const cplx> c) {
    // c has nonzero leading and trailing coefficients, degree >= 1.
    const auto d = static_cast<Eigen::Index>(c.size() - 1);
    const cplx lead = c.back();
    const bool real = std::all_of(c.begin(), c.end(), [](cplx v) { return v.imag() == 0.0; });
    std::vector<cplx> out;
    out.reserve(static_cast<std::size_t>(d));
    if (d == 1) {
        out.push_back(-c[0] / c[1]);
        return out;
    }
    if (real) {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
        for (Eigen::Index j = 0; j < d; ++j) m(0, j) = -(c[static_cast<std::size_t>(d - 1 - j)] / lead).real();
        for (Eigen::Index i = 1; i < d; ++i) m(i, i - 1) = 1.0;
        balance(m);
        Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
        for (Eigen::Index i = 0; i < d; ++i) out.push_back(es.eigenvalues()(i));
    } else {
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
        for (Eigen::Index j = 0; j < d; ++j) m(0, j) = -c[static_cast<std::size_t>(d - 1 - j)] / lead;
        for (Eigen::Index i = 1; i < d; ++i) m(i, i - 1) = 1.0;
        balance(m);
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
        for (Eigen::Index i = 0; i < d; ++i) out.push_back(es.eigenvalues()(i));
    }
    return out;
}

double chordal(cplx a, cplx b) {
    return std::abs(a - b) / std::sqrt((1.0 + std::norm(a)) * (1.0 + std::norm(b)));
}

// A distinct root with its multiplicity; id survives merges so clusters can be
// found again after the groups have been refitted.
struct Group {
    cplx z;
    int m;
    int id;
};

Coefficients expand_groups(const std::vector<Group> &groups, cplx lead, std::size_t skip = SIZE_MAX) {
    std::vector<cplx> roots;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        int copies = groups[g].m - (g == skip ? 1 : 0);
        for (int k = 0; k < copies; ++k) roots.push_back(groups[g].z);
    }
    return expand(roots, lead);
}

double structured_error(std::span<const cplx> c, const std::vector<Group> &groups, cplx lead,
                        std::span<const double> weights) {
    Coefficients rebuilt = expand_groups(groups, lead);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) {
        double w = weights.empty() ? 1.0 : weights[k];
        num = std::max(num, w * std::abs(rebuilt[k] - c[k]));
        den = std::max(den, w * std::abs(c[k]));
    }
    return den == 0.0 ? 0.0 : num / den;
}

// Gauss-Newton on the distinct roots and the leading coefficient with the
// multiplicities held fixed. A multiple root is well conditioned once its
// multiplicity is imposed, which is what makes this more accurate than the
// eigenvalues it starts from.
void refine(std::span<const cplx> c, std::vector<Group> &groups, cplx &lead, std::span<const double> weights,
            int iterations) {
    const auto n = static_cast<Eigen::Index>(c.size());
    const auto k = static_cast<Eigen::Index>(groups.size());
    auto w = [&](Eigen::Index i) { return weights.empty() ? 1.0 : weights[static_cast<std::size_t>(i)]; };
    auto residual = [&](const std::vector<Group> &g, cplx l) {
        Coefficients rebuilt = expand_groups(g, l);
        Eigen::VectorXcd r(n);
        for (Eigen::Index i = 0; i < n; ++i) r(i) = w(i) * (rebuilt[static_cast<std::size_t>(i)] - c[static_cast<std::size_t>(i)]);
        return r;
    };
    Eigen::VectorXcd r = residual(groups, lead);
    for (int it = 0; it < iterations; ++it) {
        Eigen::MatrixXcd jac = Eigen::MatrixXcd::Zero(n, k + 1);
        Coefficients monic = expand_groups(groups, cplx{1.0, 0.0});
        for (Eigen::Index i = 0; i < n; ++i) jac(i, 0) = w(i) * monic[static_cast<std::size_t>(i)];
        for (Eigen::Index g = 0; g < k; ++g) {
            Coefficients part = expand_groups(groups, cplx{1.0, 0.0}, static_cast<std::size_t>(g));
            const cplx factor = -static_cast<double>(groups[static_cast<std::size_t>(g)].m) * lead;
            for (std::size_t i = 0; i < part.size(); ++i) {
                jac(static_cast<Eigen::Index>(i), g + 1) = w(static_cast<Eigen::Index>(i)) * factor * part[i];
            }
        }
        Eigen::VectorXcd step = jac.colPivHouseholderQr().solve(-r);
        if (!step.allFinite()) break;
        std::vector<Group> trial = groups;
        for (Eigen::Index g = 0; g < k; ++g) trial[static_cast<std::size_t>(g)].z += step(g + 1);
        const cplx trial_lead = lead + step(0);
        Eigen::VectorXcd trial_r = residual(trial, trial_lead);
        if (!(trial_r.norm() < r.norm())) break;
        groups = std::move(trial);
        lead = trial_lead;
        r = std::move(trial_r);
    }
}

// Single-linkage clusters of the group positions; returns member ids per cluster.
std::vector<std::vector<int>> clusters(const std::vector<Group> &groups, double radius) {
    const std::size_t n = groups.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (chordal(groups[i].z, groups[j].z) < radius) parent[find(i)] = find(j);
    std::vector<std::vector<int>> out;
    std::vector<std::size_t> roots;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t r = find(i);
        auto at = std::find(roots.begin(), roots.end(), r);
        if (at == roots.end()) {
            roots.push_back(r);
            out.push_back({groups[i].id});
        } else {
            out[static_cast<std::size_t>(at - roots.begin())].push_back(groups[i].id);
        }
    }
    return out;
}

// Merges clusters of nearby roots into one multiple root whenever the refitted
// structure still explains the coefficients to within tolerance (or within 10x
// of what the all-simple fit achieves).
void collapse_clusters(std::span<const cplx> c, std::vector<Group> &groups, cplx &lead,
                       std::span<const double> weights, double tolerance) {
    const double base = structured_error(c, groups, lead, weights);
    const double accept = std::max(tolerance, 10.0 * base);
    int next_id = static_cast<int>(groups.size());
    // Replaces the listed clusters by one group each, refits, and keeps the
    // result if it is still within tolerance.
    auto try_merge = [&](const std::vector<std::vector<int>> &merges) {
        std::vector<Group> trial;
        std::vector<Group> merged;
        for (std::size_t i = 0; i < merges.size(); ++i) merged.push_back({cplx{0.0, 0.0}, 0, next_id++});
        for (const Group &g : groups) {
            bool taken = false;
            for (std::size_t i = 0; i < merges.size() && !taken; ++i) {
                if (std::find(merges[i].begin(), merges[i].end(), g.id) == merges[i].end()) continue;
                merged[i].z += static_cast<double>(g.m) * g.z;
                merged[i].m += g.m;
                taken = true;
            }
            if (!taken) trial.push_back(g);
        }
        for (Group &g : merged) {
            if (g.m == 0) return false;  // a member was merged already
            g.z /= static_cast<double>(g.m);
            trial.push_back(g);
        }
        cplx trial_lead = lead;
        refine(c, trial, trial_lead, weights, 12);
        if (!(structured_error(c, trial, trial_lead, weights) <= accept)) return false;
        groups = std::move(trial);
        lead = trial_lead;
        return true;
    };
    for (double radius : {0.3, 0.1, 0.03, 0.01, 3e-3, 1e-3, 1e-4, 1e-5, 1e-6}) {
        std::vector<std::vector<int>> multi;
        for (std::vector<int> &members : clusters(groups, radius))
            if (members.size() > 1) multi.push_back(std::move(members));
        if (multi.empty()) continue;
        // Mirror-image clusters only fit well together, so try all at once first.
        if (multi.size() > 1 && try_merge(multi)) continue;
        for (const std::vector<int> &members : multi) try_merge({members});
    }
}

}  // namespace

cplx evaluate(std::span<const cplx> c, cplx z) {
    cplx acc{0.0, 0.0};
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
    return acc;
}

Coefficients expand(std::span<const cplx> roots, cplx leading) {
    Coefficients out{leading};
    for (cplx r : roots) {
        out.push_back(cplx{0.0, 0.0});
        for (std::size_t k = out.size() - 1; k > 0; --k) out[k] = out[k - 1] - r * out[k];
        out[0] = -r * out[0];
    }
    return out;
}

double backward_error(std::span<const cplx> c, std::span<const cplx> roots, std::span<const double> weights) {
    Coefficients rebuilt = expand(roots, c.back());
    double num = 0.0;
    double den = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) {
        double w = weights.empty() ? 1.0 : weights[k];
        num = std::max(num, w * std::abs(rebuilt[k] - c[k]));
        den = std::max(den, w * std::abs(c[k]));
    }
    return den == 0.0 ? 0.0 : num / den;
}

Roots find_roots(std::span<const cplx> c, const RootOptions &options) {
    if (c.empty()) throw InvalidArgument("find_roots: empty coefficient list");
    double largest = 0.0;
    for (cplx v : c) largest = std::max(largest, std::abs(v));
    if (largest == 0.0 || !std::isfinite(largest)) throw InvalidArgument("find_roots: zero or non-finite polynomial");

    auto weight = [&](std::size_t k) { return options.weights.empty() ? 1.0 : options.weights[k]; };
    double weighted_largest = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) weighted_largest = std::max(weighted_largest, weight(k) * std::abs(c[k]));
    std::size_t top = c.size() - 1;
    while (top > 0 && weight(top) * std::abs(c[top]) < options.deficiency_tolerance * weighted_largest) --top;
    Roots result;
    result.at_infinity = static_cast<int>(c.size() - 1 - top);

    std::size_t low = 0;
    while (low < top && c[low] == cplx{0.0, 0.0}) ++low;
    result.finite.assign(low, cplx{0.0, 0.0});
    if (low == top) return result;

    std::span<const cplx> reduced = c.subspan(low, top - low + 1);
    std::vector<double> weights;
    if (!options.weights.empty()) weights.assign(options.weights.begin() + static_cast<long>(low),
                                                 options.weights.begin() + static_cast<long>(top + 1));

    std::vector<Group> groups;
    for (cplx z : companion_eigenvalues(reduced)) groups.push_back({z, 1, static_cast<int>(groups.size())});
    cplx lead = reduced.back();
    refine(reduced, groups, lead, weights, options.polish_steps);
    collapse_clusters(reduced, groups, lead, weights, options.collapse_tolerance);
    std::sort(groups.begin(), groups.end(), [](const Group &a, const Group &b) {
        return a.z.real() < b.z.real() || (a.z.real() == b.z.real() && a.z.imag() < b.z.imag());
    });
    std::vector<cplx> roots;
    for (const Group &g : groups) roots.insert(roots.end(), static_cast<std::size_t>(g.m), g.z);
    result.finite.insert(result.finite.end(), roots.begin(), roots.end());
    return result;
}

}  // namespace spinrecon::poly
