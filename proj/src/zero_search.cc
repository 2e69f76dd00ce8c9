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

#include "spinrecon/zero_search.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "spinrecon/error.h"
#include "spinrecon/zero_fit.h"

namespace spinrecon {

namespace {

constexpr int kNeighbours = 6;
constexpr int kMaxSimplexSteps = 400;
constexpr double kExactZero = 1e-10;
constexpr double kExactDedupe = 1e-6;
constexpr double kExactMismatch = 1e-6;
constexpr std::size_t kCheckPoints = 200;
constexpr std::size_t kFittedAssignments = 3;

using Vec2 = std::array<double, 2>;

// Plain Nelder-Mead in two real variables.
Vec2 nelder_mead(const std::function<double(const Vec2 &)> &f, Vec2 start, double step, double size_tol) {
    std::array<Vec2, 3> x{start, Vec2{start[0] + step, start[1]}, Vec2{start[0], start[1] + step}};
    std::array<double, 3> fx{f(x[0]), f(x[1]), f(x[2])};
    auto lerp = [](const Vec2 &a, const Vec2 &b, double t) {
        return Vec2{a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])};
    };
    for (int it = 0; it < kMaxSimplexSteps; ++it) {
        std::array<int, 3> order{0, 1, 2};
        std::sort(order.begin(), order.end(), [&](int a, int b) { return fx[a] < fx[b]; });
        const int best = order[0];
        const int mid = order[1];
        const int worst = order[2];
        double size = 0.0;
        for (int i : {mid, worst}) size = std::max(size, std::hypot(x[i][0] - x[best][0], x[i][1] - x[best][1]));
        if (size < size_tol) break;

        const Vec2 centroid{0.5 * (x[best][0] + x[mid][0]), 0.5 * (x[best][1] + x[mid][1])};
        const Vec2 reflected = lerp(centroid, x[worst], -1.0);
        const double fr = f(reflected);
        if (fr < fx[best]) {
            const Vec2 expanded = lerp(centroid, x[worst], -2.0);
            const double fe = f(expanded);
            if (fe < fr) {
                x[worst] = expanded;
                fx[worst] = fe;
            } else {
                x[worst] = reflected;
                fx[worst] = fr;
            }
        } else if (fr < fx[mid]) {
            x[worst] = reflected;
            fx[worst] = fr;
        } else {
            const bool outside = fr < fx[worst];
            const Vec2 contracted = lerp(centroid, outside ? reflected : x[worst], 0.5);
            const double fc = f(contracted);
            if (fc < (outside ? fr : fx[worst])) {
                x[worst] = contracted;
                fx[worst] = fc;
            } else {
                for (int i : {mid, worst}) {
                    x[i] = lerp(x[best], x[i], 0.5);
                    fx[i] = f(x[i]);
                }
            }
        }
    }
    const auto best = std::min_element(fx.begin(), fx.end()) - fx.begin();
    return x[static_cast<std::size_t>(best)];
}

struct Minimum {
    PhasePoint point;
    double value = 0.0;
};

// Lattice points whose value does not exceed any of their nearest neighbours.
std::vector<std::size_t> lattice_minima(const std::vector<Direction> &dirs, const std::vector<double> &values) {
    const std::size_t n = dirs.size();
    std::vector<std::array<double, 3>> unit(n);
    for (std::size_t i = 0; i < n; ++i) unit[i] = dirs[i].unit_vector();
    std::vector<std::size_t> out;
    std::vector<std::pair<double, std::size_t>> near;
    near.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        near.clear();
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            double dot = unit[i][0] * unit[j][0] + unit[i][1] * unit[j][1] + unit[i][2] * unit[j][2];
            near.emplace_back(-dot, j);
        }
        const auto k = std::min<std::size_t>(kNeighbours, near.size());
        std::partial_sort(near.begin(), near.begin() + static_cast<std::ptrdiff_t>(k), near.end());
        bool is_min = true;
        for (std::size_t m = 0; m < k && is_min; ++m) is_min = values[i] <= values[near[m].second];
        if (is_min) out.push_back(i);
    }
    return out;
}

Minimum refine(MeasurementOracle &oracle, const Direction &start, double step) {
    const PhasePoint centre = direction_to_point(start);
    const SphereRotation from_chart = SphereRotation::to_origin(centre).inverse();
    auto to_point = [&](const Vec2 &w) { return from_chart(PhasePoint(cplx{w[0], w[1]})); };
    auto objective = [&](const Vec2 &w) {
        // The log turns the zero into a cone, which the simplex resolves far
        // below the point where the raw probability underflows the threshold.
        return std::log(oracle.query(point_to_direction(to_point(w))) + 1e-300);
    };
    const Vec2 w = nelder_mead(objective, Vec2{0.0, 0.0}, step, 1e-13);
    const PhasePoint p = to_point(w);
    return {p, oracle.query(point_to_direction(p))};
}

std::vector<std::size_t> check_indices(std::size_t n) {
    const std::size_t stride = std::max<std::size_t>(1, n / kCheckPoints);
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; i += stride) out.push_back(i);
    return out;
}

// Largest deviation between a candidate ray's Husimi values and the lattice data.
double data_mismatch(const PureState &state, const std::vector<Direction> &dirs, const std::vector<double> &values) {
    double worst = 0.0;
    for (std::size_t i : check_indices(dirs.size())) {
        worst = std::max(worst, std::abs(husimi(state, direction_to_point(dirs[i])) - values[i]));
    }
    return worst;
}

// Refit the distinct zeros, multiplicities fixed, against lattice values
// already measured. A multiple zero is only located to about eps^(1/m) by its
// minimum; with the multiplicity imposed the fit pins it down to rounding level.
std::vector<PhasePoint> fit_to_data(Spin spin, const std::vector<PhasePoint> &zeros, const std::vector<int> &mult,
                                    const std::vector<Direction> &dirs, const std::vector<double> &values) {
    std::vector<PhasePoint> check;
    std::vector<double> measured;
    for (std::size_t i : check_indices(dirs.size())) {
        check.push_back(direction_to_point(dirs[i]));
        measured.push_back(values[i]);
    }
    std::vector<PhasePoint> expanded;
    for (std::size_t i = 0; i < zeros.size(); ++i) expanded.insert(expanded.end(), static_cast<std::size_t>(mult[i]), zeros[i]);
    const ZeroFit fit = fit_zeros(spin, expanded, check, measured);
    std::vector<PhasePoint> out;
    std::size_t at = 0;
    for (int m : mult) {
        out.push_back(fit.zeros[at]);
        at += static_cast<std::size_t>(m);
    }
    return out;
}

// Every way of giving the distinct zeros multiplicities that add up to 2s.
void compositions(int total, std::size_t parts, std::vector<int> &current, std::vector<std::vector<int>> &out) {
    if (current.size() + 1 == parts) {
        current.push_back(total);
        out.push_back(current);
        current.pop_back();
        return;
    }
    const int remaining = static_cast<int>(parts - current.size()) - 1;
    for (int m = 1; m <= total - remaining; ++m) {
        current.push_back(m);
        compositions(total - m, parts, current, out);
        current.pop_back();
    }
}

}  // namespace

ZeroSet zero_search(MeasurementOracle &oracle, const ZeroSearchOptions &options) {
    const Spin spin = oracle.spin();
    const int twos = spin.twos();
    const bool exact = oracle.is_exact();
    const double shots = static_cast<double>(oracle.shots());
    const double accept = exact ? kExactZero : 3.0 / shots;
    const double dedupe = exact ? kExactDedupe : 1e-2;
    const double mismatch_tol = exact ? kExactMismatch : 10.0 / std::sqrt(shots);

    int lattice = std::max(1, options.lattice_per_zero) * twos;
    for (int round = 0; round <= options.max_regrids; ++round, lattice *= 2) {
        const std::vector<Direction> dirs = fibonacci_directions(lattice);
        std::vector<double> values;
        values.reserve(dirs.size());
        for (const Direction &d : dirs) values.push_back(oracle.query(d));

        std::vector<std::size_t> starts = lattice_minima(dirs, values);
        std::sort(starts.begin(), starts.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        const double step = 0.5 * std::sqrt(4.0 * std::numbers::pi / lattice);

        std::vector<Minimum> found;
        for (std::size_t i : starts) {
            Minimum m = refine(oracle, dirs[i], step);
            if (m.value > accept) continue;
            bool duplicate = false;
            for (Minimum &f : found) {
                if (chordal_distance(f.point, m.point) < dedupe) {
                    if (m.value < f.value) f = m;
                    duplicate = true;
                    break;
                }
            }
            if (!duplicate) found.push_back(m);
        }
        std::sort(found.begin(), found.end(), [](const Minimum &a, const Minimum &b) { return a.value < b.value; });
        if (found.size() > static_cast<std::size_t>(twos)) found.resize(static_cast<std::size_t>(twos));
        if (found.empty()) continue;

        std::vector<std::vector<int>> options_list;
        std::vector<int> scratch;
        compositions(twos, found.size(), scratch, options_list);
        auto build = [&](const std::vector<PhasePoint> &points, const std::vector<int> &mult) {
            ZeroSet zs;
            zs.spin = spin;
            for (std::size_t i = 0; i < points.size(); ++i) zs.zeros.insert(zs.zeros.end(), static_cast<std::size_t>(mult[i]), points[i]);
            return zs;
        };
        std::vector<PhasePoint> located;
        for (const Minimum &m : found) located.push_back(m.point);
        std::vector<std::pair<double, std::size_t>> ranked;
        for (std::size_t c = 0; c < options_list.size(); ++c) {
            ranked.emplace_back(data_mismatch(state_from_zeros(build(located, options_list[c])), dirs, values), c);
        }
        std::sort(ranked.begin(), ranked.end());
        // Only the most plausible assignments are worth the fit.
        if (ranked.size() > kFittedAssignments) ranked.resize(kFittedAssignments);
        double best_mismatch = std::numeric_limits<double>::infinity();
        ZeroSet best;
        for (const auto &[raw, c] : ranked) {
            const std::vector<int> &mult = options_list[c];
            ZeroSet zs = build(fit_to_data(spin, located, mult, dirs, values), mult);
            const PureState rebuilt = state_from_zeros(zs);
            double mismatch = data_mismatch(rebuilt, dirs, values);
            if (raw < mismatch) {
                zs = build(located, mult);
                mismatch = raw;
            }
            if (mismatch < best_mismatch) {
                best_mismatch = mismatch;
                zs.scale = std::abs(state_from_zeros(zs)[twos]);
                best = std::move(zs);
            }
        }
        if (best_mismatch <= mismatch_tol) return best;
    }
    throw NotEnoughMinima("zero search: no multiplicity assignment of the located minima explains the data");
}

}  // namespace spinrecon
