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

#include "spinrecon/nodes.h"

#include <cmath>
#include <numbers>

#include "spinrecon/error.h"

namespace spinrecon {

namespace {

std::vector<cplx> default_line_values(Spin spin) {
    const int n = 2 * spin.twos() + 1;
    std::vector<cplx> x;
    x.reserve(static_cast<std::size_t>(n));
    for (int nu = 0; nu < n; ++nu) x.emplace_back(static_cast<double>(nu + 1) / static_cast<double>(n - nu), 0.0);
    return x;
}

std::vector<cplx> equator_values(Spin spin, const std::vector<double> &angles, bool &equally_spaced) {
    const auto n = static_cast<std::size_t>(2 * spin.twos() + 1);
    std::vector<cplx> t;
    t.reserve(n);
    if (angles.empty()) {
        equally_spaced = true;
        for (std::size_t nu = 0; nu < n; ++nu) {
            t.push_back(std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(nu) / static_cast<double>(n)));
        }
        return t;
    }
    if (angles.size() != n) throw InvalidArgument("equator nodes: expected 4s+1 angles");
    equally_spaced = false;
    for (double a : angles) {
        if (!std::isfinite(a)) throw InvalidArgument("equator nodes: non-finite angle");
        t.push_back(std::polar(1.0, a));
    }
    return t;
}

}  // namespace

NodeSet default_line_nodes(Spin spin) { return make_nodes(spin, LineNodes{}); }

NodeSet make_nodes(Spin spin, const NodeSpec &spec) {
    if (spin.twos() < 1 || spin.twos() > kMaxReconstructionTwos) {
        throw InvalidArgument("nodes: 2s must lie in [1, 20]");
    }
    NodeSet set(spin, spec);
    if (const auto *line = std::get_if<LineNodes>(&spec)) {
        set.geometry_ = Geometry::line;
        set.base_ = BaseCurve::line;
        set.rotation_ = line->rotation;
        set.base_points_ = default_line_values(spin);
    } else if (const auto *eq = std::get_if<EquatorNodes>(&spec)) {
        set.geometry_ = Geometry::equator;
        set.base_ = BaseCurve::equator;
        set.base_points_ = equator_values(spin, eq->angles, set.equally_spaced_);
    } else {
        const auto &circle = std::get<CircleNodes>(spec);
        if (!std::isfinite(circle.shift.real()) || !std::isfinite(circle.shift.imag())) {
            throw InvalidArgument("circle nodes: non-finite shift");
        }
        set.geometry_ = Geometry::circle;
        set.base_ = circle.base;
        set.shift_ = circle.shift;
        if (circle.base == BaseCurve::line) {
            set.rotation_ = circle.rotation;
            set.base_points_ = default_line_values(spin);
        } else {
            set.base_points_ = equator_values(spin, circle.angles, set.equally_spaced_);
        }
    }
    if (!std::isfinite(set.rotation_)) throw InvalidArgument("nodes: non-finite rotation");

    for (cplx t : set.base_points_) set.points_.push_back(set.base_to_plane(PhasePoint(t)).value());
    for (std::size_t i = 0; i < set.points_.size(); ++i) {
        for (std::size_t j = i + 1; j < set.points_.size(); ++j) {
            if (chordal_distance(PhasePoint(set.points_[i]), PhasePoint(set.points_[j])) <= 1e-9) {
                throw DuplicateNode("nodes: two measurement points coincide");
            }
        }
    }
    return set;
}

std::vector<Direction> NodeSet::directions() const {
    std::vector<Direction> out;
    out.reserve(points_.size());
    for (cplx z : points_) out.push_back(point_to_direction(PhasePoint(z)));
    return out;
}

PhasePoint NodeSet::base_to_plane(const PhasePoint &t) const {
    if (t.is_infinite()) return t;
    cplx z = t.value();
    if (base_ == BaseCurve::line) z *= std::polar(1.0, rotation_);
    return PhasePoint(z + shift_);
}

PhasePoint NodeSet::plane_to_base(const PhasePoint &z) const {
    if (z.is_infinite()) return z;
    cplx t = z.value() - shift_;
    if (base_ == BaseCurve::line) t *= std::polar(1.0, -rotation_);
    return PhasePoint(t);
}

PhasePoint NodeSet::frame_to_base(const PhasePoint &rho) const {
    if (base_ == BaseCurve::line) return rho;
    return SphereRotation::equator_to_real_axis().inverse()(rho);
}

PhasePoint NodeSet::base_to_frame(const PhasePoint &t) const {
    if (base_ == BaseCurve::line) return t;
    return SphereRotation::equator_to_real_axis()(t);
}

}  // namespace spinrecon
