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

#ifndef SPINRECON_NODES_H_
#define SPINRECON_NODES_H_

#include <span>
#include <variant>
#include <vector>

#include "spinrecon/sphere.h"
#include "spinrecon/spin.h"

namespace spinrecon {

/// Largest 2s accepted by the reconstruction pipeline (4s+1 = 41 nodes).
inline constexpr int kMaxReconstructionTwos = 20;

enum class Geometry { line, equator, circle };

/// Curve through the origin-centred frame in which the nodes are generated:
/// the positive real axis (rotated) or the unit circle.
enum class BaseCurve { line, equator };

/// Points x_nu = (nu+1)/(4s+1-nu) rotated by exp(i rotation).
struct LineNodes {
    double rotation = 0.0;
};

/// Points exp(i phi_nu) on the unit circle. Empty angles means the equally
/// spaced choice phi_nu = 2 pi nu / (4s+1).
struct EquatorNodes {
    std::vector<double> angles;
};

/// A line or equator node set displaced rigidly by shift.
struct CircleNodes {
    BaseCurve base = BaseCurve::equator;
    double rotation = 0.0;        // line base only
    std::vector<double> angles;   // equator base only
    cplx shift{0.0, 0.0};
};

using NodeSpec = std::variant<LineNodes, EquatorNodes, CircleNodes>;

/// 4s+1 pairwise distinct measurement points of the stereographic plane.
///
/// Every node set is the image z = to_plane(t) of base points t on the real
/// axis or the unit circle, with to_plane a rotation followed by a shift. The
/// reflection that leaves the measured data invariant (t -> t* on the line,
/// t -> 1/t* on the circle) becomes complex conjugation in the frame
/// coordinate rho, which is t itself for a line base and a quarter-turn
/// sphere rotation of t for an equator base.
class NodeSet {
   public:
    Spin spin() const { return spin_; }
    Geometry geometry() const { return geometry_; }
    BaseCurve base() const { return base_; }
    double rotation() const { return rotation_; }
    cplx shift() const { return shift_; }
    const NodeSpec &spec() const { return spec_; }
    /// True when the base points are the equally spaced roots of unity.
    bool equally_spaced() const { return equally_spaced_; }

    std::size_t size() const { return points_.size(); }
    /// Node positions z_nu in the stereographic plane.
    std::span<const cplx> points() const { return points_; }
    /// Base coordinates t_nu: positive reals (line) or unit-modulus (equator).
    std::span<const cplx> base_points() const { return base_points_; }
    std::vector<Direction> directions() const;

    PhasePoint base_to_plane(const PhasePoint &t) const;
    PhasePoint plane_to_base(const PhasePoint &z) const;
    PhasePoint frame_to_base(const PhasePoint &rho) const;
    PhasePoint base_to_frame(const PhasePoint &t) const;
    PhasePoint frame_to_plane(const PhasePoint &rho) const { return base_to_plane(frame_to_base(rho)); }
    PhasePoint plane_to_frame(const PhasePoint &z) const { return base_to_frame(plane_to_base(z)); }

   private:
    friend NodeSet make_nodes(Spin spin, const NodeSpec &spec);
    NodeSet(Spin spin, NodeSpec spec) : spin_(spin), spec_(std::move(spec)) {}

    Spin spin_;
    NodeSpec spec_;
    Geometry geometry_ = Geometry::line;
    BaseCurve base_ = BaseCurve::line;
    double rotation_ = 0.0;
    cplx shift_{0.0, 0.0};
    bool equally_spaced_ = false;
    std::vector<cplx> points_;
    std::vector<cplx> base_points_;
};

/// x_nu = (nu+1)/(4s+1-nu), nu = 0..4s, on the positive real axis. With
/// z = tan(theta/2) the directions have cos(theta_nu) = (1 - x^2)/(1 + x^2),
/// symmetric about the equator.
NodeSet default_line_nodes(Spin spin);

/// Throws InvalidArgument for 2s outside [1, 20] or a wrong angle count, and
/// DuplicateNode when two nodes are closer than 1e-9 in chordal distance.
NodeSet make_nodes(Spin spin, const NodeSpec &spec);

}  // namespace spinrecon

#endif  // SPINRECON_NODES_H_
