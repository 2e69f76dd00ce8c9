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

#ifndef SPINRECON_SPHERE_H_
#define SPINRECON_SPHERE_H_

#include <array>
#include <complex>
#include <iosfwd>
#include <vector>

namespace spinrecon {

using cplx = std::complex<double>;

/// Orientation of the Stern-Gerlach apparatus, n = (sin t cos p, sin t sin p, cos t).
///
/// phi is stored modulo 2 pi. At the poles phi is meaningless and is stored as 0
/// so that each point of the sphere has exactly one representation.
class Direction {
   public:
    Direction() = default;
    /// Throws InvalidArgument when theta lies outside [0, pi] by more than 1e-12.
    Direction(double theta, double phi);

    static Direction from_unit_vector(const std::array<double, 3> &n);

    double theta() const { return theta_; }
    double phi() const { return phi_; }
    std::array<double, 3> unit_vector() const;

    bool operator==(const Direction &) const = default;

   private:
    double theta_ = 0.0;
    double phi_ = 0.0;
};

/// Point of the extended complex plane: a finite z or the point at infinity.
class PhasePoint {
   public:
    PhasePoint() = default;
    explicit PhasePoint(cplx z);
    static PhasePoint infinity();

    bool is_infinite() const { return infinite_; }
    /// The finite value. Throws InvalidArgument on the point at infinity.
    cplx value() const;

    bool operator==(const PhasePoint &) const = default;

   private:
    cplx z_{0.0, 0.0};
    bool infinite_ = false;
};

std::ostream &operator<<(std::ostream &out, const PhasePoint &p);
std::ostream &operator<<(std::ostream &out, const Direction &d);

/// z = tan(theta/2) exp(i phi); theta = pi maps to infinity.
PhasePoint direction_to_point(const Direction &d);

/// theta = 2 atan|z|, phi = arg z mod 2 pi; infinity maps to (pi, 0).
Direction point_to_direction(const PhasePoint &p);

/// Chordal metric |z - w| / sqrt((1+|z|^2)(1+|w|^2)), extended to infinity.
/// Equals half the Euclidean distance of the corresponding unit vectors.
double chordal_distance(const PhasePoint &a, const PhasePoint &b);

/// Reflection about the real axis, z -> z*.
PhasePoint conjugate(const PhasePoint &p);

/// Inversion through the unit circle, z -> 1/z*.
PhasePoint invert_unit_circle(const PhasePoint &p);

/// n nearly uniform directions on a golden-angle spiral, deterministic.
std::vector<Direction> fibonacci_directions(int n);

/// Rigid rotation of the sphere acting on the plane as the Moebius map
/// z -> (a z + b) / (-conj(b) z + conj(a)) with |a|^2 + |b|^2 = 1.
class SphereRotation {
   public:
    SphereRotation() = default;
    /// Normalizes (a, b); throws InvalidArgument when both vanish.
    SphereRotation(cplx a, cplx b);

    /// Rotation that carries p to the origin.
    static SphereRotation to_origin(const PhasePoint &p);
    /// Rotation by angle about the z axis: z -> exp(i angle) z.
    static SphereRotation about_z(double angle);
    /// Quarter turn about the x axis; maps the unit circle onto the real axis.
    static SphereRotation equator_to_real_axis();

    PhasePoint operator()(const PhasePoint &p) const;
    SphereRotation inverse() const;

    cplx a() const { return a_; }
    cplx b() const { return b_; }

   private:
    cplx a_{1.0, 0.0};
    cplx b_{0.0, 0.0};
};

}  // namespace spinrecon

#endif  // SPINRECON_SPHERE_H_
