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

#include "spinrecon/sphere.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "spinrecon/error.h"

namespace spinrecon {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

Direction::Direction(double theta, double phi) {
    if (!std::isfinite(theta) || !std::isfinite(phi) || theta < -1e-12 || theta > kPi + 1e-12) {
        throw InvalidArgument("direction: theta must lie in [0, pi]");
    }
    theta_ = std::clamp(theta, 0.0, kPi);
    double p = std::fmod(phi, kTwoPi);
    if (p < 0.0) p += kTwoPi;
    if (p >= kTwoPi) p = 0.0;
    phi_ = (theta_ == 0.0 || theta_ == kPi) ? 0.0 : p;
}

Direction Direction::from_unit_vector(const std::array<double, 3> &n) {
    double rho = std::hypot(n[0], n[1]);
    double theta = std::atan2(rho, n[2]);
    double phi = rho == 0.0 ? 0.0 : std::atan2(n[1], n[0]);
    return Direction(theta, phi);
}

std::array<double, 3> Direction::unit_vector() const {
    return {std::sin(theta_) * std::cos(phi_), std::sin(theta_) * std::sin(phi_), std::cos(theta_)};
}

PhasePoint::PhasePoint(cplx z) : z_(z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        z_ = cplx{0.0, 0.0};
        infinite_ = true;
    }
}

PhasePoint PhasePoint::infinity() {
    PhasePoint p;
    p.infinite_ = true;
    return p;
}

cplx PhasePoint::value() const {
    if (infinite_) throw InvalidArgument("phase point: value of the point at infinity");
    return z_;
}

std::ostream &operator<<(std::ostream &out, const PhasePoint &p) {
    if (p.is_infinite()) return out << "inf";
    return out << p.value();
}

std::ostream &operator<<(std::ostream &out, const Direction &d) {
    return out << "(theta=" << d.theta() << ", phi=" << d.phi() << ")";
}

PhasePoint direction_to_point(const Direction &d) {
    if (d.theta() == kPi) return PhasePoint::infinity();
    return PhasePoint(std::tan(0.5 * d.theta()) * std::polar(1.0, d.phi()));
}

Direction point_to_direction(const PhasePoint &p) {
    if (p.is_infinite()) return Direction(kPi, 0.0);
    cplx z = p.value();
    double r = std::abs(z);
    if (r == 0.0) return Direction(0.0, 0.0);
    return Direction(2.0 * std::atan(r), std::arg(z));
}

double chordal_distance(const PhasePoint &a, const PhasePoint &b) {
    if (a.is_infinite() && b.is_infinite()) return 0.0;
    if (a.is_infinite()) return 1.0 / std::sqrt(1.0 + std::norm(b.value()));
    if (b.is_infinite()) return 1.0 / std::sqrt(1.0 + std::norm(a.value()));
    cplx z = a.value();
    cplx w = b.value();
    return std::abs(z - w) / std::sqrt((1.0 + std::norm(z)) * (1.0 + std::norm(w)));
}

PhasePoint conjugate(const PhasePoint &p) {
    if (p.is_infinite()) return p;
    return PhasePoint(std::conj(p.value()));
}

PhasePoint invert_unit_circle(const PhasePoint &p) {
    if (p.is_infinite()) return PhasePoint(cplx{0.0, 0.0});
    cplx z = p.value();
    if (z == cplx{0.0, 0.0}) return PhasePoint::infinity();
    return PhasePoint(1.0 / std::conj(z));
}

std::vector<Direction> fibonacci_directions(int n) {
    if (n < 1) throw InvalidArgument("fibonacci_directions: n must be positive");
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    std::vector<Direction> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        double z = 1.0 - (2.0 * k + 1.0) / n;
        out.emplace_back(std::acos(std::clamp(z, -1.0, 1.0)), std::fmod(k * golden, 2.0 * std::numbers::pi));
    }
    return out;
}

SphereRotation::SphereRotation(cplx a, cplx b) {
    double n = std::sqrt(std::norm(a) + std::norm(b));
    if (n == 0.0 || !std::isfinite(n)) throw InvalidArgument("sphere rotation: degenerate coefficients");
    a_ = a / n;
    b_ = b / n;
}

SphereRotation SphereRotation::to_origin(const PhasePoint &p) {
    if (p.is_infinite()) return SphereRotation(cplx{0.0, 0.0}, cplx{1.0, 0.0});
    return SphereRotation(cplx{1.0, 0.0}, -p.value());
}

SphereRotation SphereRotation::about_z(double angle) {
    return SphereRotation(std::polar(1.0, 0.5 * angle), cplx{0.0, 0.0});
}

SphereRotation SphereRotation::equator_to_real_axis() {
    return SphereRotation(cplx{1.0, 0.0}, cplx{0.0, -1.0});
}

PhasePoint SphereRotation::operator()(const PhasePoint &p) const {
    cplx c = -std::conj(b_);
    cplx d = std::conj(a_);
    if (p.is_infinite()) {
        if (c == cplx{0.0, 0.0}) return PhasePoint::infinity();
        return PhasePoint(a_ / c);
    }
    cplx z = p.value();
    cplx den = c * z + d;
    if (den == cplx{0.0, 0.0}) return PhasePoint::infinity();
    return PhasePoint((a_ * z + b_) / den);
}

SphereRotation SphereRotation::inverse() const {
    return SphereRotation(std::conj(a_), -b_);
}

}  // namespace spinrecon
