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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "spinrecon/error.h"
#include "support/test_util.h"

using namespace spinrecon;
using spinrecon::testing::shared_rng;

constexpr double pi = std::numbers::pi;

TEST(Direction, normalizes_phi_and_poles) {
    Direction d(1.0, 2 * pi + 0.5);
    EXPECT_NEAR(d.phi(), 0.5, 1e-15);
    EXPECT_NEAR(Direction(1.0, -0.5).phi(), 2 * pi - 0.5, 1e-15);
    EXPECT_EQ(Direction(0.0, 1.3).phi(), 0.0);
    EXPECT_EQ(Direction(pi, 1.3).phi(), 0.0);
    EXPECT_THROW(Direction(-0.1, 0.0), InvalidArgument);
    EXPECT_THROW(Direction(pi + 0.1, 0.0), InvalidArgument);
}

TEST(Stereographic, examples) {
    EXPECT_EQ(direction_to_point(Direction(0, 0)).value(), cplx(0, 0));
    cplx i = direction_to_point(Direction(pi / 2, pi / 2)).value();
    EXPECT_NEAR(i.real(), 0.0, 1e-15);
    EXPECT_NEAR(i.imag(), 1.0, 1e-15);
    EXPECT_TRUE(direction_to_point(Direction(pi, 0.7)).is_infinite());

    Direction origin = point_to_direction(PhasePoint(cplx(0, 0)));
    EXPECT_EQ(origin.theta(), 0.0);
    EXPECT_EQ(origin.phi(), 0.0);
    Direction one = point_to_direction(PhasePoint(cplx(1, 0)));
    EXPECT_NEAR(one.theta(), pi / 2, 1e-15);
    EXPECT_NEAR(one.phi(), 0.0, 1e-15);
    Direction m2i = point_to_direction(PhasePoint(cplx(0, -2)));
    EXPECT_NEAR(m2i.theta(), 2 * std::atan(2.0), 1e-15);
    EXPECT_NEAR(m2i.phi(), 3 * pi / 2, 1e-15);
    Direction south = point_to_direction(PhasePoint::infinity());
    EXPECT_EQ(south.theta(), pi);
    EXPECT_EQ(south.phi(), 0.0);
}

TEST(Stereographic, round_trip) {
    auto &rng = shared_rng();
    for (int i = 0; i < 500; ++i) {
        Direction d = spinrecon::testing::random_direction_uniform(rng);
        if (d.theta() > pi - 1e-9) continue;
        Direction back = point_to_direction(direction_to_point(d));
        EXPECT_NEAR(back.theta(), d.theta(), 1e-12);
        if (d.theta() > 1e-9) EXPECT_NEAR(std::remainder(back.phi() - d.phi(), 2 * pi), 0.0, 1e-12);
    }
}

TEST(Stereographic, matches_unit_vector) {
    auto &rng = shared_rng();
    for (int i = 0; i < 100; ++i) {
        Direction d = spinrecon::testing::random_direction_uniform(rng);
        Direction e = Direction::from_unit_vector(d.unit_vector());
        EXPECT_NEAR(e.theta(), d.theta(), 1e-12);
        EXPECT_NEAR(std::remainder(e.phi() - d.phi(), 2 * pi), 0.0, 1e-9);
    }
}

TEST(PhasePoint, non_finite_is_infinity) {
    EXPECT_TRUE(PhasePoint(cplx(INFINITY, 0)).is_infinite());
    EXPECT_THROW(PhasePoint::infinity().value(), InvalidArgument);
}

TEST(ChordalDistance, half_the_euclidean_chord) {
    auto &rng = shared_rng();
    for (int i = 0; i < 100; ++i) {
        Direction a = spinrecon::testing::random_direction_uniform(rng);
        Direction b = spinrecon::testing::random_direction_uniform(rng);
        auto u = a.unit_vector();
        auto v = b.unit_vector();
        double chord = std::sqrt((u[0] - v[0]) * (u[0] - v[0]) + (u[1] - v[1]) * (u[1] - v[1]) +
                                 (u[2] - v[2]) * (u[2] - v[2]));
        EXPECT_NEAR(chordal_distance(direction_to_point(a), direction_to_point(b)), chord / 2, 1e-12);
    }
    EXPECT_NEAR(chordal_distance(PhasePoint(cplx(0, 0)), PhasePoint::infinity()), 1.0, 1e-15);
    EXPECT_EQ(chordal_distance(PhasePoint::infinity(), PhasePoint::infinity()), 0.0);
}

TEST(SphereRotation, preserves_chordal_distance) {
    auto &rng = shared_rng();
    for (int i = 0; i < 50; ++i) {
        PhasePoint c = direction_to_point(spinrecon::testing::random_direction_uniform(rng));
        SphereRotation r = SphereRotation::to_origin(c);
        EXPECT_LT(chordal_distance(r(c), PhasePoint(cplx(0, 0))), 1e-12);
        PhasePoint a = direction_to_point(spinrecon::testing::random_direction_uniform(rng));
        PhasePoint b = direction_to_point(spinrecon::testing::random_direction_uniform(rng));
        EXPECT_NEAR(chordal_distance(r(a), r(b)), chordal_distance(a, b), 1e-12);
        EXPECT_LT(chordal_distance(r.inverse()(r(a)), a), 1e-12);
    }
    EXPECT_LT(chordal_distance(SphereRotation::to_origin(PhasePoint::infinity())(PhasePoint::infinity()),
                               PhasePoint(cplx(0, 0))),
              1e-15);
}

TEST(SphereRotation, equator_lands_on_real_axis) {
    SphereRotation r = SphereRotation::equator_to_real_axis();
    for (int k = 0; k < 12; ++k) {
        PhasePoint p = r(PhasePoint(std::polar(1.0, 0.1 + k * pi / 6)));
        if (!p.is_infinite()) EXPECT_NEAR(p.value().imag(), 0.0, 1e-12);
    }
    // Reflection in the unit circle becomes complex conjugation.
    PhasePoint z(cplx(0.3, -1.7));
    EXPECT_LT(chordal_distance(r(invert_unit_circle(z)), conjugate(r(z))), 1e-12);
}

TEST(FibonacciDirections, spread_evenly) {
    auto dirs = fibonacci_directions(400);
    ASSERT_EQ(dirs.size(), 400u);
    double mean_z = 0.0;
    for (const Direction &d : dirs) mean_z += std::cos(d.theta());
    EXPECT_NEAR(mean_z / 400, 0.0, 1e-12);
    double closest = 1.0;
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        for (std::size_t j = i + 1; j < dirs.size(); ++j) {
            closest = std::min(closest, chordal_distance(direction_to_point(dirs[i]), direction_to_point(dirs[j])));
        }
    }
    EXPECT_GT(closest, 0.03);
}
