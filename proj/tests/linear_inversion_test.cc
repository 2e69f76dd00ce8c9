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

#include "spinrecon/linear_inversion.h"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "spinrecon/error.h"
#include "spinrecon/measurement.h"
#include "support/test_util.h"

using namespace spinrecon;
using spinrecon::testing::random_state;
using spinrecon::testing::shared_rng;

constexpr double pi = std::numbers::pi;

namespace {

std::vector<double> measure(const PureState &s, const NodeSet &nodes) {
    std::vector<double> p;
    for (cplx z : nodes.points()) p.push_back(husimi(s, PhasePoint(z)));
    return p;
}

std::vector<NodeSpec> all_geometries() {
    return {LineNodes{}, LineNodes{0.7}, EquatorNodes{}, CircleNodes{BaseCurve::equator, 0.0, {}, {0.2, -0.1}},
            CircleNodes{BaseCurve::line, 0.4, {}, {0.3, -0.2}}};
}

}  // namespace

TEST(Nodes, default_line_examples) {
    NodeSet half = default_line_nodes(Spin(1));
    ASSERT_EQ(half.size(), 3u);
    std::vector<double> x{1.0 / 3, 1.0, 3.0};
    // Directions follow the stereographic map of the plane points.
    std::vector<double> cos_theta{0.8, 0.0, -0.8};
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_NEAR(std::abs(half.points()[i] - x[i]), 0.0, 1e-15);
        EXPECT_NEAR(std::cos(half.directions()[i].theta()), cos_theta[i], 1e-15);
    }
    NodeSet one = default_line_nodes(Spin(2));
    std::vector<double> x1{0.2, 0.5, 1.0, 2.0, 5.0};
    for (std::size_t i = 0; i < 5; ++i) {
        EXPECT_NEAR(one.points()[i].real(), x1[i], 1e-15);
        EXPECT_NEAR(std::cos(one.directions()[i].theta()), (1 - x1[i] * x1[i]) / (1 + x1[i] * x1[i]), 1e-15);
    }
    for (int twos = 1; twos <= 20; ++twos) {
        NodeSet n = default_line_nodes(Spin(twos));
        for (std::size_t i = 0; i < n.size(); ++i) {
            EXPECT_GT(n.points()[i].real(), 0.0);
            EXPECT_EQ(n.points()[i].imag(), 0.0);
            if (i > 0) EXPECT_GT(n.points()[i].real(), n.points()[i - 1].real());
        }
    }
}

TEST(Nodes, make_nodes_geometries) {
    NodeSet line = make_nodes(Spin(3), LineNodes{0.0});
    NodeSet reference = default_line_nodes(Spin(3));
    for (std::size_t i = 0; i < line.size(); ++i) EXPECT_EQ(line.points()[i], reference.points()[i]);

    NodeSet rotated = make_nodes(Spin(3), LineNodes{0.9});
    for (std::size_t i = 0; i < rotated.size(); ++i) {
        cplx back = rotated.points()[i] * std::polar(1.0, -0.9);
        EXPECT_GT(back.real(), 0.0);
        EXPECT_NEAR(back.imag(), 0.0, 1e-12);
    }

    NodeSet eq = make_nodes(Spin(1), EquatorNodes{});
    ASSERT_EQ(eq.size(), 3u);
    for (int k = 0; k < 3; ++k) {
        EXPECT_NEAR(std::abs(eq.points()[static_cast<std::size_t>(k)] - std::polar(1.0, 2 * pi * k / 3)), 0.0, 1e-15);
    }

    NodeSet unshifted = make_nodes(Spin(1), CircleNodes{BaseCurve::equator, 0.0, {}, {0.0, 0.0}});
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(unshifted.points()[i], eq.points()[i]);

    NodeSet shifted = make_nodes(Spin(2), CircleNodes{BaseCurve::equator, 0.0, {}, {0.5, 0.25}});
    for (cplx z : shifted.points()) EXPECT_NEAR(std::abs(z - cplx(0.5, 0.25)), 1.0, 1e-12);
}

TEST(Nodes, rejects_bad_input) {
    EXPECT_THROW(make_nodes(Spin(2), EquatorNodes{{0.0, 1.0, 2.0, 3.0, 2.0 + 2 * pi}}), DuplicateNode);
    EXPECT_THROW(make_nodes(Spin(2), EquatorNodes{{0.0, 1.0}}), InvalidArgument);
    EXPECT_THROW(default_line_nodes(Spin(0)), InvalidArgument);
    EXPECT_THROW(default_line_nodes(Spin(21)), InvalidArgument);
    EXPECT_THROW(make_nodes(Spin(2), LineNodes{NAN}), InvalidArgument);
}

TEST(Nodes, frame_maps_are_inverse) {
    auto &rng = shared_rng();
    for (const NodeSpec &spec : all_geometries()) {
        NodeSet nodes = make_nodes(Spin(3), spec);
        for (int i = 0; i < 20; ++i) {
            PhasePoint z = direction_to_point(spinrecon::testing::random_direction_uniform(rng));
            EXPECT_LT(chordal_distance(nodes.frame_to_plane(nodes.plane_to_frame(z)), z), 1e-12);
        }
        // Node points sit on the mirror curve of the frame: real frame coordinate.
        for (cplx z : nodes.points()) {
            PhasePoint rho = nodes.plane_to_frame(PhasePoint(z));
            if (!rho.is_infinite()) EXPECT_NEAR(rho.value().imag(), 0.0, 1e-9 * (1 + std::abs(rho.value())));
        }
    }
}

TEST(DesignMatrix, examples) {
    Eigen::MatrixXcd m = design_matrix(default_line_nodes(Spin(1)));
    // Row of x = 1/3: (1/3)^lambda / (10/9) = (9/10, 3/10, 1/10).
    EXPECT_NEAR(std::abs(m(0, 0) - 0.9), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(m(0, 1) - 0.3), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(m(0, 2) - 0.1), 0.0, 1e-15);
    for (int l = 0; l < 3; ++l) EXPECT_NEAR(std::abs(m(1, l) - 0.5), 0.0, 1e-15);
    Eigen::MatrixXcd e = design_matrix(make_nodes(Spin(1), EquatorNodes{}));
    for (int l = 0; l < 3; ++l) EXPECT_NEAR(std::abs(e(0, l) - 0.5), 0.0, 1e-15);
    // Line entries are in (0, 1].
    Eigen::MatrixXcd big = design_matrix(default_line_nodes(Spin(8)));
    EXPECT_GT(big.real().minCoeff(), 0.0);
    EXPECT_LE(big.real().maxCoeff(), 1.0);
}

TEST(Determinant, examples) {
    cplx half = vandermonde_det(default_line_nodes(Spin(1)));
    EXPECT_NEAR(half.real(), 4.0 / 25, 1e-15);
    EXPECT_NEAR(half.imag(), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(vandermonde_det(make_nodes(Spin(1), EquatorNodes{}))), 3 * std::sqrt(3.0) / 8, 1e-15);
    std::vector<cplx> coincident{0.5, 0.5, 2.0};
    EXPECT_EQ(closed_form_determinant(1, coincident, coincident), cplx(0, 0));
}

TEST(Determinant, closed_form_matches_numeric) {
    auto &rng = shared_rng();
    std::uniform_real_distribution<double> u(0.0, 2 * pi);
    for (int i = 0; i < 50; ++i) {
        int twos = 1 + i % 8;
        // Jittered equal spacing: random but never so crowded that the double-precision
        // entries alone decide the determinant.
        std::vector<double> angles;
        const int n = 2 * twos + 1;
        const double offset = u(rng);
        for (int k = 0; k < n; ++k) angles.push_back(offset + 2 * pi * (k + 0.6 * (u(rng) / (2 * pi) - 0.5)) / n);
        for (const NodeSpec &spec : {NodeSpec{LineNodes{u(rng)}}, NodeSpec{EquatorNodes{angles}},
                                     NodeSpec{CircleNodes{BaseCurve::equator, 0.0, angles, {0.3, 0.1}}}}) {
            NodeSet nodes = make_nodes(Spin(twos), spec);
            // Extended precision keeps the reference accurate when random nodes crowd together.
            using Wide = Eigen::Matrix<std::complex<long double>, Eigen::Dynamic, Eigen::Dynamic>;
            Wide wide = design_matrix(nodes).cast<std::complex<long double>>();
            cplx numeric(wide.fullPivLu().determinant());
            cplx closed = vandermonde_det(nodes);
            EXPECT_LT(std::abs(closed - numeric), 1e-10 * std::abs(numeric)) << "2s=" << twos;
        }
    }
}

TEST(Solve, recovers_coefficients) {
    auto &rng = shared_rng();
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int twos = 1; twos <= 6; ++twos) {
        NodeSet nodes = default_line_nodes(Spin(twos));
        Eigen::MatrixXcd m = design_matrix(nodes);
        for (int trial = 0; trial < 20; ++trial) {
            // Positive coefficients keep M c in [0, 1] after scaling, since M is positive.
            Eigen::VectorXcd c0(2 * twos + 1);
            for (int k = 0; k <= 2 * twos; ++k) c0(k) = u(rng);
            Eigen::VectorXcd p = m * c0;
            c0 /= p.cwiseAbs().maxCoeff();
            p /= p.cwiseAbs().maxCoeff();
            std::vector<double> probs;
            for (int k = 0; k <= 2 * twos; ++k) probs.push_back(p(k).real());
            CoefficientVector c = solve_coefficients(nodes, probs);
            EXPECT_LE(c.residual, 1e-10);
            if (twos > 3) continue;
            for (int k = 0; k <= 2 * twos; ++k) EXPECT_LT(std::abs(c.c[static_cast<std::size_t>(k)] - c0(k)), 1e-9);
        }
    }
    std::vector<double> zeros(5, 0.0);
    CoefficientVector c = solve_coefficients(default_line_nodes(Spin(2)), zeros);
    for (cplx v : c.c) EXPECT_EQ(v, cplx(0, 0));
}

TEST(Solve, recovers_husimi_coefficients_from_states) {
    auto &rng = shared_rng();
    for (int twos = 1; twos <= 3; ++twos) {
        for (int i = 0; i < 20; ++i) {
            PureState s = random_state(twos, rng);
            NodeSet nodes = default_line_nodes(Spin(twos));
            CoefficientVector c = solve_coefficients(nodes, measure(s, nodes));
            // Expected: c_lambda = sum_{k+l=lambda} a_k conj(a_l) with a the overlap polynomial.
            std::vector<cplx> a = overlap_polynomial(s);
            for (int lambda = 0; lambda <= 2 * twos; ++lambda) {
                cplx expected{0, 0};
                for (int k = 0; k <= twos; ++k) {
                    int l = lambda - k;
                    if (l >= 0 && l <= twos) expected += a[static_cast<std::size_t>(k)] * std::conj(a[static_cast<std::size_t>(l)]);
                }
                EXPECT_LT(std::abs(c.c[static_cast<std::size_t>(lambda)] - expected), 1e-9);
            }
            EXPECT_LE(c.residual, 1e-10);
        }
    }
}

TEST(Solve, half_spin_zero_at_i) {
    PureState s(Spin(1), {cplx(0, 1), 1.0});
    CoefficientVector c = solve_coefficients(default_line_nodes(Spin(1)), measure(s, default_line_nodes(Spin(1))));
    EXPECT_NEAR(std::abs(c.c[1]), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(c.c[0] - c.c[2]), 0.0, 1e-14);
    EXPECT_GT(std::abs(c.c[0]), 0.1);
}

TEST(Solve, line_polynomial_is_nonnegative_on_real_axis) {
    auto &rng = shared_rng();
    for (int twos = 1; twos <= 5; ++twos) {
        PureState s = random_state(twos, rng);
        NodeSet nodes = default_line_nodes(Spin(twos));
        CoefficientVector c = solve_coefficients(nodes, measure(s, nodes));
        for (int i = 0; i < 100; ++i) {
            double x = -5.0 + 0.1 * i;
            cplx v{0, 0};
            for (std::size_t k = c.c.size(); k-- > 0;) v = v * x + c.c[k];
            EXPECT_GE(v.real(), -1e-9);
        }
    }
}

TEST(Solve, condition_estimates) {
    for (int twos = 1; twos <= 10; ++twos) {
        std::vector<double> p(static_cast<std::size_t>(2 * twos + 1), 0.5);
        CoefficientVector eq = solve_coefficients(make_nodes(Spin(twos), EquatorNodes{}), p);
        EXPECT_NEAR(eq.condition_estimate, 1.0, 1e-9);
        EXPECT_FALSE(eq.ill_conditioned);
    }
    double previous = 0.0;
    for (int twos = 1; twos <= 8; ++twos) {
        std::vector<double> p(static_cast<std::size_t>(2 * twos + 1), 0.5);
        double cond = solve_coefficients(default_line_nodes(Spin(twos)), p).condition_estimate;
        EXPECT_GT(cond, previous);
        previous = cond;
    }
    std::vector<double> p(41, 0.5);
    EXPECT_TRUE(solve_coefficients(default_line_nodes(Spin(20)), p).ill_conditioned);
}

TEST(Solve, rejects_probabilities_outside_unit_interval) {
    EXPECT_THROW(solve_coefficients(default_line_nodes(Spin(1)), std::vector<double>{0.1, 1.5, 0.2}), InvalidArgument);
    EXPECT_THROW(solve_coefficients(default_line_nodes(Spin(1)), std::vector<double>{0.1, 0.2}), InvalidArgument);
}

TEST(Roots, examples) {
    CoefficientVector c;
    c.spin = Spin(1);
    c.c = {1.0, 0.0, 1.0};
    c.column_scale = {1.0, 1.0, 1.0};
    PairedRoots r = coefficient_roots(c);
    ASSERT_EQ(r.pairs.size(), 1u);
    EXPECT_NEAR(r.pairs[0].u, 0.0, 1e-14);
    EXPECT_NEAR(r.pairs[0].v_abs, 1.0, 1e-14);
    EXPECT_EQ(r.pairs[0].multiplicity, 1);
    EXPECT_EQ(r.infinity_count, 0);

    for (int twos = 1; twos <= 5; ++twos) {
        NodeSet nodes = default_line_nodes(Spin(twos));
        PairedRoots south = coefficient_roots(solve_coefficients(nodes, measure(PureState::basis(Spin(twos), -twos), nodes)));
        int total = 0;
        for (const ZeroPair &p : south.pairs) {
            EXPECT_NEAR(p.u, 0.0, 1e-6);
            EXPECT_EQ(p.v_abs, 0.0);
            total += p.multiplicity;
        }
        EXPECT_EQ(total, twos);
        EXPECT_EQ(south.infinity_count, 0);

        PairedRoots north = coefficient_roots(solve_coefficients(nodes, measure(PureState::basis(Spin(twos), twos), nodes)));
        EXPECT_TRUE(north.pairs.empty());
        EXPECT_EQ(north.infinity_count, twos);
    }
}

TEST(Roots, pairs_match_state_zeros) {
    auto &rng = shared_rng();
    for (const NodeSpec &spec : all_geometries()) {
        for (int twos = 1; twos <= 4; ++twos) {
            for (int i = 0; i < 10; ++i) {
                PureState s = random_state(twos, rng);
                NodeSet nodes = make_nodes(Spin(twos), spec);
                PairedRoots r = coefficient_roots(solve_coefficients(nodes, measure(s, nodes)));
                ASSERT_EQ(r.pairs.size(), static_cast<std::size_t>(twos));
                // Each true zero is one of the two mirror branches of some pair.
                for (const PhasePoint &z : zeros_of(s).zeros) {
                    double best = INFINITY;
                    for (const ZeroPair &p : r.pairs) {
                        for (double sign : {1.0, -1.0}) {
                            best = std::min(best, chordal_distance(z, nodes.frame_to_plane(PhasePoint(cplx(p.u, sign * p.v_abs)))));
                        }
                    }
                    EXPECT_LT(best, 1e-7);
                }
            }
        }
    }
}

TEST(Roots, unpaired_root_is_a_pairing_failure) {
    CoefficientVector c;
    c.spin = Spin(1);
    // (x - i)(x - 2i) has no conjugate partners.
    c.c = {cplx(-2, 0), cplx(0, -3), cplx(1, 0)};
    c.column_scale = {1.0, 1.0, 1.0};
    EXPECT_THROW(coefficient_roots(c), PairingFailure);
}

TEST(Roots, noisy_tolerances_widen) {
    NodeSet nodes = default_line_nodes(Spin(2));
    std::vector<double> p(5, 0.3);
    CoefficientVector c = solve_coefficients(nodes, p);
    RootTolerances exact = noisy_tolerances(nodes, c, std::vector<double>(5, 0.0));
    RootTolerances noisy = noisy_tolerances(nodes, c, std::vector<double>(5, 1e-3));
    EXPECT_EQ(exact.pairing, RootTolerances{}.pairing);
    EXPECT_EQ(exact.coefficient_covariance.size(), 0);
    EXPECT_GT(noisy.pairing, exact.pairing);
    ASSERT_EQ(noisy.coefficient_covariance.rows(), 5);
    // Covariance of c = M^-1 p with independent noise, checked by Monte Carlo.
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g(0.0, 1e-3);
    double var0 = 0.0;
    const int draws = 4000;
    for (int i = 0; i < draws; ++i) {
        std::vector<double> q(p);
        for (double &v : q) v += g(rng);
        var0 += std::norm(solve_coefficients(nodes, q).c[0] - c.c[0]);
    }
    var0 /= draws;
    EXPECT_NEAR(var0 / noisy.coefficient_covariance(0, 0).real(), 1.0, 0.1);
}

TEST(Roots, noise_decides_what_counts_as_real) {
    // Zero pair well clear of the axis relative to the noise stays a pair;
    // drowned in noise it is reported on the axis. At 2.5e-3 only the zero
    // 0.05 off the axis is drowned; far more noise swallows both.
    std::vector<PhasePoint> zeros{PhasePoint(cplx(0.4, 0.05)), PhasePoint(cplx(-1.0, 1.0))};
    PureState s = state_from_zeros(ZeroSet{Spin(2), zeros, 1});
    NodeSet nodes = default_line_nodes(Spin(2));
    std::vector<double> p;
    for (cplx z : nodes.points()) p.push_back(husimi(s, PhasePoint(z)));
    CoefficientVector c = solve_coefficients(nodes, p);
    auto ambiguous = [&](double sigma) {
        PairedRoots r = coefficient_roots(c, noisy_tolerances(nodes, c, std::vector<double>(5, sigma)));
        int n = 0;
        for (const ZeroPair &pair : r.pairs) n += pair.ambiguous() ? 1 : 0;
        return n;
    };
    EXPECT_EQ(ambiguous(1e-7), 2);
    EXPECT_EQ(ambiguous(2.5e-3), 1);
    EXPECT_EQ(ambiguous(5e-2), 0);
}
