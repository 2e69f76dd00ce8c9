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

#include "spinrecon/experiments.h"

#include <gtest/gtest.h>

#include <cmath>

#include "spinrecon/error.h"
#include "support/test_util.h"

using namespace spinrecon;

TEST(HaarState, deterministic_and_canonical) {
    std::mt19937_64 a(5);
    std::mt19937_64 b(5);
    PureState x = haar_state(Spin(4), a);
    PureState y = haar_state(Spin(4), b);
    for (int k = 0; k <= 4; ++k) EXPECT_EQ(x[k], y[k]);
    EXPECT_EQ(x[0].imag(), 0.0);
    EXPECT_GT(x[0].real(), 0.0);
}

TEST(HaarState, average_projector_is_maximally_mixed) {
    std::mt19937_64 rng(9);
    const int n = 20000;
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(4, 4);
    for (int i = 0; i < n; ++i) {
        Eigen::VectorXcd v = haar_state(Spin(3), rng).to_vector();
        rho += v * v.adjoint();
    }
    rho /= n;
    EXPECT_LT((rho - 0.25 * Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff(), 0.01);
}

TEST(Ambiguity, line_nodes_reproduce_the_full_ambiguity) {
    for (int twos = 1; twos <= 4; ++twos) {
        AmbiguityStats stats = ambiguity_experiment(Spin(twos), NodeStrategy::line, 10, 42);
        ASSERT_EQ(stats.trials.size(), 10u);
        for (const AmbiguityTrial &t : stats.trials) {
            EXPECT_EQ(t.consistent_up_to_scale, 1 << twos);
            EXPECT_GE(t.consistent_normalized, 1);
        }
        EXPECT_EQ(*stats.unique_fraction_up_to_scale, 0.0);
    }
}

TEST(Ambiguity, random_nodes_run) {
    AmbiguityStats stats = ambiguity_experiment(Spin(1), NodeStrategy::random_points, 100, 7);
    ASSERT_EQ(stats.trials.size(), 100u);
    ASSERT_TRUE(stats.unique_fraction_up_to_scale.has_value());
    EXPECT_GE(*stats.unique_fraction_up_to_scale, 0.0);
    EXPECT_LE(*stats.unique_fraction_up_to_scale, 1.0);
    for (const AmbiguityTrial &t : stats.trials) EXPECT_GE(t.consistent_up_to_scale, 1);
}

TEST(Ambiguity, zero_trials_are_empty) {
    AmbiguityStats stats = ambiguity_experiment(Spin(2), NodeStrategy::random_points, 0, 1);
    EXPECT_TRUE(stats.trials.empty());
    EXPECT_FALSE(stats.unique_fraction_up_to_scale.has_value());
    EXPECT_FALSE(stats.unique_fraction_normalized.has_value());
    EXPECT_THROW(ambiguity_experiment(Spin(2), NodeStrategy::line, -1, 1), InvalidArgument);
}

TEST(Ambiguity, deterministic_per_seed) {
    AmbiguityStats a = ambiguity_experiment(Spin(2), NodeStrategy::random_points, 20, 3);
    AmbiguityStats b = ambiguity_experiment(Spin(2), NodeStrategy::random_points, 20, 3);
    for (std::size_t i = 0; i < 20; ++i) {
        EXPECT_EQ(a.trials[i].consistent_up_to_scale, b.trials[i].consistent_up_to_scale);
        EXPECT_EQ(a.trials[i].consistent_normalized, b.trials[i].consistent_normalized);
    }
}

TEST(Conditioning, equator_is_perfect_and_line_grows) {
    std::vector<ConditioningRow> rows = conditioning_sweep(8);
    ASSERT_EQ(rows.size(), 8u);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        EXPECT_EQ(rows[i].twos, static_cast<int>(i) + 1);
        EXPECT_NEAR(rows[i].equator, 1.0, 1e-9);
        if (i > 0) EXPECT_GT(rows[i].line, rows[i - 1].line);
    }
    EXPECT_THROW(conditioning_sweep(0), InvalidArgument);
}
