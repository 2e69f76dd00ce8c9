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

#include "spinrecon/zero_fit.h"

#include <Eigen/Dense>
#include <algorithm>

#include "spinrecon/error.h"
#include "spinrecon/sphere.h"

namespace spinrecon {

ZeroFit fit_zeros(Spin spin, std::span<const PhasePoint> zeros, std::span<const PhasePoint> points,
                  std::span<const double> values, std::span<const double> sigma) {
    if (points.size() != values.size() || (!sigma.empty() && sigma.size() != values.size())) {
        throw InvalidArgument("fit_zeros: points, values and sigma must have equal length");
    }
    // Distinct zeros and, for each input entry, the group it belongs to.
    std::vector<PhasePoint> distinct;
    std::vector<std::size_t> group_of;
    for (const PhasePoint &z : zeros) {
        auto at = std::find(distinct.begin(), distinct.end(), z);
        group_of.push_back(static_cast<std::size_t>(at - distinct.begin()));
        if (at == distinct.end()) distinct.push_back(z);
    }
    std::vector<SphereRotation> charts;
    for (const PhasePoint &z : distinct) charts.push_back(SphereRotation::to_origin(z).inverse());
    const auto params = static_cast<Eigen::Index>(2 * distinct.size());
    const auto rows = static_cast<Eigen::Index>(points.size());

    auto place = [&](const Eigen::VectorXd &w) {
        std::vector<PhasePoint> out;
        for (std::size_t g : group_of) {
            const auto i = static_cast<Eigen::Index>(2 * g);
            out.push_back(charts[g](PhasePoint(cplx{w(i), w(i + 1)})));
        }
        return out;
    };
    auto residual = [&](const Eigen::VectorXd &w) {
        const PureState model(spin, amplitudes_from_zeros(spin, place(w)));
        Eigen::VectorXd r(rows);
        for (Eigen::Index j = 0; j < rows; ++j) {
            const auto k = static_cast<std::size_t>(j);
            r(j) = (husimi(model, points[k]) - values[k]) / (sigma.empty() ? 1.0 : sigma[k]);
        }
        return r;
    };

    Eigen::VectorXd w = Eigen::VectorXd::Zero(params);
    Eigen::VectorXd r = residual(w);
    double lambda = 1e-3;
    constexpr double kDiffStep = 1e-7;
    constexpr int kMaxIterations = 50;
    for (int it = 0; it < kMaxIterations && params > 0; ++it) {
        Eigen::MatrixXd jac(rows, params);
        for (Eigen::Index c = 0; c < params; ++c) {
            Eigen::VectorXd up = w;
            Eigen::VectorXd down = w;
            up(c) += kDiffStep;
            down(c) -= kDiffStep;
            jac.col(c) = (residual(up) - residual(down)) / (2 * kDiffStep);
        }
        const Eigen::MatrixXd normal = jac.transpose() * jac;
        const Eigen::VectorXd gradient = jac.transpose() * r;
        bool improved = false;
        double step_norm = 0.0;
        while (!improved && lambda < 1e12) {
            Eigen::MatrixXd damped = normal;
            damped.diagonal() += lambda * normal.diagonal().cwiseMax(1e-300);
            const Eigen::VectorXd step = damped.ldlt().solve(-gradient);
            const Eigen::VectorXd trial = w + step;
            const Eigen::VectorXd trial_r = step.allFinite() ? residual(trial) : r;
            if (step.allFinite() && trial_r.squaredNorm() < r.squaredNorm()) {
                w = trial;
                r = trial_r;
                lambda = std::max(lambda / 10, 1e-12);
                step_norm = step.norm();
                improved = true;
            } else {
                lambda *= 10;
            }
        }
        if (!improved || step_norm < 1e-15) break;
    }
    return {place(w), r.squaredNorm()};
}

}  // namespace spinrecon
