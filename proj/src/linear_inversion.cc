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

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "spinrecon/error.h"
#include "spinrecon/polynomial.h"

namespace spinrecon {

namespace {

constexpr double kIllConditioned = 1e12;

Eigen::VectorXd singular_values(const Eigen::MatrixXcd &m) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    return svd.singularValues();
}

}  // namespace

Eigen::MatrixXcd design_matrix(const NodeSet &nodes) {
    const auto n = static_cast<Eigen::Index>(nodes.size());
    const int twos = nodes.spin().twos();
    Eigen::MatrixXcd m(n, n);
    for (Eigen::Index nu = 0; nu < n; ++nu) {
        const cplx t = nodes.base_points()[static_cast<std::size_t>(nu)];
        const cplx z = nodes.points()[static_cast<std::size_t>(nu)];
        const double weight = std::pow(1.0 + std::norm(z), -twos);
        cplx power{1.0, 0.0};
        for (Eigen::Index lambda = 0; lambda < n; ++lambda) {
            m(nu, lambda) = power * weight;
            power *= t;
        }
    }
    return m;
}

cplx closed_form_determinant(int twos, std::span<const cplx> base_points, std::span<const cplx> plane_points) {
    if (base_points.size() != plane_points.size()) throw InvalidArgument("determinant: size mismatch");
    // Accumulate modulus in the log domain; the raw products under- or overflow for large s.
    double log_mod = 0.0;
    cplx phase{1.0, 0.0};
    for (cplx z : plane_points) log_mod -= twos * std::log1p(std::norm(z));
    for (std::size_t i = 0; i < base_points.size(); ++i) {
        for (std::size_t j = i + 1; j < base_points.size(); ++j) {
            cplx diff = base_points[j] - base_points[i];
            double r = std::abs(diff);
            if (r == 0.0) return cplx{0.0, 0.0};
            log_mod += std::log(r);
            phase *= diff / r;
        }
    }
    return std::exp(log_mod) * phase;
}

cplx vandermonde_det(const NodeSet &nodes) {
    return closed_form_determinant(nodes.spin().twos(), nodes.base_points(), nodes.points());
}

double condition_number(const Eigen::MatrixXcd &m) {
    Eigen::VectorXd sv = singular_values(m);
    double smallest = sv(sv.size() - 1);
    if (smallest == 0.0) return std::numeric_limits<double>::infinity();
    return sv(0) / smallest;
}

Eigen::VectorXcd measurement_rhs(const NodeSet &nodes, std::span<const double> probs) {
    if (probs.size() != nodes.size()) throw InvalidArgument("measurements: expected one probability per node");
    Eigen::VectorXcd rhs(static_cast<Eigen::Index>(probs.size()));
    for (std::size_t nu = 0; nu < probs.size(); ++nu) {
        if (!std::isfinite(probs[nu]) || probs[nu] < -1e-9 || probs[nu] > 1.0 + 1e-9) {
            throw InvalidArgument("measurements: probability outside [0, 1]");
        }
        cplx v{probs[nu], 0.0};
        if (nodes.base() == BaseCurve::equator) v *= std::pow(nodes.base_points()[nu], nodes.spin().twos());
        rhs(static_cast<Eigen::Index>(nu)) = v;
    }
    return rhs;
}

CoefficientVector solve_coefficients(const NodeSet &nodes, std::span<const double> probs) {
    const Eigen::MatrixXcd m = design_matrix(nodes);
    const Eigen::VectorXcd rhs = measurement_rhs(nodes, probs);
    const Eigen::Index n = m.rows();
    const int twos = nodes.spin().twos();

    CoefficientVector out;
    out.spin = nodes.spin();
    out.base = nodes.base();
    out.column_scale.resize(static_cast<std::size_t>(n));
    Eigen::VectorXd scale(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        scale(j) = m.col(j).cwiseAbs().maxCoeff();
        out.column_scale[static_cast<std::size_t>(j)] = scale(j);
    }

    Eigen::VectorXcd c(n);
    if (nodes.base() == BaseCurve::line) {
        Eigen::MatrixXd scaled = m.real() * scale.cwiseInverse().asDiagonal();
        Eigen::VectorXd y = scaled.partialPivLu().solve(rhs.real());
        c = y.cwiseQuotient(scale).cast<cplx>();
    } else if (nodes.equally_spaced()) {
        // M = diag(r) V with V_{nu,lambda} = t_nu^lambda unitary up to 1/sqrt(n).
        for (Eigen::Index lambda = 0; lambda < n; ++lambda) {
            cplx acc{0.0, 0.0};
            for (Eigen::Index nu = 0; nu < n; ++nu) {
                const cplx t = nodes.base_points()[static_cast<std::size_t>(nu)];
                const cplx z = nodes.points()[static_cast<std::size_t>(nu)];
                acc += std::pow(std::conj(t), static_cast<int>(lambda)) * rhs(nu) * std::pow(1.0 + std::norm(z), twos);
            }
            c(lambda) = acc / static_cast<double>(n);
        }
    } else {
        Eigen::MatrixXcd scaled = m * scale.cwiseInverse().asDiagonal();
        Eigen::VectorXcd y = scaled.partialPivLu().solve(rhs);
        c = y.cwiseQuotient(scale.cast<cplx>());
    }
    if (nodes.base() == BaseCurve::equator) {
        Eigen::VectorXcd sym(n);
        for (Eigen::Index k = 0; k < n; ++k) sym(k) = 0.5 * (c(k) + std::conj(c(n - 1 - k)));
        c = sym;
    }

    out.c.assign(c.data(), c.data() + c.size());
    {
        const Eigen::MatrixXcd scaled = m * scale.cwiseInverse().asDiagonal();
        const Eigen::VectorXd spread = scaled.fullPivLu().inverse().cwiseAbs() * rhs.cwiseAbs();
        double largest = 0.0;
        for (Eigen::Index j = 0; j < n; ++j) largest = std::max(largest, scale(j) * std::abs(c(j)));
        out.rounding_error = largest == 0.0 ? 0.0 : std::numeric_limits<double>::epsilon() * spread.maxCoeff() / largest;
    }
    out.residual = (m * c - rhs).cwiseAbs().maxCoeff();
    Eigen::VectorXd sv = singular_values(m);
    const double smallest = sv(sv.size() - 1);
    out.condition_estimate = smallest == 0.0 ? std::numeric_limits<double>::infinity() : sv(0) / smallest;
    out.inverse_norm = smallest == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / smallest;
    out.ill_conditioned = !(out.condition_estimate <= kIllConditioned);
    return out;
}

std::vector<double> fitted_probabilities(const NodeSet &nodes, const CoefficientVector &c) {
    const Eigen::MatrixXcd m = design_matrix(nodes);
    Eigen::VectorXcd coeffs = Eigen::Map<const Eigen::VectorXcd>(c.c.data(), static_cast<Eigen::Index>(c.c.size()));
    Eigen::VectorXcd values = m * coeffs;
    std::vector<double> out(nodes.size());
    for (std::size_t nu = 0; nu < nodes.size(); ++nu) {
        cplx v = values(static_cast<Eigen::Index>(nu));
        if (nodes.base() == BaseCurve::equator) v /= std::pow(nodes.base_points()[nu], nodes.spin().twos());
        out[nu] = v.real();
    }
    return out;
}

RootTolerances noisy_tolerances(const NodeSet &nodes, const CoefficientVector &c,
                                std::span<const double> probability_sigma) {
    if (probability_sigma.size() != nodes.size()) throw InvalidArgument("noisy tolerances: one sigma per node");
    RootTolerances tol;
    const double worst = *std::max_element(probability_sigma.begin(), probability_sigma.end());
    double norm = 0.0;
    for (cplx v : c.c) norm += std::norm(v);
    norm = std::sqrt(norm);
    if (!(worst > 0.0) || norm == 0.0) return tol;

    // The right-hand side scales each probability by a unimodular factor at
    // most, so its noise has the same standard deviations.
    const Eigen::MatrixXcd inverse = design_matrix(nodes).fullPivLu().inverse();
    Eigen::VectorXd variance(static_cast<Eigen::Index>(probability_sigma.size()));
    for (std::size_t nu = 0; nu < probability_sigma.size(); ++nu) {
        variance(static_cast<Eigen::Index>(nu)) = probability_sigma[nu] * probability_sigma[nu];
    }
    tol.coefficient_covariance = inverse * variance.asDiagonal() * inverse.adjoint();

    const double rel = c.inverse_norm * std::sqrt(static_cast<double>(c.c.size())) * worst / norm;
    tol.pairing += 10.0 * std::sqrt(rel);
    return tol;
}

PairedRoots coefficient_roots(const CoefficientVector &c, const RootTolerances &tol) {
    const int twos = c.spin.twos();
    if (static_cast<int>(c.c.size()) != 2 * twos + 1) throw InvalidArgument("coefficient_roots: expected 4s+1 coefficients");

    const double rounding = 10.0 * c.rounding_error;
    poly::RootOptions options;
    options.deficiency_tolerance = std::max(tol.deficiency, rounding);
    options.weights = c.column_scale;
    options.collapse_tolerance = std::max(tol.collapse, rounding);
    poly::Roots roots = poly::find_roots(c.c, options);

    const SphereRotation to_frame = SphereRotation::equator_to_real_axis();
    std::vector<cplx> upper;
    std::vector<cplx> lower;
    std::vector<cplx> on_curve;
    int at_infinity = 0;
    // First-order chordal uncertainty of a root under the coefficient noise.
    auto uncertainty = [&](cplx t) {
        if (tol.coefficient_covariance.size() == 0) return 0.0;
        const auto n = static_cast<Eigen::Index>(c.c.size());
        Eigen::VectorXcd powers(n);
        cplx slope{0.0, 0.0};
        for (Eigen::Index k = 0; k < n; ++k) {
            powers(k) = std::pow(t, static_cast<int>(k));
            if (k > 0) slope += static_cast<double>(k) * c.c[static_cast<std::size_t>(k)] * std::pow(t, static_cast<int>(k - 1));
        }
        const double variance = std::abs(powers.dot(tol.coefficient_covariance * powers));
        if (std::abs(slope) == 0.0) return std::numeric_limits<double>::infinity();
        return std::sqrt(variance) / std::abs(slope) / (1.0 + std::norm(t));
    };
    auto classify = [&](const PhasePoint &t) {
        PhasePoint rho = c.base == BaseCurve::line ? t : to_frame(t);
        if (rho.is_infinite()) {
            ++at_infinity;
            return;
        }
        cplx r = rho.value();
        const double gap = 0.5 * chordal_distance(rho, conjugate(rho));
        if (gap < tol.real || (!t.is_infinite() && gap < 3.0 * uncertainty(t.value()))) {
            on_curve.push_back(r);
        } else if (r.imag() > 0.0) {
            upper.push_back(r);
        } else {
            lower.push_back(r);
        }
    };
    for (cplx t : roots.finite) classify(PhasePoint(t));
    for (int i = 0; i < roots.at_infinity; ++i) classify(PhasePoint::infinity());

    if (upper.size() != lower.size()) throw PairingFailure("coefficient_roots: unbalanced mirror images");
    if ((on_curve.size() + static_cast<std::size_t>(at_infinity)) % 2 != 0) {
        throw PairingFailure("coefficient_roots: odd number of roots on the reflection curve");
    }

    std::vector<ZeroPair> pairs;
    // Greedy matching of each upper root with the mirror image of a lower one.
    std::vector<bool> used(lower.size(), false);
    std::vector<std::pair<double, std::pair<std::size_t, std::size_t>>> candidates;
    for (std::size_t i = 0; i < upper.size(); ++i)
        for (std::size_t j = 0; j < lower.size(); ++j)
            candidates.push_back(
                {chordal_distance(PhasePoint(upper[i]), PhasePoint(std::conj(lower[j]))), {i, j}});
    std::sort(candidates.begin(), candidates.end());
    std::vector<bool> used_upper(upper.size(), false);
    for (const auto &[dist, ij] : candidates) {
        auto [i, j] = ij;
        if (used_upper[i] || used[j]) continue;
        if (dist > tol.pairing) throw PairingFailure("coefficient_roots: root without a mirror partner");
        used_upper[i] = true;
        used[j] = true;
        cplx mid = 0.5 * (upper[i] + std::conj(lower[j]));
        pairs.push_back({mid.real(), mid.imag(), 1});
    }

    // Roots on the curve come in coincident pairs; pair neighbours along the curve.
    std::sort(on_curve.begin(), on_curve.end(),
              [](cplx a, cplx b) { return std::atan(a.real()) < std::atan(b.real()); });
    std::size_t i = 0;
    for (; i + 1 < on_curve.size(); i += 2) pairs.push_back({0.5 * (on_curve[i].real() + on_curve[i + 1].real()), 0.0, 1});
    int infinity_roots = at_infinity;
    if (i < on_curve.size()) {
        // One curve root is left over and pairs with one root at infinity.
        --infinity_roots;
    }
    PairedRoots out;
    out.infinity_count = infinity_roots / 2;
    if (i < on_curve.size()) ++out.infinity_count;

    // Merge coincident pairs into multiplicities.
    for (const ZeroPair &p : pairs) {
        auto same = std::find_if(out.pairs.begin(), out.pairs.end(), [&](const ZeroPair &q) {
            return chordal_distance(PhasePoint(cplx{p.u, p.v_abs}), PhasePoint(cplx{q.u, q.v_abs})) <= 1e-10;
        });
        if (same != out.pairs.end()) {
            ++same->multiplicity;
        } else {
            out.pairs.push_back(p);
        }
    }
    return out;
}

}  // namespace spinrecon
