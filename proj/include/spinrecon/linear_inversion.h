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

#ifndef SPINRECON_LINEAR_INVERSION_H_
#define SPINRECON_LINEAR_INVERSION_H_

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "spinrecon/nodes.h"

namespace spinrecon {

/// Design matrix M of the node set: M_{nu,lambda} = t_nu^lambda / (1+|z_nu|^2)^{2s}
/// with t_nu the base coordinates and z_nu the plane positions. For the
/// default line this is x^lambda / (1+x^2)^{2s}; for the unshifted equator it
/// is 2^{-2s} exp(i lambda phi_nu).
Eigen::MatrixXcd design_matrix(const NodeSet &nodes);

/// prod_nu (1+|z_nu|^2)^{-2s} * prod_{nu < nu'} (t_nu' - t_nu).
/// Accepts arbitrary (possibly coincident) values so the formula can be
/// probed outside the node-set invariant.
cplx closed_form_determinant(int twos, std::span<const cplx> base_points, std::span<const cplx> plane_points);

/// Closed-form determinant of design_matrix(nodes).
cplx vandermonde_det(const NodeSet &nodes);

/// Ratio of extreme singular values.
double condition_number(const Eigen::MatrixXcd &m);

/// Right-hand side of the linear system: p_nu for a line base and
/// p_nu t_nu^{2s} for an equator base (the unit-circle Husimi function is a
/// Laurent polynomial; multiplying by t^{2s} makes it an ordinary one).
Eigen::VectorXcd measurement_rhs(const NodeSet &nodes, std::span<const double> probs);

/// Coefficients c_lambda, lambda = 0..4s, of the Husimi numerator polynomial
/// in the base coordinate.
struct CoefficientVector {
    Spin spin{1};
    BaseCurve base = BaseCurve::line;
    std::vector<cplx> c;
    /// max_nu |M_{nu,lambda}|; scales coefficient errors into data space.
    std::vector<double> column_scale;
    double condition_estimate = 0.0;
    /// ||M^-1||_2, the reciprocal of the smallest singular value.
    double inverse_norm = 0.0;
    bool ill_conditioned = false;
    /// ||M c - rhs||_inf
    double residual = 0.0;
    /// Column-weighted relative error the coefficients inherit from rounding of
    /// the probabilities, eps |M^-1| |rhs|. Much tighter than eps * condition.
    double rounding_error = 0.0;
};

/// Solve M c = rhs. Line and generic circles use column-equilibrated
/// partial-pivot LU (the line system is solved in real arithmetic); equally
/// spaced equator angles use the inverse discrete Fourier transform. Equator
/// coefficients are projected onto the self-inversive subspace
/// c_lambda = conj(c_{4s-lambda}) they must occupy. Condition estimates above
/// 1e12 set ill_conditioned; the result is still returned.
CoefficientVector solve_coefficients(const NodeSet &nodes, std::span<const double> probs);

/// Probabilities reproduced by the coefficients at the nodes.
std::vector<double> fitted_probabilities(const NodeSet &nodes, const CoefficientVector &c);

/// One zero of the state together with its mirror image, in frame
/// coordinates: the pair is u + i v_abs and u - i v_abs. v_abs == 0 marks a
/// zero on the reflection curve, which carries no sign ambiguity.
struct ZeroPair {
    double u = 0.0;
    double v_abs = 0.0;
    int multiplicity = 1;

    bool ambiguous() const { return v_abs > 0.0; }
};

struct PairedRoots {
    std::vector<ZeroPair> pairs;
    /// Zeros at the frame point at infinity (each one a double root of the
    /// numerator polynomial).
    int infinity_count = 0;
};

struct RootTolerances {
    /// Top coefficients below this fraction of the largest are exact zeros.
    double deficiency = 1e-9;
    /// Largest chordal distance between a root and its partner's mirror image.
    double pairing = 1e-7;
    /// Half the chordal distance between a root and its own mirror image below
    /// which the root is declared to lie on the reflection curve.
    double real = 1e-8;
    /// Weighted backward error a merged multiple root may add. The solver
    /// raises it to the rounding level implied by the condition estimate.
    double collapse = 1e-12;
    /// Covariance of the coefficients under measurement noise; empty for exact
    /// data. When present a root also counts as lying on the curve if its
    /// distance from its mirror image is within 3 sigma of its own first-order
    /// uncertainty.
    Eigen::MatrixXcd coefficient_covariance;
};

/// Tolerances for noisy probabilities with per-node standard deviations
/// sigma: the coefficient covariance M^-1 diag(sigma^2) M^-H, and a pairing
/// tolerance widened by the first-order relative coefficient error
/// ||M^-1||_2 sqrt(4s+1) max(sigma) / ||c||_2.
RootTolerances noisy_tolerances(const NodeSet &nodes, const CoefficientVector &c,
                                std::span<const double> probability_sigma);

/// Roots of sum c_lambda t^lambda grouped into mirror pairs.
/// Throws PairingFailure when a root has no mirror partner within tolerance.
PairedRoots coefficient_roots(const CoefficientVector &c, const RootTolerances &tol = {});

}  // namespace spinrecon

#endif  // SPINRECON_LINEAR_INVERSION_H_
