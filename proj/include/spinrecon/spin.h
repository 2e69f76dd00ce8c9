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

#ifndef SPINRECON_SPIN_H_
#define SPINRECON_SPIN_H_

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "spinrecon/sphere.h"

namespace spinrecon {

/// Spin magnitude s, stored exactly as the integer 2s.
class Spin {
   public:
    /// Largest 2s for which the binomial table stays exact in 64 bits.
    static constexpr int kMaxTwos = 60;

    explicit Spin(int twos);

    int twos() const { return twos_; }
    double s() const { return 0.5 * twos_; }
    /// Hilbert space dimension 2s + 1.
    int dim() const { return twos_ + 1; }

    bool operator==(const Spin &) const = default;

   private:
    int twos_;
};

/// Exact binomial coefficient C(n, k) for 0 <= n <= Spin::kMaxTwos.
std::uint64_t binomial(int n, int k);

/// Normalized vector of a spin-s Hilbert space in the s_z eigenbasis.
///
/// Slot k holds psi_{s-k}: slot 0 is the m = s amplitude, slot 2s the m = -s one.
/// Construction normalizes; the global phase is left as given (see canonical()).
class PureState {
   public:
    /// Throws InvalidArgument on a size mismatch and DegenerateState on a zero vector.
    PureState(Spin spin, std::vector<cplx> amplitudes);

    /// Eigenstate |m, n_z> with m = twice_m / 2.
    static PureState basis(Spin spin, int twice_m);

    Spin spin() const { return spin_; }
    int twos() const { return spin_.twos(); }
    std::span<const cplx> amplitudes() const { return amplitudes_; }
    cplx operator[](int k) const { return amplitudes_[static_cast<std::size_t>(k)]; }

    /// Same ray with the first amplitude of modulus > 1e-12 made real and positive.
    PureState canonical() const;

    Eigen::VectorXcd to_vector() const;

   private:
    Spin spin_;
    std::vector<cplx> amplitudes_;
};

struct SpinMatrices {
    Eigen::MatrixXcd sx;
    Eigen::MatrixXcd sy;
    Eigen::MatrixXcd sz;
    Eigen::MatrixXcd splus;
    Eigen::MatrixXcd sminus;
};

/// Spin matrices in the slot order of PureState, built from the ladder action
/// s+ |m> = sqrt(s(s+1) - m(m+1)) |m+1>.
SpinMatrices spin_matrices(Spin spin);

/// |z> = (1+|z|^2)^{-s} sum_k C(2s,k)^{1/2} z^k |s-k>. Infinity gives |-s>.
PureState coherent_state(Spin spin, const PhasePoint &p);

/// exp(-i theta m(phi).s) |s, n_z> with m(phi) = (-sin phi, cos phi, 0),
/// exponentiated through the eigendecomposition of the Hermitian generator.
PureState coherent_state_by_rotation(Spin spin, const Direction &d);

/// <psi|z> = (1+|z|^2)^{-s} sum_k C(2s,k)^{1/2} psi*_{s-k} z^k.
///
/// At the point at infinity this returns the limiting leading coefficient
/// psi*_{-s}; its modulus is the limit of |<psi|z>|, its phase is a convention.
cplx overlap(const PureState &state, const PhasePoint &p);

/// Husimi distribution |<psi|z>|^2.
double husimi(const PureState &state, const PhasePoint &p);

/// Coefficients a_k = C(2s,k)^{1/2} psi*_{s-k} of the overlap polynomial.
std::vector<cplx> overlap_polynomial(const PureState &state);

/// The 2s zeros of the overlap polynomial, infinity included with multiplicity.
struct ZeroSet {
    Spin spin{1};
    std::vector<PhasePoint> zeros;
    /// |psi_{-s}|, kept for diagnostics.
    double scale = 0.0;
};

/// Zeros of <psi|z>. Top coefficients below 1e-10 of the largest become zeros
/// at infinity.
ZeroSet zeros_of(const PureState &state);

/// The canonical state whose overlap polynomial has the given zeros.
/// Throws InvalidArgument when zs.zeros.size() != 2s.
PureState state_from_zeros(const ZeroSet &zs);

/// Amplitudes (not normalized) of the state whose overlap polynomial is the
/// monic product over the finite zeros. Its squared norm is the weight needed
/// to compare unnormalized Husimi functions.
std::vector<cplx> amplitudes_from_zeros(Spin spin, std::span<const PhasePoint> zeros);

/// Anti-unitary time reversal: (T psi)_{-m} = (-1)^{s-m} conj(psi_m).
PureState time_reverse(const PureState &state);

/// |<a|b>|^2. Throws SpinMismatch.
double fidelity(const PureState &a, const PureState &b);

/// Largest chordal distance in a greedy minimal-distance matching of two zero
/// multisets; +infinity when the cardinalities differ.
double zero_set_distance(std::span<const PhasePoint> a, std::span<const PhasePoint> b);

}  // namespace spinrecon

#endif  // SPINRECON_SPIN_H_
