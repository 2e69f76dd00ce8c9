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

#include "spinrecon/spin.h"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

#include "spinrecon/error.h"
#include "spinrecon/polynomial.h"

namespace spinrecon {

namespace {

const std::vector<std::vector<std::uint64_t>> &pascal_rows() {
    static const auto rows = [] {
        std::vector<std::vector<std::uint64_t>> t(Spin::kMaxTwos + 1);
        for (int n = 0; n <= Spin::kMaxTwos; ++n) {
            t[static_cast<std::size_t>(n)].assign(static_cast<std::size_t>(n + 1), 1);
            for (int k = 1; k < n; ++k) {
                const auto &prev = t[static_cast<std::size_t>(n - 1)];
                t[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)] =
                    prev[static_cast<std::size_t>(k - 1)] + prev[static_cast<std::size_t>(k)];
            }
        }
        return t;
    }();
    return rows;
}

double sqrt_binomial(int n, int k) { return std::sqrt(static_cast<double>(binomial(n, k))); }

}  // namespace

Spin::Spin(int twos) : twos_(twos) {
    if (twos < 0 || twos > kMaxTwos) throw InvalidArgument("spin: 2s must lie in [0, 60]");
}

std::uint64_t binomial(int n, int k) {
    if (n < 0 || n > Spin::kMaxTwos) throw InvalidArgument("binomial: n out of range");
    if (k < 0 || k > n) return 0;
    return pascal_rows()[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

PureState::PureState(Spin spin, std::vector<cplx> amplitudes) : spin_(spin), amplitudes_(std::move(amplitudes)) {
    if (static_cast<int>(amplitudes_.size()) != spin_.dim()) {
        throw InvalidArgument("pure state: expected 2s+1 amplitudes");
    }
    double norm2 = 0.0;
    for (cplx a : amplitudes_) norm2 += std::norm(a);
    if (!(norm2 > 0.0) || !std::isfinite(norm2)) throw DegenerateState("pure state: zero or non-finite vector");
    // Vectors already normalized to rounding are kept bit for bit, so states
    // survive a round trip through text unchanged.
    if (std::abs(norm2 - 1.0) <= 8 * std::numeric_limits<double>::epsilon()) return;
    double inv = 1.0 / std::sqrt(norm2);
    for (cplx &a : amplitudes_) a *= inv;
}

PureState PureState::basis(Spin spin, int twice_m) {
    if (twice_m < -spin.twos() || twice_m > spin.twos() || (spin.twos() - twice_m) % 2 != 0) {
        throw InvalidArgument("basis state: m must be one of s, s-1, ..., -s");
    }
    std::vector<cplx> amps(static_cast<std::size_t>(spin.dim()));
    amps[static_cast<std::size_t>((spin.twos() - twice_m) / 2)] = 1.0;
    return PureState(spin, std::move(amps));
}

PureState PureState::canonical() const {
    for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
        double r = std::abs(amplitudes_[i]);
        if (r > 1e-12) {
            cplx phase = std::conj(amplitudes_[i]) / r;
            std::vector<cplx> out = amplitudes_;
            for (cplx &v : out) v *= phase;
            out[i] = cplx{r, 0.0};
            return PureState(spin_, std::move(out));
        }
    }
    return *this;
}

Eigen::VectorXcd PureState::to_vector() const {
    return Eigen::Map<const Eigen::VectorXcd>(amplitudes_.data(), static_cast<Eigen::Index>(amplitudes_.size()));
}

SpinMatrices spin_matrices(Spin spin) {
    const int n = spin.dim();
    SpinMatrices m;
    m.splus = Eigen::MatrixXcd::Zero(n, n);
    m.sz = Eigen::MatrixXcd::Zero(n, n);
    for (int k = 0; k < n; ++k) {
        m.sz(k, k) = spin.s() - k;
        // s(s+1) - m(m+1) with m = s - k factors as k (2s - k + 1).
        if (k > 0) m.splus(k - 1, k) = std::sqrt(static_cast<double>(k) * (spin.twos() - k + 1));
    }
    m.sminus = m.splus.adjoint();
    m.sx = 0.5 * (m.splus + m.sminus);
    m.sy = (m.splus - m.sminus) / cplx{0.0, 2.0};
    return m;
}

PureState coherent_state(Spin spin, const PhasePoint &p) {
    const int twos = spin.twos();
    std::vector<cplx> amps(static_cast<std::size_t>(spin.dim()));
    if (p.is_infinite()) {
        amps.back() = 1.0;
        return PureState(spin, std::move(amps));
    }
    const cplx z = p.value();
    const double r = std::abs(z);
    const cplx phase = r == 0.0 ? cplx{1.0, 0.0} : z / r;
    for (int k = 0; k <= twos; ++k) {
        // |z|^k / (1+|z|^2)^s, evaluated on the side of the unit circle that cannot overflow.
        double mag = r <= 1.0 ? std::pow(r, k) / std::pow(1.0 + r * r, spin.s())
                              : std::pow(1.0 / r, twos - k) / std::pow(1.0 + 1.0 / (r * r), spin.s());
        amps[static_cast<std::size_t>(k)] = sqrt_binomial(twos, k) * mag * std::pow(phase, k);
    }
    return PureState(spin, std::move(amps));
}

PureState coherent_state_by_rotation(Spin spin, const Direction &d) {
    // The generator -sin(phi) Sx + cos(phi) Sy is Sy conjugated by a z rotation, so
    // U e_0 = e^{-i phi Sz} e^{-i theta Sy} e^{i phi Sz} e_0. The middle factor is real,
    // which keeps the phase of small amplitudes exact.
    SpinMatrices m = spin_matrices(spin);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m.sy);
    Eigen::VectorXcd phases(spin.dim());
    for (int i = 0; i < spin.dim(); ++i) phases(i) = std::polar(1.0, -d.theta() * es.eigenvalues()(i));
    const Eigen::MatrixXcd &v = es.eigenvectors();
    Eigen::VectorXcd column = v * phases.cwiseProduct(v.row(0).adjoint());
    std::vector<cplx> amps(static_cast<std::size_t>(spin.dim()));
    for (int k = 0; k < spin.dim(); ++k) {
        amps[static_cast<std::size_t>(k)] = column(k).real() * std::polar(1.0, k * d.phi());
    }
    return PureState(spin, std::move(amps));
}

std::vector<cplx> overlap_polynomial(const PureState &state) {
    std::vector<cplx> a(static_cast<std::size_t>(state.spin().dim()));
    for (int k = 0; k <= state.twos(); ++k) {
        a[static_cast<std::size_t>(k)] = sqrt_binomial(state.twos(), k) * std::conj(state[k]);
    }
    return a;
}

cplx overlap(const PureState &state, const PhasePoint &p) {
    const int twos = state.twos();
    if (p.is_infinite()) return std::conj(state[twos]);
    const std::vector<cplx> a = overlap_polynomial(state);
    const cplx z = p.value();
    const double r = std::abs(z);
    if (r <= 1.0) return poly::evaluate(a, z) / std::pow(1.0 + r * r, state.spin().s());
    // z^{2s} sum_k a_k w^{2s-k} with w = 1/z.
    const cplx w = 1.0 / z;
    cplx acc{0.0, 0.0};
    for (int k = 0; k <= twos; ++k) acc = acc * w + a[static_cast<std::size_t>(k)];
    return std::pow(z / r, twos) * acc / std::pow(1.0 + std::norm(w), state.spin().s());
}

double husimi(const PureState &state, const PhasePoint &p) { return std::norm(overlap(state, p)); }

ZeroSet zeros_of(const PureState &state) {
    const int twos = state.twos();
    const std::vector<cplx> a = overlap_polynomial(state);
    double largest = 0.0;
    for (cplx v : a) largest = std::max(largest, std::abs(v));
    if (!(largest > 0.0)) throw DegenerateState("zeros_of: all amplitudes vanish");

    ZeroSet zs{state.spin(), {}, std::abs(state[twos])};
    if (twos == 0) return zs;
    poly::RootOptions options;
    options.deficiency_tolerance = 1e-10;
    options.weights.resize(a.size());
    for (int k = 0; k <= twos; ++k) options.weights[static_cast<std::size_t>(k)] = 1.0 / sqrt_binomial(twos, k);
    poly::Roots roots = poly::find_roots(a, options);
    for (cplx z : roots.finite) zs.zeros.emplace_back(z);
    for (int i = 0; i < roots.at_infinity; ++i) zs.zeros.push_back(PhasePoint::infinity());
    return zs;
}

std::vector<cplx> amplitudes_from_zeros(Spin spin, std::span<const PhasePoint> zeros) {
    if (static_cast<int>(zeros.size()) != spin.twos()) {
        throw InvalidArgument("state_from_zeros: expected exactly 2s zeros");
    }
    std::vector<cplx> finite;
    for (const PhasePoint &z : zeros)
        if (!z.is_infinite()) finite.push_back(z.value());
    poly::Coefficients b = poly::expand(finite);
    std::vector<cplx> amps(static_cast<std::size_t>(spin.dim()));
    for (std::size_t k = 0; k < b.size(); ++k) {
        amps[k] = std::conj(b[k] / sqrt_binomial(spin.twos(), static_cast<int>(k)));
    }
    return amps;
}

PureState state_from_zeros(const ZeroSet &zs) {
    return PureState(zs.spin, amplitudes_from_zeros(zs.spin, zs.zeros)).canonical();
}

PureState time_reverse(const PureState &state) {
    const int twos = state.twos();
    std::vector<cplx> out(static_cast<std::size_t>(state.spin().dim()));
    for (int k = 0; k <= twos; ++k) {
        double sign = (k % 2 == 0) ? 1.0 : -1.0;
        out[static_cast<std::size_t>(twos - k)] = sign * std::conj(state[k]);
    }
    return PureState(state.spin(), std::move(out));
}

double fidelity(const PureState &a, const PureState &b) {
    if (a.spin() != b.spin()) throw SpinMismatch("fidelity: states of different spin");
    cplx acc{0.0, 0.0};
    for (int k = 0; k < a.spin().dim(); ++k) acc += std::conj(a[k]) * b[k];
    return std::min(1.0, std::norm(acc));
}

double zero_set_distance(std::span<const PhasePoint> a, std::span<const PhasePoint> b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    const std::size_t n = a.size();
    std::vector<bool> used_a(n, false);
    std::vector<bool> used_b(n, false);
    double worst = 0.0;
    for (std::size_t step = 0; step < n; ++step) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t bi = 0;
        std::size_t bj = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (used_a[i]) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (used_b[j]) continue;
                double d = chordal_distance(a[i], b[j]);
                if (d < best) {
                    best = d;
                    bi = i;
                    bj = j;
                }
            }
        }
        used_a[bi] = true;
        used_b[bj] = true;
        worst = std::max(worst, best);
    }
    return worst;
}

}  // namespace spinrecon
