// Copyright 2026 The rotinv Authors
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

// N-qubit states and Pauli-string expectations.
//
// Basis states are packed little-endian: bit j of the basis index is the
// sigma_z eigenvalue of party j+1 (0 <-> |+>, 1 <-> |->). Local measurement
// frames are the global x, y, z axes for every party.

#pragma once

#include <Eigen/Dense>

#include <bit>
#include <complex>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rotinv/common.hpp"

namespace rotinv {

using Complex = std::complex<double>;

struct StateLimits {
    /// Upper bound on parties for state vectors.
    int max_parties = 14;
    /// Upper bound on parties for dense 2^N x 2^N density matrices.
    int max_dense_parties = 10;
};

enum class PauliAxis : int { x = 1, y = 2, z = 3 };

inline char axis_label(PauliAxis axis) {
    switch (axis) {
        case PauliAxis::x: return 'x';
        case PauliAxis::y: return 'y';
        case PauliAxis::z: return 'z';
    }
    return '?';
}

namespace detail {

inline void check_party_count(int n_parties, int cap) {
    if (n_parties < 1) throw InvalidSizeError("party count must be at least 1");
    if (n_parties > cap)
        throw InvalidSizeError("party count " + std::to_string(n_parties) +
                               " exceeds configured cap " + std::to_string(cap));
}

inline void check_visibility(double visibility) {
    if (!(visibility >= 0.0 && visibility <= 1.0))
        throw DomainError("visibility must lie in [0, 1]");
}

/// A Pauli string P maps |b> to phase(b) |b ^ flip_mask>.
struct PauliString {
    std::size_t flip_mask = 0;
    std::size_t y_mask = 0;
    std::size_t z_mask = 0;
    int y_count = 0;

    explicit PauliString(std::span<const PauliAxis> axes) {
        for (std::size_t j = 0; j < axes.size(); ++j) {
            const std::size_t bit = std::size_t{1} << j;
            switch (axes[j]) {
                case PauliAxis::x: flip_mask |= bit; break;
                case PauliAxis::y:
                    flip_mask |= bit;
                    y_mask |= bit;
                    ++y_count;
                    break;
                case PauliAxis::z: z_mask |= bit; break;
            }
        }
    }

    // sigma_y|0> = i|1>, sigma_y|1> = -i|0>, sigma_z|b> = (-1)^b |b>.
    Complex phase(std::size_t basis) const {
        static constexpr Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        const int minus = std::popcount(basis & (y_mask | z_mask)) & 1;
        const Complex p = kIPow[y_count & 3];
        return minus ? -p : p;
    }
};

}  // namespace detail

/// Normalized pure state of n spin-1/2 parties.
class StateVector {
  public:
    StateVector(int n_parties, std::vector<Complex> amplitudes,
                const StateLimits& limits = {})
        : n_parties_(n_parties), amplitudes_(std::move(amplitudes)) {
        detail::check_party_count(n_parties, limits.max_parties);
        if (amplitudes_.size() != pow2(n_parties))
            throw ShapeError("amplitude vector must have length 2^N");
        double norm = 0.0;
        for (const auto& a : amplitudes_) norm += std::norm(a);
        if (std::abs(norm - 1.0) > 1e-12) throw DomainError("state vector is not normalized");
    }

    int n_parties() const { return n_parties_; }
    std::size_t dim() const { return amplitudes_.size(); }
    std::span<const Complex> amplitudes() const { return amplitudes_; }
    const Complex& operator[](std::size_t i) const { return amplitudes_[i]; }

  private:
    int n_parties_;
    std::vector<Complex> amplitudes_;
};

/// Mixed state of n parties, stored dense.
class DensityMatrix {
  public:
    /// Validates Hermiticity, unit trace and positivity (min eigenvalue >= -1e-10).
    DensityMatrix(int n_parties, Eigen::MatrixXcd entries, const StateLimits& limits = {})
        : n_parties_(n_parties), entries_(std::move(entries)) {
        check_shape(limits);
        if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
            throw DomainError("density matrix is not Hermitian");
        if (std::abs(entries_.trace() - Complex{1.0, 0.0}) > 1e-12)
            throw DomainError("density matrix trace differs from 1");
        if (min_eigenvalue() < -1e-10) throw DomainError("density matrix is not positive semidefinite");
    }

    int n_parties() const { return n_parties_; }
    std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
    const Eigen::MatrixXcd& entries() const { return entries_; }
    Complex operator()(std::size_t row, std::size_t col) const {
        return entries_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
    }

    double min_eigenvalue() const {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(entries_, Eigen::EigenvaluesOnly);
        return solver.eigenvalues().minCoeff();
    }

  private:
    friend DensityMatrix mix_with_white_noise(const StateVector&, double, const StateLimits&);

    struct Trusted {};
    // Convex combinations of valid states skip the O(d^3) eigenvalue check.
    DensityMatrix(Trusted, int n_parties, Eigen::MatrixXcd entries, const StateLimits& limits)
        : n_parties_(n_parties), entries_(std::move(entries)) {
        check_shape(limits);
    }

    void check_shape(const StateLimits& limits) const {
        detail::check_party_count(n_parties_, limits.max_dense_parties);
        const auto d = static_cast<Eigen::Index>(pow2(n_parties_));
        if (entries_.rows() != d || entries_.cols() != d)
            throw ShapeError("density matrix must be 2^N x 2^N");
    }

    int n_parties_;
    Eigen::MatrixXcd entries_;
};

/// A pure state mixed with white noise, kept in factored form so that
/// full-correlation expectations never need the 2^N x 2^N matrix.
struct NoisyState {
    StateVector pure;
    double visibility = 1.0;

    NoisyState(StateVector state, double v) : pure(std::move(state)), visibility(v) {
        detail::check_visibility(v);
    }
    int n_parties() const { return pure.n_parties(); }
};

/// (|+...+> + |-...->)/sqrt(2) in the sigma_z basis.
inline StateVector build_ghz(int n_parties, const StateLimits& limits = {}) {
    detail::check_party_count(n_parties, limits.max_parties);
    std::vector<Complex> amps(pow2(n_parties));
    amps.front() = amps.back() = Complex{std::numbers::sqrt2 / 2.0, 0.0};
    return StateVector(n_parties, std::move(amps), limits);
}

/// V |psi><psi| + (1 - V) 1/2^N.
inline DensityMatrix mix_with_white_noise(const StateVector& state, double visibility,
                                          const StateLimits& limits = {}) {
    detail::check_visibility(visibility);
    detail::check_party_count(state.n_parties(), limits.max_dense_parties);
    const auto d = static_cast<Eigen::Index>(state.dim());
    Eigen::Map<const Eigen::VectorXcd> psi(state.amplitudes().data(), d);
    Eigen::MatrixXcd rho = visibility * (psi * psi.adjoint());
    rho.diagonal().array() += (1.0 - visibility) / static_cast<double>(d);
    return DensityMatrix(DensityMatrix::Trusted{}, state.n_parties(), std::move(rho), limits);
}

/// Tr[rho (sigma_{a1} x ... x sigma_{aN})].
inline double pauli_expectation(const DensityMatrix& rho, std::span<const PauliAxis> axes) {
    if (axes.size() != static_cast<std::size_t>(rho.n_parties()))
        throw ShapeError("axis list length must equal the party count");
    const detail::PauliString p(axes);
    // With P|b> = phase(b)|b ^ m>, (rho P)_{cc} = rho(c, c ^ m) phase(c).
    Complex acc{0.0, 0.0};
    for (std::size_t c = 0; c < rho.dim(); ++c) acc += rho(c, c ^ p.flip_mask) * p.phase(c);
    return acc.real();
}

/// <psi| sigma_{a1} x ... x sigma_{aN} |psi>.
inline double pauli_expectation(const StateVector& psi, std::span<const PauliAxis> axes) {
    if (axes.size() != static_cast<std::size_t>(psi.n_parties()))
        throw ShapeError("axis list length must equal the party count");
    const detail::PauliString p(axes);
    Complex acc{0.0, 0.0};
    for (std::size_t b = 0; b < psi.dim(); ++b)
        acc += std::conj(psi[b ^ p.flip_mask]) * p.phase(b) * psi[b];
    return acc.real();
}

/// White noise is traceless against every full-correlation Pauli string.
inline double pauli_expectation(const NoisyState& state, std::span<const PauliAxis> axes) {
    return state.visibility * pauli_expectation(state.pure, axes);
}

}  // namespace rotinv
