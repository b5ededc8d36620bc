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

#include "rotinv/state_kit.hpp"

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace rotinv;

namespace {

std::vector<PauliAxis> parse_axes(const std::string& s) {
    std::vector<PauliAxis> out;
    for (char c : s) out.push_back(c == 'x' ? PauliAxis::x : c == 'y' ? PauliAxis::y : PauliAxis::z);
    return out;
}

}  // namespace

TEST(BuildGhz, one_party) {
    const auto psi = build_ghz(1);
    ASSERT_EQ(psi.dim(), 2u);
    EXPECT_NEAR(psi[0].real(), 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(psi[1].real(), 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(BuildGhz, two_parties) {
    const auto psi = build_ghz(2);
    const double h = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(psi[0].real(), h, 1e-15);
    EXPECT_EQ(psi[1], Complex(0.0, 0.0));
    EXPECT_EQ(psi[2], Complex(0.0, 0.0));
    EXPECT_NEAR(psi[3].real(), h, 1e-15);
}

TEST(BuildGhz, three_parties_two_nonzero) {
    const auto psi = build_ghz(3);
    int nonzero = 0;
    double norm = 0.0;
    for (const auto& a : psi.amplitudes()) {
        nonzero += a != Complex(0.0, 0.0);
        norm += std::norm(a);
    }
    EXPECT_EQ(nonzero, 2);
    EXPECT_NEAR(norm, 1.0, 1e-12);
}

TEST(BuildGhz, rejects_bad_sizes) {
    EXPECT_THROW(build_ghz(0), InvalidSizeError);
    EXPECT_THROW(build_ghz(15), InvalidSizeError);
    StateLimits roomy;
    roomy.max_parties = 16;
    EXPECT_NO_THROW(build_ghz(15, roomy));
}

TEST(StateVector, rejects_unnormalized) {
    EXPECT_THROW(StateVector(1, {{1.0, 0.0}, {1.0, 0.0}}), DomainError);
    EXPECT_THROW(StateVector(2, {{1.0, 0.0}, {0.0, 0.0}}), ShapeError);
}

TEST(MixWithWhiteNoise, endpoints) {
    const auto psi = build_ghz(3);
    const auto pure = mix_with_white_noise(psi, 1.0);
    const auto noise = mix_with_white_noise(psi, 0.0);
    const Eigen::Map<const Eigen::VectorXcd> v(psi.amplitudes().data(), 8);
    EXPECT_LT((pure.entries() - v * v.adjoint()).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT((noise.entries() - Eigen::MatrixXcd::Identity(8, 8) / 8.0).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(MixWithWhiteNoise, ghz2_half_visibility_diagonal) {
    // 0.5 * 0.5 + 0.5 * 0.25 on the GHZ corners, 0.5 * 0.25 elsewhere.
    const auto rho = mix_with_white_noise(build_ghz(2), 0.5);
    const double expected[] = {0.375, 0.125, 0.125, 0.375};
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(rho(i, i).real(), expected[i], 1e-15);
}

TEST(MixWithWhiteNoise, rejects_visibility_out_of_range) {
    EXPECT_THROW(mix_with_white_noise(build_ghz(2), -0.1), DomainError);
    EXPECT_THROW(mix_with_white_noise(build_ghz(2), 1.1), DomainError);
    EXPECT_THROW(mix_with_white_noise(build_ghz(2), std::nan("")), DomainError);
    EXPECT_THROW(mix_with_white_noise(build_ghz(11), 0.5), InvalidSizeError);
}

TEST(MixWithWhiteNoise, density_matrix_invariants_hold) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int n = 1; n <= 6; ++n) {
        for (int rep = 0; rep < 5; ++rep) {
            const auto rho = mix_with_white_noise(build_ghz(n), u(rng));
            const auto& m = rho.entries();
            EXPECT_LT((m - m.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
            EXPECT_NEAR(m.trace().real(), 1.0, 1e-12);
            EXPECT_NEAR(m.trace().imag(), 0.0, 1e-12);
            EXPECT_GE(rho.min_eigenvalue(), -1e-10);
        }
    }
}

TEST(DensityMatrix, validating_constructor) {
    Eigen::MatrixXcd m(2, 2);
    m << 0.5, 0.0, 0.0, 0.5;
    EXPECT_NO_THROW(DensityMatrix(1, m));
    m(0, 1) = Complex(0.0, 0.1);
    EXPECT_THROW(DensityMatrix(1, m), DomainError);  // not Hermitian
    m << 0.6, 0.0, 0.0, 0.6;
    EXPECT_THROW(DensityMatrix(1, m), DomainError);  // trace 1.2
    m << 1.5, 0.0, 0.0, -0.5;
    EXPECT_THROW(DensityMatrix(1, m), DomainError);  // negative eigenvalue
    EXPECT_THROW(DensityMatrix(2, m), ShapeError);
}

TEST(PauliExpectation, ghz2_xx_and_yy) {
    const auto rho = mix_with_white_noise(build_ghz(2), 1.0);
    EXPECT_NEAR(pauli_expectation(rho, parse_axes("xx")), 1.0, 1e-12);
    EXPECT_NEAR(pauli_expectation(rho, parse_axes("yy")), -1.0, 1e-12);
    EXPECT_NEAR(pauli_expectation(rho, parse_axes("xy")), 0.0, 1e-12);
    EXPECT_NEAR(pauli_expectation(rho, parse_axes("zz")), 1.0, 1e-12);
}

TEST(PauliExpectation, white_noise_is_zero) {
    const auto noise = mix_with_white_noise(build_ghz(3), 0.0);
    for (const char* axes : {"xxx", "xyz", "zzz", "yyx"}) EXPECT_NEAR(pauli_expectation(noise, parse_axes(axes)), 0.0, 1e-15);
}

TEST(PauliExpectation, shape_mismatch) {
    const auto rho = mix_with_white_noise(build_ghz(2), 1.0);
    EXPECT_THROW(pauli_expectation(rho, parse_axes("xxx")), ShapeError);
    EXPECT_THROW(pauli_expectation(build_ghz(3), parse_axes("x")), ShapeError);
}

// Every Pauli string on random mixed states against the dense Kronecker oracle.
TEST(PauliExpectation, matches_kronecker_trace_on_random_states) {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g(0.0, 1.0);
    const std::string axes_chars = "xyz";
    for (int n = 1; n <= 4; ++n) {
        const Eigen::Index d = Eigen::Index{1} << n;
        Eigen::MatrixXcd a(d, d);
        for (Eigen::Index r = 0; r < d; ++r)
            for (Eigen::Index c = 0; c < d; ++c) a(r, c) = Complex(g(rng), g(rng));
        Eigen::MatrixXcd m = a * a.adjoint();
        m /= m.trace();
        const DensityMatrix rho(n, m);
        for (int code = 0; code < static_cast<int>(std::pow(3, n)); ++code) {
            std::string axes;
            for (int j = 0, c = code; j < n; ++j, c /= 3) axes.push_back(axes_chars[static_cast<std::size_t>(c % 3)]);
            const double got = pauli_expectation(rho, parse_axes(axes));
            EXPECT_NEAR(got, oracle::trace_expectation(m, axes), 1e-12) << axes;
            EXPECT_LE(std::abs(got), 1.0 + 1e-10);
        }
    }
}

TEST(PauliExpectation, linear_in_visibility) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const auto psi = build_ghz(4);
    for (int rep = 0; rep < 20; ++rep) {
        const double v = u(rng);
        const auto axes = parse_axes(rep % 2 ? "xyyx" : "yyyy");
        const double mixed = pauli_expectation(mix_with_white_noise(psi, v), axes);
        EXPECT_NEAR(mixed, v * pauli_expectation(psi, axes), 1e-12);
        EXPECT_NEAR(mixed, pauli_expectation(NoisyState(psi, v), axes), 1e-12);
    }
}
