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

// Functions on the circle [0, 2pi): deterministic +/-1 responses, their
// projections onto span{cos, sin}, and periodic trapezoid quadrature over
// the N-torus.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rotinv/common.hpp"
#include "rotinv/correlation.hpp"

namespace rotinv {

/// Piecewise-constant +/-1 function of the local angle. The value on
/// [0, b_1) (and on [b_last, 2pi), by periodicity) is `leading_sign`; it
/// flips at every breakpoint.
class ResponseFunction {
  public:
    ResponseFunction() = default;

    ResponseFunction(std::vector<double> breakpoints, int leading_sign)
        : breakpoints_(std::move(breakpoints)), leading_sign_(leading_sign) {
        if (leading_sign != 1 && leading_sign != -1) throw DomainError("leading sign must be +1 or -1");
        if (breakpoints_.size() % 2 != 0) throw DomainError("a periodic response needs an even number of breakpoints");
        for (std::size_t k = 0; k < breakpoints_.size(); ++k) {
            const double b = breakpoints_[k];
            if (!(b >= 0.0 && b < kTwoPi)) throw DomainError("breakpoints must lie in [0, 2pi)");
            if (k > 0 && !(b > breakpoints_[k - 1])) throw DomainError("breakpoints must be strictly increasing");
        }
    }

    static ResponseFunction constant(int sign) { return ResponseFunction({}, sign); }

    std::span<const double> breakpoints() const { return breakpoints_; }
    int leading_sign() const { return leading_sign_; }

    double operator()(double alpha) const {
        const double a = wrap_angle(alpha);
        const auto flips = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), a) - breakpoints_.begin();
        return (flips % 2 == 0) ? leading_sign_ : -leading_sign_;
    }

    ResponseFunction negated() const { return ResponseFunction(breakpoints_, -leading_sign_); }

  private:
    std::vector<double> breakpoints_;
    int leading_sign_ = 1;
};

/// Components of a response along cos and sin.
struct FourierProjection {
    double a = 0.0;  ///< int I(alpha) cos(alpha) dalpha
    double b = 0.0;  ///< int I(alpha) sin(alpha) dalpha
    /// sqrt(a^2 + b^2) / sqrt(pi): norm of the projection onto the
    /// normalized basis cos/sqrt(pi), sin/sqrt(pi).
    double norm = 0.0;
    /// Angle in [0, 2pi) of (a, b); 0 when undefined.
    double beta = 0.0;
    bool beta_defined = false;

    Vec2 coefficients() const { return {a, b}; }
};

/// Upper bound on the projection norm of any +/-1 function: 4/sqrt(pi).
inline const double kMaxProjectionNorm = 4.0 / std::sqrt(kPi);

/// Closed-form projection: each constant segment [u, v) contributes
/// s (sin v - sin u) to a and s (cos u - cos v) to b.
inline FourierProjection project(const ResponseFunction& response) {
    FourierProjection p;
    double sign = response.leading_sign();
    double lo_sin = 0.0;
    double lo_cos = 1.0;
    for (double brk : response.breakpoints()) {
        const double hi_sin = std::sin(brk);
        const double hi_cos = std::cos(brk);
        p.a += sign * (hi_sin - lo_sin);
        p.b += sign * (lo_cos - hi_cos);
        lo_sin = hi_sin;
        lo_cos = hi_cos;
        sign = -sign;
    }
    // Final segment ends at 2pi: sin = 0, cos = 1 exactly.
    p.a += sign * (0.0 - lo_sin);
    p.b += sign * (lo_cos - 1.0);

    const double r = std::hypot(p.a, p.b);
    p.norm = r / std::sqrt(kPi);
    if (r > 1e-12) {
        p.beta = wrap_angle(std::atan2(p.b, p.a));
        p.beta_defined = true;
    }
    return p;
}

/// alpha -> sgn(cos(alpha - psi)): the +/-1 function best aligned with
/// cos(alpha - psi), whose projection norm reaches 4/sqrt(pi).
inline ResponseFunction saturating_response(double psi) {
    double lo = wrap_angle(psi + kPi / 2.0);
    double hi = wrap_angle(psi + 3.0 * kPi / 2.0);
    if (hi < lo) std::swap(lo, hi);
    // The wrap-around segment (hi, lo + 2pi) has its midpoint where cos(. - psi)
    // is either +1 or -1.
    const double mid = 0.5 * (hi + lo + kTwoPi);
    const int lead = std::cos(mid - psi) > 0.0 ? 1 : -1;
    return ResponseFunction({lo, hi}, lead);
}

/// A scalar function on [0, 2pi)^N.
using TorusFunction = std::function<double(std::span<const double>)>;

/// E_T as a callable.
inline TorusFunction correlation_function(CorrelationTensor tensor) {
    return [t = std::move(tensor)](std::span<const double> angles) { return correlation_value(t, angles); };
}

struct QuadratureConfig {
    /// Refuse tensor-product rules with more evaluations than this.
    double max_evaluations = 1e8;
};

namespace detail {

inline void check_nodes(int nodes_per_axis) {
    if (nodes_per_axis < 8) throw DomainError("quadrature needs at least 8 nodes per axis");
}

}  // namespace detail

/// Periodic trapezoid approximation of the integral of f g over [0, 2pi]^N.
/// Exact up to roundoff for trigonometric polynomials of per-axis degree
/// below nodes_per_axis / 2.
inline double quadrature_inner_product(const TorusFunction& f, const TorusFunction& g, int n_parties,
                                       int nodes_per_axis, const QuadratureConfig& config = {}) {
    detail::check_party_count(n_parties, kMaxTensorParties);
    detail::check_nodes(nodes_per_axis);
    const double evaluations = std::pow(static_cast<double>(nodes_per_axis), n_parties);
    if (evaluations > config.max_evaluations)
        throw DomainError("quadrature would need " + std::to_string(evaluations) +
                          " evaluations; declare the integrand factorizable or raise the budget");

    const double h = kTwoPi / nodes_per_axis;
    const auto n = static_cast<std::size_t>(n_parties);
    std::vector<int> idx(n, 0);
    std::vector<double> angles(n, 0.0);
    const auto total = static_cast<std::uint64_t>(evaluations);
    double acc = 0.0;
    for (std::uint64_t step = 0; step < total; ++step) {
        acc += f(angles) * g(angles);
        // Odometer increment.
        for (std::size_t j = 0; j < n; ++j) {
            if (++idx[j] < nodes_per_axis) {
                angles[j] = h * idx[j];
                break;
            }
            idx[j] = 0;
            angles[j] = 0.0;
        }
    }
    return acc * std::pow(h, n_parties);
}

/// One term prod_j h_j(alpha_j) of a per-party factorizable integrand.
using FactorizedTerm = std::vector<std::function<double(double)>>;

/// Quadrature of sum_terms prod_j h_j(alpha_j): per-axis 1-D trapezoid rules
/// multiplied together, so the cost is linear in N.
inline double quadrature_factorized(std::span<const FactorizedTerm> terms, int nodes_per_axis) {
    detail::check_nodes(nodes_per_axis);
    const double h = kTwoPi / nodes_per_axis;
    double total = 0.0;
    for (const auto& term : terms) {
        if (term.empty()) throw ShapeError("a factorized term needs at least one factor");
        double product = 1.0;
        for (const auto& factor : term) {
            double acc = 0.0;
            for (int k = 0; k < nodes_per_axis; ++k) acc += factor(h * k);
            product *= acc * h;
        }
        total += product;
    }
    return total;
}

/// The integrand E_a E_b written as 4^N factorized terms
/// T_i T'_k prod_j c^{i_j}(alpha_j) c^{k_j}(alpha_j).
inline std::vector<FactorizedTerm> factorize_product(const CorrelationTensor& a, const CorrelationTensor& b) {
    if (a.n_parties() != b.n_parties()) throw ShapeError("tensors differ in party count");
    const int n = a.n_parties();
    auto basis = [](bool second) -> std::function<double(double)> {
        if (second) return [](double x) { return std::sin(x); };
        return [](double x) { return std::cos(x); };
    };
    std::vector<FactorizedTerm> terms;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0.0) continue;
        for (std::size_t k = 0; k < b.size(); ++k) {
            if (b[k] == 0.0) continue;
            FactorizedTerm term;
            for (int j = 0; j < n; ++j) {
                auto ci = basis(i >> j & 1U);
                auto ck = basis(k >> j & 1U);
                const double scale = (j == 0) ? a[i] * b[k] : 1.0;
                term.push_back([ci, ck, scale](double x) { return scale * ci(x) * ck(x); });
            }
            terms.push_back(std::move(term));
        }
    }
    return terms;
}

}  // namespace rotinv
