/*
 * Copyright (C) 2026 The sociosir Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include "sociosir/core_types.hpp"

#include <array>
#include <cmath>
#include <optional>
#include <string_view>

namespace sociosir {

struct DerivMA {
    double dS1 = 0.0;
    double dS2 = 0.0;
    double dIa = 0.0;
    double dIs = 0.0;
    double dR  = 0.0;

    std::array<double, 5> as_array() const noexcept { return {dS1, dS2, dIa, dIs, dR}; }
    double sum() const noexcept { return dS1 + dS2 + dIa + dIs + dR; }
    bool operator==(const DerivMA&) const = default;
};

struct DerivMB {
    double dS1 = 0.0;
    double dS2 = 0.0;
    double dA1 = 0.0;
    double dA2 = 0.0;
    double dIs = 0.0;
    double dR  = 0.0;

    std::array<double, 6> as_array() const noexcept { return {dS1, dS2, dA1, dA2, dIs, dR}; }
    double sum() const noexcept { return dS1 + dS2 + dA1 + dA2 + dIs + dR; }
    bool operator==(const DerivMB&) const = default;
};

/**
 * How the asymptomatic class-switching terms of MB are scaled.
 *
 * AsPrinted keeps the published asymmetry: susceptibles switch at alpha*S/N,
 * asymptomatics at alpha*A. UniformPerCapita divides the A terms by N as well.
 */
enum class TransitionNormalization { AsPrinted, UniformPerCapita };

constexpr std::string_view to_string(TransitionNormalization n)
{
    return n == TransitionNormalization::AsPrinted ? "as-printed" : "uniform-per-capita";
}

inline std::optional<TransitionNormalization> parse_transition_normalization(std::string_view text)
{
    if (text == "as-printed") return TransitionNormalization::AsPrinted;
    if (text == "uniform-per-capita") return TransitionNormalization::UniformPerCapita;
    return std::nullopt;
}

namespace detail {

template <std::size_t Size>
void require_finite(const std::array<double, Size>& values, const char* what)
{
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw Error(ErrorCode::NonFinite, std::string("non-finite value in ") + what);
        }
    }
}

} // namespace detail

/// Right-hand side of the fixed-class system. Also serves Single (S2 = 0).
inline DerivMA rhs_ma(const Params& p, const StateMA& s)
{
    detail::require_finite(state_traits<StateMA>::to_array(s), "MA state");
    const double N     = p.N();
    const double I     = s.Ia + s.Is;
    const double force = (p.beta1() * s.S1 / N + p.beta2() * s.S2 / N) * I;

    DerivMA d;
    d.dS1 = -p.beta1() * (s.S1 / N) * I;
    d.dS2 = -p.beta2() * (s.S2 / N) * I;
    d.dIs = p.lambda() * force + p.gamma() * s.Ia - p.kappa() * s.Is;
    d.dIa = (1.0 - p.lambda()) * force - (p.gamma() + p.kappa()) * s.Ia;
    d.dR  = p.kappa() * I;
    return d;
}

/// Right-hand side of the switching system. Requires MB parameters (both alphas present).
inline DerivMB rhs_mb(const Params& p, const StateMB& s,
                      TransitionNormalization norm = TransitionNormalization::AsPrinted)
{
    detail::require_finite(state_traits<StateMB>::to_array(s), "MB state");
    if (!p.alpha1() || !p.alpha2()) {
        throw Error(ErrorCode::RejectMissing, "alpha1/alpha2: required for the MB vector field");
    }
    const double N  = p.N();
    const double a1 = *p.alpha1();
    const double a2 = *p.alpha2();
    const double I  = s.A1 + s.A2 + s.Is;
    const double A  = s.A1 + s.A2;
    // Asymptomatic switching rates; per-capita only when requested.
    const double sw1 = norm == TransitionNormalization::AsPrinted ? a1 : a1 / N;
    const double sw2 = norm == TransitionNormalization::AsPrinted ? a2 : a2 / N;

    DerivMB d;
    d.dS1 = a2 * s.S2 / N - (a1 + p.beta1() * I) * s.S1 / N;
    d.dS2 = a1 * s.S1 / N - (a2 + p.beta2() * I) * s.S2 / N;
    d.dA1 = (1.0 - p.lambda()) * p.beta1() * I * s.S1 / N + sw2 * s.A2 - (sw1 + p.gamma() + p.kappa()) * s.A1;
    d.dA2 = (1.0 - p.lambda()) * p.beta2() * I * s.S2 / N + sw1 * s.A1 - (sw2 + p.gamma() + p.kappa()) * s.A2;
    d.dIs = p.lambda() * (p.beta1() * s.S1 / N + p.beta2() * s.S2 / N) * I + p.gamma() * A - p.kappa() * s.Is;
    d.dR  = p.kappa() * I;
    return d;
}

} // namespace sociosir
