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
#include "sociosir/ngm.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sociosir {

/**
 * Normalized forward sensitivity indices (p / R0) * dR0/dp.
 *
 * The three rate indices share the form 1 - f / (R0 kappa) with
 * f = beta2, (1 - rho) beta2 and rho beta1 respectively. The switching-rate
 * indices exist for MB only and are negatives of each other.
 */
struct SensitivityIndices {
    ModelKind model = ModelKind::MA;
    double upsilon_rho   = 0.0;
    double upsilon_beta1 = 0.0;
    double upsilon_beta2 = 0.0;
    std::optional<double> upsilon_alpha1;
    std::optional<double> upsilon_alpha2;
};

/// Closed-form indices from raw values; no ordering assumptions are enforced.
inline SensitivityIndices sensitivity_indices(double rho, double beta1, double beta2, double kappa,
                                              bool with_alphas = false)
{
    const double r0_kappa = r0(beta1, beta2, rho, kappa) * kappa;
    SensitivityIndices out;
    out.model         = with_alphas ? ModelKind::MB : ModelKind::MA;
    out.upsilon_rho   = 1.0 - beta2 / r0_kappa;
    out.upsilon_beta1 = 1.0 - (1.0 - rho) * beta2 / r0_kappa;
    out.upsilon_beta2 = 1.0 - rho * beta1 / r0_kappa;
    if (with_alphas) {
        const double shift = rho * (1.0 - rho) * (beta1 - beta2) / r0_kappa;
        out.upsilon_alpha1 = -shift;
        out.upsilon_alpha2 = shift;
    }
    return out;
}

inline SensitivityIndices sensitivity_indices(const Params& p)
{
    if (p.model() == ModelKind::Single) {
        throw Error(ErrorCode::RejectRange, "sensitivity indices are defined for models ma and mb");
    }
    return sensitivity_indices(p.rho(), p.beta1(), p.beta2(), p.kappa(), p.model() == ModelKind::MB);
}

enum class OrderingLabel { A, B, C, D, Boundary };

constexpr std::string_view to_string(OrderingLabel l)
{
    switch (l) {
    case OrderingLabel::A: return "A";
    case OrderingLabel::B: return "B";
    case OrderingLabel::C: return "C";
    case OrderingLabel::D: return "D";
    case OrderingLabel::Boundary: return "BOUNDARY";
    }
    return "?";
}

struct OrderingCase {
    OrderingLabel label = OrderingLabel::Boundary;
    /// Index names in ascending order of value; empty for Boundary.
    std::vector<std::string> chain;
    /// rho breakpoints beta2/(beta1+beta2), beta2/beta1, beta2/(beta1-beta2).
    std::array<double, 3> thresholds{};
};

/// |rho - breakpoint| at or below this is reported as Boundary.
inline constexpr double ordering_boundary_tolerance = 1e-12;

/**
 * Which ordering of the indices holds, decided from rho against the
 * breakpoints alone (the indices are not compared).
 *
 * MA has cases A-C, split at beta2/(beta1+beta2) and beta2/beta1. MB adds
 * case D beyond beta2/(beta1-beta2), and always places the switching-rate
 * indices below upsilon_rho.
 */
inline OrderingCase ordering_case(ModelKind model, double rho, double beta1, double beta2)
{
    OrderingCase out;
    out.thresholds = {beta2 / (beta1 + beta2), beta2 / beta1, beta2 / (beta1 - beta2)};
    const bool mb  = model == ModelKind::MB;
    const std::size_t used = mb ? 3 : 2;
    for (std::size_t i = 0; i < used; ++i) {
        if (std::abs(rho - out.thresholds[i]) <= ordering_boundary_tolerance) {
            return out;
        }
    }
    // rho = 0 (alpha2 = 0) makes both switching indices vanish
    if (mb && rho <= 0.0) {
        return out;
    }

    if (rho < out.thresholds[0]) {
        out.label = OrderingLabel::A;
        out.chain = {"rho", "beta1", "beta2"};
    }
    else if (rho < out.thresholds[1]) {
        out.label = OrderingLabel::B;
        out.chain = {"rho", "beta2", "beta1"};
    }
    else if (!mb || rho < out.thresholds[2]) {
        out.label = OrderingLabel::C;
        out.chain = {"beta2", "rho", "beta1"};
    }
    else {
        out.label = OrderingLabel::D;
        out.chain = {"beta2", "alpha2", "rho", "beta1"};
    }
    if (mb) {
        if (out.label != OrderingLabel::D) {
            out.chain.insert(out.chain.begin(), "alpha2");
        }
        out.chain.insert(out.chain.begin(), "alpha1");
    }
    return out;
}

inline OrderingCase ordering_case(const Params& p)
{
    if (p.model() == ModelKind::Single) {
        throw Error(ErrorCode::RejectRange, "ordering is defined for models ma and mb");
    }
    return ordering_case(p.model(), p.rho(), p.beta1(), p.beta2());
}

/**
 * Largest relative gap between the closed-form indices and central finite
 * differences of R0 with relative step h. For MB the switching-rate indices
 * perturb alpha1 and alpha2 themselves and go through rho = a2 / (a1 + a2).
 */
inline double finite_diff_check(const Params& p, double h)
{
    if (!(h > 1e-10 && h <= 1e-2)) {
        throw Error(ErrorCode::RejectRange, "h: must lie in (1e-10, 1e-2]");
    }
    const SensitivityIndices closed = sensitivity_indices(p);

    const double rho = p.rho(), b1 = p.beta1(), b2 = p.beta2(), kappa = p.kappa();
    const double base = r0(b1, b2, rho, kappa);

    // (x / R0) * dR0/dx by central difference
    auto index_of = [&](double x, auto&& r0_at) {
        const double dx = h * x;
        return x / base * (r0_at(x + dx) - r0_at(x - dx)) / (2.0 * dx);
    };
    auto rel_err = [](double approx, double exact) {
        const double scale = std::max(std::abs(exact), 1e-300);
        return std::abs(approx - exact) / scale;
    };

    double worst = 0.0;
    worst = std::max(worst, rel_err(index_of(rho, [&](double v) { return r0(b1, b2, v, kappa); }), closed.upsilon_rho));
    worst = std::max(worst, rel_err(index_of(b1, [&](double v) { return r0(v, b2, rho, kappa); }), closed.upsilon_beta1));
    worst = std::max(worst, rel_err(index_of(b2, [&](double v) { return r0(b1, v, rho, kappa); }), closed.upsilon_beta2));

    if (p.model() == ModelKind::MB) {
        const double a1 = *p.alpha1(), a2 = *p.alpha2();
        if (!(a2 > 0.0)) {
            throw Error(ErrorCode::RejectRange, "alpha2: finite differences need alpha2 > 0");
        }
        auto r0_alphas  = [&](double x1, double x2) { return r0(b1, b2, x2 / (x1 + x2), kappa); };
        worst = std::max(worst, rel_err(index_of(a1, [&](double v) { return r0_alphas(v, a2); }),
                                        *closed.upsilon_alpha1));
        worst = std::max(worst, rel_err(index_of(a2, [&](double v) { return r0_alphas(a1, v); }),
                                        *closed.upsilon_alpha2));
    }
    return worst;
}

} // namespace sociosir
