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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sociosir {

// A pair (beta1, beta2) is rho-feasible when beta1 > beta2 and
// rho*beta1 + (1 - rho)*beta2 < kappa, i.e. when it gives R0 < 1. Inside the
// box 0 <= beta2 <= beta1 <= 1 the feasible set is a convex polygon whose
// shape depends only on the sign of kappa - rho.

/// rho*beta1 + (1 - rho)*beta2 < kappa. No argument checks.
constexpr bool rho_feasible(double beta1, double beta2, double rho, double kappa) noexcept
{
    return rho * beta1 + (1.0 - rho) * beta2 < kappa;
}

/**
 * Largest stable rho for fixed betas: P = (kappa - beta2) / (beta1 - beta2).
 * The DFE is stable iff rho < P; P >= 1 means every rho in (0, 1) is stable.
 * Requires 0 < beta2 < min(beta1, kappa) and beta1 in (0, 1).
 */
inline double threshold_P(double beta1, double beta2, double kappa)
{
    if (!(beta1 > 0.0 && beta1 < 1.0)) {
        throw Error(ErrorCode::RejectRange, "beta1: must lie in (0, 1)");
    }
    if (!(beta2 > 0.0 && beta2 < beta1)) {
        throw Error(ErrorCode::RejectRange, "beta2: must lie in (0, beta1)");
    }
    if (!(beta2 < kappa)) {
        throw Error(ErrorCode::RejectRange, "beta2: must be < kappa, otherwise no rho is stable");
    }
    return (kappa - beta2) / (beta1 - beta2);
}

/// Supremum of stable beta2 for fixed beta1 and rho. Requires beta1 <= min(1, kappa/rho).
inline double threshold_B2(double beta1, double rho, double kappa)
{
    if (!(rho > 0.0 && rho < 1.0)) {
        throw Error(ErrorCode::RejectRange, "rho: must lie in (0, 1)");
    }
    if (!(beta1 > 0.0 && beta1 <= std::min(1.0, kappa / rho))) {
        throw Error(ErrorCode::RejectRange, "beta1: must lie in (0, min(1, kappa/rho)], otherwise no beta2 is stable");
    }
    if (beta1 <= kappa) {
        return beta1;
    }
    return (kappa - rho * beta1) / (1.0 - rho);
}

/// Upper end of the stable beta1 interval (beta2, B1] for fixed beta2 and rho.
inline double threshold_B1(double beta2, double rho, double kappa)
{
    if (!(rho > 0.0 && rho < 1.0)) {
        throw Error(ErrorCode::RejectRange, "rho: must lie in (0, 1)");
    }
    if (!(beta2 > 0.0 && beta2 < kappa)) {
        throw Error(ErrorCode::RejectRange, "beta2: must lie in (0, kappa)");
    }
    return std::min(1.0, (kappa - (1.0 - rho) * beta2) / rho);
}

enum class FeasibleType { Type1, Type0, TypeMinus1 };

constexpr std::string_view to_string(FeasibleType t)
{
    switch (t) {
    case FeasibleType::Type1: return "TYPE_1";
    case FeasibleType::Type0: return "TYPE_0";
    case FeasibleType::TypeMinus1: return "TYPE_MINUS_1";
    }
    return "?";
}

constexpr int numeric_label(FeasibleType t) noexcept
{
    return t == FeasibleType::Type1 ? 1 : (t == FeasibleType::Type0 ? 0 : -1);
}

struct BetaPoint {
    double beta1 = 0.0;
    double beta2 = 0.0;

    bool operator==(const BetaPoint&) const = default;
};

struct FeasibleSetReport {
    FeasibleType type_label = FeasibleType::Type1;
    std::vector<BetaPoint> vertices; ///< hull vertices in boundary order
    double kappa = 0.0;
    double rho   = 0.0;
};

/// |rho - kappa| at or below this counts as the Type 0 boundary.
inline constexpr double type0_tolerance = 1e-12;

namespace detail {

inline void check_rho_for_model(double rho, ModelKind model)
{
    if (model == ModelKind::Single) {
        throw Error(ErrorCode::RejectRange, "model single has rho = 1; feasibility is not defined");
    }
    const double upper = model == ModelKind::MB ? 0.5 : 1.0;
    if (!(rho > 0.0 && rho < upper)) {
        throw Error(ErrorCode::RejectRange, "rho: must lie in (0, " + std::string(model == ModelKind::MB ? "1/2" : "1") +
                                                ") for model " + std::string(to_string(model)));
    }
}

} // namespace detail

/**
 * Shape of the rho-feasible set inside 0 <= beta2 <= beta1 <= 1.
 *
 * Type 1 (rho < kappa): hull of (0,0), (k,k), (1,(k-rho)/(1-rho)), (1,0).
 * Type 0 (rho = kappa): hull of (0,0), (k,k), (1,0).
 * Type -1 (rho > kappa): hull of (0,0), (k,k), (k/rho,0).
 * At kappa = 1 the Type 1 corner (1,1) coincides with (k,k) and is listed once.
 */
inline FeasibleSetReport classify_feasible_set(double rho, double kappa, ModelKind model)
{
    if (!(kappa > 0.0 && kappa <= 1.0)) {
        throw Error(ErrorCode::RejectRange, "kappa: must lie in (0, 1]");
    }
    detail::check_rho_for_model(rho, model);

    FeasibleSetReport rep;
    rep.kappa = kappa;
    rep.rho   = rho;
    rep.vertices.push_back({0.0, 0.0});
    rep.vertices.push_back({kappa, kappa});
    if (std::abs(rho - kappa) <= type0_tolerance) {
        rep.type_label = FeasibleType::Type0;
        rep.vertices.push_back({1.0, 0.0});
    }
    else if (rho < kappa) {
        rep.type_label = FeasibleType::Type1;
        const BetaPoint exit{1.0, (kappa - rho) / (1.0 - rho)};
        if (exit != rep.vertices.back()) {
            rep.vertices.push_back(exit);
        }
        rep.vertices.push_back({1.0, 0.0});
    }
    else {
        rep.type_label = FeasibleType::TypeMinus1;
        rep.vertices.push_back({kappa / rho, 0.0});
    }
    return rep;
}

enum class ScanAxis { Rho, Kappa };

struct Breakpoint {
    double lo = 0.0;       ///< last grid value before the change
    double hi = 0.0;       ///< first grid value after the change
    double location = 0.0; ///< best estimate of the change point
    FeasibleType before = FeasibleType::Type1;
    FeasibleType after  = FeasibleType::Type1;
};

struct BifurcationScan {
    ScanAxis axis = ScanAxis::Rho;
    std::vector<double> grid;
    std::vector<FeasibleType> labels;
    std::vector<Breakpoint> breakpoints;
};

namespace detail {

inline void require_increasing(std::span<const double> grid)
{
    if (grid.empty()) {
        throw Error(ErrorCode::RejectRange, "grid: must not be empty");
    }
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) {
            throw Error(ErrorCode::RejectRange, "grid: must be strictly increasing");
        }
    }
}

// A lone Type 0 sample sitting exactly on the boundary joins its two
// neighbours into one breakpoint located at that sample.
inline std::vector<Breakpoint> find_breakpoints(std::span<const double> grid, std::span<const FeasibleType> labels)
{
    std::vector<Breakpoint> out;
    for (std::size_t i = 1; i < labels.size(); ++i) {
        if (labels[i] == labels[i - 1]) {
            continue;
        }
        const bool lone_zero = labels[i] == FeasibleType::Type0 && i + 1 < labels.size() &&
                               labels[i + 1] != FeasibleType::Type0 && labels[i + 1] != labels[i - 1];
        if (lone_zero) {
            out.push_back({grid[i - 1], grid[i + 1], grid[i], labels[i - 1], labels[i + 1]});
            ++i;
        }
        else if (labels[i] == FeasibleType::Type0) {
            out.push_back({grid[i - 1], grid[i], grid[i], labels[i - 1], labels[i]});
        }
        else if (labels[i - 1] == FeasibleType::Type0 && !out.empty() && out.back().hi == grid[i - 1]) {
            // Type 0 run ended; already reported when it started
            out.back().after = labels[i];
            out.back().hi    = grid[i];
        }
        else {
            out.push_back({grid[i - 1], grid[i], 0.5 * (grid[i - 1] + grid[i]), labels[i - 1], labels[i]});
        }
    }
    return out;
}

} // namespace detail

/// Label every rho in `grid` for fixed kappa and locate the label changes.
inline BifurcationScan bifurcation_scan(ModelKind model, double kappa, std::span<const double> grid)
{
    detail::require_increasing(grid);
    BifurcationScan scan;
    scan.axis = ScanAxis::Rho;
    scan.grid.assign(grid.begin(), grid.end());
    scan.labels.reserve(grid.size());
    for (double rho : grid) {
        scan.labels.push_back(classify_feasible_set(rho, kappa, model).type_label);
    }
    scan.breakpoints = detail::find_breakpoints(scan.grid, scan.labels);
    return scan;
}

/// Same scan along kappa at fixed rho.
inline BifurcationScan bifurcation_scan_kappa(ModelKind model, double rho, std::span<const double> grid)
{
    detail::require_increasing(grid);
    BifurcationScan scan;
    scan.axis = ScanAxis::Kappa;
    scan.grid.assign(grid.begin(), grid.end());
    scan.labels.reserve(grid.size());
    for (double kappa : grid) {
        scan.labels.push_back(classify_feasible_set(rho, kappa, model).type_label);
    }
    scan.breakpoints = detail::find_breakpoints(scan.grid, scan.labels);
    return scan;
}

/// `steps` evenly spaced interior points of the model's rho range: (0,1) for MA, (0,1/2) for MB.
inline std::vector<double> rho_grid(ModelKind model, std::size_t steps)
{
    const double upper = model == ModelKind::MB ? 0.5 : 1.0;
    std::vector<double> grid;
    grid.reserve(steps);
    for (std::size_t i = 1; i <= steps; ++i) {
        grid.push_back(upper * static_cast<double>(i) / static_cast<double>(steps + 1));
    }
    return grid;
}

} // namespace sociosir
