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
#include "sociosir/feasibility.hpp"
#include "support/errors.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace sociosir;

namespace {

std::vector<oracle::Pt> polygon(const FeasibleSetReport& rep)
{
    std::vector<oracle::Pt> out;
    for (const auto& v : rep.vertices) out.push_back({v.beta1, v.beta2});
    return out;
}

// Every decided grid point of (0,1]^2 lands on the same side of the reported
// hull as of the raw inequalities. Returns the number of disagreements.
int grid_disagreements(double rho, double kappa, ModelKind model, int n)
{
    const auto rep  = classify_feasible_set(rho, kappa, model);
    const auto poly = polygon(rep);
    int bad         = 0;
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            const double b1 = static_cast<double>(i) / n, b2 = static_cast<double>(j) / n;
            const int raw   = oracle::raw_membership(b1, b2, rho, kappa, 1e-12);
            const int hull  = oracle::polygon_side(poly, {b1, b2}, 1e-12);
            if (raw != 0 && hull != 0 && raw != hull) ++bad;
        }
    }
    return bad;
}

} // namespace

TEST(RhoFeasible, Examples)
{
    EXPECT_TRUE(rho_feasible(0.0005, 0.0001, 0.5, 0.0006));
    for (double rho : {0.1, 0.5, 0.9}) EXPECT_FALSE(rho_feasible(0.002, 0.0006, rho, 0.0006));
    const double k = 0.3, eps = 1e-3;
    for (double rho : {0.1, 0.5, 0.9}) EXPECT_TRUE(rho_feasible(k, k - eps, rho, k));
}

TEST(ThresholdP, Examples)
{
    EXPECT_DOUBLE_EQ(threshold_P(0.8, 0.2, 0.5), 0.5);
    EXPECT_DOUBLE_EQ(threshold_P(0.3, 0.1, 0.3), 1.0);
    EXPECT_EQ(thrown_code([] { threshold_P(0.0042, 0.0009, 0.0006); }), "REJECT_RANGE");
    EXPECT_EQ(thrown_code([] { threshold_P(1.0, 0.1, 0.5); }), "REJECT_RANGE");
}

TEST(ThresholdB2, Examples)
{
    EXPECT_DOUBLE_EQ(threshold_B2(0.8, 0.25, 0.5), 0.4);
    EXPECT_DOUBLE_EQ(threshold_B2(0.4, 0.25, 0.5), 0.4);
    EXPECT_NEAR(threshold_B2(0.5, 0.3, 0.5), 0.5, 1e-15);
    EXPECT_NEAR((0.5 - 0.3 * 0.5) / 0.7, 0.5, 1e-15);
    EXPECT_EQ(thrown_code([] { threshold_B2(0.9, 0.75, 0.5); }), "REJECT_RANGE");
}

TEST(ThresholdB1, Examples)
{
    EXPECT_DOUBLE_EQ(threshold_B1(0.2, 0.25, 0.5), 1.0);
    EXPECT_NEAR(threshold_B1(0.1, 0.5, 0.2), 0.3, 1e-15);
    EXPECT_NEAR(threshold_B1(0.2 - 1e-12, 0.4, 0.2), 0.2, 1e-11);
    EXPECT_EQ(thrown_code([] { threshold_B1(0.2, 0.4, 0.2); }), "REJECT_RANGE");
}

TEST(ThresholdProperty, AllCharacterizationsAgree)
{
    std::mt19937_64 rng(41);
    int checked = 0;
    for (int i = 0; i < 20000; ++i) {
        const double kappa = oracle::uniform(rng, 0.01, 1.0);
        const double rho   = oracle::uniform(rng, 0.001, 0.999);
        const double b1    = oracle::uniform(rng, 0.001, 0.999);
        const double b2    = b1 * oracle::uniform(rng, 0.001, 0.999);
        const bool feas    = rho_feasible(b1, b2, rho, kappa);
        if (b2 < kappa) {
            EXPECT_EQ(feas, rho < threshold_P(b1, b2, kappa));
            const double B1 = threshold_B1(b2, rho, kappa);
            if (B1 < 1.0) {
                EXPECT_EQ(feas, b1 < B1);
            }
            else {
                EXPECT_TRUE(feas); // threshold capped at the edge of the square
            }
            ++checked;
        }
        else {
            EXPECT_FALSE(feas);
        }
        if (b1 <= std::min(1.0, kappa / rho)) {
            EXPECT_EQ(feas, b2 < threshold_B2(b1, rho, kappa));
        }
    }
    EXPECT_GT(checked, 1000);
}

TEST(ClassifyFeasibleSet, HalfKappaPanels)
{
    const auto t1 = classify_feasible_set(0.25, 0.5, ModelKind::MA);
    EXPECT_EQ(t1.type_label, FeasibleType::Type1);
    ASSERT_EQ(t1.vertices.size(), 4u);
    EXPECT_EQ(t1.vertices[1], (BetaPoint{0.5, 0.5}));
    EXPECT_DOUBLE_EQ(t1.vertices[2].beta1, 1.0);
    EXPECT_NEAR(t1.vertices[2].beta2, 1.0 / 3.0, 1e-15);
    EXPECT_EQ(t1.vertices[3], (BetaPoint{1.0, 0.0}));

    const auto t0 = classify_feasible_set(0.5, 0.5, ModelKind::MA);
    EXPECT_EQ(t0.type_label, FeasibleType::Type0);
    EXPECT_EQ(t0.vertices.size(), 3u);

    const auto tm = classify_feasible_set(0.75, 0.5, ModelKind::MA);
    EXPECT_EQ(tm.type_label, FeasibleType::TypeMinus1);
    EXPECT_NEAR(tm.vertices.back().beta1, 2.0 / 3.0, 1e-15);
    EXPECT_EQ(tm.vertices.back().beta2, 0.0);
}

TEST(ClassifyFeasibleSet, KappaOneCollapsesCorner)
{
    const auto rep = classify_feasible_set(0.3, 1.0, ModelKind::MA);
    EXPECT_EQ(rep.type_label, FeasibleType::Type1);
    EXPECT_EQ(rep.vertices.size(), 3u);
}

TEST(ClassifyFeasibleSet, ModelBounds)
{
    EXPECT_EQ(thrown_code([] { classify_feasible_set(0.5, 0.3, ModelKind::MB); }), "REJECT_RANGE");
    EXPECT_EQ(thrown_code([] { classify_feasible_set(0.0, 0.3, ModelKind::MA); }), "REJECT_RANGE");
    EXPECT_EQ(thrown_code([] { classify_feasible_set(0.2, 0.0, ModelKind::MA); }), "REJECT_RANGE");
    EXPECT_EQ(thrown_code([] { classify_feasible_set(0.2, 0.3, ModelKind::Single); }), "REJECT_RANGE");
    EXPECT_EQ(classify_feasible_set(0.49, 0.3, ModelKind::MB).type_label, FeasibleType::TypeMinus1);
}

TEST(ClassifyFeasibleSetProperty, VerticesInsideTheClosedSet)
{
    std::mt19937_64 rng(43);
    for (int i = 0; i < 5000; ++i) {
        const double kappa = oracle::uniform(rng, 1e-3, 1.0);
        const double rho   = oracle::uniform(rng, 1e-3, 0.999);
        for (const auto& v : classify_feasible_set(rho, kappa, ModelKind::MA).vertices) {
            EXPECT_LE(rho * v.beta1 + (1 - rho) * v.beta2, kappa + 1e-12);
            EXPECT_LE(v.beta2, v.beta1);
        }
    }
}

TEST(ClassifyFeasibleSetOracle, BruteForceGrid)
{
    std::mt19937_64 rng(47);
    for (int i = 0; i < 20; ++i) {
        const double kappa = oracle::uniform(rng, 0.05, 0.95);
        const double rho   = oracle::uniform(rng, 0.02, 0.98);
        EXPECT_EQ(grid_disagreements(rho, kappa, ModelKind::MA, 200), 0) << rho << " " << kappa;
    }
    EXPECT_EQ(grid_disagreements(0.5, 0.5, ModelKind::MA, 200), 0);
}

TEST(BifurcationScan, MaBreakpointAtKappa)
{
    const auto grid = rho_grid(ModelKind::MA, 99);
    const auto scan = bifurcation_scan(ModelKind::MA, 0.3, grid);
    ASSERT_EQ(scan.breakpoints.size(), 1u);
    const auto& b = scan.breakpoints[0];
    EXPECT_NEAR(b.location, 0.3, 1e-12);
    EXPECT_EQ(b.before, FeasibleType::Type1);
    EXPECT_EQ(b.after, FeasibleType::TypeMinus1);
    // the brute-force shape agrees on either side of the breakpoint
    EXPECT_EQ(grid_disagreements(b.lo, 0.3, ModelKind::MA, 200), 0);
    EXPECT_EQ(grid_disagreements(b.hi, 0.3, ModelKind::MA, 200), 0);
}

TEST(BifurcationScan, MbKappaAboveHalfHasNoBreakpoint)
{
    for (double kappa : {0.5, 0.7, 1.0}) {
        const auto scan = bifurcation_scan(ModelKind::MB, kappa, rho_grid(ModelKind::MB, 99));
        EXPECT_TRUE(scan.breakpoints.empty());
        for (auto l : scan.labels) EXPECT_EQ(l, FeasibleType::Type1);
    }
}

TEST(BifurcationScan, MbBreakpointInsideRange)
{
    const auto grid = rho_grid(ModelKind::MB, 101);
    const auto scan = bifurcation_scan(ModelKind::MB, 0.3, grid);
    ASSERT_EQ(scan.breakpoints.size(), 1u);
    EXPECT_LE(scan.breakpoints[0].lo, 0.3);
    EXPECT_GE(scan.breakpoints[0].hi, 0.3);
    EXPECT_LE(scan.breakpoints[0].hi - scan.breakpoints[0].lo, 0.5 / 102 + 1e-12);
}

TEST(BifurcationScan, KappaAxis)
{
    std::vector<double> grid;
    for (int i = 1; i < 100; ++i) grid.push_back(i / 100.0 + 0.005);
    const auto scan = bifurcation_scan_kappa(ModelKind::MA, 0.4, grid);
    ASSERT_EQ(scan.breakpoints.size(), 1u);
    EXPECT_EQ(scan.breakpoints[0].before, FeasibleType::TypeMinus1);
    EXPECT_EQ(scan.breakpoints[0].after, FeasibleType::Type1);
    EXPECT_LT(scan.breakpoints[0].lo, 0.4);
    EXPECT_GT(scan.breakpoints[0].hi, 0.4);
}

TEST(BifurcationScan, RejectsUnsortedGrid)
{
    const std::vector<double> grid{0.2, 0.1};
    EXPECT_EQ(thrown_code([&] { bifurcation_scan(ModelKind::MA, 0.3, grid); }), "REJECT_RANGE");
}

TEST(FeasibleTypeText, Labels)
{
    EXPECT_EQ(to_string(FeasibleType::TypeMinus1), "TYPE_MINUS_1");
    EXPECT_EQ(numeric_label(FeasibleType::Type0), 0);
    EXPECT_EQ(numeric_label(FeasibleType::TypeMinus1), -1);
}
