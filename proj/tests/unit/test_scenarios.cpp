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
#include "sociosir/scenarios.hpp"
#include "support/errors.hpp"

#include <gtest/gtest.h>

using namespace sociosir;

namespace {

Params ma_params(double beta1, double beta2, double kappa)
{
    ParamInput in;
    in.beta1  = beta1;
    in.beta2  = beta2;
    in.lambda = 0.65;
    in.gamma  = 0.005;
    in.kappa  = kappa;
    in.rho    = 0.75;
    in.N      = 100;
    return validate_params(in, ModelKind::MA);
}

ScenarioConfig ma_config(double beta1, double beta2, double kappa, double t1)
{
    return ScenarioConfig{ModelKind::MA, ma_params(beta1, beta2, kappa), DfePlusOneSymptomatic{},
                          TimeSpec{0.0, t1, 1.0, 10}, std::nullopt, {}};
}

ScenarioConfig mixed_config(double t_switch, double rho_split)
{
    ParamInput in;
    in.beta1  = 0.0011;
    in.beta2  = 0.0001;
    in.alpha1 = 0.001;
    in.alpha2 = 0.0001;
    in.lambda = 0.65;
    in.gamma  = 0.0001;
    in.kappa  = 0.0002;
    in.N      = 100;
    return ScenarioConfig{ModelKind::MB, validate_params(in, ModelKind::MB), DfePlusOneSymptomatic{},
                          TimeSpec{0.0, 20000.0, 1.0, 10}, MixedSpec{t_switch, rho_split}, {}};
}

double peak_after(const Trajectory<StateMB>& traj, double t)
{
    double best = 0.0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        if (traj.times[i] >= t) best = std::max(best, traj.states[i].A1 + traj.states[i].A2 + traj.states[i].Is);
    }
    return best;
}

} // namespace

TEST(InitialState, DfePlusOneSymptomatic)
{
    const auto s = dfe_plus_one_symptomatic_ma(100, 0.75);
    EXPECT_EQ(s.S1, 74.25);
    EXPECT_EQ(s.S2, 24.75);
    EXPECT_EQ(s.Is, 1.0);
    EXPECT_EQ(s.Ia, 0.0);
    EXPECT_EQ(total_population(s), 100.0);
    const auto b = dfe_plus_one_symptomatic_mb(100, 0.3);
    EXPECT_EQ(b.S1 + b.S2, 99.0);
    EXPECT_EQ(thrown_code([] { dfe_plus_one_symptomatic_ma(1.0, 0.5); }), "REJECT_RANGE");
}

TEST(InitialState, SplitExactAddsBack)
{
    for (double total : {99.0, 73.123456789, 1e-3, 12345.678}) {
        for (double frac : {0.1, 0.25, 1.0 / 3.0, 0.7, 0.999}) {
            const auto [a, b] = split_exact(total, frac);
            EXPECT_EQ(a + b, total);
            EXPECT_EQ(a, frac * total);
        }
    }
}

TEST(RunScenario, SummaryFields)
{
    const auto res = run_scenario(ma_config(0.0042, 0.0009, 0.002, 20000));
    const auto& traj = std::get<Trajectory<StateMA>>(res.trajectory);
    EXPECT_NEAR(res.summary.r0, 1.6875, 1e-12);
    EXPECT_EQ(res.summary.final_R, traj.states.back().R);
    EXPECT_EQ(res.summary.peak_I.value, peak_of(traj, *find_observable<StateMA>("I")).value);
    EXPECT_GE(res.summary.peak_I.value, res.summary.peak_Is.value);
}

TEST(RunScenario, LargerKappaGivesSmallerEpidemic)
{
    const auto a = run_scenario(ma_config(0.0042, 0.0009, 0.00006, 20000));
    const auto b = run_scenario(ma_config(0.0042, 0.0009, 0.002, 20000));
    EXPECT_NEAR(a.summary.r0, 56.25, 1e-9);
    EXPECT_NEAR(b.summary.r0, 1.6875, 1e-12);
    EXPECT_LT(b.summary.final_R, a.summary.final_R);
    EXPECT_LT(b.summary.peak_I.value, a.summary.peak_I.value);
}

TEST(RunScenario, DfeIsConstant)
{
    auto cfg = ma_config(0.0042, 0.0009, 0.002, 1000);
    cfg.init = StateMA{.S1 = 75.0, .S2 = 25.0};
    const auto res   = run_scenario(cfg);
    const auto& traj = std::get<Trajectory<StateMA>>(res.trajectory);
    for (const auto& s : traj.states) EXPECT_EQ(s, traj.states.front());
}

TEST(RunScenario, MbSusceptiblesRedistributeTowardRatio)
{
    ParamInput in;
    in.beta1  = 0.0042;
    in.beta2  = 0.0009;
    in.alpha1 = 0.10;
    in.alpha2 = 0.010;
    in.lambda = 0.65;
    in.gamma  = 0.0005;
    in.kappa  = 0.0002;
    in.N      = 100;
    const Params p = validate_params(in, ModelKind::MB);

    // switching runs at alpha * S / N, so redistribution takes ~N / (alpha1 + alpha2) time units
    // and overlaps the outbreak; the ratio falls steadily from 3 toward 0.1 during the rise
    ScenarioConfig cfg{ModelKind::MB, p, DfePlusOneSymptomatic{0.75}, TimeSpec{0.0, 2000.0, 1.0, 100},
                       std::nullopt, {}};
    const auto& traj = std::get<Trajectory<StateMB>>(run_scenario(cfg).trajectory);
    EXPECT_NEAR(traj.states.front().S1 / traj.states.front().S2, 3.0, 1e-12);
    for (std::size_t i = 1; i < traj.size(); ++i) {
        EXPECT_LT(traj.states[i].S1 / traj.states[i].S2, traj.states[i - 1].S1 / traj.states[i - 1].S2);
    }
    EXPECT_LT(traj.states.back().S1 / traj.states.back().S2, 0.15);

    // without infectives the ratio settles exactly at alpha2 / alpha1
    cfg.init = StateMB{.S1 = 75.0, .S2 = 25.0};
    cfg.time = TimeSpec{0.0, 20000.0, 1.0, 1000};
    const auto& clean = std::get<Trajectory<StateMB>>(run_scenario(cfg).trajectory);
    EXPECT_NEAR(clean.states.back().S1 / clean.states.back().S2, 0.1, 1e-8);
}

TEST(RunScenario, InitShapeMustMatchModel)
{
    auto cfg = ma_config(0.0042, 0.0009, 0.002, 100);
    cfg.init = StateMB{.S1 = 50, .S2 = 49, .Is = 1};
    EXPECT_EQ(thrown_code([&] { run_scenario(cfg); }), "REJECT_RANGE");
    cfg.init = DfePlusOneSymptomatic{1.5};
    EXPECT_EQ(thrown_code([&] { run_scenario(cfg); }), "REJECT_RANGE");
}

TEST(RunMixed, ContinuityAtSwitch)
{
    const auto res   = run_mixed(mixed_config(1000, 0.25));
    const auto& traj = std::get<Trajectory<StateMB>>(res.trajectory);
    ASSERT_TRUE(traj.switch_record.has_value());
    const auto& rec = *traj.switch_record;
    EXPECT_EQ(rec.t_switch, 1000.0);
    EXPECT_EQ(rec.pre.S2, 0.0);
    EXPECT_EQ(rec.post.S1 + rec.post.S2, rec.pre.S1 + rec.pre.S2);
    EXPECT_EQ(rec.post.A1 + rec.post.A2, rec.pre.Ia);
    EXPECT_EQ(rec.post.Is, rec.pre.Is);
    EXPECT_EQ(rec.post.R, rec.pre.R);
    EXPECT_EQ(total_population(rec.post), total_population(rec.pre));
    EXPECT_EQ(rec.post.S1 / (rec.post.S1 + rec.post.S2), 0.25);
    EXPECT_EQ(rec.post.A1, 0.25 * rec.pre.Ia);

    std::size_t at_switch = 0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        if (i > 0) {
            EXPECT_GT(traj.times[i], traj.times[i - 1]);
        }
        EXPECT_NEAR(total_population(traj.states[i]), 100.0, 1e-9);
        if (traj.times[i] == 1000.0) {
            ++at_switch;
            EXPECT_EQ(traj.states[i], rec.post);
        }
        if (traj.times[i] < 1000.0) {
            EXPECT_EQ(traj.states[i].S2, 0.0);
            EXPECT_EQ(traj.states[i].A2, 0.0);
        }
    }
    EXPECT_EQ(at_switch, 1u);
    EXPECT_EQ(traj.times.front(), 0.0);
    EXPECT_EQ(traj.times.back(), 20000.0);
}

TEST(RunMixed, SplitFractionIsExact)
{
    for (double q : {0.1, 0.25, 1.0 / 3.0, 0.6, 0.75, 0.9}) {
        const auto res = run_mixed(mixed_config(500, q));
        const auto& rec = *std::get<Trajectory<StateMB>>(res.trajectory).switch_record;
        EXPECT_EQ(rec.post.S1, q * (rec.pre.S1 + rec.pre.S2));
        EXPECT_EQ(rec.post.S1 + rec.post.S2, rec.pre.S1 + rec.pre.S2);
    }
}

TEST(RunMixed, SmallerHighRiskShareLowersPostSwitchPeak)
{
    const auto low  = run_mixed(mixed_config(1000, 0.25));
    const auto high = run_mixed(mixed_config(1000, 0.75));
    EXPECT_LT(peak_after(std::get<Trajectory<StateMB>>(low.trajectory), 1000),
              peak_after(std::get<Trajectory<StateMB>>(high.trajectory), 1000));
    EXPECT_LT(low.summary.peak_I.value, high.summary.peak_I.value);
}

TEST(RunMixed, LaterSwitchGivesMoreRemoved)
{
    const auto early = run_mixed(mixed_config(1000, 0.25));
    const auto late  = run_mixed(mixed_config(5000, 0.25));
    EXPECT_GT(late.summary.final_R, early.summary.final_R);
}

TEST(RunMixed, EarliestSwitchMatchesPureMb)
{
    auto cfg         = mixed_config(1, 0.25);
    cfg.time.record_every = 1;
    const auto mixed = run_mixed(cfg);
    const auto& traj = std::get<Trajectory<StateMB>>(mixed.trajectory);
    const auto pure  = simulate(ModelKind::MB, cfg.params, traj.switch_record->post, 1.0, 20000.0, 1.0, 1);
    ASSERT_EQ(traj.size(), pure.size() + 1);
    for (std::size_t i = 0; i < pure.size(); ++i) EXPECT_EQ(traj.states[i + 1], pure.states[i]);
}

TEST(RunMixed, Rejections)
{
    auto cfg = mixed_config(1000, 0.25);
    cfg.mixed->t_switch = 20000;
    EXPECT_EQ(thrown_code([&] { run_mixed(cfg); }), "REJECT_RANGE");
    cfg.mixed->t_switch = 0;
    EXPECT_EQ(thrown_code([&] { run_mixed(cfg); }), "REJECT_RANGE");
    cfg = mixed_config(1000, 1.0);
    EXPECT_EQ(thrown_code([&] { run_mixed(cfg); }), "REJECT_RANGE");
    cfg = mixed_config(1000, 0.25);
    cfg.init = DfePlusOneSymptomatic{0.5};
    EXPECT_EQ(thrown_code([&] { run_mixed(cfg); }), "REJECT_RANGE");
    cfg = mixed_config(1000, 0.25);
    cfg.mixed.reset();
    EXPECT_EQ(thrown_code([&] { run_mixed(cfg); }), "REJECT_MISSING");
}

TEST(Presets, Values)
{
    const auto presets = covid_mitigation_presets();
    EXPECT_EQ(presets[0], (MitigationPreset{"masks", 0.00808, 0.00558}));
    EXPECT_EQ(presets[1], (MitigationPreset{"common_areas", 0.00675, 0.00538}));
    EXPECT_EQ(presets[2], (MitigationPreset{"distancing", 0.00700, 0.00547}));
    EXPECT_FALSE(find_preset("vaccines").has_value());
    const auto p = preset_params(*find_preset("masks"), 100);
    EXPECT_EQ(*p.alpha1(), 0.0001);
    EXPECT_EQ(*p.alpha2(), 0.0);
    EXPECT_EQ(p.gamma(), 0.0001);
    EXPECT_EQ(p.lambda(), 0.65);
    EXPECT_EQ(p.kappa(), 0.0002);
}

TEST(MonotoneMitigation, LoweringBeta1)
{
    double prev = 1e300;
    for (int i = 0; i <= 10; ++i) {
        const double b1 = 0.0042 - 0.0002 * i;
        const auto res  = run_scenario(ma_config(b1, 0.0009, 0.00006, 20000));
        EXPECT_LE(res.summary.peak_I.value, prev) << b1;
        prev = res.summary.peak_I.value;
    }
}

TEST(MonotoneMitigation, LoweringBeta2)
{
    double prev = 1e300;
    for (int i = 0; i <= 16; ++i) {
        const double b2 = 0.0041 - 0.0002 * i;
        const auto res  = run_scenario(ma_config(0.0042, b2, 0.00006, 20000));
        EXPECT_LE(res.summary.peak_I.value, prev) << b2;
        prev = res.summary.peak_I.value;
    }
}

TEST(ParticipationScan, CapacityAtNBindsNothing)
{
    const std::vector<double> grid{0.2, 0.5, 0.8};
    const auto res = participation_scan(*find_preset("masks"), 100, grid);
    ASSERT_TRUE(res.minimal_compliant.has_value());
    EXPECT_EQ(*res.minimal_compliant, 0.2);
    EXPECT_TRUE(res.monotone);
    EXPECT_EQ(res.peak_Is.size(), 3u);
    for (std::size_t i = 1; i < 3; ++i) EXPECT_LE(res.peak_Is[i], res.peak_Is[i - 1]);
}

TEST(ParticipationScan, NoneFoundBelowEveryPeak)
{
    const std::vector<double> grid{0.5};
    const auto res = participation_scan(*find_preset("distancing"), 1.0, grid);
    EXPECT_FALSE(res.minimal_compliant.has_value());
}

TEST(ParticipationScan, Rejections)
{
    const auto masks = *find_preset("masks");
    const std::vector<double> unsorted{0.5, 0.4}, outside{0.0, 0.5}, empty{};
    EXPECT_EQ(thrown_code([&] { participation_scan(masks, 80, unsorted); }), "REJECT_RANGE");
    EXPECT_EQ(thrown_code([&] { participation_scan(masks, 80, outside); }), "REJECT_RANGE");
    EXPECT_EQ(thrown_code([&] { participation_scan(masks, 80, empty); }), "REJECT_RANGE");
    const std::vector<double> ok{0.5};
    EXPECT_EQ(thrown_code([&] { participation_scan(masks, 0, ok); }), "REJECT_RANGE");
}

TEST(ParticipationScan, GridInsideUnitInterval)
{
    const auto g = participation_grid(99);
    ASSERT_EQ(g.size(), 99u);
    EXPECT_EQ(g.front(), 0.01);
    EXPECT_EQ(g.back(), 0.99);
}
