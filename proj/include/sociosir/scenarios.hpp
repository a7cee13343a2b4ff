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
#include "sociosir/dynamics.hpp"
#include "sociosir/integrator.hpp"
#include "sociosir/ngm.hpp"

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace sociosir {

/// Start just off the DFE: N - 1 susceptibles split by rho, one symptomatic.
struct DfePlusOneSymptomatic {
    /// Class-1 share of the susceptibles; defaults to the model's rho.
    std::optional<double> rho;

    bool operator==(const DfePlusOneSymptomatic&) const = default;
};

using InitSpec = std::variant<DfePlusOneSymptomatic, StateMA, StateMB>;

struct TimeSpec {
    double t0 = 0.0;
    double t1 = 1.0;
    double dt = 1.0;
    std::size_t record_every = 1;

    bool operator==(const TimeSpec&) const = default;
};

enum class SplitRule { Proportional };

/// Single-class phase on [t0, t_switch], then MB on [t_switch, t1].
struct MixedSpec {
    double t_switch  = 0.0;
    double rho_split = 0.5;
    SplitRule split_rule = SplitRule::Proportional;

    bool operator==(const MixedSpec&) const = default;
};

struct ScenarioConfig {
    /// MA, MB or Single. A mixed run carries MB here plus a MixedSpec.
    ModelKind model;
    Params params;
    InitSpec init;
    TimeSpec time;
    std::optional<MixedSpec> mixed;
    std::vector<std::string> outputs;
    TransitionNormalization normalization = TransitionNormalization::AsPrinted;

    bool operator==(const ScenarioConfig&) const = default;
};

struct ScenarioSummary {
    double r0 = 0.0;
    Peak peak_I;
    Peak peak_Is;
    double final_R = 0.0;
};

using AnyTrajectory = std::variant<Trajectory<StateMA>, Trajectory<StateMB>>;

struct ScenarioResult {
    AnyTrajectory trajectory;
    ScenarioSummary summary;
};

/// Splits total into (frac*total, rest) so that the two parts add back to total exactly.
inline std::pair<double, double> split_exact(double total, double frac)
{
    const double first = frac * total;
    double second      = total - first;
    for (int i = 0; i < 8 && first + second != total; ++i) {
        second = std::nextafter(second, first + second < total ? std::numeric_limits<double>::infinity()
                                                               : -std::numeric_limits<double>::infinity());
    }
    return {first, second};
}

inline StateMA dfe_plus_one_symptomatic_ma(double N, double rho)
{
    if (!(N > 1.0)) {
        throw Error(ErrorCode::RejectRange, "N: must exceed 1 to seed one symptomatic");
    }
    const auto [s1, s2] = split_exact(N - 1.0, rho);
    return StateMA{.S1 = s1, .S2 = s2, .Is = 1.0};
}

inline StateMB dfe_plus_one_symptomatic_mb(double N, double rho)
{
    const StateMA ma = dfe_plus_one_symptomatic_ma(N, rho);
    return StateMB{.S1 = ma.S1, .S2 = ma.S2, .Is = 1.0};
}

/**
 * Hand a single-class state over to MB at the switch.
 *
 * Susceptibles and asymptomatics are both split by rho_split; Is and R carry
 * over. Class totals and N are preserved bit for bit.
 */
inline StateMB split_proportional(const StateMA& pre, double rho_split)
{
    const auto [s1, s2] = split_exact(pre.S1 + pre.S2, rho_split);
    const auto [a1, a2] = split_exact(pre.Ia, rho_split);
    return StateMB{.S1 = s1, .S2 = s2, .A1 = a1, .A2 = a2, .Is = pre.Is, .R = pre.R};
}

namespace detail {

template <CompartmentState State>
ScenarioSummary summarize(const Trajectory<State>& traj, double r0_value)
{
    ScenarioSummary sum;
    sum.r0      = r0_value;
    sum.peak_I  = peak_of(traj, *find_observable<State>("I"));
    sum.peak_Is = peak_of(traj, *find_observable<State>("Is"));
    sum.final_R = traj.states.back().R;
    return sum;
}

inline double init_rho(const DfePlusOneSymptomatic& rule, const Params& p)
{
    const double rho = rule.rho.value_or(p.rho());
    if (!(rho >= 0.0 && rho <= 1.0)) {
        throw Error(ErrorCode::RejectRange, "init.rho: must lie in [0, 1]");
    }
    return rho;
}

inline Params single_phase_params(const Params& mb)
{
    ParamInput in;
    in.beta1  = mb.beta1();
    in.lambda = mb.lambda();
    in.gamma  = mb.gamma();
    in.kappa  = mb.kappa();
    in.N      = mb.N();
    ValidationOptions opts;
    opts.allow_beta_gt_one = mb.options().allow_beta_gt_one;
    return validate_params(in, ModelKind::Single, opts);
}

inline StateMB lift_single(const StateMA& s)
{
    return StateMB{.S1 = s.S1, .S2 = s.S2, .A1 = s.Ia, .A2 = 0.0, .Is = s.Is, .R = s.R};
}

} // namespace detail

/// Validated parameters for the single-class phase of a mixed run.
inline Params single_phase_params(const Params& mb)
{
    return detail::single_phase_params(mb);
}

/**
 * Mixed run: integrate Single (every susceptible in class 1, beta1) up to
 * t_switch, split the state by rho_split, then integrate MB to t1.
 *
 * The returned trajectory uses MB states throughout; records before the
 * switch carry A1 = Ia and A2 = 0. The switch instant is recorded once, with
 * the post-split state, and the pre-split state is kept in switch_record.
 */
inline ScenarioResult run_mixed(const ScenarioConfig& cfg)
{
    if (!cfg.mixed) {
        throw Error(ErrorCode::RejectMissing, "mixed: block required for a mixed run");
    }
    if (cfg.params.model() != ModelKind::MB) {
        throw Error(ErrorCode::RejectRange, "mixed: params must be validated for model mb");
    }
    const MixedSpec& mix = *cfg.mixed;
    const TimeSpec& tm   = cfg.time;
    if (!(mix.t_switch > tm.t0 && mix.t_switch < tm.t1)) {
        throw Error(ErrorCode::RejectRange, "mixed.t_switch: must lie in (t0, t1)");
    }
    if (!(mix.rho_split > 0.0 && mix.rho_split < 1.0)) {
        throw Error(ErrorCode::RejectRange, "mixed.rho_split: must lie in (0, 1)");
    }

    const Params single = detail::single_phase_params(cfg.params);
    StateMA init;
    if (const auto* rule = std::get_if<DfePlusOneSymptomatic>(&cfg.init)) {
        if (rule->rho && *rule->rho != 1.0) {
            throw Error(ErrorCode::RejectRange, "init.rho: the single-class phase starts with rho = 1");
        }
        init = dfe_plus_one_symptomatic_ma(single.N(), 1.0);
    }
    else if (const auto* explicit_ma = std::get_if<StateMA>(&cfg.init)) {
        init = *explicit_ma;
    }
    else {
        throw Error(ErrorCode::RejectRange, "init: a mixed run starts from a single-class (MA-shaped) state");
    }

    const auto phase1 = simulate(ModelKind::Single, single, init, tm.t0, mix.t_switch, tm.dt, tm.record_every);
    const StateMA pre  = phase1.states.back();
    const StateMB post = split_proportional(pre, mix.rho_split);
    const auto phase2  = simulate(ModelKind::MB, cfg.params, post, mix.t_switch, tm.t1, tm.dt, tm.record_every,
                                  cfg.normalization);

    Trajectory<StateMB> traj{ModelKind::MB, {}, {}, cfg.params, tm.dt, SwitchRecord{mix.t_switch, pre, post}};
    traj.times.reserve(phase1.size() + phase2.size());
    traj.states.reserve(phase1.size() + phase2.size());
    for (std::size_t i = 0; i + 1 < phase1.size(); ++i) {
        traj.times.push_back(phase1.times[i]);
        traj.states.push_back(detail::lift_single(phase1.states[i]));
    }
    traj.times.insert(traj.times.end(), phase2.times.begin(), phase2.times.end());
    traj.states.insert(traj.states.end(), phase2.states.begin(), phase2.states.end());

    ScenarioSummary summary = detail::summarize(traj, r0(cfg.params));
    return {std::move(traj), summary};
}

/// Resolve the initial state and integrate. Mixed configs are delegated to run_mixed().
inline ScenarioResult run_scenario(const ScenarioConfig& cfg)
{
    if (cfg.mixed) {
        return run_mixed(cfg);
    }
    const TimeSpec& tm = cfg.time;
    const Params& p    = cfg.params;

    if (cfg.model == ModelKind::MB) {
        StateMB init;
        if (const auto* rule = std::get_if<DfePlusOneSymptomatic>(&cfg.init)) {
            init = dfe_plus_one_symptomatic_mb(p.N(), detail::init_rho(*rule, p));
        }
        else if (const auto* s = std::get_if<StateMB>(&cfg.init)) {
            init = *s;
        }
        else {
            throw Error(ErrorCode::RejectRange, "init: model mb needs an MB-shaped state");
        }
        auto traj = simulate(ModelKind::MB, p, init, tm.t0, tm.t1, tm.dt, tm.record_every, cfg.normalization);
        ScenarioSummary summary = detail::summarize(traj, r0(p));
        return {std::move(traj), summary};
    }

    StateMA init;
    if (const auto* rule = std::get_if<DfePlusOneSymptomatic>(&cfg.init)) {
        init = dfe_plus_one_symptomatic_ma(p.N(), detail::init_rho(*rule, p));
    }
    else if (const auto* s = std::get_if<StateMA>(&cfg.init)) {
        init = *s;
    }
    else {
        throw Error(ErrorCode::RejectRange, "init: model " + std::string(to_string(cfg.model)) +
                                                " needs an MA-shaped state");
    }
    auto traj = simulate(cfg.model, p, init, tm.t0, tm.t1, tm.dt, tm.record_every);
    ScenarioSummary summary = detail::summarize(traj, r0(p));
    return {std::move(traj), summary};
}

/// Infection rates without (beta1) and with (beta2) a mitigation behavior.
struct MitigationPreset {
    std::string name;
    double beta1 = 0.0;
    double beta2 = 0.0;

    bool operator==(const MitigationPreset&) const = default;
};

/// Masks, avoiding common areas and distancing, in that order.
inline std::array<MitigationPreset, 3> covid_mitigation_presets()
{
    return {{
        {"masks", 0.00808, 0.00558},
        {"common_areas", 0.00675, 0.00538},
        {"distancing", 0.00700, 0.00547},
    }};
}

inline std::optional<MitigationPreset> find_preset(std::string_view name)
{
    for (const auto& preset : covid_mitigation_presets()) {
        if (preset.name == name) {
            return preset;
        }
    }
    return std::nullopt;
}

/**
 * MB parameters shared by all presets: alpha1 = 1e-4, alpha2 = 0,
 * gamma = 1e-4, lambda = 0.65, kappa = 2e-4. alpha2 = 0 is outside the usual
 * alpha1 > alpha2 > 0 and is admitted only here.
 */
inline Params preset_params(const MitigationPreset& preset, double N)
{
    ParamInput in;
    in.beta1  = preset.beta1;
    in.beta2  = preset.beta2;
    in.alpha1 = 0.0001;
    in.alpha2 = 0.0;
    in.gamma  = 0.0001;
    in.lambda = 0.65;
    in.kappa  = 0.0002;
    in.N      = N;
    ValidationOptions opts;
    opts.allow_zero_alpha2 = true;
    return validate_params(in, ModelKind::MB, opts);
}

/// Population size and time window used for every participation level.
struct ScanBase {
    double N = 100.0;
    TimeSpec time{0.0, 10000.0, 1.0, 1};
};

struct ParticipationScanResult {
    std::string preset;
    double capacity = 0.0;
    std::vector<double> grid;
    std::vector<double> peak_Is;
    /// Smallest participation whose Is peak stays within capacity; empty means NONE_FOUND.
    std::optional<double> minimal_compliant;
    /// False when peak_Is rises somewhere along the grid (a warning, not an error).
    bool monotone = true;
};

/// `steps` evenly spaced participation fractions strictly inside (0, 1).
inline std::vector<double> participation_grid(std::size_t steps)
{
    std::vector<double> grid;
    grid.reserve(steps);
    for (std::size_t i = 1; i <= steps; ++i) {
        grid.push_back(static_cast<double>(i) / static_cast<double>(steps + 1));
    }
    return grid;
}

/**
 * Peak symptomatic load of the MB preset model for each participation level q.
 *
 * Participants (share q of the N - 1 susceptibles) start in S2, the rest in
 * S1, with one symptomatic seed. Grid points are independent runs.
 */
inline ParticipationScanResult participation_scan(const MitigationPreset& preset, double capacity,
                                                  std::span<const double> grid, const ScanBase& base = {})
{
    if (!(capacity > 0.0)) {
        throw Error(ErrorCode::RejectRange, "capacity: must be > 0");
    }
    if (grid.empty()) {
        throw Error(ErrorCode::RejectRange, "grid: must not be empty");
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] > 0.0 && grid[i] < 1.0) || (i > 0 && !(grid[i] > grid[i - 1]))) {
            throw Error(ErrorCode::RejectRange, "grid: must be strictly increasing inside (0, 1)");
        }
    }

    const Params p = preset_params(preset, base.N);
    const auto is  = *find_observable<StateMB>("Is");

    ParticipationScanResult out;
    out.preset   = preset.name;
    out.capacity = capacity;
    out.grid.assign(grid.begin(), grid.end());
    out.peak_Is.reserve(grid.size());
    for (double q : grid) {
        // participants are the class-2 share, so class 1 gets 1 - q
        const StateMB init = dfe_plus_one_symptomatic_mb(base.N, 1.0 - q);
        const auto traj    = simulate(ModelKind::MB, p, init, base.time.t0, base.time.t1, base.time.dt,
                                      base.time.record_every);
        out.peak_Is.push_back(peak_of(traj, is).value);
    }
    for (std::size_t i = 0; i < out.grid.size(); ++i) {
        if (i > 0 && out.peak_Is[i] > out.peak_Is[i - 1]) {
            out.monotone = false;
        }
        if (!out.minimal_compliant && out.peak_Is[i] <= capacity) {
            out.minimal_compliant = out.grid[i];
        }
    }
    return out;
}

} // namespace sociosir
