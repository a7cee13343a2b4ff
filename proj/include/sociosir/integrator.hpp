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

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

namespace sociosir {

/// States below -negative_state_tolerance * N abort the step; no clamping is done.
inline constexpr double negative_state_tolerance = 1e-9;

/**
 * One classical fourth-order Runge-Kutta step on a plain vector.
 *
 * `field(t, y)` returns dy/dt. The result depends only on the inputs, so
 * repeated calls are bit-identical. Throws NonFinite if any stage is not finite.
 */
template <std::size_t Size, class Field>
std::array<double, Size> rk4_step(Field&& field, const std::array<double, Size>& y, double t, double dt)
{
    auto axpy = [](const std::array<double, Size>& base, double h, const std::array<double, Size>& k) {
        std::array<double, Size> out{};
        for (std::size_t i = 0; i < Size; ++i) {
            out[i] = base[i] + h * k[i];
        }
        return out;
    };

    const std::array<double, Size> k1 = field(t, y);
    detail::require_finite(k1, "RK4 stage 1");
    const std::array<double, Size> k2 = field(t + 0.5 * dt, axpy(y, 0.5 * dt, k1));
    detail::require_finite(k2, "RK4 stage 2");
    const std::array<double, Size> k3 = field(t + 0.5 * dt, axpy(y, 0.5 * dt, k2));
    detail::require_finite(k3, "RK4 stage 3");
    const std::array<double, Size> k4 = field(t + dt, axpy(y, dt, k3));
    detail::require_finite(k4, "RK4 stage 4");

    std::array<double, Size> out{};
    for (std::size_t i = 0; i < Size; ++i) {
        out[i] = y[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    detail::require_finite(out, "RK4 result");
    return out;
}

/// Autonomous vector field of a model, lifted to the array form rk4_step() expects.
inline auto model_field(const Params& p, std::type_identity<StateMA>,
                        TransitionNormalization = TransitionNormalization::AsPrinted)
{
    return [&p](double, const std::array<double, 5>& y) {
        return rhs_ma(p, state_traits<StateMA>::from_array(y)).as_array();
    };
}

inline auto model_field(const Params& p, std::type_identity<StateMB>,
                        TransitionNormalization norm = TransitionNormalization::AsPrinted)
{
    return [&p, norm](double, const std::array<double, 6>& y) {
        return rhs_mb(p, state_traits<StateMB>::from_array(y), norm).as_array();
    };
}

/**
 * One RK4 step of a compartment state under `field`.
 *
 * Throws NegativeState if any component of the result falls below
 * -1e-9 * N, where N is the population of the input state; that signals a
 * step size too large for the dynamics.
 */
template <CompartmentState State, class Field>
State step_rk4(Field&& field, const State& s, double t, double dt)
{
    if (!(dt > 0.0)) {
        throw Error(ErrorCode::RejectRange, "dt: must be > 0");
    }
    using traits    = state_traits<State>;
    const auto next = rk4_step(field, traits::to_array(s), t, dt);
    const double N  = total_population(s);
    for (std::size_t i = 0; i < traits::size; ++i) {
        if (next[i] < -negative_state_tolerance * N) {
            throw Error(ErrorCode::NegativeState,
                        std::string(traits::names[i]) + " = " + std::to_string(next[i]) +
                            " after step; reduce dt");
        }
    }
    return traits::from_array(next);
}

/// Where a mixed run handed over from the single-class phase to MB.
struct SwitchRecord {
    double t_switch = 0.0;
    StateMA pre;
    StateMB post;

    bool operator==(const SwitchRecord&) const = default;
};

template <CompartmentState State>
struct Trajectory {
    ModelKind model;
    std::vector<double> times;
    std::vector<State> states;
    Params params_used;
    double dt = 1.0;
    std::optional<SwitchRecord> switch_record;

    std::size_t size() const noexcept { return states.size(); }
    bool empty() const noexcept { return states.empty(); }
};

namespace detail {

template <CompartmentState State>
constexpr bool model_matches_state(ModelKind model)
{
    if constexpr (std::is_same_v<State, StateMA>) {
        return model == ModelKind::MA || model == ModelKind::Single;
    }
    else {
        return model == ModelKind::MB;
    }
}

template <CompartmentState State>
void check_initial_state(ModelKind model, const Params& p, const State& init)
{
    using traits      = state_traits<State>;
    const auto values = traits::to_array(init);
    require_finite(values, "initial state");
    for (std::size_t i = 0; i < traits::size; ++i) {
        if (values[i] < -negative_state_tolerance * p.N()) {
            throw Error(ErrorCode::RejectRange, "init." + std::string(traits::names[i]) + ": must be >= 0");
        }
    }
    if (std::abs(total_population(init) - p.N()) > negative_state_tolerance * p.N()) {
        throw Error(ErrorCode::RejectRange, "init: compartments must sum to N = " + std::to_string(p.N()));
    }
    if constexpr (std::is_same_v<State, StateMA>) {
        if (model == ModelKind::Single && init.S2 != 0.0) {
            throw Error(ErrorCode::RejectRange, "init.S2: must be 0 for model single");
        }
    }
}

} // namespace detail

/**
 * Integrate `model` from t0 to t1 with fixed RK4 steps of size dt.
 *
 * States are recorded at t0, after every `record_every` steps, and at t1. When
 * (t1 - t0) is not a multiple of dt the last step is shortened to land on t1.
 * Step errors are rethrown with the failing time appended.
 */
template <CompartmentState State>
Trajectory<State> simulate(ModelKind model, const Params& p, const State& init, double t0, double t1,
                           double dt = 1.0, std::size_t record_every = 1,
                           TransitionNormalization norm = TransitionNormalization::AsPrinted)
{
    if (!detail::model_matches_state<State>(model)) {
        throw Error(ErrorCode::RejectRange, "model " + std::string(to_string(model)) + " does not match state type");
    }
    if (p.model() != model) {
        throw Error(ErrorCode::RejectRange, "params validated for model " + std::string(to_string(p.model())) +
                                                ", not " + std::string(to_string(model)));
    }
    if (!(std::isfinite(t0) && std::isfinite(t1) && t1 > t0)) {
        throw Error(ErrorCode::RejectRange, "time: must satisfy t1 > t0");
    }
    if (!(std::isfinite(dt) && dt > 0.0)) {
        throw Error(ErrorCode::RejectRange, "time.dt: must be > 0");
    }
    if (record_every == 0) {
        throw Error(ErrorCode::RejectRange, "time.record_every: must be >= 1");
    }
    detail::check_initial_state(model, p, init);

    const double span        = t1 - t0;
    const auto full_steps    = static_cast<std::size_t>(std::floor(span / dt * (1.0 + 1e-12)));
    const double covered     = static_cast<double>(full_steps) * dt;
    const bool partial_step  = span - covered > 1e-9 * dt;
    const std::size_t nsteps = full_steps + (partial_step ? 1 : 0);

    Trajectory<State> traj{model, {}, {}, p, dt, std::nullopt};
    traj.times.reserve(nsteps / record_every + 2);
    traj.states.reserve(nsteps / record_every + 2);
    traj.times.push_back(t0);
    traj.states.push_back(init);

    auto field = model_field(p, std::type_identity<State>{}, norm);
    State s    = init;
    for (std::size_t k = 0; k < nsteps; ++k) {
        const double t = t0 + static_cast<double>(k) * dt;
        const bool last = k + 1 == nsteps;
        const double h  = (last && partial_step) ? t1 - t : dt;
        try {
            s = step_rk4(field, s, t, h);
        }
        catch (const Error& e) {
            throw Error(e.code(), e.message() + " at t = " + std::to_string(t));
        }
        if ((k + 1) % record_every == 0 || last) {
            traj.times.push_back(last ? t1 : t0 + static_cast<double>(k + 1) * dt);
            traj.states.push_back(s);
        }
    }
    return traj;
}

/// Named scalar read out of a state, e.g. "I" or "S1".
template <CompartmentState State>
struct Observable {
    std::string name;
    double (*extract)(const State&) = nullptr;

    double operator()(const State& s) const { return extract(s); }
};

template <CompartmentState State>
std::vector<std::string_view> observable_names()
{
    if constexpr (std::is_same_v<State, StateMA>) {
        return {"S1", "S2", "Ia", "Is", "R", "I", "N"};
    }
    else {
        return {"S1", "S2", "A1", "A2", "A", "Is", "R", "I", "N"};
    }
}

template <CompartmentState State>
std::optional<Observable<State>> find_observable(std::string_view name)
{
    using Extract = double (*)(const State&);
    Extract f     = nullptr;
    if (name == "S1") f = [](const State& s) { return s.S1; };
    else if (name == "S2") f = [](const State& s) { return s.S2; };
    else if (name == "Is") f = [](const State& s) { return s.Is; };
    else if (name == "R") f = [](const State& s) { return s.R; };
    else if (name == "I") f = [](const State& s) { return s.I(); };
    else if (name == "N") f = [](const State& s) { return total_population(s); };
    else if constexpr (std::is_same_v<State, StateMA>) {
        if (name == "Ia") f = [](const State& s) { return s.Ia; };
    }
    else {
        if (name == "A1") f = [](const State& s) { return s.A1; };
        else if (name == "A2") f = [](const State& s) { return s.A2; };
        else if (name == "A") f = [](const State& s) { return s.A(); };
    }
    if (!f) {
        return std::nullopt;
    }
    return Observable<State>{std::string(name), f};
}

struct Peak {
    double time  = 0.0;
    double value = 0.0;

    bool operator==(const Peak&) const = default;
};

/// First recorded maximum of `obs`. An empty trajectory yields EmptyTrajectory.
template <CompartmentState State>
Peak peak_of(const Trajectory<State>& traj, const Observable<State>& obs)
{
    if (traj.empty()) {
        throw Error(ErrorCode::EmptyTrajectory, "peak_of: trajectory has no records");
    }
    Peak best{traj.times.front(), obs(traj.states.front())};
    for (std::size_t i = 1; i < traj.size(); ++i) {
        const double v = obs(traj.states[i]);
        if (v > best.value) {
            best = {traj.times[i], v};
        }
    }
    return best;
}

/// Largest |total_population(state) - N| over the recorded states.
template <CompartmentState State>
double max_population_drift(const Trajectory<State>& traj)
{
    double worst = 0.0;
    for (const auto& s : traj.states) {
        worst = std::max(worst, std::abs(total_population(s) - traj.params_used.N()));
    }
    return worst;
}

} // namespace sociosir
