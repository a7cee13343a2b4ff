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

#include "sociosir/error.hpp"

#include <array>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace sociosir {

/**
 * Which compartmental system a parameter set or state belongs to.
 *
 * MA keeps behavioral classes fixed; MB lets susceptibles and asymptomatics
 * switch class. Single is MA with every susceptible in class 1 (S2 = 0); it
 * drives the first phase of a mixed run.
 */
enum class ModelKind { MA, MB, Single };

constexpr std::string_view to_string(ModelKind kind)
{
    switch (kind) {
    case ModelKind::MA: return "ma";
    case ModelKind::MB: return "mb";
    case ModelKind::Single: return "single";
    }
    return "?";
}

inline std::optional<ModelKind> parse_model_kind(std::string_view text)
{
    if (text == "ma") return ModelKind::MA;
    if (text == "mb") return ModelKind::MB;
    if (text == "single") return ModelKind::Single;
    return std::nullopt;
}

/// Unvalidated parameter values, e.g. straight from a config file or CLI flags.
struct ParamInput {
    std::optional<double> beta1;
    std::optional<double> beta2;
    std::optional<double> lambda;
    std::optional<double> gamma;
    std::optional<double> kappa;
    std::optional<double> alpha1;
    std::optional<double> alpha2;
    std::optional<double> rho;
    std::optional<double> N;

    bool operator==(const ParamInput&) const = default;
};

struct ValidationOptions {
    /// Lift beta1 <= 1 and beta2 < 1. Feasibility classification is unavailable in this mode.
    bool allow_beta_gt_one = false;
    /// Admit alpha2 == 0 for MB (used by the mitigation presets only).
    bool allow_zero_alpha2 = false;

    bool operator==(const ValidationOptions&) const = default;
};

/**
 * A validated parameter vector.
 *
 * Only validate_params() constructs one, so every instance satisfies the
 * standing assumptions of its model. For MB, rho is cached from the switching
 * rates as alpha2 / (alpha1 + alpha2) and is never taken from input.
 */
class Params
{
public:
    ModelKind model() const noexcept { return model_; }
    double beta1() const noexcept { return beta1_; }
    double beta2() const noexcept { return beta2_; }
    double lambda() const noexcept { return lambda_; }
    double gamma() const noexcept { return gamma_; }
    double kappa() const noexcept { return kappa_; }
    std::optional<double> alpha1() const noexcept { return alpha1_; }
    std::optional<double> alpha2() const noexcept { return alpha2_; }
    double rho() const noexcept { return rho_; }
    double N() const noexcept { return N_; }
    const ValidationOptions& options() const noexcept { return options_; }

    /// The inputs that reproduce this value under validate_params().
    ParamInput to_input() const
    {
        ParamInput in;
        in.beta1 = beta1_;
        if (model_ != ModelKind::Single || beta2_ > 0.0) {
            in.beta2 = beta2_;
        }
        in.lambda = lambda_;
        in.gamma  = gamma_;
        in.kappa  = kappa_;
        in.N      = N_;
        if (model_ == ModelKind::MA) {
            in.rho = rho_;
        }
        if (model_ == ModelKind::MB) {
            in.alpha1 = alpha1_;
            in.alpha2 = alpha2_;
        }
        return in;
    }

    bool operator==(const Params&) const = default;

private:
    friend Params validate_params(const ParamInput&, ModelKind, const ValidationOptions&);
    Params() = default;

    ModelKind model_ = ModelKind::MA;
    double beta1_    = 0.0;
    double beta2_    = 0.0;
    double lambda_   = 0.0;
    double gamma_    = 0.0;
    double kappa_    = 0.0;
    std::optional<double> alpha1_;
    std::optional<double> alpha2_;
    double rho_ = 0.0;
    double N_   = 0.0;
    ValidationOptions options_;
};

namespace detail {

inline double require(const std::optional<double>& value, std::string_view key, ModelKind model)
{
    if (!value) {
        throw Error(ErrorCode::RejectMissing,
                    std::string(key) + ": required for model " + std::string(to_string(model)));
    }
    if (!std::isfinite(*value)) {
        throw Error(ErrorCode::RejectRange, std::string(key) + ": must be finite");
    }
    return *value;
}

inline void check_range(bool ok, std::string_view key, std::string_view expectation)
{
    if (!ok) {
        throw Error(ErrorCode::RejectRange, std::string(key) + ": must satisfy " + std::string(expectation));
    }
}

inline void reject_present(const std::optional<double>& value, std::string_view key, std::string_view reason)
{
    if (value) {
        throw Error(ErrorCode::RejectRange, std::string(key) + ": " + std::string(reason));
    }
}

} // namespace detail

/**
 * Validate raw parameters for the given model.
 *
 * Errors: RejectMissing for absent required fields, RejectOrder when
 * beta1 <= beta2 or (MB) alpha1 <= alpha2, RejectRange for anything outside
 * its interval. The message starts with the offending key.
 */
inline Params validate_params(const ParamInput& raw, ModelKind model, const ValidationOptions& options = {})
{
    using detail::check_range;
    using detail::reject_present;
    using detail::require;

    Params p;
    p.model_   = model;
    p.options_ = options;

    p.beta1_  = require(raw.beta1, "beta1", model);
    p.lambda_ = require(raw.lambda, "lambda", model);
    p.gamma_  = require(raw.gamma, "gamma", model);
    p.kappa_  = require(raw.kappa, "kappa", model);
    p.N_      = require(raw.N, "N", model);

    if (model == ModelKind::Single && !raw.beta2) {
        p.beta2_ = 0.0;
    }
    else {
        p.beta2_ = require(raw.beta2, "beta2", model);
        check_range(p.beta2_ > 0.0, "beta2", "beta2 > 0");
        if (p.beta1_ <= p.beta2_) {
            throw Error(ErrorCode::RejectOrder, "beta1: must exceed beta2");
        }
        if (!options.allow_beta_gt_one) {
            check_range(p.beta2_ < 1.0, "beta2", "beta2 < 1");
        }
    }
    check_range(p.beta1_ > 0.0, "beta1", "beta1 > 0");
    if (!options.allow_beta_gt_one) {
        check_range(p.beta1_ <= 1.0, "beta1", "beta1 <= 1");
    }
    check_range(p.lambda_ > 0.0 && p.lambda_ <= 1.0, "lambda", "0 < lambda <= 1");
    check_range(p.gamma_ >= 0.0, "gamma", "gamma >= 0");
    check_range(p.kappa_ > 0.0 && p.kappa_ <= 1.0, "kappa", "0 < kappa <= 1");
    check_range(p.N_ > 0.0, "N", "N > 0");

    switch (model) {
    case ModelKind::MA:
        p.rho_ = require(raw.rho, "rho", model);
        check_range(p.rho_ > 0.0 && p.rho_ < 1.0, "rho", "0 < rho < 1");
        reject_present(raw.alpha1, "alpha1", "applies to model mb only");
        reject_present(raw.alpha2, "alpha2", "applies to model mb only");
        break;
    case ModelKind::Single:
        if (raw.rho && *raw.rho != 1.0) {
            throw Error(ErrorCode::RejectRange, "rho: fixed at 1 for model single");
        }
        reject_present(raw.alpha1, "alpha1", "applies to model mb only");
        reject_present(raw.alpha2, "alpha2", "applies to model mb only");
        p.rho_ = 1.0;
        break;
    case ModelKind::MB: {
        reject_present(raw.rho, "rho", "derived from alpha1 and alpha2 for model mb, must not be set");
        const double a1 = require(raw.alpha1, "alpha1", model);
        const double a2 = require(raw.alpha2, "alpha2", model);
        if (options.allow_zero_alpha2) {
            check_range(a2 >= 0.0, "alpha2", "alpha2 >= 0");
        }
        else {
            check_range(a2 > 0.0, "alpha2", "alpha2 > 0");
        }
        if (a1 <= a2) {
            throw Error(ErrorCode::RejectOrder, "alpha1: must exceed alpha2");
        }
        p.alpha1_ = a1;
        p.alpha2_ = a2;
        p.rho_    = a2 / (a1 + a2);
        break;
    }
    }
    return p;
}

/// Compartments of the fixed-class system. Designated initializers follow this order.
struct StateMA {
    double S1 = 0.0;
    double S2 = 0.0;
    double Ia = 0.0;
    double Is = 0.0;
    double R  = 0.0;

    double I() const noexcept { return Ia + Is; }
    bool operator==(const StateMA&) const = default;
};

/// Compartments of the switching system. I and A are derived, never stored.
struct StateMB {
    double S1 = 0.0;
    double S2 = 0.0;
    double A1 = 0.0;
    double A2 = 0.0;
    double Is = 0.0;
    double R  = 0.0;

    double A() const noexcept { return A1 + A2; }
    double I() const noexcept { return A1 + A2 + Is; }
    bool operator==(const StateMB&) const = default;
};

// Both sums group susceptibles first and infectives second, so a Single
// state (S2 = 0) and its proportional MB split total to the same double.
inline double total_population(const StateMA& s) noexcept
{
    return ((s.S1 + s.S2) + s.Ia) + s.Is + s.R;
}

inline double total_population(const StateMB& s) noexcept
{
    return ((s.S1 + s.S2) + (s.A1 + s.A2)) + s.Is + s.R;
}

template <class State>
struct state_traits;

template <>
struct state_traits<StateMA> {
    static constexpr std::size_t size = 5;
    static constexpr std::array<std::string_view, size> names{"S1", "S2", "Ia", "Is", "R"};

    static std::array<double, size> to_array(const StateMA& s) noexcept { return {s.S1, s.S2, s.Ia, s.Is, s.R}; }
    static StateMA from_array(const std::array<double, size>& v) noexcept { return {v[0], v[1], v[2], v[3], v[4]}; }
};

template <>
struct state_traits<StateMB> {
    static constexpr std::size_t size = 6;
    static constexpr std::array<std::string_view, size> names{"S1", "S2", "A1", "A2", "Is", "R"};

    static std::array<double, size> to_array(const StateMB& s) noexcept
    {
        return {s.S1, s.S2, s.A1, s.A2, s.Is, s.R};
    }
    static StateMB from_array(const std::array<double, size>& v) noexcept
    {
        return {v[0], v[1], v[2], v[3], v[4], v[5]};
    }
};

template <class State>
concept CompartmentState = requires(const State& s) {
    { state_traits<State>::size } -> std::convertible_to<std::size_t>;
    { total_population(s) } -> std::convertible_to<double>;
};

} // namespace sociosir
