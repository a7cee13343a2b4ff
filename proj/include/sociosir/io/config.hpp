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

// Scenario files are JSON objects with the top-level keys
//
//   model    "ma" | "mb" | "single" | "mixed", or an object
//            {"kind", "transition_normalization", "allow_beta_gt_one", "allow_zero_alpha2"}
//   params   beta1 beta2 lambda gamma kappa alpha1 alpha2 rho N
//   init     {"rule": "dfe_plus_one_symptomatic", "rho": x} or {"state": {...}}
//   time     {"t0", "t1", "dt", "record_every"}
//   mixed    {"t_switch", "rho_split", "split_rule"}; only with model "mixed"
//   outputs  ["I", "R", ...]
//
// Unknown keys anywhere are a PARSE_ERROR.

#include "sociosir/core_types.hpp"
#include "sociosir/dynamics.hpp"
#include "sociosir/integrator.hpp"
#include "sociosir/scenarios.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

namespace sociosir::io {

using json = nlohmann::ordered_json;

namespace detail {

inline std::string join_path(std::string_view base, std::string_view key)
{
    return base.empty() ? std::string(key) : std::string(base) + "." + std::string(key);
}

[[noreturn]] inline void parse_fail(const std::string& path, const std::string& what)
{
    throw Error(ErrorCode::ParseError, path + ": " + what);
}

inline void expect_object(const json& j, const std::string& path)
{
    if (!j.is_object()) {
        parse_fail(path, "expected an object");
    }
}

inline void check_keys(const json& j, const std::string& path, std::initializer_list<std::string_view> allowed)
{
    for (const auto& [key, value] : j.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            parse_fail(join_path(path, key), "unknown key");
        }
    }
}

inline std::optional<double> opt_number(const json& j, std::string_view key, const std::string& path)
{
    const auto it = j.find(std::string(key));
    if (it == j.end()) {
        return std::nullopt;
    }
    if (!it->is_number()) {
        parse_fail(join_path(path, key), "expected a number");
    }
    return it->get<double>();
}

inline double req_number(const json& j, std::string_view key, const std::string& path)
{
    const auto v = opt_number(j, key, path);
    if (!v) {
        throw Error(ErrorCode::RejectMissing, join_path(path, key) + ": required");
    }
    return *v;
}

inline std::optional<std::string> opt_string(const json& j, std::string_view key, const std::string& path)
{
    const auto it = j.find(std::string(key));
    if (it == j.end()) {
        return std::nullopt;
    }
    if (!it->is_string()) {
        parse_fail(join_path(path, key), "expected a string");
    }
    return it->get<std::string>();
}

inline bool opt_bool(const json& j, std::string_view key, const std::string& path)
{
    const auto it = j.find(std::string(key));
    if (it == j.end()) {
        return false;
    }
    if (!it->is_boolean()) {
        parse_fail(join_path(path, key), "expected true or false");
    }
    return it->get<bool>();
}

// "line L, column C" for a byte offset into text
inline std::string location_of(std::string_view text, std::size_t byte)
{
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        }
        else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

struct ModelBlock {
    ModelKind kind = ModelKind::MA;
    bool mixed     = false;
    TransitionNormalization normalization = TransitionNormalization::AsPrinted;
    ValidationOptions options;
};

inline ModelBlock parse_model(const json& root)
{
    const auto it = root.find("model");
    if (it == root.end()) {
        throw Error(ErrorCode::RejectMissing, "model: required");
    }
    ModelBlock out;
    std::string kind;
    if (it->is_string()) {
        kind = it->get<std::string>();
    }
    else if (it->is_object()) {
        check_keys(*it, "model", {"kind", "transition_normalization", "allow_beta_gt_one", "allow_zero_alpha2"});
        const auto k = opt_string(*it, "kind", "model");
        if (!k) {
            throw Error(ErrorCode::RejectMissing, "model.kind: required");
        }
        kind = *k;
        if (const auto norm = opt_string(*it, "transition_normalization", "model")) {
            const auto parsed = parse_transition_normalization(*norm);
            if (!parsed) {
                parse_fail("model.transition_normalization", "expected as-printed or uniform-per-capita");
            }
            out.normalization = *parsed;
        }
        out.options.allow_beta_gt_one = opt_bool(*it, "allow_beta_gt_one", "model");
        out.options.allow_zero_alpha2 = opt_bool(*it, "allow_zero_alpha2", "model");
    }
    else {
        parse_fail("model", "expected a string or an object");
    }

    if (kind == "mixed") {
        out.kind  = ModelKind::MB;
        out.mixed = true;
    }
    else if (const auto parsed = parse_model_kind(kind)) {
        out.kind = *parsed;
    }
    else {
        parse_fail(it->is_string() ? "model" : "model.kind", "unknown model '" + kind + "'");
    }
    return out;
}

inline Params parse_params(const json& root, const ModelBlock& mb)
{
    const auto it = root.find("params");
    if (it == root.end()) {
        throw Error(ErrorCode::RejectMissing, "params: required");
    }
    expect_object(*it, "params");
    check_keys(*it, "params", {"beta1", "beta2", "lambda", "gamma", "kappa", "alpha1", "alpha2", "rho", "N"});
    if (mb.kind == ModelKind::MB && it->contains("rho")) {
        parse_fail("params.rho", "derived from alpha1 and alpha2 for model mb, must not be set");
    }

    ParamInput in;
    in.beta1  = opt_number(*it, "beta1", "params");
    in.beta2  = opt_number(*it, "beta2", "params");
    in.lambda = opt_number(*it, "lambda", "params");
    in.gamma  = opt_number(*it, "gamma", "params");
    in.kappa  = opt_number(*it, "kappa", "params");
    in.alpha1 = opt_number(*it, "alpha1", "params");
    in.alpha2 = opt_number(*it, "alpha2", "params");
    in.rho    = opt_number(*it, "rho", "params");
    in.N      = opt_number(*it, "N", "params");
    try {
        return validate_params(in, mb.kind, mb.options);
    }
    catch (const Error& e) {
        throw Error(e.code(), "params." + e.message());
    }
}

template <CompartmentState State>
State parse_state(const json& j, const std::string& path)
{
    using traits = state_traits<State>;
    expect_object(j, path);
    for (const auto& [key, value] : j.items()) {
        if (std::find(traits::names.begin(), traits::names.end(), key) == traits::names.end()) {
            parse_fail(join_path(path, key), "unknown compartment");
        }
    }
    std::array<double, traits::size> values{};
    for (std::size_t i = 0; i < traits::size; ++i) {
        values[i] = req_number(j, traits::names[i], path);
    }
    return traits::from_array(values);
}

inline InitSpec parse_init(const json& root, const ModelBlock& mb)
{
    const auto it = root.find("init");
    if (it == root.end()) {
        return DfePlusOneSymptomatic{};
    }
    expect_object(*it, "init");
    check_keys(*it, "init", {"rule", "rho", "state"});
    if (it->contains("state")) {
        if (it->contains("rule") || it->contains("rho")) {
            parse_fail("init", "give either a rule or a state, not both");
        }
        const json& st = it->at("state");
        if (mb.kind == ModelKind::MB && !mb.mixed) {
            return parse_state<StateMB>(st, "init.state");
        }
        return parse_state<StateMA>(st, "init.state");
    }
    const auto rule = opt_string(*it, "rule", "init");
    if (!rule) {
        throw Error(ErrorCode::RejectMissing, "init.rule: required unless init.state is given");
    }
    if (*rule != "dfe_plus_one_symptomatic") {
        parse_fail("init.rule", "unknown rule '" + *rule + "'");
    }
    return DfePlusOneSymptomatic{opt_number(*it, "rho", "init")};
}

inline TimeSpec parse_time(const json& root)
{
    const auto it = root.find("time");
    if (it == root.end()) {
        throw Error(ErrorCode::RejectMissing, "time: required");
    }
    expect_object(*it, "time");
    check_keys(*it, "time", {"t0", "t1", "dt", "record_every"});
    TimeSpec t;
    t.t0 = opt_number(*it, "t0", "time").value_or(0.0);
    t.t1 = req_number(*it, "t1", "time");
    t.dt = opt_number(*it, "dt", "time").value_or(1.0);
    if (const auto rec = it->find("record_every"); rec != it->end()) {
        if (!rec->is_number_integer() || rec->get<std::int64_t>() < 1) {
            parse_fail("time.record_every", "expected a positive integer");
        }
        t.record_every = rec->get<std::size_t>();
    }
    if (!(t.t1 > t.t0)) {
        throw Error(ErrorCode::RejectRange, "time.t1: must exceed t0");
    }
    if (!(t.dt > 0.0)) {
        throw Error(ErrorCode::RejectRange, "time.dt: must be > 0");
    }
    return t;
}

inline std::optional<MixedSpec> parse_mixed(const json& root, const ModelBlock& mb, const TimeSpec& time)
{
    const auto it = root.find("mixed");
    if (it == root.end()) {
        if (mb.mixed) {
            throw Error(ErrorCode::RejectMissing, "mixed: required for model mixed");
        }
        return std::nullopt;
    }
    if (!mb.mixed) {
        parse_fail("mixed", "only allowed with model mixed");
    }
    expect_object(*it, "mixed");
    check_keys(*it, "mixed", {"t_switch", "rho_split", "split_rule"});
    MixedSpec m;
    m.t_switch  = req_number(*it, "t_switch", "mixed");
    m.rho_split = req_number(*it, "rho_split", "mixed");
    if (const auto rule = opt_string(*it, "split_rule", "mixed"); rule && *rule != "proportional") {
        parse_fail("mixed.split_rule", "unknown rule '" + *rule + "'");
    }
    if (!(m.t_switch > time.t0 && m.t_switch < time.t1)) {
        throw Error(ErrorCode::RejectRange, "mixed.t_switch: must lie in (t0, t1)");
    }
    if (!(m.rho_split > 0.0 && m.rho_split < 1.0)) {
        throw Error(ErrorCode::RejectRange, "mixed.rho_split: must lie in (0, 1)");
    }
    return m;
}

inline std::vector<std::string> parse_outputs(const json& root, const ModelBlock& mb)
{
    std::vector<std::string> out;
    const auto it = root.find("outputs");
    if (it == root.end()) {
        return out;
    }
    if (!it->is_array()) {
        parse_fail("outputs", "expected an array of observable names");
    }
    const bool mb_shape = mb.kind == ModelKind::MB;
    for (std::size_t i = 0; i < it->size(); ++i) {
        const std::string path = "outputs[" + std::to_string(i) + "]";
        if (!(*it)[i].is_string()) {
            parse_fail(path, "expected a string");
        }
        const auto name  = (*it)[i].get<std::string>();
        const bool known = mb_shape ? find_observable<StateMB>(name).has_value()
                                    : find_observable<StateMA>(name).has_value();
        if (!known) {
            throw Error(ErrorCode::RejectRange, path + ": unknown observable '" + name + "'");
        }
        out.push_back(name);
    }
    return out;
}

template <CompartmentState State>
json state_to_json(const State& s)
{
    using traits      = state_traits<State>;
    const auto values = traits::to_array(s);
    json j            = json::object();
    for (std::size_t i = 0; i < traits::size; ++i) {
        j[std::string(traits::names[i])] = values[i];
    }
    return j;
}

} // namespace detail

/// Parse and validate a scenario document. Syntax errors report line and column.
inline ScenarioConfig load_config(std::string_view text)
{
    json root;
    try {
        root = json::parse(text);
    }
    catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, detail::location_of(text, e.byte > 0 ? e.byte - 1 : 0) +
                                               ": malformed JSON");
    }
    detail::expect_object(root, "document");
    detail::check_keys(root, "", {"model", "params", "init", "time", "mixed", "outputs"});

    const detail::ModelBlock mb = detail::parse_model(root);
    Params params               = detail::parse_params(root, mb);
    InitSpec init               = detail::parse_init(root, mb);
    const TimeSpec time         = detail::parse_time(root);
    auto mixed                  = detail::parse_mixed(root, mb, time);
    auto outputs                = detail::parse_outputs(root, mb);

    return ScenarioConfig{mb.kind, std::move(params), std::move(init), time, mixed, std::move(outputs),
                          mb.normalization};
}

inline ScenarioConfig load_config_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::ParseError, path.string() + ": cannot open");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_config(buf.str());
}

/// Serialize so that load_config(write_config(c)) == c.
inline std::string write_config(const ScenarioConfig& cfg)
{
    json root;
    json model = json::object();
    model["kind"] = cfg.mixed ? std::string("mixed") : std::string(to_string(cfg.model));
    model["transition_normalization"] = std::string(to_string(cfg.normalization));
    model["allow_beta_gt_one"]        = cfg.params.options().allow_beta_gt_one;
    model["allow_zero_alpha2"]        = cfg.params.options().allow_zero_alpha2;
    root["model"] = model;

    const ParamInput in = cfg.params.to_input();
    json params         = json::object();
    auto put            = [&params](std::string_view key, const std::optional<double>& v) {
        if (v) {
            params[std::string(key)] = *v;
        }
    };
    put("beta1", in.beta1);
    put("beta2", in.beta2);
    put("lambda", in.lambda);
    put("gamma", in.gamma);
    put("kappa", in.kappa);
    put("alpha1", in.alpha1);
    put("alpha2", in.alpha2);
    put("rho", in.rho);
    put("N", in.N);
    root["params"] = params;

    json init = json::object();
    if (const auto* rule = std::get_if<DfePlusOneSymptomatic>(&cfg.init)) {
        init["rule"] = "dfe_plus_one_symptomatic";
        if (rule->rho) {
            init["rho"] = *rule->rho;
        }
    }
    else if (const auto* ma = std::get_if<StateMA>(&cfg.init)) {
        init["state"] = detail::state_to_json(*ma);
    }
    else {
        init["state"] = detail::state_to_json(std::get<StateMB>(cfg.init));
    }
    root["init"] = init;

    root["time"] = json{{"t0", cfg.time.t0}, {"t1", cfg.time.t1}, {"dt", cfg.time.dt},
                        {"record_every", cfg.time.record_every}};
    if (cfg.mixed) {
        root["mixed"] = json{{"t_switch", cfg.mixed->t_switch}, {"rho_split", cfg.mixed->rho_split},
                             {"split_rule", "proportional"}};
    }
    root["outputs"] = cfg.outputs;
    return root.dump(2) + "\n";
}

} // namespace sociosir::io
