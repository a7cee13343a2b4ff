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

// sociosir: command-line front end.
//
//   sociosir simulate --config FILE [--csv PATH] [--svg PATH]
//   sociosir r0 --model ma --beta1 X --beta2 X --kappa X --rho X
//   sociosir stability ...same flags...
//   sociosir feasibility --model ma --kappa X --rho X
//   sociosir bifurcation --model mb --kappa X --steps N [--csv PATH]
//   sociosir sensitivity ...same flags as r0...
//   sociosir mixed --config FILE [--csv PATH] [--svg PATH] [--summary]
//   sociosir scan-participation --preset masks --capacity 80 --steps 99
//
// Exit status: 0 ok, 2 validation error, 3 numerical error, 4 parse error.

#include "sociosir/io/config.hpp"
#include "sociosir/io/csv.hpp"
#include "sociosir/io/svg.hpp"
#include "sociosir/sociosir.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace sociosir;

constexpr int exit_ok         = 0;
constexpr int exit_validation = 2;
constexpr int exit_numerical  = 3;
constexpr int exit_parse      = 4;

std::string num(double v)
{
    return io::format_number(v);
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorCode::RejectRange, path + ": cannot write");
    }
    out << text;
}

struct ParamFlags {
    std::string model = "ma";
    std::optional<double> beta1, beta2, kappa, rho, alpha1, alpha2;
    double lambda = 0.65;
    double gamma  = 0.0;
    double N      = 100.0;

    void attach(CLI::App* cmd)
    {
        cmd->add_option("--model", model, "ma or mb")->check(CLI::IsMember({"ma", "mb"}));
        cmd->add_option("--beta1", beta1, "infection rate of class 1")->required();
        cmd->add_option("--beta2", beta2, "infection rate of class 2")->required();
        cmd->add_option("--kappa", kappa, "recovery rate")->required();
        cmd->add_option("--rho", rho, "class-1 share (model ma)");
        cmd->add_option("--alpha1", alpha1, "switching rate 1 -> 2 (model mb)");
        cmd->add_option("--alpha2", alpha2, "switching rate 2 -> 1 (model mb)");
        cmd->add_option("--lambda", lambda, "symptomatic fraction of new infections")->capture_default_str();
        cmd->add_option("--gamma", gamma, "asymptomatic to symptomatic rate")->capture_default_str();
        cmd->add_option("--N", N, "population size")->capture_default_str();
    }

    Params validate() const
    {
        const ModelKind kind = *parse_model_kind(model);
        if (kind == ModelKind::MA && (alpha1 || alpha2)) {
            throw Error(ErrorCode::RejectRange, "alpha1/alpha2: apply to model mb only");
        }
        ParamInput in;
        in.beta1  = beta1;
        in.beta2  = beta2;
        in.kappa  = kappa;
        in.rho    = rho;
        in.alpha1 = alpha1;
        in.alpha2 = alpha2;
        in.lambda = lambda;
        in.gamma  = gamma;
        in.N      = N;
        return validate_params(in, kind);
    }
};

std::string describe_state(const AnyState& s)
{
    return std::visit(
        [](const auto& st) {
            using traits      = state_traits<std::decay_t<decltype(st)>>;
            const auto values = traits::to_array(st);
            std::string out   = "(";
            for (std::size_t i = 0; i < traits::size; ++i) {
                out += (i ? ", " : "") + std::string(traits::names[i]) + "=" + num(values[i]);
            }
            return out + ")";
        },
        s);
}

template <class Traj>
std::string summary_text(const Traj& traj, const ScenarioSummary& sum)
{
    std::ostringstream out;
    out << "records = " << traj.size() << "\n";
    out << "r0 = " << num(sum.r0) << "\n";
    out << "peak_I = " << num(sum.peak_I.value) << " at t = " << num(sum.peak_I.time) << "\n";
    out << "peak_Is = " << num(sum.peak_Is.value) << " at t = " << num(sum.peak_Is.time) << "\n";
    out << "final_R = " << num(sum.final_R) << "\n";
    out << "max_population_drift = " << num(max_population_drift(traj)) << "\n";
    if (traj.switch_record) {
        out << "t_switch = " << num(traj.switch_record->t_switch) << "\n";
    }
    return out.str();
}

struct RunFlags {
    std::string config;
    std::string csv;
    std::string svg;
    bool summary = false;
};

std::string run_config(const RunFlags& flags, bool require_mixed)
{
    const ScenarioConfig cfg = io::load_config_file(flags.config);
    if (require_mixed && !cfg.mixed) {
        throw Error(ErrorCode::RejectMissing, "mixed: the mixed command needs a config with a mixed block");
    }
    const ScenarioResult res = run_scenario(cfg);
    const std::string csv    = io::write_csv(res.trajectory);
    if (!flags.csv.empty()) {
        write_file(flags.csv, csv);
    }
    if (!flags.svg.empty()) {
        std::vector<std::string> obs = cfg.outputs;
        if (obs.empty()) {
            obs = {"S1", "S2", "I", "R"};
        }
        write_file(flags.svg, io::render_svg(res.trajectory, obs));
    }
    if (flags.summary || !flags.csv.empty()) {
        return std::visit([&](const auto& t) { return summary_text(t, res.summary); }, res.trajectory);
    }
    return csv;
}

int exit_code_for(const Error& e)
{
    switch (family_of(e.code())) {
    case ErrorFamily::Numerical: return exit_numerical;
    case ErrorFamily::Parse: return exit_parse;
    case ErrorFamily::Validation: break;
    }
    return exit_validation;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Two-class behavioral SIR models: simulation and threshold analysis"};
    app.require_subcommand(1);
    std::string out_path;
    app.add_option("--out", out_path, "write results here instead of standard output");

    RunFlags sim_flags;
    auto* simulate = app.add_subcommand("simulate", "integrate a scenario config");
    simulate->add_option("--config", sim_flags.config, "scenario JSON")->required();
    simulate->add_option("--csv", sim_flags.csv, "trajectory CSV path");
    simulate->add_option("--svg", sim_flags.svg, "chart SVG path");
    simulate->add_flag("--summary", sim_flags.summary, "print peaks and finals instead of the CSV");

    RunFlags mixed_flags;
    auto* mixed = app.add_subcommand("mixed", "single-class run switching to model mb");
    mixed->add_option("--config", mixed_flags.config, "scenario JSON with a mixed block")->required();
    mixed->add_option("--csv", mixed_flags.csv, "trajectory CSV path");
    mixed->add_option("--svg", mixed_flags.svg, "chart SVG path");
    mixed->add_flag("--summary", mixed_flags.summary, "print peaks and finals instead of the CSV");

    ParamFlags r0_flags, stab_flags, sens_flags;
    auto* r0_cmd = app.add_subcommand("r0", "basic reproduction number, closed form and NGM");
    r0_flags.attach(r0_cmd);
    auto* stab_cmd = app.add_subcommand("stability", "DFE stability verdict");
    stab_flags.attach(stab_cmd);
    auto* sens_cmd = app.add_subcommand("sensitivity", "normalized R0 sensitivity indices");
    sens_flags.attach(sens_cmd);
    double fd_step = 1e-6;
    sens_cmd->add_option("--fd-step", fd_step, "relative finite-difference step")->capture_default_str();

    std::string feas_model = "ma";
    double feas_kappa = 0.0, feas_rho = 0.0;
    auto* feas = app.add_subcommand("feasibility", "shape of the rho-feasible set");
    feas->add_option("--model", feas_model)->check(CLI::IsMember({"ma", "mb"}));
    feas->add_option("--kappa", feas_kappa)->required();
    feas->add_option("--rho", feas_rho)->required();

    std::string bif_model = "ma", bif_csv;
    double bif_kappa      = 0.0;
    std::size_t bif_steps = 99;
    auto* bif = app.add_subcommand("bifurcation", "feasible-set type across rho");
    bif->add_option("--model", bif_model)->check(CLI::IsMember({"ma", "mb"}));
    bif->add_option("--kappa", bif_kappa)->required();
    bif->add_option("--steps", bif_steps)->check(CLI::PositiveNumber)->capture_default_str();
    bif->add_option("--csv", bif_csv, "labels CSV path");

    std::string preset_name, scan_csv;
    double capacity        = 80.0;
    std::size_t scan_steps = 99;
    double scan_t1         = 10000.0;
    auto* scan = app.add_subcommand("scan-participation", "minimal participation keeping peak Is under capacity");
    scan->add_option("--preset", preset_name)->required()->check(CLI::IsMember({"masks", "common_areas", "distancing"}));
    scan->add_option("--capacity", capacity)->capture_default_str();
    scan->add_option("--steps", scan_steps)->check(CLI::PositiveNumber)->capture_default_str();
    scan->add_option("--t1", scan_t1, "horizon of each run")->capture_default_str();
    scan->add_option("--csv", scan_csv, "per-fraction peaks CSV path");

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_parse;
    }

    try {
        std::string text;
        if (simulate->parsed()) {
            text = run_config(sim_flags, false);
        }
        else if (mixed->parsed()) {
            text = run_config(mixed_flags, true);
        }
        else if (r0_cmd->parsed()) {
            const Params p  = r0_flags.validate();
            const auto next = ngm(p);
            text            = "model = " + std::string(to_string(p.model())) + "\nrho = " + num(p.rho()) +
                   "\nr0 = " + num(r0(p)) + "\nr0_ngm = " + num(next.dominant) + "\n";
        }
        else if (stab_cmd->parsed()) {
            const Params p = stab_flags.validate();
            const auto rep = stability(p);
            text = "verdict = " + std::string(to_string(rep.verdict)) + "\nr0 = " + num(rep.r0) +
                   "\nb_rho = " + num(rep.b_rho) + "\ndfe = " + describe_state(rep.dfe) + "\n";
        }
        else if (sens_cmd->parsed()) {
            const Params p = sens_flags.validate();
            const auto idx = sensitivity_indices(p);
            const auto oc  = ordering_case(p);
            std::ostringstream o;
            o << "upsilon_rho = " << num(idx.upsilon_rho) << "\n";
            o << "upsilon_beta1 = " << num(idx.upsilon_beta1) << "\n";
            o << "upsilon_beta2 = " << num(idx.upsilon_beta2) << "\n";
            if (idx.upsilon_alpha1) {
                o << "upsilon_alpha1 = " << num(*idx.upsilon_alpha1) << "\n";
                o << "upsilon_alpha2 = " << num(*idx.upsilon_alpha2) << "\n";
            }
            o << "case = " << to_string(oc.label) << "\n";
            o << "ascending =";
            for (const auto& name : oc.chain) {
                o << " " << name;
            }
            o << "\nfinite_diff_max_rel_error = " << num(finite_diff_check(p, fd_step)) << "\n";
            text = o.str();
        }
        else if (feas->parsed()) {
            const auto rep = classify_feasible_set(feas_rho, feas_kappa, *parse_model_kind(feas_model));
            text           = "type = " + std::string(to_string(rep.type_label)) + "\nvertices =";
            for (const auto& v : rep.vertices) {
                text += " (" + num(v.beta1) + ", " + num(v.beta2) + ")";
            }
            text += "\n";
        }
        else if (bif->parsed()) {
            const ModelKind model = *parse_model_kind(bif_model);
            const auto grid       = rho_grid(model, bif_steps);
            const auto scan_res   = bifurcation_scan(model, bif_kappa, grid);
            if (!bif_csv.empty()) {
                write_file(bif_csv, io::write_bifurcation_csv(scan_res));
            }
            text = "points = " + std::to_string(grid.size()) + "\nbreakpoints = " +
                   std::to_string(scan_res.breakpoints.size()) + "\n";
            for (const auto& b : scan_res.breakpoints) {
                text += "rho ~ " + num(b.location) + " in [" + num(b.lo) + ", " + num(b.hi) + "]: " +
                        std::string(to_string(b.before)) + " -> " + std::string(to_string(b.after)) + "\n";
            }
        }
        else if (scan->parsed()) {
            const auto preset = *find_preset(preset_name);
            ScanBase base;
            base.time.t1    = scan_t1;
            const auto grid = participation_grid(scan_steps);
            const auto res  = participation_scan(preset, capacity, grid, base);
            if (!scan_csv.empty()) {
                write_file(scan_csv, io::write_participation_csv(res));
            }
            const auto [lo, hi] = std::minmax_element(res.peak_Is.begin(), res.peak_Is.end());
            text = "preset = " + res.preset + "\ncapacity = " + num(capacity) + "\nminimal_compliant = " +
                   (res.minimal_compliant ? num(*res.minimal_compliant) : std::string("NONE_FOUND")) +
                   "\npeak_Is_range = [" + num(*lo) + ", " + num(*hi) + "]\n";
            if (!res.monotone) {
                text += "WARNING: peak_Is is not non-increasing in participation on this grid\n";
            }
        }

        if (out_path.empty()) {
            std::fwrite(text.data(), 1, text.size(), stdout);
        }
        else {
            write_file(out_path, text);
        }
        return exit_ok;
    }
    catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_code_for(e);
    }
}
