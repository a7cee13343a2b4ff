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

#include "sociosir/feasibility.hpp"
#include "sociosir/integrator.hpp"
#include "sociosir/scenarios.hpp"

#include <cstdio>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>

namespace sociosir::io {

/// Nine significant digits, '.' separator, and "0" in place of "-0".
inline std::string format_number(double v)
{
    if (v == 0.0) {
        return "0";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

template <CompartmentState State>
constexpr std::string_view csv_header()
{
    if constexpr (std::is_same_v<State, StateMA>) {
        return "t,S1,S2,Ia,Is,R,I,N";
    }
    else {
        return "t,S1,S2,A1,A2,Is,R,I,N";
    }
}

/// One header line, then one LF-terminated row per recorded state.
template <CompartmentState State>
std::string write_csv(const Trajectory<State>& traj)
{
    using traits = state_traits<State>;
    std::string out(csv_header<State>());
    out += '\n';
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const State& s = traj.states[i];
        out += format_number(traj.times[i]);
        for (double v : traits::to_array(s)) {
            out += ',';
            out += format_number(v);
        }
        out += ',';
        out += format_number(s.I());
        out += ',';
        out += format_number(total_population(s));
        out += '\n';
    }
    return out;
}

inline std::string write_csv(const AnyTrajectory& traj)
{
    return std::visit([](const auto& t) { return write_csv(t); }, traj);
}

/// rho (or kappa), numeric type label, then the type name.
inline std::string write_bifurcation_csv(const BifurcationScan& scan)
{
    std::string out = scan.axis == ScanAxis::Rho ? "rho,type,label\n" : "kappa,type,label\n";
    for (std::size_t i = 0; i < scan.grid.size(); ++i) {
        out += format_number(scan.grid[i]);
        out += ',';
        out += std::to_string(numeric_label(scan.labels[i]));
        out += ',';
        out += to_string(scan.labels[i]);
        out += '\n';
    }
    return out;
}

inline std::string write_participation_csv(const ParticipationScanResult& scan)
{
    std::string out = "q,peak_Is,compliant\n";
    for (std::size_t i = 0; i < scan.grid.size(); ++i) {
        out += format_number(scan.grid[i]);
        out += ',';
        out += format_number(scan.peak_Is[i]);
        out += scan.peak_Is[i] <= scan.capacity ? ",1\n" : ",0\n";
    }
    return out;
}

} // namespace sociosir::io
