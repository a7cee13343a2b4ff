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

#include "sociosir/integrator.hpp"
#include "sociosir/scenarios.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace sociosir::io {

struct SvgDims {
    double width  = 800.0;
    double height = 500.0;
};

namespace detail {

inline std::string fixed2(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    std::string s(buf);
    return s == "-0.00" ? "0.00" : s;
}

inline std::string label_number(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v == 0.0 ? 0.0 : v);
    return buf;
}

inline constexpr std::array<std::string_view, 8> palette{"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                                         "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

} // namespace detail

/**
 * Line chart of the chosen observables against time, as a standalone SVG 1.1
 * document: two axes with min/max tick labels, one polyline per observable
 * and a legend. Output depends only on the inputs.
 */
template <CompartmentState State>
std::string render_svg(const Trajectory<State>& traj, std::span<const std::string> observables,
                       const SvgDims& dims = {})
{
    if (traj.empty()) {
        throw Error(ErrorCode::EmptyTrajectory, "render_svg: trajectory has no records");
    }
    if (observables.empty()) {
        throw Error(ErrorCode::RejectRange, "observables: need at least one");
    }
    if (!(dims.width > 0.0 && dims.height > 0.0)) {
        throw Error(ErrorCode::RejectRange, "dims: width and height must be > 0");
    }

    std::vector<Observable<State>> obs;
    for (const auto& name : observables) {
        auto o = find_observable<State>(name);
        if (!o) {
            throw Error(ErrorCode::RejectRange, "observables: unknown observable '" + name + "'");
        }
        obs.push_back(*o);
    }

    const double left = 70.0, right = 130.0, top = 20.0, bottom = 40.0;
    const double plot_w = std::max(dims.width - left - right, 1.0);
    const double plot_h = std::max(dims.height - top - bottom, 1.0);

    const double t_min = traj.times.front(), t_max = traj.times.back();
    double y_min = 0.0, y_max = 0.0;
    for (const auto& o : obs) {
        for (const auto& s : traj.states) {
            y_min = std::min(y_min, o(s));
            y_max = std::max(y_max, o(s));
        }
    }
    const double t_span = t_max > t_min ? t_max - t_min : 1.0;
    const double y_span = y_max > y_min ? y_max - y_min : 1.0;
    auto px = [&](double t) { return left + (t - t_min) / t_span * plot_w; };
    auto py = [&](double y) { return top + plot_h - (y - y_min) / y_span * plot_h; };

    using detail::fixed2;
    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + fixed2(dims.width) +
           "\" height=\"" + fixed2(dims.height) + "\">\n";
    out += "<line x1=\"" + fixed2(left) + "\" y1=\"" + fixed2(top + plot_h) + "\" x2=\"" + fixed2(left + plot_w) +
           "\" y2=\"" + fixed2(top + plot_h) + "\" stroke=\"black\"/>\n";
    out += "<line x1=\"" + fixed2(left) + "\" y1=\"" + fixed2(top) + "\" x2=\"" + fixed2(left) + "\" y2=\"" +
           fixed2(top + plot_h) + "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + fixed2(left) + "\" y=\"" + fixed2(top + plot_h + 16) + "\" font-size=\"12\">" +
           detail::label_number(t_min) + "</text>\n";
    out += "<text x=\"" + fixed2(left + plot_w) + "\" y=\"" + fixed2(top + plot_h + 16) +
           "\" font-size=\"12\" text-anchor=\"end\">" + detail::label_number(t_max) + "</text>\n";
    out += "<text x=\"" + fixed2(left + plot_w / 2) + "\" y=\"" + fixed2(top + plot_h + 32) +
           "\" font-size=\"12\" text-anchor=\"middle\">t</text>\n";
    out += "<text x=\"" + fixed2(left - 6) + "\" y=\"" + fixed2(top + plot_h) +
           "\" font-size=\"12\" text-anchor=\"end\">" + detail::label_number(y_min) + "</text>\n";
    out += "<text x=\"" + fixed2(left - 6) + "\" y=\"" + fixed2(top + 12) +
           "\" font-size=\"12\" text-anchor=\"end\">" + detail::label_number(y_max) + "</text>\n";

    for (std::size_t k = 0; k < obs.size(); ++k) {
        const auto colour = detail::palette[k % detail::palette.size()];
        out += "<polyline fill=\"none\" stroke=\"" + std::string(colour) + "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < traj.size(); ++i) {
            if (i > 0) {
                out += ' ';
            }
            out += fixed2(px(traj.times[i])) + "," + fixed2(py(obs[k](traj.states[i])));
        }
        out += "\"/>\n";

        const double ly = top + 14.0 + 18.0 * static_cast<double>(k);
        out += "<line x1=\"" + fixed2(left + plot_w + 10) + "\" y1=\"" + fixed2(ly - 4) + "\" x2=\"" +
               fixed2(left + plot_w + 30) + "\" y2=\"" + fixed2(ly - 4) + "\" stroke=\"" + std::string(colour) +
               "\" stroke-width=\"1.5\"/>\n";
        out += "<text x=\"" + fixed2(left + plot_w + 36) + "\" y=\"" + fixed2(ly) + "\" font-size=\"12\">" +
               obs[k].name + "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

inline std::string render_svg(const AnyTrajectory& traj, std::span<const std::string> observables,
                              const SvgDims& dims = {})
{
    return std::visit([&](const auto& t) { return render_svg(t, observables, dims); }, traj);
}

} // namespace sociosir::io
