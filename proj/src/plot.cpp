// Copyright 2026 The qsvt-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "qsvt/error.hpp"
#include "qsvt/harness.hpp"

namespace qsvt {

namespace {

constexpr double kWidth = 800;
constexpr double kPanelHeight = 280;
constexpr double kLeft = 70, kRight = 150, kTop = 40, kBottom = 40;

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

const char *color_for(std::size_t i) {
    static const char *palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
    return palette[i % 5];
}

struct Panel {
    const char *title;
    double ExperimentRecord::*field;
};

}  // namespace

void emit_plot(std::ostream &out, const std::vector<ExperimentRecord> &records) {
    if (records.empty()) {
        throw Error(ErrorCode::invalid_input, "nothing to plot: the record set is empty");
    }
    std::vector<AlphaMethod> methods;
    std::size_t max_instance = 0;
    for (const auto &r : records) {
        if (std::find(methods.begin(), methods.end(), r.method) == methods.end()) {
            methods.push_back(r.method);
        }
        max_instance = std::max(max_instance, r.instance);
    }
    const Panel panels[] = {{"Probability", &ExperimentRecord::P_sim}, {"Fidelity", &ExperimentRecord::F_sim}};
    const double height = 2 * kPanelHeight;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth) << "\" height=\"" << num(height)
        << "\" viewBox=\"0 0 " << num(kWidth) << ' ' << num(height) << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (std::size_t pi = 0; pi < 2; ++pi) {
        const auto &panel = panels[pi];
        double lo = 1.0, hi = 0.0;
        for (const auto &r : records) {
            if (r.ok()) {
                lo = std::min(lo, r.*panel.field);
                hi = std::max(hi, r.*panel.field);
            }
        }
        if (lo > hi) {
            lo = 0.0;
            hi = 1.0;
        }
        // Round the y range outwards to a multiple of 0.05.
        lo = std::max(0.0, std::floor(lo * 20.0) / 20.0);
        hi = std::min(1.0, std::ceil(hi * 20.0) / 20.0);
        if (hi - lo < 0.05) {
            lo = std::max(0.0, hi - 0.05);
            hi = lo + 0.05;
        }
        const double y0 = pi * kPanelHeight;
        const double plot_w = kWidth - kLeft - kRight;
        const double plot_h = kPanelHeight - kTop - kBottom;
        const auto sx = [&](double x) {
            return kLeft + (max_instance == 0 ? 0.5 : x / static_cast<double>(max_instance)) * plot_w;
        };
        const auto sy = [&](double v) { return y0 + kTop + (hi - v) / (hi - lo) * plot_h; };

        out << "<g class=\"panel\" id=\"" << (pi == 0 ? "probability" : "fidelity") << "\">\n";
        out << "<text x=\"" << num(kLeft) << "\" y=\"" << num(y0 + kTop - 12) << "\" font-size=\"14\">" << panel.title
            << "</text>\n";
        out << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(y0 + kTop) << "\" width=\"" << num(plot_w) << "\" height=\""
            << num(plot_h) << "\" fill=\"none\" stroke=\"#444\"/>\n";
        for (int k = 0; k <= 4; ++k) {
            const double v = lo + (hi - lo) * k / 4.0;
            out << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(sy(v) + 4) << "\" text-anchor=\"end\">"
                << num(v) << "</text>\n";
        }
        out << "<text x=\"" << num(kLeft + plot_w / 2) << "\" y=\"" << num(y0 + kPanelHeight - 10)
            << "\" text-anchor=\"middle\">instance</text>\n";
        for (std::size_t mi = 0; mi < methods.size(); ++mi) {
            const auto m = methods[mi];
            const char *color = color_for(mi);
            out << "<g class=\"series\" data-method=\"" << to_string(m) << "\" stroke=\"" << color << "\" fill=\"" << color
                << "\">\n<polyline fill=\"none\" points=\"";
            bool first = true;
            for (const auto &r : records) {
                if (r.method == m && r.ok()) {
                    out << (first ? "" : " ") << num(sx(static_cast<double>(r.instance))) << ','
                        << num(sy(r.*panel.field));
                    first = false;
                }
            }
            out << "\"/>\n";
            for (const auto &r : records) {
                if (r.method == m && r.ok()) {
                    out << "<circle class=\"marker\" cx=\"" << num(sx(static_cast<double>(r.instance))) << "\" cy=\""
                        << num(sy(r.*panel.field)) << "\" r=\"2.5\"/>\n";
                }
            }
            const double ly = y0 + kTop + 16 + 18 * static_cast<double>(mi);
            out << "<text x=\"" << num(kWidth - kRight + 12) << "\" y=\"" << num(ly) << "\" stroke=\"none\">"
                << to_string(m) << "</text>\n</g>\n";
        }
        out << "</g>\n";
    }
    out << "</svg>\n";
}

void emit_plot_file(const std::string &path, const std::vector<ExperimentRecord> &records) {
    if (records.empty()) {
        throw Error(ErrorCode::invalid_input, "nothing to plot: the record set is empty");
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw Error(ErrorCode::io, "cannot open " + path + " for writing");
    }
    emit_plot(f, records);
    if (!f) {
        throw Error(ErrorCode::io, "write to " + path + " failed");
    }
}

}  // namespace qsvt
