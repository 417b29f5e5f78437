// Copyright 2026 qslt contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// output.hpp — deterministic CSV / JSON / SVG serialization of sweep tables.
// CSV uses '.' decimal, ',' separator, 12 significant digits; '#' header rows
// record every parameter so a file is self-describing and re-runnable.

#pragma once

#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qslt/engine.hpp"

namespace qslt {

struct SweepOutput {
    std::vector<std::pair<std::string, std::string>> params; // ordered header rows
    std::vector<SweepRow> rows;
};

inline std::string format_g12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

inline constexpr const char* kCsvColumns =
    "tau,k,f,purity_tau,ml_denom,mt_denom,tau_ml,tau_mt,tau_qsl,"
    "tau_qsl_paper_variant,closed_form_dev";

inline std::string to_csv(const SweepOutput& out) {
    std::string s;
    for (const auto& [key, value] : out.params) s += "# " + key + "=" + value + "\n";
    s += kCsvColumns;
    s += "\n";
    for (const SweepRow& r : out.rows) {
        s += format_g12(r.tau) + "," + format_g12(r.k) + "," + format_g12(r.result.f) + "," +
             format_g12(r.result.purity_tau) + "," + format_g12(r.result.ml_denom) + "," +
             format_g12(r.result.mt_denom) + "," + format_g12(r.result.tau_ml) + "," +
             format_g12(r.result.tau_mt) + "," + format_g12(r.headline) + "," +
             format_g12(r.closed_paper) + "," + format_g12(r.closed_form_dev) + "\n";
    }
    return s;
}

inline std::string to_json(const SweepOutput& out) {
    nlohmann::ordered_json doc;
    auto& params = doc["params"];
    for (const auto& [key, value] : out.params) params[key] = value;
    auto& rows = doc["rows"];
    rows = nlohmann::ordered_json::array();
    for (const SweepRow& r : out.rows) {
        nlohmann::ordered_json row;
        row["tau"] = r.tau;
        row["k"] = r.k;
        row["f"] = r.result.f;
        row["purity_tau"] = r.result.purity_tau;
        row["ml_denom"] = r.result.ml_denom;
        row["mt_denom"] = r.result.mt_denom;
        row["tau_ml"] = r.result.tau_ml;
        row["tau_mt"] = r.result.tau_mt;
        row["tau_qsl"] = r.headline;
        row["tau_qsl_paper_variant"] = r.closed_paper;
        row["closed_form_dev"] = r.closed_form_dev;
        rows.push_back(std::move(row));
    }
    return doc.dump(2) + "\n";
}

namespace detail {

inline std::string svg_coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

inline std::string svg_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

} // namespace detail

// Dependency-free single-file line plot: tau on x, the variant-selected
// tau_qsl column on y, one polyline per k value.
inline std::string to_svg(const SweepOutput& out, const std::string& title) {
    const double width = 860, height = 540;
    const double ml = 70, mr = 170, mt = 46, mb = 54;
    const double pw = width - ml - mr, ph = height - mt - mb;

    std::map<double, std::vector<const SweepRow*>> by_k;
    double x_lo = 0.0, x_hi = 1.0, y_hi = 1e-12;
    bool first = true;
    for (const SweepRow& r : out.rows) {
        by_k[r.k].push_back(&r);
        if (first) { x_lo = x_hi = r.tau; first = false; }
        x_lo = std::min(x_lo, r.tau);
        x_hi = std::max(x_hi, r.tau);
        y_hi = std::max(y_hi, r.headline);
    }
    if (x_hi <= x_lo) x_hi = x_lo + 1.0;
    y_hi *= 1.05;

    auto px = [&](double tau) { return ml + pw * (tau - x_lo) / (x_hi - x_lo); };
    auto py = [&](double v) { return mt + ph * (1.0 - v / y_hi); };

    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"860\" height=\"540\" "
         "viewBox=\"0 0 860 540\">\n";
    s += "<rect width=\"860\" height=\"540\" fill=\"white\"/>\n";
    s += "<text x=\"" + detail::svg_coord(ml) + "\" y=\"26\" font-family=\"sans-serif\" "
         "font-size=\"15\">" + title + "</text>\n";

    // axes and ticks
    s += "<g stroke=\"black\" stroke-width=\"1\">\n";
    s += "<line x1=\"" + detail::svg_coord(ml) + "\" y1=\"" + detail::svg_coord(mt + ph) +
         "\" x2=\"" + detail::svg_coord(ml + pw) + "\" y2=\"" + detail::svg_coord(mt + ph) + "\"/>\n";
    s += "<line x1=\"" + detail::svg_coord(ml) + "\" y1=\"" + detail::svg_coord(mt) +
         "\" x2=\"" + detail::svg_coord(ml) + "\" y2=\"" + detail::svg_coord(mt + ph) + "\"/>\n";
    s += "</g>\n";
    s += "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"black\">\n";
    for (int i = 0; i <= 5; ++i) {
        const double tau = x_lo + (x_hi - x_lo) * i / 5.0;
        const double x = px(tau);
        s += "<line x1=\"" + detail::svg_coord(x) + "\" y1=\"" + detail::svg_coord(mt + ph) +
             "\" x2=\"" + detail::svg_coord(x) + "\" y2=\"" + detail::svg_coord(mt + ph + 5) +
             "\" stroke=\"black\"/>\n";
        s += "<text x=\"" + detail::svg_coord(x) + "\" y=\"" + detail::svg_coord(mt + ph + 18) +
             "\" text-anchor=\"middle\">" + detail::svg_label(tau) + "</text>\n";
        const double v = y_hi * i / 5.0;
        const double y = py(v);
        s += "<line x1=\"" + detail::svg_coord(ml - 5) + "\" y1=\"" + detail::svg_coord(y) +
             "\" x2=\"" + detail::svg_coord(ml) + "\" y2=\"" + detail::svg_coord(y) +
             "\" stroke=\"black\"/>\n";
        s += "<text x=\"" + detail::svg_coord(ml - 8) + "\" y=\"" + detail::svg_coord(y + 4) +
             "\" text-anchor=\"end\">" + detail::svg_label(v) + "</text>\n";
    }
    s += "<text x=\"" + detail::svg_coord(ml + pw / 2) + "\" y=\"" +
         detail::svg_coord(height - 12) + "\" text-anchor=\"middle\">tau</text>\n";
    s += "<text x=\"18\" y=\"" + detail::svg_coord(mt + ph / 2) +
         "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
         detail::svg_coord(mt + ph / 2) + ")\">tau_qsl</text>\n";
    s += "</g>\n";

    // one polyline per k
    int idx = 0;
    for (const auto& [k, rows] : by_k) {
        const char* color = palette[idx % 8];
        std::string path = "M";
        for (const SweepRow* r : rows)
            path += " " + detail::svg_coord(px(r->tau)) + "," + detail::svg_coord(py(r->headline));
        s += "<path d=\"" + path + "\" fill=\"none\" stroke=\"" + std::string(color) +
             "\" stroke-width=\"1.5\"/>\n";
        const double ly = mt + 16 + 18 * idx;
        s += "<line x1=\"" + detail::svg_coord(ml + pw + 14) + "\" y1=\"" + detail::svg_coord(ly) +
             "\" x2=\"" + detail::svg_coord(ml + pw + 40) + "\" y2=\"" + detail::svg_coord(ly) +
             "\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.5\"/>\n";
        s += "<text x=\"" + detail::svg_coord(ml + pw + 46) + "\" y=\"" +
             detail::svg_coord(ly + 4) + "\" font-family=\"sans-serif\" font-size=\"12\">k=" +
             format_g12(k) + "</text>\n";
        ++idx;
    }
    s += "</svg>\n";
    return s;
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file: " + path);
    file << content;
    if (!file) throw std::runtime_error("failed writing output file: " + path);
}

} // namespace qslt
