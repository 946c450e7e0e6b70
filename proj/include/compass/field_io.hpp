// Copyright 2026 The compass authors.
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

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <functional>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "compass/special_fn.hpp"
#include "compass/wigner_static.hpp"

namespace compass {

struct grid_spec {
    double x_min = -4, x_max = 4, p_min = -4, p_max = 4;
    int nx = 401, np = 401;

    double x(int i) const { return x_min + (x_max - x_min) * i / (nx - 1); }
    double p(int j) const { return p_min + (p_max - p_min) * j / (np - 1); }
};

inline void validate(const grid_spec &g) {
    if (!(g.x_max > g.x_min) || !(g.p_max > g.p_min))
        throw std::invalid_argument("grid: max must exceed min on both axes");
    if (g.nx < 2 || g.nx > 4096 || g.np < 2 || g.np > 4096)
        throw std::invalid_argument("grid: point counts must lie in [2, 4096]");
}

inline grid_spec square_grid(double half_width, int n) {
    return {-half_width, half_width, -half_width, half_width, n, n};
}

/// "xmin:xmax:nx[,pmin:pmax:np]"; the p triple defaults to the x triple.
inline grid_spec parse_grid(const std::string &text) {
    auto triple = [&](const std::string &t, double &lo, double &hi, int &n) {
        std::istringstream in(t);
        char c1 = 0, c2 = 0;
        if (!(in >> lo >> c1 >> hi >> c2 >> n) || c1 != ':' || c2 != ':' ||
            in.peek() != std::char_traits<char>::eof())
            throw std::invalid_argument("bad grid triple '" + t +
                                        "' (expected min:max:n)");
    };
    grid_spec g;
    const auto comma = text.find(',');
    triple(text.substr(0, comma), g.x_min, g.x_max, g.nx);
    if (comma == std::string::npos) {
        g.p_min = g.x_min;
        g.p_max = g.x_max;
        g.np = g.nx;
    } else {
        triple(text.substr(comma + 1), g.p_min, g.p_max, g.np);
    }
    validate(g);
    return g;
}

/// values[i * np + j] holds W(x_i, p_j).
struct wigner_field {
    grid_spec grid;
    std::vector<double> values;
    nlohmann::json meta = nlohmann::json::object();

    double at(int i, int j) const { return values[static_cast<size_t>(i) * grid.np + j]; }
};

/// Row-parallel evaluation of w(zeta) with zeta = (x + i p)/sqrt(2).
inline wigner_field evaluate_field(const std::function<double(cplx)> &w,
                                   const grid_spec &g, int workers = 1) {
    validate(g);
    wigner_field f{g, std::vector<double>(static_cast<size_t>(g.nx) * g.np), {}};
    std::vector<std::exception_ptr> errors(std::max(1, workers));
    auto rows = [&](int worker, int stride) {
        for (int i = worker; i < g.nx; i += stride)
            for (int j = 0; j < g.np; ++j) {
                try {
                    f.values[static_cast<size_t>(i) * g.np + j] =
                        w(phase_point(g.x(i), g.p(j)));
                } catch (const std::exception &e) {
                    errors[worker] = std::make_exception_ptr(std::runtime_error(
                        "evaluate_field at (" + std::to_string(i) + ", " +
                        std::to_string(j) + "): " + e.what()));
                    return;
                }
            }
    };
    if (workers <= 1) {
        rows(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (int k = 0; k < workers; ++k) pool.emplace_back(rows, k, workers);
        for (auto &t : pool) t.join();
    }
    for (auto &e : errors)
        if (e) std::rethrow_exception(e);
    return f;
}

/// Composite Simpson weights; an even point count closes with one trapezoid cell.
inline std::vector<double> simpson_weights(int n, double h) {
    std::vector<double> w(n, 0.0);
    if (n == 2) {
        w[0] = w[1] = h / 2;
        return w;
    }
    const int ns = n % 2 ? n : n - 1;
    for (int i = 0; i < ns; ++i)
        w[i] = h / 3 * (i == 0 || i == ns - 1 ? 1 : (i % 2 ? 4 : 2));
    if (ns < n) {
        w[n - 2] += h / 2;
        w[n - 1] += h / 2;
    }
    return w;
}

/// Integral over dx dp; a normalized Wigner function integrates to 1.
inline double integrate_field(const wigner_field &f) {
    const auto &g = f.grid;
    const auto wx = simpson_weights(g.nx, (g.x_max - g.x_min) / (g.nx - 1));
    const auto wp = simpson_weights(g.np, (g.p_max - g.p_min) / (g.np - 1));
    compensated_sum acc;
    for (int i = 0; i < g.nx; ++i) {
        double row = 0.0;
        for (int j = 0; j < g.np; ++j) row += wp[j] * f.at(i, j);
        acc.add(wx[i] * row);
    }
    return acc.value().real();
}

inline double field_min(const wigner_field &f) {
    return *std::min_element(f.values.begin(), f.values.end());
}

inline double field_max_abs(const wigner_field &f) {
    double m = 0.0;
    for (double v : f.values) m = std::max(m, std::abs(v));
    return m;
}

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_csv(const wigner_field &f, std::ostream &out) {
    out << "x,p,w\n";
    for (int i = 0; i < f.grid.nx; ++i)
        for (int j = 0; j < f.grid.np; ++j)
            out << format_double(f.grid.x(i)) << ',' << format_double(f.grid.p(j)) << ','
                << format_double(f.at(i, j)) << '\n';
}

struct csv_sample {
    double x, p, w;
};

inline std::vector<csv_sample> read_csv(std::istream &in) {
    std::string line;
    if (!std::getline(in, line) || line != "x,p,w")
        throw std::runtime_error("read_csv: missing x,p,w header");
    std::vector<csv_sample> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        csv_sample s{};
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &s.x, &s.p, &s.w) != 3)
            throw std::runtime_error("read_csv: malformed row '" + line + "'");
        out.push_back(s);
    }
    return out;
}

inline nlohmann::json to_json(const wigner_field &f) {
    const auto &g = f.grid;
    return {{"grid",
             {{"x_min", g.x_min}, {"x_max", g.x_max}, {"p_min", g.p_min},
              {"p_max", g.p_max}, {"nx", g.nx}, {"np", g.np}}},
            {"values", f.values},
            {"meta", f.meta}};
}

inline wigner_field from_json(const nlohmann::json &j) {
    wigner_field f;
    const auto &g = j.at("grid");
    f.grid = {g.at("x_min"), g.at("x_max"), g.at("p_min"), g.at("p_max"), g.at("nx"),
              g.at("np")};
    validate(f.grid);
    f.values = j.at("values").get<std::vector<double>>();
    if (f.values.size() != static_cast<size_t>(f.grid.nx) * f.grid.np)
        throw std::runtime_error("from_json: value count does not match grid");
    if (j.contains("meta")) f.meta = j.at("meta");
    return f;
}

/// Gray level for the diverging map: 0 -> 127, +2/pi -> 255, -2/pi -> 0.
inline std::uint8_t gray_level(double v) {
    const double g = std::round(127.0 + 128.0 * v / wigner_bound);
    return static_cast<std::uint8_t>(std::clamp(g, 0.0, 255.0));
}

/// Binary PGM, x along columns and p increasing upward.
inline void write_pgm(const wigner_field &f, std::ostream &out) {
    const auto &g = f.grid;
    out << "P5\n" << g.nx << ' ' << g.np << "\n255\n";
    for (int j = g.np - 1; j >= 0; --j)
        for (int i = 0; i < g.nx; ++i) out.put(static_cast<char>(gray_level(f.at(i, j))));
}

enum class export_format { csv, json, pgm };

inline export_format parse_format(const std::string &s) {
    if (s == "csv") return export_format::csv;
    if (s == "json") return export_format::json;
    if (s == "pgm") return export_format::pgm;
    throw std::invalid_argument("unknown format '" + s + "' (expected csv|json|pgm)");
}

inline void export_field(const wigner_field &f, export_format fmt, std::ostream &out) {
    switch (fmt) {
    case export_format::csv: write_csv(f, out); break;
    case export_format::json: out << to_json(f).dump() << '\n'; break;
    case export_format::pgm: write_pgm(f, out); break;
    }
}

} // namespace compass
