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

#include <cmath>
#include <future>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "compass/thermal_channel.hpp"
#include "compass/wigner_static.hpp"

namespace compass {

struct decay_options {
    bool full_wigner = false; // normalize the whole W(0, tau) instead of the chess term
};

/// f(tau) = W_chess(0, tau) / |W_chess(0, 0)|.
inline double decay_function(const compass_spec &s, double nbar, double tau,
                             const decay_options &opt = {}) {
    const reservoir_spec res{nbar, tau};
    validate(res);
    const double w0 = opt.full_wigner ? wigner_total(0.0, s) : wigner_chess(0.0, s);
    if (std::abs(w0) < 1e-12)
        throw std::runtime_error("decay_function: |W(0,0)| below 1e-12");
    if (tau < tau_min) return w0 / std::abs(w0);
    const double wt = opt.full_wigner ? evolved_total_origin(s, res) : evolved_chess_origin(s, res);
    return wt / std::abs(w0);
}

struct decay_sample {
    double tau, f;
};

inline std::vector<decay_sample> decay_curve(const compass_spec &s, double nbar,
                                             double tau_max, int steps,
                                             const decay_options &opt = {}) {
    if (steps < 1) throw std::invalid_argument("decay_curve: steps must be >= 1");
    if (!(tau_max > 0)) throw std::invalid_argument("decay_curve: tau_max must be > 0");
    std::vector<decay_sample> out;
    out.reserve(steps + 1);
    for (int k = 0; k <= steps; ++k) {
        const double tau = tau_max * k / steps;
        out.push_back({tau, decay_function(s, nbar, tau, opt)});
    }
    return out;
}

struct threshold_options {
    double tau_max = 2.0;
    double scan_step = 1e-3;
    double bracket_tol = 1e-7;
    double residual_tol = 1e-10;
    decay_options decay{};
};

struct threshold_result {
    double tau = 0.0;
    double residual = 0.0; // |f(tau)|
    double lo = 0.0, hi = 0.0;
    int evaluations = 0;
};

/// First zero crossing of f on (0, tau_max]: fixed-step scan, then bisection
/// until the bracket is below bracket_tol and |f| below residual_tol.
inline threshold_result find_threshold(const compass_spec &s, double nbar,
                                       const threshold_options &opt = {}) {
    threshold_result out;
    auto f = [&](double t) {
        ++out.evaluations;
        return decay_function(s, nbar, t, opt.decay);
    };
    double lo = 0.0, flo = f(0.0), fmin = flo, fmax = flo;
    const int n = static_cast<int>(std::ceil(opt.tau_max / opt.scan_step));
    for (int k = 1; k <= n; ++k) {
        const double hi = std::min(opt.tau_max, k * opt.scan_step);
        const double fhi = f(hi);
        fmin = std::min(fmin, fhi);
        fmax = std::max(fmax, fhi);
        if (fhi == 0.0) return {hi, 0.0, hi, hi, out.evaluations};
        if ((flo < 0) != (fhi < 0)) {
            double a = lo, b = hi, fa = flo;
            double best = hi, fbest = std::abs(fhi);
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (a + b);
                if (mid <= a || mid >= b) break;
                const double fm = f(mid);
                if (std::abs(fm) < fbest) {
                    best = mid;
                    fbest = std::abs(fm);
                }
                if (fm == 0.0) {
                    a = b = mid;
                    break;
                }
                if ((fa < 0) == (fm < 0)) {
                    a = mid;
                    fa = fm;
                } else {
                    b = mid;
                }
                if (b - a < opt.bracket_tol && fbest < opt.residual_tol) break;
            }
            out.tau = best;
            out.residual = fbest;
            out.lo = a;
            out.hi = b;
            return out;
        }
        lo = hi;
        flo = fhi;
    }
    std::ostringstream msg;
    msg << "find_threshold: no sign change of f on (0, " << opt.tau_max << "], f in ["
        << fmin << ", " << fmax << "]";
    throw std::runtime_error(msg.str());
}

struct table_row {
    int m;
    double r;
    double nbar;
};

struct threshold_record {
    int row_id = 0;
    int m = 0;
    double r = 0, nbar = 0;
    double tau_d_pa = 0, tau_d_ps = 0;
    double residual_pa = 0, residual_ps = 0;
    double lo_pa = 0, hi_pa = 0, lo_ps = 0, hi_ps = 0; // final bisection brackets
    bool pa_before_ps = false; // brackets disjoint with PA first
};

struct relative_change_record {
    int reference_row = 0, next_row = 0;
    double delta_pa = 0, delta_ps = 0; // fractions
};

inline relative_change_record relative_change(const threshold_record &prev,
                                              const threshold_record &next) {
    return {prev.row_id, next.row_id,
            (next.tau_d_pa - prev.tau_d_pa) / std::abs(prev.tau_d_pa),
            (next.tau_d_ps - prev.tau_d_ps) / std::abs(prev.tau_d_ps)};
}

inline std::vector<table_row> default_table_rows() {
    return {{5, 0.5, 0.0}, {11, 0.5, 0.0}, {11, 0.5, 0.5}, {11, 0.8, 0.5}};
}

inline threshold_record threshold_row(int id, const table_row &row,
                                      const threshold_options &opt = {}) {
    threshold_record rec;
    rec.row_id = id;
    rec.m = row.m;
    rec.r = row.r;
    rec.nbar = row.nbar;
    try {
        auto pa = find_threshold({variant::pa, row.m, row.r}, row.nbar, opt);
        auto ps = find_threshold({variant::ps, row.m, row.r}, row.nbar, opt);
        rec.tau_d_pa = pa.tau;
        rec.tau_d_ps = ps.tau;
        rec.residual_pa = pa.residual;
        rec.residual_ps = ps.residual;
        rec.lo_pa = pa.lo;
        rec.hi_pa = pa.hi;
        rec.lo_ps = ps.lo;
        rec.hi_ps = ps.hi;
    } catch (const std::exception &e) {
        std::ostringstream msg;
        msg << "row " << id << " (m=" << row.m << ", r=" << row.r << ", nbar=" << row.nbar
            << "): " << e.what();
        throw std::runtime_error(msg.str());
    }
    rec.pa_before_ps = rec.hi_pa < rec.lo_ps;
    return rec;
}

/// Thresholds for every row; rows are independent and may run concurrently.
inline std::vector<threshold_record> table1(const std::vector<table_row> &rows,
                                            int workers = 1,
                                            const threshold_options &opt = {}) {
    std::vector<threshold_record> out(rows.size());
    if (workers <= 1) {
        for (size_t i = 0; i < rows.size(); ++i)
            out[i] = threshold_row(static_cast<int>(i) + 1, rows[i], opt);
        return out;
    }
    std::vector<std::future<threshold_record>> jobs;
    for (size_t i = 0; i < rows.size(); ++i)
        jobs.push_back(std::async(std::launch::async, threshold_row,
                                  static_cast<int>(i) + 1, rows[i], opt));
    for (size_t i = 0; i < rows.size(); ++i) out[i] = jobs[i].get();
    return out;
}

struct tile_extent {
    double extent = 0.0;
    double left = 0.0, right = 0.0; // signed distances of the two crossings
};

/// Distance between the first zero crossings of W_total on either side of
/// the origin along the line at angle phi in the (x, p) plane.
inline tile_extent central_tile_extent(const compass_spec &s,
                                       double phi = std::numbers::pi / 4,
                                       double step = 1e-3, double reach = 6.0) {
    if (s.m < 4) throw std::invalid_argument("central_tile_extent: needs m >= 4");
    const double c = std::cos(phi), sn = std::sin(phi);
    auto w = [&](double t) { return wigner_total(phase_point(t * c, t * sn), s); };
    const double w0 = w(0.0);
    auto crossing = [&](double dir) {
        double a = 0.0, fa = w0;
        for (double t = step; t <= reach; t += step) {
            const double ft = w(dir * t);
            if ((fa < 0) != (ft < 0) || ft == 0.0) {
                double lo = a, hi = t;
                for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    const double fm = w(dir * mid);
                    if ((fm < 0) == (fa < 0) && fm != 0.0) lo = mid;
                    else hi = mid;
                }
                return dir * 0.5 * (lo + hi);
            }
            a = t;
            fa = ft;
        }
        throw std::runtime_error("central_tile_extent: no zero crossing within reach");
    };
    tile_extent out;
    out.right = crossing(+1.0);
    out.left = crossing(-1.0);
    out.extent = out.right - out.left;
    return out;
}

} // namespace compass
