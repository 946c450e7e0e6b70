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
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "compass/special_fn.hpp"

namespace compass {

enum class variant { pa, ps };

inline const char *to_string(variant v) { return v == variant::pa ? "pa" : "ps"; }

inline variant parse_variant(const std::string &s) {
    if (s == "pa" || s == "PA") return variant::pa;
    if (s == "ps" || s == "PS") return variant::ps;
    throw std::invalid_argument("unknown variant '" + s + "' (expected pa|ps)");
}

inline constexpr int max_photons = 20;
inline constexpr double r_min = 1e-3;
inline constexpr double r_max = 2.0;

/// a^{+m} or a^m applied to S(r)|0> + S(-r)|0>.
struct compass_spec {
    variant kind = variant::pa;
    int m = 12;
    double r = 0.8;
};

struct reservoir_spec {
    double nbar = 0.0;
    double tau = 0.0;
};

inline void validate(const compass_spec &s) {
    if (s.m < 0 || s.m > max_photons)
        throw std::invalid_argument("m = " + std::to_string(s.m) +
                                    " outside [0, 20]");
    if (!(s.r > 0.0) || s.r > r_max)
        throw std::invalid_argument("r = " + std::to_string(s.r) +
                                    " outside (0, 2]");
    if (s.kind == variant::ps && s.m >= 1 && s.r <= r_min)
        throw std::invalid_argument(
            "photon-subtracted state with m >= 1 needs r > 1e-3 (state vanishes)");
}

/// Closed-form evaluators carry coth r; they refuse r <= r_min for both variants.
inline void validate_closed_form(const compass_spec &s) {
    validate(s);
    if (s.r <= r_min)
        throw std::invalid_argument("closed forms need r > 1e-3");
}

inline void validate(const reservoir_spec &res) {
    if (!(res.nbar >= 0.0) || !std::isfinite(res.nbar))
        throw std::invalid_argument("nbar must be finite and >= 0");
    if (!(res.tau >= 0.0) || !std::isfinite(res.tau))
        throw std::invalid_argument("tau must be finite and >= 0");
}

struct channel_constants {
    double T;
    double Tbar;
};

inline channel_constants reservoir_constants(const reservoir_spec &res) {
    validate(res);
    double T = -std::expm1(-2.0 * res.tau);
    return {T, (1.0 + 2.0 * res.nbar) * T};
}

namespace detail {

inline void check_real(cplx z, double scale, const char *what) {
    if (std::abs(z.imag()) > 1e-10 * std::max(std::abs(scale), 1e-300))
        throw std::runtime_error(std::string(what) +
                                 ": imaginary residue exceeds tolerance");
}

} // namespace detail

/// N with |psi> = N a^{(+)m}(S(r)+S(-r))|0> normalized.
inline double normalization(const compass_spec &s) {
    validate(s);
    const int m = s.m;
    const double r = s.r, c2 = std::cosh(2.0 * r), sc2 = std::sqrt(c2);
    const double mf = std::exp(log_factorial(m));
    double inv2;
    if (s.kind == variant::pa) {
        const double x = std::cosh(r) / sc2;
        inv2 = 2.0 / sc2 * std::pow(x, m) * mf * legendre(m, cplx(x)).real() +
               2.0 * std::pow(std::cosh(r), m) * mf *
                   legendre(m, cplx(std::cosh(r))).real();
    } else {
        const double x = std::sinh(r) / sc2;
        const cplx y(0.0, std::sinh(r));
        const cplx cross = std::pow(-y, m) * legendre(m, y);
        detail::check_real(cross, std::abs(cross), "normalization");
        inv2 = 2.0 / sc2 * std::pow(-x, m) * mf * legendre(m, cplx(x)).real() +
               2.0 * mf * cross.real();
    }
    if (!(inv2 > 0.0) || !std::isfinite(inv2))
        throw std::runtime_error("normalization: non-positive norm");
    return 1.0 / std::sqrt(inv2);
}

/// |<n| a^{(+)m} S(r)|0>|^2 for n = 0..; identical for S(-r). Truncated once the
/// remaining tail is below rel_tol of the accumulated mass.
inline std::vector<double> component_populations(const compass_spec &s,
                                                 double rel_tol = 1e-18) {
    validate(s);
    const int m = s.m;
    const double q = std::pow(std::tanh(s.r), 2) / 4.0;
    const double lc = -std::log(std::cosh(s.r));
    std::vector<double> p;
    // log of the j-th term, then ratio recurrence
    int j0 = s.kind == variant::pa ? 0 : (m + 1) / 2;
    double lt;
    if (s.kind == variant::pa)
        lt = lc + log_factorial(m);
    else
        lt = lc + j0 * std::log(q) + 2.0 * log_factorial(2 * j0) -
             2.0 * log_factorial(j0) - log_factorial(2 * j0 - m);
    double mass = 0.0;
    for (int j = j0;; ++j) {
        int n = s.kind == variant::pa ? m + 2 * j : 2 * j - m;
        double t = std::exp(lt);
        if (static_cast<int>(p.size()) <= n) p.resize(n + 1, 0.0);
        p[n] = t;
        mass += t;
        bool past_peak = (s.kind == variant::pa ? j > m : j > j0 + m);
        if (past_peak && t < rel_tol * mass) break;
        double ratio;
        if (s.kind == variant::pa)
            ratio = q * double(2 * j + m + 1) * double(2 * j + m + 2) /
                    (double(j + 1) * double(j + 1));
        else {
            double a = double(2 * j + 1) * double(2 * j + 2);
            ratio = q * a * a /
                    (double(j + 1) * double(j + 1) * double(2 * j + 2 - m) *
                     double(2 * j + 1 - m));
        }
        lt += std::log(ratio);
        if (n > 4000) throw std::runtime_error("component_populations: no convergence");
    }
    return p;
}

/// Half-width of a square box holding the state's Wigner function for
/// normalization checks: turning point of the 1 - 1e-12 photon quantile.
inline double support_half_width(const compass_spec &s) {
    auto p = component_populations(s);
    double total = 0.0;
    for (double v : p) total += v;
    double acc = 0.0;
    int nq = 0;
    for (int n = 0; n < static_cast<int>(p.size()); ++n) {
        acc += p[n];
        nq = n;
        if (acc >= (1.0 - 1e-12) * total) break;
    }
    return std::max(6.0, std::sqrt(2.0 * nq + 1.0) + 3.0);
}

} // namespace compass
