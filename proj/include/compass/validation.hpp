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
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "compass/fock_oracle.hpp"
#include "compass/special_fn.hpp"
#include "compass/state_model.hpp"
#include "compass/thermal_channel.hpp"
#include "compass/wigner_static.hpp"

namespace compass {

struct check_result {
    std::string name;
    double value = 0.0;     // worst deviation observed
    double tolerance = 0.0; // pass iff value < tolerance
    bool pass = false;
};

struct validation_report {
    std::vector<check_result> checks;
    bool ok() const {
        return std::all_of(checks.begin(), checks.end(),
                           [](const check_result &c) { return c.pass; });
    }
};

/// Deterministic uniform points in [-h, h]^2 (x, p), returned as zeta.
inline std::vector<cplx> sample_points(int n, double h, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-h, h);
    std::vector<cplx> pts;
    pts.reserve(n);
    for (int k = 0; k < n; ++k) {
        const double x = u(rng), p = u(rng);
        pts.push_back(phase_point(x, p));
    }
    return pts;
}

namespace detail {

inline check_result make_check(std::string name, double value, double tol) {
    return {std::move(name), value, tol, value < tol};
}

inline std::vector<compass_spec> spec_set(std::initializer_list<int> ms,
                                          std::initializer_list<double> rs) {
    std::vector<compass_spec> out;
    for (auto v : {variant::pa, variant::ps})
        for (int m : ms)
            for (double r : rs) out.push_back({v, m, r});
    return out;
}

} // namespace detail

inline double static_oracle_deviation(const compass_spec &s, const std::vector<cplx> &pts) {
    const auto st = build_compass_state(s, adequate_dim(s));
    double worst = 0.0;
    for (cplx z : pts)
        worst = std::max(worst, std::abs(wigner_total(z, s) - wigner_from_state(st.amplitudes, z)));
    return worst;
}

/// Fock master-equation evolution of the compass state, evaluated at pts.
inline std::vector<double> oracle_evolved_values(const compass_spec &s,
                                                 const reservoir_spec &res,
                                                 const std::vector<cplx> &pts) {
    const int extra = static_cast<int>(std::ceil(12.0 * res.nbar + 8.0));
    const int dim = adequate_dim(s) + extra;
    const auto st = build_compass_state(s, dim);
    const auto rho = evolve_density(pure_density(st.amplitudes), res);
    std::vector<double> out;
    out.reserve(pts.size());
    for (cplx z : pts) out.push_back(wigner_from_density(rho, z));
    return out;
}

inline validation_report validate_quick() {
    validation_report rep;
    const auto pts = sample_points(20, 4.0, 17);

    double dev = 0.0, norm_dev = 0.0;
    for (const auto &s : detail::spec_set({0, 1, 2, 4, 6}, {0.5, 0.8})) {
        dev = std::max(dev, static_oracle_deviation(s, pts));
        const auto st = build_compass_state(s, adequate_dim(s));
        const double n = normalization(s);
        norm_dev = std::max(norm_dev, std::abs(1.0 / (n * n * st.raw_norm2) - 1.0));
    }
    rep.checks.push_back(detail::make_check("static closed form vs Fock oracle", dev, 1e-8));
    rep.checks.push_back(detail::make_check("normalization vs Fock norm (relative)", norm_dev, 1e-8));

    double par = 0.0, bound = 0.0;
    for (const auto &s : detail::spec_set({1, 5, 12}, {0.5, 0.8}))
        for (cplx z : pts) {
            const double w = wigner_total(z, s);
            par = std::max(par, std::abs(w - wigner_total(-z, s)));
            bound = std::max(bound, std::abs(w));
        }
    rep.checks.push_back(detail::make_check("parity symmetry W(z) = W(-z)", par, 1e-9));
    rep.checks.push_back(detail::make_check("Wigner bound |W| <= 2/pi", bound, wigner_bound + 1e-9));

    double resid = 0.0;
    for (int m = 1; m <= 12; ++m)
        for (double r : {0.5, 0.8}) {
            const cplx y(0.0, std::sinh(r));
            const cplx v = std::pow(-y, m) * legendre(m, y);
            resid = std::max(resid, std::abs(v.imag()) / std::abs(v));
        }
    rep.checks.push_back(detail::make_check("realness of the subtracted-norm Legendre term", resid, 1e-10));

    double fd = 0.0;
    const auto zs = sample_points(20, 2.0, 29);
    for (size_t k = 0; k < zs.size(); ++k) {
        const int n = 1 + static_cast<int>(k % 12);
        const cplx z = zs[k] * std::numbers::sqrt2;
        const double h = 1e-5;
        const cplx d = (hermite(n, z + h) - hermite(n, z - h)) / (2 * h);
        const cplx ref = 2.0 * n * hermite(n - 1, z);
        fd = std::max(fd, std::abs(d - ref) / std::abs(ref));
    }
    rep.checks.push_back(detail::make_check("Hermite derivative finite difference (relative)", fd, 1e-6));
    return rep;
}

inline validation_report validate_full() {
    validation_report rep = validate_quick();
    const auto pts = sample_points(10, 3.5, 41);
    double fock = 0.0, quad = 0.0, real = 0.0, par = 0.0;
    for (auto v : {variant::pa, variant::ps})
        for (double tau : {0.01, 0.1})
            for (double nbar : {0.0, 0.5}) {
                const compass_spec s{v, 2, 0.8};
                const reservoir_spec res{nbar, tau};
                const auto ref = oracle_evolved_values(s, res, pts);
                const double n2 = std::pow(normalization(s), 2);
                for (size_t k = 0; k < pts.size(); ++k) {
                    const double w = evolved_total(pts[k], s, res);
                    fock = std::max(fock, std::abs(w - ref[k]));
                    par = std::max(par, std::abs(w - evolved_total(-pts[k], s, res)));
                    real = std::max(real, n2 * std::abs(detail::evolved_chess_complex(pts[k], s, res).imag()));
                    if (k < 4) {
                        convolve_options opt;
                        opt.half_width = support_half_width(s);
                        const double c = convolve_reference(
                            [&](cplx a) { return wigner_total(a, s); }, pts[k], res, opt);
                        quad = std::max(quad, std::abs(w - c));
                    }
                }
            }
    rep.checks.push_back(detail::make_check("temporal closed form vs Fock master equation", fock, 1e-6));
    rep.checks.push_back(detail::make_check("temporal closed form vs direct convolution", quad, 1e-6));
    rep.checks.push_back(detail::make_check("temporal realness residue (normalized)", real, 1e-9));
    rep.checks.push_back(detail::make_check("temporal parity symmetry", par, 1e-9));

    const compass_spec s{variant::pa, 2, 0.5};
    const auto st = build_compass_state(s, adequate_dim(s) + 16);
    const auto rho = pure_density(st.amplitudes);
    const auto a = evolve_density(evolve_density(rho, {0.5, 0.03}), {0.5, 0.05});
    const auto b = evolve_density(rho, {0.5, 0.08});
    rep.checks.push_back(detail::make_check("oracle channel semigroup composition",
                                            (a - b).cwiseAbs().maxCoeff(), 1e-9));
    return rep;
}

} // namespace compass
