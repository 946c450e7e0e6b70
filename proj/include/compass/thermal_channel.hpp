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

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "compass/special_fn.hpp"
#include "compass/state_model.hpp"
#include "compass/wigner_static.hpp"

namespace compass {

inline constexpr double tau_min = 1e-6;

/// Index 0 holds the "+" member of a +/- pair, index 1 the "-" member.
using pm = std::array<cplx, 2>;

struct channel_coefficients {
    double A_plus = 0, A_minus = 0;
    pm B1, B2, Lambda, zbar;
    pm C1, D1, G1, C3, D3, G3;
    cplx C2, D2, G2, C4, D4, G4;
    double E1 = 0, E2 = 0, E3 = 0, E4 = 0;
    cplx chi1, chi2, chi3, chi4;
    cplx Theta1, Theta2, Theta3, Theta4;
};

namespace detail {
/// Relative perturbation applied to E1; used only by mutation checks.
inline double e1_perturbation = 0.0;
} // namespace detail

inline channel_coefficients coefficients(cplx z, const compass_spec &spec,
                                         const reservoir_spec &res) {
    validate(res);
    if (res.tau < tau_min)
        throw std::domain_error("coefficients: tau below 1e-6, use the static path");
    const double r = spec.r;
    const auto [T, Tb] = reservoir_constants(res);
    const double tau = res.tau;
    const double e2 = std::exp(-2 * tau), e3 = std::exp(-3 * tau),
                 e4 = std::exp(-4 * tau), ep2 = std::exp(2 * tau);
    const double ch = std::cosh(r), sh = std::sinh(r), c2 = std::cosh(2 * r),
                 s2 = std::sinh(2 * r), t2 = std::tanh(2 * r);
    const double coth = 1.0 / std::tanh(r), th = std::tanh(r);
    const double Om = std::sqrt(t2) / sh, om = std::sqrt(t2) / ch;
    const cplx zc = std::conj(z), I(0.0, 1.0);

    channel_coefficients c;
    c.zbar = {z * ch - zc * sh, z * ch + zc * sh};
    const cplx zp = c.zbar[0], zm = c.zbar[1];
    c.A_plus = 4 * e2 / (Tb * Tb) * (e2 + 2 * Tb * c2 + Tb * Tb * ep2);
    c.A_minus = 4 * e2 / (Tb * Tb) * (e2 + 2 * Tb / c2 + Tb * Tb * ep2);
    const double zz = std::norm(z);
    for (int i = 0; i < 2; ++i) {
        const double s = i == 0 ? 1.0 : -1.0;
        const cplx same = c.zbar[i], other = c.zbar[1 - i];
        c.B1[i] = 8 * e4 / (Tb * Tb * Tb) * (zz + Tb * ep2 * std::norm(other));
        c.Lambda[i] = s * 2.0 / c2 * zz + (z * z - zc * zc) * t2;
        c.B2[i] = e4 / (Tb * Tb * Tb) * (8 * zz + s * 4 * Tb * ep2 * c.Lambda[i]);
        const cplx sq1 = std::sqrt(cplx(s * 2 * coth)), sq3 = std::sqrt(cplx(s * 2 * th));
        c.C1[i] = 8.0 * I * e3 * sq1 / (Tb * Tb) * (std::conj(same) + Tb * ep2 * std::conj(other));
        c.D1[i] = -8.0 * I * e3 * sq1 / (Tb * Tb) * (same + Tb * ep2 * other);
        c.G1[i] = s * 16 * coth * (1 + e2 * c2 / Tb);
        c.C3[i] = 8.0 * I * e3 * sq3 / (Tb * Tb) * (std::conj(same) + Tb * ep2 * std::conj(other));
        c.D3[i] = -8.0 * I * e3 * sq3 / (Tb * Tb) * (same + Tb * ep2 * other);
        c.G3[i] = s * 16 * th * (1 + e2 * c2 / Tb);
    }
    c.E1 = 16 * e2 * ch * ch / Tb * (1.0 + detail::e1_perturbation);
    c.E2 = 4 * e2 * Om * Om * s2 / Tb;
    c.E3 = 16 * e2 * sh * sh / Tb;
    c.E4 = -4 * e2 * om * om * s2 / Tb;
    c.C2 = -8.0 * I * e3 * Om / (Tb * Tb) * (std::conj(zp) + Tb * ep2 * std::conj(zm));
    c.D2 = 8.0 * e3 * Om / (Tb * Tb) * (zm + Tb * ep2 * zp);
    c.G2 = -8.0 * I * Om * Om / Tb * (e2 + Tb * c2);
    c.C4 = -8.0 * I * e3 * om / (Tb * Tb) * (std::conj(zm) + Tb * ep2 * std::conj(zp));
    c.D4 = 8.0 * e3 * om / (Tb * Tb) * (zp + Tb * ep2 * zm);
    c.G4 = -8.0 * I * om * om / Tb * (e2 + Tb * c2);
    c.chi1 = c.E1 - c.A_plus;
    c.chi2 = c.E2 - c.A_minus;
    c.chi3 = c.E3 - c.A_plus;
    c.chi4 = c.E4 - c.A_minus;
    c.Theta1 = 1.0 / (2.0 * std::sqrt(c.A_plus * c.chi1));
    c.Theta2 = 1.0 / (2.0 * std::sqrt(c.A_minus * c.chi2));
    c.Theta3 = 1.0 / (2.0 * std::sqrt(c.A_plus * c.chi3));
    c.Theta4 = 1.0 / (2.0 * std::sqrt(c.A_minus * c.chi4));
    return c;
}

namespace detail {

// sum_{l,k} (m!)^2 lam^l (-G)^k chi^n / (k! l! (n!)^2 (-A)^{m-l})
//   H_n(i Theta C) H_n(i Theta D), n = m - l - k; l-major, k-minor.
inline cplx double_series(int m, cplx lam, cplx G, cplx chi, double A, cplx Theta,
                          cplx C, cplx D, signed_log pref) {
    const cplx I(0.0, 1.0);
    const auto hc = hermite_table(m, I * Theta * C), hd = hermite_table(m, I * Theta * D);
    const double lf_m = log_factorial(m);
    compensated_sum acc;
    for (int l = 0; l <= m; ++l) {
        const signed_log pl = pref * signed_log::of_pow(lam, l) /
                              signed_log::of_pow(cplx(-A), m - l);
        for (int k = 0; k <= m - l; ++k) {
            const int n = m - l - k;
            signed_log coef{2 * lf_m - log_factorial(k) - log_factorial(l) -
                                2 * log_factorial(n),
                            1.0};
            signed_log t = pl * coef * signed_log::of_pow(-G, k) *
                           signed_log::of_pow(chi, n) * signed_log::of(hc[n]) *
                           signed_log::of(hd[n]);
            acc.add(t.value());
        }
    }
    return acc.value();
}

inline signed_log exp_of(cplx x) { return {x.real(), std::polar(1.0, x.imag())}; }

inline void check_evolved(const compass_spec &s, const reservoir_spec &res) {
    validate_closed_form(s);
    validate(res);
    if (res.tau < tau_min)
        throw std::domain_error("closed temporal forms need tau >= 1e-6");
}

// Complex value of the two-branch chess series before realness projection.
inline cplx evolved_chess_complex(cplx z, const compass_spec &s, const reservoir_spec &res) {
    using std::numbers::pi;
    detail::check_point(z);
    check_evolved(s, res);
    const auto c = coefficients(z, s, res);
    const auto [T, Tb] = reservoir_constants(res);
    const bool ps = s.kind == variant::ps;
    const int m = s.m;
    const double ct = ps ? std::tanh(s.r) : 1.0 / std::tanh(s.r);
    const double s2 = std::sinh(2 * s.r);
    compensated_sum tot;
    for (int i = 0; i < 2; ++i) {
        const double sg = i == 0 ? 1.0 : -1.0;
        const cplx expo = c.B1[i] / c.A_plus - 2.0 * std::norm(z) / Tb;
        signed_log pref = exp_of(expo) * signed_log::of_pow(cplx(sg * s2), m) /
                          signed_log::of(pi * std::pow(2.0, 2 * m - 1) * Tb *
                                         std::sqrt(c.A_plus));
        const cplx G = ps ? c.G3[i] : c.G1[i];
        tot.add(double_series(m, cplx(-sg * 2 * ct), G, ps ? c.chi3 : c.chi1, c.A_plus,
                              ps ? c.Theta3 : c.Theta1, ps ? c.C3[i] : c.C1[i],
                              ps ? c.D3[i] : c.D1[i], pref));
    }
    return tot.value();
}

inline double evolved_chess(cplx z, const compass_spec &s, const reservoir_spec &res) {
    const cplx v = evolved_chess_complex(z, s, res);
    detail::check_real(v, 10.0 / std::pow(normalization(s), 2), "evolved chess");
    return v.real();
}

} // namespace detail

inline double evolved_pa_chess(cplx z, int m, double r, const reservoir_spec &res) {
    return detail::evolved_chess(z, {variant::pa, m, r}, res);
}

inline double evolved_ps_chess(cplx z, int m, double r, const reservoir_spec &res) {
    return detail::evolved_chess(z, {variant::ps, m, r}, res);
}

/// The raw double series is i^m times the conjugate pairing; the returned
/// value is the same complex cross term as wigner_pa_cross at tau -> 0.
inline cplx evolved_pa_cross(cplx z, int m, double r, const reservoir_spec &res) {
    using std::numbers::pi;
    detail::check_point(z);
    detail::check_evolved({variant::pa, m, r}, res);
    const auto c = coefficients(z, {variant::pa, m, r}, res);
    const auto [T, Tb] = reservoir_constants(res);
    const cplx expo = c.B2[0] / c.A_minus - 2.0 * std::norm(z) / Tb;
    signed_log pref =
        detail::exp_of(expo) * signed_log::of_pow(cplx(-std::tanh(2 * r)), m) /
        signed_log::of(pi * Tb * std::sqrt(c.A_minus) * std::cosh(r) *
                       std::pow(2.0, 2 * m - 1) *
                       std::sqrt(1 + std::pow(std::tanh(r), 2)));
    const cplx w = detail::double_series(m, cplx(0.0, 2.0 / std::tanh(r)), c.G2, c.chi2,
                                         c.A_minus, c.Theta2, c.C2, c.D2, pref);
    return std::conj(w * std::pow(cplx(0.0, -1.0), m));
}

inline cplx evolved_ps_cross(cplx z, int m, double r, const reservoir_spec &res) {
    using std::numbers::pi;
    detail::check_point(z);
    detail::check_evolved({variant::ps, m, r}, res);
    const auto c = coefficients(z, {variant::ps, m, r}, res);
    const auto [T, Tb] = reservoir_constants(res);
    const cplx expo = c.B2[1] / c.A_minus - 2.0 * std::norm(z) / Tb;
    signed_log pref =
        detail::exp_of(expo) * signed_log::of_pow(cplx(0.0, -std::tanh(2 * r)), m) /
        signed_log::of(pi * Tb * std::sqrt(c.A_minus) * std::cosh(r) *
                       std::pow(2.0, 2 * m - 1) *
                       std::sqrt(1 + std::pow(std::tanh(r), 2)));
    return detail::double_series(m, cplx(0.0, 2.0 * std::tanh(r)), c.G4, c.chi4,
                                 c.A_minus, c.Theta4, c.C4, c.D4, pref);
}

/// Chess term; below tau_min this is the static value.
inline double evolved_chess(cplx z, const compass_spec &s, const reservoir_spec &res) {
    validate(res);
    if (res.tau < tau_min) return wigner_chess(z, s);
    return detail::evolved_chess(z, s, res);
}

inline cplx evolved_cross(cplx z, const compass_spec &s, const reservoir_spec &res) {
    validate(res);
    if (res.tau < tau_min) return wigner_cross(z, s);
    return s.kind == variant::pa ? evolved_pa_cross(z, s.m, s.r, res)
                                 : evolved_ps_cross(z, s.m, s.r, res);
}

inline double evolved_total(cplx z, const compass_spec &s, const reservoir_spec &res) {
    validate(res);
    if (res.tau < tau_min) return wigner_total(z, s);
    const double n = normalization(s);
    return n * n * (evolved_chess(z, s, res) + 2.0 * evolved_cross(z, s, res).real());
}

inline double thermal_wigner(cplx z, double nbar) {
    if (!(nbar >= 0.0)) throw std::invalid_argument("nbar must be >= 0");
    const double w = 2.0 * nbar + 1.0;
    return std::exp(-2.0 * std::norm(z) / w) / (std::numbers::pi * w);
}

namespace detail {

inline double origin_series(const std::vector<double> &p, const reservoir_spec &res) {
    const auto [T, Tb] = reservoir_constants(res);
    const double eta2 = std::exp(-2.0 * res.tau);
    const double g = (Tb - eta2) / (Tb + eta2);
    compensated_sum acc;
    double gn = 1.0;
    for (double v : p) {
        acc.add(v * gn);
        gn *= g;
    }
    return acc.value().real() / (std::numbers::pi * (Tb + eta2));
}

} // namespace detail

/// Chess term at the origin as a positive-weight photon-number series,
/// sum_n P_n g^n / (pi (Tbar + e^{-2 tau})); exact for any tau >= 0.
inline double evolved_chess_origin(const compass_spec &s, const reservoir_spec &res) {
    auto p = component_populations(s);
    for (double &v : p) v *= 2.0;
    return detail::origin_series(p, res);
}

/// Full normalized Wigner function at the origin by the same series.
inline double evolved_total_origin(const compass_spec &s, const reservoir_spec &res) {
    auto p = component_populations(s);
    const double n2 = std::pow(normalization(s), 2);
    for (int n = 0; n < static_cast<int>(p.size()); ++n) {
        const int j = s.kind == variant::pa ? (n - s.m) / 2 : (n + s.m) / 2;
        p[n] = (j % 2 == 0) ? 4.0 * n2 * p[n] : 0.0;
    }
    return detail::origin_series(p, res);
}

struct convolve_options {
    double half_width = 0.0; // box half-width on x and p; 0 picks a default
    double rel_tol = 1e-9;
    unsigned max_depth = 12;
};

/// Direct quadrature of (2/Tbar) int d^2a/pi W(a) exp(-2|z - a e^{-tau}|^2 / Tbar).
inline double convolve_reference(const std::function<double(cplx)> &w, cplx z,
                                 const reservoir_spec &res,
                                 const convolve_options &opt = {}) {
    using boost::math::quadrature::gauss_kronrod;
    validate(res);
    if (res.tau < tau_min) throw std::domain_error("convolve_reference: tau below 1e-6");
    const auto [T, Tb] = reservoir_constants(res);
    const double eta = std::exp(-res.tau);
    const double L = (opt.half_width > 0 ? opt.half_width : 8.0) / std::numbers::sqrt2;
    const cplx c = z / eta;
    const double h = std::sqrt(Tb * std::log(1e12) / 2.0) / eta;
    const double a0 = std::max(-L, c.real() - h), a1 = std::min(L, c.real() + h);
    const double b0 = std::max(-L, c.imag() - h), b1 = std::min(L, c.imag() + h);
    if (!(a0 < a1) || !(b0 < b1)) return 0.0;
    // inner lines are judged against the largest line magnitude, so that lines
    // deep in the kernel tail do not fail on roundoff
    double worst_err = 0.0, scale = 0.0;
    auto inner = [&](double a) {
        auto f = [&](double b) {
            const cplx al(a, b);
            return w(al) * std::exp(-2.0 * std::norm(z - al * eta) / Tb);
        };
        double err = 0, l1 = 0;
        double v = gauss_kronrod<double, 15>::integrate(f, b0, b1, opt.max_depth,
                                                        opt.rel_tol, &err, &l1);
        worst_err = std::max(worst_err, err);
        scale = std::max(scale, l1);
        return v;
    };
    double err = 0, l1 = 0;
    double v = gauss_kronrod<double, 15>::integrate(inner, a0, a1, opt.max_depth,
                                                    opt.rel_tol, &err, &l1);
    const double bound = 100 * opt.rel_tol * scale + 1e-300;
    if (!(worst_err <= bound) || !(err <= bound * (a1 - a0)))
        throw std::runtime_error("convolve_reference: quadrature did not converge");
    return 2.0 / (Tb * std::numbers::pi) * v;
}

} // namespace compass
