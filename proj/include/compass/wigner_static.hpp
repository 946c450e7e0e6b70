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
#include <complex>
#include <numbers>
#include <stdexcept>

#include "compass/special_fn.hpp"
#include "compass/state_model.hpp"

namespace compass {

inline constexpr double max_abs_zeta = 30.0;
inline constexpr double wigner_bound = 2.0 / std::numbers::pi;

/// zeta = (x + i p)/sqrt(2).
inline cplx phase_point(double x, double p) {
    return cplx(x, p) / std::numbers::sqrt2;
}

namespace detail {

inline void check_point(cplx z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) ||
        std::abs(z) > max_abs_zeta)
        throw std::domain_error("phase point outside |zeta| <= 30");
}

// Sum over both squeezing branches of the l-series with |H_{m-l}|^2.
inline double chess_series(cplx z, int m, double r, bool ps) {
    using std::numbers::pi;
    const double ct = ps ? std::tanh(r) : 1.0 / std::tanh(r);
    const double s2 = std::sinh(2.0 * r), c2 = std::cosh(2.0 * r);
    const double lf_m = log_factorial(m);
    const double log_pref_base = m * std::log(s2) - std::log(pi) - m * std::log(4.0);
    compensated_sum acc;
    for (int s : {+1, -1}) {
        const cplx ab = z * std::cosh(r) - double(s) * std::conj(z) * std::sinh(r);
        const double theta =
            2.0 * s * s2 * (z * z).real() - 2.0 * std::norm(z) * c2;
        const cplx arg = cplx(0.0, -1.0) * std::sqrt(cplx(2.0 * s * ct)) * ab;
        const auto h = hermite_table(m, arg);
        for (int l = 0; l <= m; ++l) {
            const double hn = std::norm(h[m - l]);
            if (hn == 0.0) continue;
            const double lg = 2.0 * lf_m + l * std::log(2.0 * ct) -
                              log_factorial(l) - 2.0 * log_factorial(m - l) +
                              theta + log_pref_base + std::log(hn);
            acc.add((l % 2 ? -1.0 : 1.0) * std::exp(lg));
        }
    }
    return acc.value().real();
}

// (m!)^2 c^l / (l! ((m-l)!)^2) H_{m-l}(a) H_{m-l}(b) summed over l, times pref.
inline cplx product_series(int m, cplx c, cplx a, cplx b, signed_log pref) {
    const auto ha = hermite_table(m, a), hb = hermite_table(m, b);
    const double lf_m = log_factorial(m);
    compensated_sum acc;
    for (int l = 0; l <= m; ++l) {
        signed_log coef{2.0 * lf_m - log_factorial(l) - 2.0 * log_factorial(m - l),
                        1.0};
        signed_log t = pref * coef * signed_log::of_pow(c, l) *
                       signed_log::of(ha[m - l]) * signed_log::of(hb[m - l]);
        acc.add(t.value());
    }
    return acc.value();
}

inline signed_log cross_prefactor(cplx z, int m, double r) {
    using std::numbers::pi;
    const double t2 = std::tanh(2.0 * r);
    const cplx theta = cplx(0.0, -2.0 * t2 * (z * z).imag()) -
                       2.0 * std::norm(z) / std::cosh(2.0 * r);
    signed_log e{theta.real(), std::polar(1.0, theta.imag())};
    signed_log rest = signed_log::of_pow(cplx(0.0, -t2), m) /
                      signed_log::of(pi * std::pow(4.0, m) * std::cosh(r) *
                                     std::sqrt(1.0 + std::pow(std::tanh(r), 2)));
    return e * rest;
}

} // namespace detail

/// Squeezed-vacuum Wigner function in the (2/pi)-peak normalization.
inline double wigner_svs(cplx z, double r) {
    detail::check_point(z);
    const cplx ab = z * std::cosh(r) - std::conj(z) * std::sinh(r);
    return 2.0 / std::numbers::pi * std::exp(-2.0 * std::norm(ab));
}

/// W_plus + W_minus for the photon-added state (unnormalized).
inline double wigner_pa_chess(cplx z, int m, double r) {
    detail::check_point(z);
    validate_closed_form({variant::pa, m, r});
    return detail::chess_series(z, m, r, false);
}

inline double wigner_ps_chess(cplx z, int m, double r) {
    detail::check_point(z);
    validate_closed_form({variant::ps, m, r});
    return detail::chess_series(z, m, r, true);
}

/// Cross term between the S(r) and S(-r) components; enters as 2 Re.
inline cplx wigner_pa_cross(cplx z, int m, double r) {
    detail::check_point(z);
    validate_closed_form({variant::pa, m, r});
    const double om = std::sqrt(std::tanh(2.0 * r)) / std::sinh(r);
    const cplx ap = std::conj(z) * std::sinh(r) + z * std::cosh(r);
    const cplx am = std::conj(z) * std::sinh(r) - z * std::cosh(r);
    return detail::product_series(m, cplx(0.0, -2.0 / std::tanh(r)),
                                  cplx(0.0, om) * am, -om * std::conj(ap),
                                  detail::cross_prefactor(z, m, r));
}

inline cplx wigner_ps_cross(cplx z, int m, double r) {
    detail::check_point(z);
    validate_closed_form({variant::ps, m, r});
    const double om = std::sqrt(std::tanh(2.0 * r)) / std::cosh(r);
    const cplx ap = std::conj(z) * std::sinh(r) + z * std::cosh(r);
    const cplx am = std::conj(z) * std::sinh(r) - z * std::cosh(r);
    return detail::product_series(m, cplx(0.0, 2.0 * std::tanh(r)), -om * am,
                                  cplx(0.0, -om) * std::conj(ap),
                                  detail::cross_prefactor(z, m, r));
}

inline double wigner_chess(cplx z, const compass_spec &s) {
    return s.kind == variant::pa ? wigner_pa_chess(z, s.m, s.r)
                                 : wigner_ps_chess(z, s.m, s.r);
}

inline cplx wigner_cross(cplx z, const compass_spec &s) {
    return s.kind == variant::pa ? wigner_pa_cross(z, s.m, s.r)
                                 : wigner_ps_cross(z, s.m, s.r);
}

inline double wigner_total(cplx z, const compass_spec &s) {
    const double n = normalization(s);
    return n * n * (wigner_chess(z, s) + 2.0 * wigner_cross(z, s).real());
}

} // namespace compass
