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

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <gtest/gtest.h>

#include "compass/fock_oracle.hpp"
#include "compass/thermal_channel.hpp"
#include "compass/validation.hpp"

using namespace compass;

namespace {

// Normalized Gaussian in (x, p) with the given diagonal variances.
double gaussian(cplx z, double vx, double vp) {
    const double x = std::numbers::sqrt2 * z.real(), p = std::numbers::sqrt2 * z.imag();
    return std::exp(-x * x / (2 * vx) - p * p / (2 * vp)) /
           (2 * std::numbers::pi * std::sqrt(vx * vp));
}

// Squeezed vacuum S(r)|0> after the channel: sigma^2 -> e^{-2 tau} sigma^2 + Tbar / 2.
double evolved_svs(cplx z, double r, const reservoir_spec &res) {
    const auto [T, Tb] = reservoir_constants(res);
    const double eta2 = std::exp(-2 * res.tau);
    return gaussian(z, eta2 * std::exp(-2 * r) / 2 + Tb / 2, eta2 * std::exp(2 * r) / 2 + Tb / 2);
}

} // namespace

TEST(ThermalChannel, CoefficientIdentities) {
    const compass_spec s{variant::pa, 4, 0.8};
    for (double tau : {0.01, 0.3, 2.0})
        for (double nbar : {0.0, 0.7}) {
            const reservoir_spec res{nbar, tau};
            const auto [T, Tb] = reservoir_constants(res);
            const double e2 = std::exp(-2 * tau), c2 = std::cosh(2 * s.r);
            const auto c = coefficients(cplx(0.4, -0.3), s, res);
            EXPECT_NEAR((c.A_plus - c.A_minus) / c.A_plus,
                        8 * e2 / Tb * (c2 - 1 / c2) / c.A_plus, 1e-13);
            EXPECT_NEAR(c.chi1.real(), c.E1 - c.A_plus, 1e-12 * c.A_plus);
            EXPECT_EQ(c.G1[0], -c.G1[1]);
            EXPECT_EQ(c.G3[0], -c.G3[1]);
            EXPECT_NEAR(std::abs(c.Theta1 * c.Theta1 * 4.0 * c.A_plus * c.chi1), 1.0, 1e-12);
        }
    const auto late = coefficients(0.5, s, {0.5, 12.0});
    EXPECT_NEAR(late.A_plus, 4.0, 1e-6);
    EXPECT_NEAR(late.A_minus, 4.0, 1e-6);
}

TEST(ThermalChannel, CoefficientsRefuseStaticTimes) {
    EXPECT_THROW(coefficients(0.1, {variant::pa, 2, 0.5}, {0.0, 1e-7}), std::domain_error);
}

TEST(ThermalChannel, ZeroPhotonChessIsTwoEvolvedGaussians) {
    for (auto v : {variant::pa, variant::ps})
        for (double r : {0.3, 0.8})
            for (auto res : {reservoir_spec{0.0, 0.05}, reservoir_spec{0.5, 0.4},
                             reservoir_spec{2.0, 1.5}})
                for (cplx z : sample_points(8, 3.0, 7)) {
                    const double ref = evolved_svs(z, r, res) + evolved_svs(z, -r, res);
                    EXPECT_NEAR(evolved_chess(z, {v, 0, r}, res), ref, 1e-12);
                }
}

TEST(ThermalChannel, ConvolutionReproducesGaussianCovariance) {
    // Independent check of the convolution oracle itself.
    const double r = 0.6;
    const reservoir_spec res{0.5, 0.3};
    convolve_options opt;
    opt.half_width = 9.0;
    for (cplx z : sample_points(4, 2.5, 13)) {
        const double c = convolve_reference(
            [&](cplx a) { return gaussian(a, std::exp(-2 * r) / 2, std::exp(2 * r) / 2); }, z,
            res, opt);
        EXPECT_NEAR(c, evolved_svs(z, r, res), 1e-10);
    }
    // thermal in, thermal out: 2n'+1 = e^{-2tau}(2n0+1) + (2nbar+1)(1-e^{-2tau})
    const double n0 = 0.3, e2 = std::exp(-2 * res.tau);
    const double n1 = 0.5 * (e2 * (2 * n0 + 1) + (2 * res.nbar + 1) * (1 - e2) - 1);
    const double c = convolve_reference([&](cplx a) { return thermal_wigner(a, n0); },
                                        cplx(0.3, 0.2), res, opt);
    EXPECT_NEAR(c, thermal_wigner(cplx(0.3, 0.2), n1), 1e-10);
}

TEST(ThermalChannel, ThermalWigner) {
    EXPECT_NEAR(thermal_wigner(0.0, 0.0), 1.0 / std::numbers::pi, 1e-16);
    EXPECT_NEAR(thermal_wigner(0.0, 1.0), 1.0 / (3.0 * std::numbers::pi), 1e-16);
    EXPECT_NEAR(thermal_wigner(cplx(1.0, 0.0), 0.0), std::exp(-2.0) / std::numbers::pi, 1e-16);
    EXPECT_THROW(thermal_wigner(0.0, -1.0), std::invalid_argument);
}

class EvolvedVsFock
    : public ::testing::TestWithParam<std::tuple<variant, int, double, double>> {};

TEST_P(EvolvedVsFock, Agrees) {
    const auto [v, m, nbar, tau] = GetParam();
    const compass_spec s{v, m, 0.5};
    const reservoir_spec res{nbar, tau};
    const auto pts = sample_points(6, 3.0, 19);
    const auto ref = oracle_evolved_values(s, res, pts);
    for (size_t k = 0; k < pts.size(); ++k)
        EXPECT_NEAR(evolved_total(pts[k], s, res), ref[k], 1e-8) << pts[k];
}

INSTANTIATE_TEST_SUITE_P(Grid, EvolvedVsFock,
                         ::testing::Combine(::testing::Values(variant::pa, variant::ps),
                                            ::testing::Values(1, 3, 4),
                                            ::testing::Values(0.0, 1.0),
                                            ::testing::Values(0.02, 0.25)));

TEST(ThermalChannel, ContinuityAtTauMin) {
    for (auto v : {variant::pa, variant::ps}) {
        const compass_spec s{v, 5, 0.8};
        for (cplx z : sample_points(6, 3.0, 31)) {
            const double w0 = wigner_total(z, s);
            EXPECT_NEAR(evolved_total(z, s, {0.5, 2 * tau_min}), w0, 1e-4);
            EXPECT_EQ(evolved_total(z, s, {0.5, 0.5 * tau_min}), w0);
            EXPECT_NEAR(evolved_total(z, s, {0.5, 1e-3}), w0, 0.05);
        }
    }
}

TEST(ThermalChannel, CrossTermTendsToStatic) {
    for (auto v : {variant::pa, variant::ps}) {
        const compass_spec s{v, 3, 0.5};
        const cplx z(0.4, 0.25);
        EXPECT_LT(std::abs(evolved_cross(z, s, {0.0, 1e-5}) - wigner_cross(z, s)), 1e-3);
    }
}

TEST(ThermalChannel, LongTimeLimitIsThermal) {
    for (auto v : {variant::pa, variant::ps})
        for (double nbar : {1.0, 3.0})
            for (cplx z : sample_points(10, 4.0, 37))
                EXPECT_NEAR(evolved_total(z, {v, 4, 0.5}, {nbar, 12.0}), thermal_wigner(z, nbar),
                            1e-8);
}

TEST(ThermalChannel, OriginSeriesMatchesDoubleSeries) {
    for (auto v : {variant::pa, variant::ps})
        for (int m : {2, 5, 8})
            for (auto res : {reservoir_spec{0.0, 0.07}, reservoir_spec{0.5, 0.3},
                             reservoir_spec{1.0, 1.2}}) {
                const compass_spec s{v, m, 0.6};
                const double n2 = std::pow(normalization(s), 2);
                EXPECT_NEAR(n2 * evolved_chess(0.0, s, res), n2 * evolved_chess_origin(s, res), 1e-12);
                EXPECT_NEAR(evolved_total(0.0, s, res), evolved_total_origin(s, res), 1e-10);
            }
}

TEST(ThermalChannel, ParityAndRealness) {
    for (auto v : {variant::pa, variant::ps}) {
        const compass_spec s{v, 7, 0.8};
        const reservoir_spec res{0.5, 0.1};
        const double n2 = std::pow(normalization(s), 2);
        for (cplx z : sample_points(10, 3.5, 43)) {
            EXPECT_NEAR(evolved_total(z, s, res), evolved_total(-z, s, res), 1e-9);
            EXPECT_LT(n2 * std::abs(detail::evolved_chess_complex(z, s, res).imag()), 1e-9);
        }
    }
}

TEST(ThermalChannel, ZeroThermalOccupationKeepsVacuumFixed) {
    // the photon-loss channel leaves the vacuum part invariant: W -> 1/pi at large tau
    EXPECT_NEAR(evolved_total(0.0, {variant::pa, 2, 0.5}, {0.0, 15.0}), 1.0 / std::numbers::pi,
                1e-10);
}
