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

#include "compass/field_io.hpp"
#include "compass/fock_oracle.hpp"
#include "compass/validation.hpp"
#include "compass/wigner_static.hpp"

using namespace compass;

TEST(WignerStatic, FrozenQuadratureValues) {
    // Position-representation quadrature of the pure state at 30 digits.
    struct row {
        variant v;
        int m;
        double r, x, p, w;
    };
    const row rows[] = {
        {variant::pa, 3, 0.5, 0.3, -0.7, 0.074391290414973977},
        {variant::pa, 3, 0.5, 1.1, 0.4, 0.021949431089704733},
        {variant::ps, 4, 0.8, 0.3, -0.7, -0.048477283784967467},
        {variant::ps, 4, 0.8, 1.1, 0.4, -0.05583312650418071},
        {variant::pa, 12, 0.8, 0.3, -0.7, 0.083179769121570777},
        {variant::pa, 12, 0.8, 1.1, 0.4, 0.062776089107813913},
        {variant::pa, 12, 0.8, 0.0, 0.0, 0.31830988618379067},
        {variant::ps, 5, 0.5, 0.3, -0.7, 0.078143626801281566},
        {variant::ps, 5, 0.5, 1.1, 0.4, 0.027399923290941293},
    };
    for (const auto &q : rows)
        EXPECT_NEAR(wigner_total(phase_point(q.x, q.p), {q.v, q.m, q.r}), q.w, 1e-9)
            << to_string(q.v) << " m=" << q.m << " (" << q.x << ", " << q.p << ")";
}

TEST(WignerStatic, OddStatesAreMinusOneOverPiAtOrigin) {
    for (auto v : {variant::pa, variant::ps})
        for (int m : {1, 3, 5, 11})
            EXPECT_NEAR(wigner_total(0.0, {v, m, 0.5}), -1.0 / std::numbers::pi, 1e-12);
}

class StaticVsFock : public ::testing::TestWithParam<std::tuple<variant, int, double>> {};

TEST_P(StaticVsFock, AgreesAtRandomPoints) {
    const auto [v, m, r] = GetParam();
    EXPECT_LT(static_oracle_deviation({v, m, r}, sample_points(25, 4.0, 11)), 1e-8);
}

INSTANTIATE_TEST_SUITE_P(Grid, StaticVsFock,
                         ::testing::Combine(::testing::Values(variant::pa, variant::ps),
                                            ::testing::Values(0, 1, 2, 3, 7, 12),
                                            ::testing::Values(0.3, 0.8)));

TEST(WignerStatic, ZeroPhotonChessIsSumOfGaussians) {
    for (double r : {0.3, 0.8})
        for (cplx z : sample_points(10, 3.0, 5)) {
            const double ref = 0.5 * (wigner_svs(z, r) + wigner_svs(z, -r));
            EXPECT_NEAR(wigner_chess(z, {variant::pa, 0, r}), ref, 1e-14);
            EXPECT_NEAR(wigner_chess(z, {variant::ps, 0, r}), ref, 1e-14);
        }
}

TEST(WignerStatic, ZeroPhotonCrossAtOrigin) {
    // W[|u><v|](0) = <v|u> / pi = 1 / (pi sqrt(cosh 2r)) for the two squeezed vacua
    for (double r : {0.2, 0.8, 1.3}) {
        const cplx c = wigner_cross(0.0, {variant::pa, 0, r});
        EXPECT_NEAR(c.real(), 1.0 / (std::numbers::pi * std::sqrt(std::cosh(2 * r))), 1e-14);
        EXPECT_NEAR(c.imag(), 0.0, 1e-14);
    }
}

TEST(WignerStatic, SqueezedVacuumPeak) {
    EXPECT_NEAR(wigner_svs(0.0, 0.7), 2.0 / std::numbers::pi, 1e-15);
    // variances e^{2r}/2 and e^{-2r}/2 along x and p
    const double r = 0.4, x = 0.3;
    EXPECT_NEAR(wigner_svs(phase_point(x, 0), r) / wigner_svs(0.0, r),
                std::exp(-x * x * std::exp(-2 * r)), 1e-14);
    EXPECT_NEAR(wigner_svs(phase_point(0, x), r) / wigner_svs(0.0, r),
                std::exp(-x * x * std::exp(2 * r)), 1e-14);
}

TEST(WignerStatic, ParityAndConjugationSymmetry) {
    for (auto v : {variant::pa, variant::ps})
        for (int m : {1, 4, 12}) {
            const compass_spec s{v, m, 0.8};
            for (cplx z : sample_points(15, 3.5, 23)) {
                const double w = wigner_total(z, s);
                EXPECT_NEAR(w, wigner_total(-z, s), 1e-9);
                EXPECT_NEAR(w, wigner_total(std::conj(z), s), 1e-9);
                EXPECT_LE(std::abs(w), wigner_bound + 1e-9);
            }
        }
}

TEST(WignerStatic, FieldsIntegrateToOne) {
    for (auto v : {variant::pa, variant::ps})
        for (int m : {1, 6, 12}) {
            const compass_spec s{v, m, 0.8};
            const auto f = evaluate_field([&](cplx z) { return wigner_total(z, s); },
                                          square_grid(support_half_width(s), 401));
            EXPECT_NEAR(integrate_field(f), 1.0, 1e-4) << to_string(v) << m;
        }
}

TEST(WignerStatic, DomainGuards) {
    const compass_spec s{variant::pa, 3, 0.5};
    EXPECT_THROW(wigner_total(cplx(31.0, 0.0), s), std::domain_error);
    EXPECT_THROW(wigner_total(cplx(NAN, 0.0), s), std::domain_error);
    EXPECT_THROW(wigner_total(0.0, {variant::pa, 3, 1e-4}), std::invalid_argument);
}
