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
#include <sstream>
#include <stdexcept>

#include <gtest/gtest.h>

#include "compass/field_io.hpp"
#include "compass/thermal_channel.hpp"

using namespace compass;

TEST(FieldIo, ParseGrid) {
    const auto g = parse_grid("-2:3:11");
    EXPECT_EQ(g.x_min, -2);
    EXPECT_EQ(g.p_max, 3);
    EXPECT_EQ(g.np, 11);
    const auto h = parse_grid("-1:1:5,0:2:7");
    EXPECT_EQ(h.nx, 5);
    EXPECT_EQ(h.np, 7);
    EXPECT_EQ(h.p_min, 0);
    EXPECT_DOUBLE_EQ(h.p(6), 2.0);
    EXPECT_THROW(parse_grid("1:0:5"), std::invalid_argument);
    EXPECT_THROW(parse_grid("-1:1:1"), std::invalid_argument);
    EXPECT_THROW(parse_grid("-1:1:5000"), std::invalid_argument);
    EXPECT_THROW(parse_grid("-1;1;5"), std::invalid_argument);
    EXPECT_THROW(parse_grid("-1:1:5x"), std::invalid_argument);
}

TEST(FieldIo, ConstantFieldIntegratesToArea) {
    for (int n : {2, 3, 10, 11}) {
        const auto f = evaluate_field([](cplx) { return 0.25; }, {-1, 3, 0, 2, n, n + 1});
        EXPECT_NEAR(integrate_field(f), 0.25 * 4 * 2, 1e-13) << n;
    }
}

TEST(FieldIo, SimpsonIsFourthOrder) {
    // int_0^1 int_0^1 exp(-x^2 - p^2) = (sqrt(pi)/2 erf(1))^2
    const double ref = std::pow(0.5 * std::sqrt(std::numbers::pi) * std::erf(1.0), 2);
    auto err = [&](int n) {
        const auto f = evaluate_field(
            [](cplx z) { return std::exp(-2 * std::norm(z)); }, {0, 1, 0, 1, n, n});
        return std::abs(integrate_field(f) - ref);
    };
    const double e1 = err(21), e2 = err(41);
    EXPECT_LT(e2, 1e-7);
    EXPECT_NEAR(std::log2(e1 / e2), 4.0, 0.3);
}

TEST(FieldIo, ThermalFieldIsNormalized) {
    const auto f = evaluate_field([](cplx z) { return thermal_wigner(z, 1.0); }, square_grid(12, 241));
    EXPECT_NEAR(integrate_field(f), 1.0, 1e-8);
    const auto half = evaluate_field([](cplx z) { return thermal_wigner(z, 1.0); },
                                     {0, 12, -12, 12, 121, 241});
    EXPECT_NEAR(integrate_field(half), 0.5, 1e-8);
}

TEST(FieldIo, WorkersGiveIdenticalFields) {
    const compass_spec s{variant::pa, 5, 0.8};
    auto w = [&](cplx z) { return wigner_total(z, s); };
    const auto g = square_grid(3, 31);
    EXPECT_EQ(evaluate_field(w, g, 1).values, evaluate_field(w, g, 3).values);
}

TEST(FieldIo, EvaluationErrorsCarryGridIndex) {
    const auto g = square_grid(1, 5);
    try {
        evaluate_field([](cplx z) -> double {
            if (z.real() > 0.5) throw std::domain_error("boom");
            return 0.0;
        }, g, 2);
        FAIL();
    } catch (const std::runtime_error &e) {
        EXPECT_NE(std::string(e.what()).find("boom"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("(4, "), std::string::npos);
    }
}

TEST(FieldIo, CsvRowsAndRoundTrip) {
    const compass_spec s{variant::ps, 4, 0.8};
    const auto f = evaluate_field([&](cplx z) { return wigner_total(z, s); }, {-2, 2, -1, 1, 5, 3});
    std::stringstream out;
    write_csv(f, out);
    const auto rows = read_csv(out);
    ASSERT_EQ(rows.size(), 15u);
    EXPECT_EQ(rows[0].x, -2.0);
    EXPECT_EQ(rows[0].p, -1.0);
    EXPECT_EQ(rows[1].p, 0.0);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 3; ++j) EXPECT_EQ(rows[i * 3 + j].w, f.at(i, j));
    std::stringstream bad("x,y,w\n");
    EXPECT_THROW(read_csv(bad), std::runtime_error);
}

TEST(FieldIo, JsonRoundTripIsBitExact) {
    const compass_spec s{variant::pa, 12, 0.8};
    auto f = evaluate_field([&](cplx z) { return wigner_total(z, s); }, square_grid(3, 17));
    f.meta = {{"state", "pa"}, {"m", 12}};
    const auto text = to_json(f).dump();
    const auto g = from_json(nlohmann::json::parse(text));
    EXPECT_EQ(g.values, f.values);
    EXPECT_EQ(g.meta, f.meta);
    EXPECT_EQ(g.grid.nx, 17);
    auto broken = nlohmann::json::parse(text);
    broken["values"].erase(0);
    EXPECT_THROW(from_json(broken), std::runtime_error);
}

TEST(FieldIo, GrayLevelsAreMonotone) {
    EXPECT_EQ(gray_level(0.0), 127);
    EXPECT_EQ(gray_level(wigner_bound), 255);
    EXPECT_EQ(gray_level(-wigner_bound), 0);
    EXPECT_EQ(gray_level(10.0), 255);
    int prev = -1;
    for (double v = -wigner_bound; v <= wigner_bound; v += 0.01) {
        EXPECT_GE(gray_level(v), prev);
        prev = gray_level(v);
    }
}

TEST(FieldIo, PgmLayout) {
    const auto f = evaluate_field([](cplx z) { return z.imag() > 0 ? wigner_bound : -wigner_bound; },
                                  {-1, 1, -1, 1, 4, 3});
    std::stringstream out;
    write_pgm(f, out);
    const std::string s = out.str();
    const std::string header = "P5\n4 3\n255\n";
    ASSERT_EQ(s.size(), header.size() + 12);
    EXPECT_EQ(s.substr(0, header.size()), header);
    // first stored row is the largest p
    EXPECT_EQ(static_cast<unsigned char>(s[header.size()]), 255);
    EXPECT_EQ(static_cast<unsigned char>(s.back()), 0);
}

TEST(FieldIo, FieldExtremaAndFormats) {
    const auto f = evaluate_field([](cplx z) { return z.real(); }, square_grid(1, 3));
    EXPECT_NEAR(field_min(f), -1 / std::numbers::sqrt2, 1e-15);
    EXPECT_NEAR(field_max_abs(f), 1 / std::numbers::sqrt2, 1e-15);
    EXPECT_EQ(parse_format("pgm"), export_format::pgm);
    EXPECT_THROW(parse_format("png"), std::invalid_argument);
    EXPECT_EQ(std::stod(format_double(0.1)), 0.1);
}
