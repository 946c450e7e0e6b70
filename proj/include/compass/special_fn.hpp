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
#include <stdexcept>
#include <string>
#include <vector>

namespace compass {

using cplx = std::complex<double>;

inline constexpr int max_poly_degree = 64;
inline constexpr int max_factorial_arg = 170;

namespace detail {

inline void check_degree(int n, const char *what) {
    if (n < 0 || n > max_poly_degree)
        throw std::domain_error(std::string(what) + ": degree " +
                                std::to_string(n) + " outside [0, " +
                                std::to_string(max_poly_degree) + "]");
}

} // namespace detail

/// Physicists' Hermite polynomials H_0(z) .. H_n(z).
template <class T>
std::vector<std::complex<T>> hermite_table(int n, std::complex<T> z) {
    detail::check_degree(n, "hermite");
    std::vector<std::complex<T>> h(n + 1);
    h[0] = T(1);
    if (n >= 1) h[1] = T(2) * z;
    for (int k = 1; k < n; ++k)
        h[k + 1] = T(2) * z * h[k] - T(2 * k) * h[k - 1];
    return h;
}

template <class T> std::complex<T> hermite(int n, std::complex<T> z) {
    detail::check_degree(n, "hermite");
    std::complex<T> h0 = T(1), h1 = T(2) * z;
    if (n == 0) return h0;
    for (int k = 1; k < n; ++k) {
        std::complex<T> h2 = T(2) * z * h1 - T(2 * k) * h0;
        h0 = h1;
        h1 = h2;
    }
    return h1;
}

// Bonnet recurrence; fine for |z| > 1 and imaginary z.
template <class T> std::complex<T> legendre(int n, std::complex<T> z) {
    detail::check_degree(n, "legendre");
    std::complex<T> p0 = T(1), p1 = z;
    if (n == 0) return p0;
    for (int k = 1; k < n; ++k) {
        std::complex<T> p2 = (T(2 * k + 1) * z * p1 - T(k) * p0) / T(k + 1);
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

inline double log_factorial(int n) {
    if (n < 0 || n > max_factorial_arg)
        throw std::domain_error("log_factorial: argument " + std::to_string(n) +
                                " outside [0, 170]");
    static const auto table = [] {
        std::array<double, max_factorial_arg + 1> t{};
        long double acc = 0.0L;
        t[0] = 0.0;
        for (int k = 1; k <= max_factorial_arg; ++k) {
            acc += std::log(static_cast<long double>(k));
            t[k] = static_cast<double>(acc);
        }
        return t;
    }();
    return table[n];
}

/// exp(log_abs) * phase, kept apart so large factorial ratios never overflow.
struct signed_log {
    double log_abs = 0.0;
    cplx phase = 1.0;

    static signed_log of(cplx z) {
        double a = std::abs(z);
        if (a == 0.0) return {-INFINITY, 0.0};
        return {std::log(a), z / a};
    }
    static signed_log of_pow(cplx z, int k) {
        signed_log s = of(z);
        if (k == 0) return {};
        return {s.log_abs * k, std::pow(s.phase, k)};
    }
    signed_log operator*(const signed_log &o) const {
        return {log_abs + o.log_abs, phase * o.phase};
    }
    signed_log operator/(const signed_log &o) const {
        return {log_abs - o.log_abs, phase / o.phase};
    }
    cplx value() const {
        if (std::isinf(log_abs) && log_abs < 0) return 0.0;
        return std::exp(log_abs) * phase;
    }
};

/// Neumaier-compensated accumulator over real or complex addends.
class compensated_sum {
  public:
    void add(cplx x) {
        add_part(re_, cre_, x.real());
        add_part(im_, cim_, x.imag());
    }
    cplx value() const { return {re_ + cre_, im_ + cim_}; }

  private:
    static void add_part(double &s, double &c, double x) {
        double t = s + x;
        if (std::abs(s) >= std::abs(x))
            c += (s - t) + x;
        else
            c += (x - t) + s;
        s = t;
    }
    double re_ = 0.0, cre_ = 0.0, im_ = 0.0, cim_ = 0.0;
};

} // namespace compass
