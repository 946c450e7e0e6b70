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
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "compass/state_model.hpp"

namespace compass {

using fock_vector = Eigen::VectorXcd;
using density_matrix = Eigen::MatrixXcd;

class truncation_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline int default_dim(const compass_spec &s) {
    return std::max(64, 4 * s.m + static_cast<int>(std::ceil(16.0 * std::cosh(2.0 * s.r))));
}

/// S(r)|0> from exp[(r/2)(a^{+2} - a^2)] in a padded basis, cut to dim.
inline Eigen::VectorXd squeezed_vacuum(double r, int dim) {
    const int w = dim + std::max(32, dim / 2);
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(w, w);
    for (int n = 0; n + 2 < w; ++n) {
        const double c = 0.5 * r * std::sqrt(double(n + 1) * double(n + 2));
        g(n + 2, n) = c;
        g(n, n + 2) = -c;
    }
    Eigen::MatrixXd u = g.exp();
    return u.col(0).head(dim);
}

namespace detail {

inline Eigen::VectorXd ladder_power(Eigen::VectorXd v, variant kind, int m) {
    const int d = static_cast<int>(v.size());
    for (int k = 0; k < m; ++k) {
        Eigen::VectorXd w = Eigen::VectorXd::Zero(d);
        if (kind == variant::pa)
            for (int n = 0; n + 1 < d; ++n) w(n + 1) = std::sqrt(double(n + 1)) * v(n);
        else
            for (int n = 1; n < d; ++n) w(n - 1) = std::sqrt(double(n)) * v(n);
        v = w;
    }
    return v;
}

} // namespace detail

/// Unnormalized a^{(+)m} S(sign * r)|0>. The input is built m levels deeper
/// so that photon addition does not pull in truncated amplitudes.
inline Eigen::VectorXd build_component(const compass_spec &s, int sign, int dim) {
    validate(s);
    Eigen::VectorXd sv = squeezed_vacuum(sign * s.r, dim + s.m + 1);
    return detail::ladder_power(sv, s.kind, s.m).head(dim);
}

struct compass_state {
    fock_vector amplitudes;
    double raw_norm2 = 0.0; // squared norm before normalization
};

inline compass_state build_compass_state(const compass_spec &s, int dim,
                                         double tail_tol = 1e-10) {
    validate(s);
    if (dim < 4 * s.m + 16.0 * std::cosh(2.0 * s.r))
        throw std::invalid_argument("build_compass_state: dim below 4m + 16 cosh 2r");
    Eigen::VectorXd v = build_component(s, +1, dim) + build_component(s, -1, dim);
    const double n2 = v.squaredNorm();
    const double tail = v.tail(8).squaredNorm() / n2;
    if (!(tail < tail_tol))
        throw truncation_error("build_compass_state: tail mass " + std::to_string(tail) +
                               " at dim " + std::to_string(dim));
    return {v.cast<cplx>() / std::sqrt(n2), n2};
}

/// Smallest dimension (default grown by 25% steps) passing the tail test.
/// Pointwise Wigner comparisons at 1e-8 need a far smaller tail than 1e-10.
inline int adequate_dim(const compass_spec &s, double tail_tol = 1e-24) {
    int dim = default_dim(s);
    for (;;) {
        try {
            build_compass_state(s, dim, tail_tol);
            return dim;
        } catch (const truncation_error &) {
            dim = static_cast<int>(std::ceil(dim * 1.25));
            if (dim > 4000) throw;
        }
    }
}

inline density_matrix pure_density(const fock_vector &v) { return v * v.adjoint(); }

inline density_matrix thermal_density(double nbar, int dim) {
    density_matrix rho = density_matrix::Zero(dim, dim);
    for (int n = 0; n < dim; ++n)
        rho(n, n) = std::pow(nbar / (nbar + 1.0), n) / (nbar + 1.0);
    return rho;
}

inline density_matrix fock_density(int n, int dim) {
    density_matrix rho = density_matrix::Zero(dim, dim);
    rho(n, n) = 1.0;
    return rho;
}

namespace detail {

// d rho / d tau for the thermal Lindbladian, elementwise in the number basis.
inline void lindblad_rhs(const density_matrix &rho, double nbar, density_matrix &out) {
    const int d = static_cast<int>(rho.rows());
    const double up = nbar + 1.0, dn = nbar;
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) {
            cplx v = -(up * (i + j) + dn * (i + j + 2)) * rho(i, j);
            if (i + 1 < d && j + 1 < d)
                v += 2.0 * up * std::sqrt(double(i + 1) * double(j + 1)) * rho(i + 1, j + 1);
            if (i > 0 && j > 0)
                v += 2.0 * dn * std::sqrt(double(i) * double(j)) * rho(i - 1, j - 1);
            out(i, j) = v;
        }
}

inline density_matrix rk4(density_matrix rho, double nbar, double tau, long steps) {
    const double h = tau / double(steps);
    density_matrix k1(rho.rows(), rho.cols()), k2 = k1, k3 = k1, k4 = k1, tmp = k1;
    for (long s = 0; s < steps; ++s) {
        lindblad_rhs(rho, nbar, k1);
        tmp = rho + 0.5 * h * k1;
        lindblad_rhs(tmp, nbar, k2);
        tmp = rho + 0.5 * h * k2;
        lindblad_rhs(tmp, nbar, k3);
        tmp = rho + h * k3;
        lindblad_rhs(tmp, nbar, k4);
        rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return rho;
}

} // namespace detail

/// RK4 on the master equation; the step count doubles until halving the
/// step changes no element by more than tol.
inline density_matrix evolve_density(const density_matrix &rho, const reservoir_spec &res,
                                     double tol = 1e-10) {
    validate(res);
    if (res.tau == 0.0) return rho;
    const double rate = 2.0 * (2.0 * res.nbar + 1.0) * double(rho.rows());
    long steps = std::max(8L, static_cast<long>(std::ceil(res.tau * rate)));
    density_matrix coarse = detail::rk4(rho, res.nbar, res.tau, steps);
    for (int attempt = 0; attempt < 8; ++attempt) {
        steps *= 2;
        density_matrix fine = detail::rk4(rho, res.nbar, res.tau, steps);
        if ((fine - coarse).cwiseAbs().maxCoeff() <= tol) return fine;
        coarse = std::move(fine);
    }
    throw std::runtime_error("evolve_density: step control failed");
}

/// <l|D(beta)|k> for l, k < dim from the associated-Laguerre closed form.
inline Eigen::MatrixXcd displacement_matrix(cplx beta, int dim) {
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(dim, dim);
    const double x = std::norm(beta);
    if (x == 0.0) return Eigen::MatrixXcd::Identity(dim, dim);
    const double lb = 0.5 * std::log(x);
    const cplx ph = beta / std::abs(beta);
    for (int off = 0; off < dim; ++off) {
        // L_k^{(off)}(x) for k = 0 .. dim-1-off
        double l0 = 1.0, l1 = 1.0 + off - x;
        for (int k = 0; k + off < dim; ++k) {
            double lk = k == 0 ? l0 : l1;
            if (k >= 2) {
                double l2 = ((2.0 * (k - 1) + 1.0 + off - x) * l1 - (k - 1 + off) * l0) / k;
                l0 = l1;
                l1 = l2;
                lk = l2;
            }
            const int hi = k + off;
            const double mag = std::exp(0.5 * (std::lgamma(k + 1.0) - std::lgamma(hi + 1.0)) +
                                        off * lb - 0.5 * x);
            d(hi, k) = mag * std::pow(ph, off) * lk;
            if (off > 0) d(k, hi) = mag * std::pow(-std::conj(ph), off) * lk;
        }
    }
    return d;
}

/// (1/pi) tr[op D(2 zeta) Parity]; op is a density matrix or any outer product.
inline cplx wigner_of_operator(const Eigen::MatrixXcd &op, cplx z,
                               bool *truncation_warning = nullptr) {
    const int dim = static_cast<int>(op.rows());
    if (truncation_warning) *truncation_warning = 4.0 * std::norm(z) > 0.5 * dim;
    const Eigen::MatrixXcd d = displacement_matrix(2.0 * z, dim);
    cplx acc = 0.0;
    for (int k = 0; k < dim; ++k) {
        cplx col = 0.0;
        for (int l = 0; l < dim; ++l) col += op(k, l) * d(l, k);
        acc += (k % 2 ? -1.0 : 1.0) * col;
    }
    return acc / std::numbers::pi;
}

inline double wigner_from_density(const density_matrix &rho, cplx z,
                                  bool *truncation_warning = nullptr) {
    return wigner_of_operator(rho, z, truncation_warning).real();
}

/// Same quantity for a pure state without forming the density matrix.
inline double wigner_from_state(const fock_vector &v, cplx z) {
    const int dim = static_cast<int>(v.size());
    const Eigen::MatrixXcd d = displacement_matrix(2.0 * z, dim);
    fock_vector pv = v;
    for (int k = 1; k < dim; k += 2) pv(k) = -pv(k);
    return v.dot(d * pv).real() / std::numbers::pi;
}

inline double trace_real(const density_matrix &rho) { return rho.trace().real(); }

inline double hermiticity_defect(const density_matrix &rho) {
    return (rho - rho.adjoint()).cwiseAbs().maxCoeff();
}

inline double min_eigenvalue(const density_matrix &rho) {
    Eigen::SelfAdjointEigenSolver<density_matrix> es(rho, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

inline double mean_photon_number(const density_matrix &rho) {
    double n = 0.0;
    for (int k = 0; k < rho.rows(); ++k) n += k * rho(k, k).real();
    return n;
}

} // namespace compass
