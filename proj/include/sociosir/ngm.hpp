/*
 * Copyright (C) 2026 The sociosir Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include "sociosir/core_types.hpp"
#include "sociosir/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace sociosir {

/// Mixed infection rate B_rho = rho*beta1 + (1 - rho)*beta2.
constexpr double mixing_rate(double beta1, double beta2, double rho) noexcept
{
    return rho * beta1 + (1.0 - rho) * beta2;
}

/// Basic reproduction number (rho*beta1 + (1 - rho)*beta2) / kappa; identical for MA and MB.
constexpr double r0(double beta1, double beta2, double rho, double kappa) noexcept
{
    return mixing_rate(beta1, beta2, rho) / kappa;
}

inline double r0(const Params& p) noexcept
{
    return r0(p.beta1(), p.beta2(), p.rho(), p.kappa());
}

/// Equilibrium susceptible split of MB: alpha1*S1 = alpha2*S2.
inline double rho_from_alphas(double alpha1, double alpha2)
{
    if (!(alpha2 > 0.0)) {
        throw Error(ErrorCode::RejectRange, "alpha2: must be > 0");
    }
    if (alpha1 <= alpha2) {
        throw Error(ErrorCode::RejectOrder, "alpha1: must exceed alpha2");
    }
    return alpha2 / (alpha1 + alpha2);
}

inline StateMA dfe_ma(const Params& p)
{
    if (p.model() == ModelKind::MB) {
        throw Error(ErrorCode::RejectRange, "dfe_ma: params are for model mb");
    }
    const double S1 = p.rho() * p.N();
    return StateMA{.S1 = S1, .S2 = p.N() - S1};
}

inline StateMB dfe_mb(const Params& p)
{
    if (p.model() != ModelKind::MB) {
        throw Error(ErrorCode::RejectRange, "dfe_mb: params are not for model mb");
    }
    const double S1 = p.rho() * p.N();
    return StateMB{.S1 = S1, .S2 = p.N() - S1};
}

using AnyState = std::variant<StateMA, StateMB>;

/// Disease-free equilibrium of p's model.
inline AnyState dfe_of(const Params& p)
{
    if (p.model() == ModelKind::MB) {
        return dfe_mb(p);
    }
    return dfe_ma(p);
}

/// Dense square matrix of dimension 2 or 3, row-major.
class SmallMatrix
{
public:
    SmallMatrix() = default;
    explicit SmallMatrix(std::size_t n)
        : n_(n)
    {
        assert(n >= 1 && n <= 3);
    }

    std::size_t dim() const noexcept { return n_; }
    double& operator()(std::size_t i, std::size_t j) noexcept { return a_[i * 3 + j]; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return a_[i * 3 + j]; }

    double trace() const noexcept
    {
        double t = 0.0;
        for (std::size_t i = 0; i < n_; ++i) {
            t += (*this)(i, i);
        }
        return t;
    }

    double max_abs() const noexcept
    {
        double m = 0.0;
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) {
                m = std::max(m, std::abs((*this)(i, j)));
            }
        }
        return m;
    }

    friend SmallMatrix operator*(const SmallMatrix& x, const SmallMatrix& y)
    {
        SmallMatrix out(x.n_);
        for (std::size_t i = 0; i < x.n_; ++i) {
            for (std::size_t j = 0; j < x.n_; ++j) {
                double acc = 0.0;
                for (std::size_t k = 0; k < x.n_; ++k) {
                    acc += x(i, k) * y(k, j);
                }
                out(i, j) = acc;
            }
        }
        return out;
    }

    friend SmallMatrix operator-(const SmallMatrix& x)
    {
        SmallMatrix out(x.n_);
        for (std::size_t i = 0; i < 9; ++i) {
            out.a_[i] = -x.a_[i];
        }
        return out;
    }

    friend SmallMatrix operator+(const SmallMatrix& x, const SmallMatrix& y)
    {
        SmallMatrix out(x.n_);
        for (std::size_t i = 0; i < 9; ++i) {
            out.a_[i] = x.a_[i] + y.a_[i];
        }
        return out;
    }

    bool operator==(const SmallMatrix&) const = default;

private:
    std::size_t n_ = 0;
    std::array<double, 9> a_{};
};

inline double determinant(const SmallMatrix& m) noexcept
{
    if (m.dim() == 2) {
        return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    }
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

/// Inverse by adjugate. Throws SingularSigma when |det| is negligible against the entries.
inline SmallMatrix inverse(const SmallMatrix& m)
{
    const double det   = determinant(m);
    const double scale = std::pow(m.max_abs(), static_cast<double>(m.dim()));
    if (!(std::abs(det) > 1e-14 * scale)) {
        throw Error(ErrorCode::SingularSigma, "transition matrix is numerically singular");
    }
    SmallMatrix inv(m.dim());
    if (m.dim() == 2) {
        inv(0, 0) = m(1, 1) / det;
        inv(0, 1) = -m(0, 1) / det;
        inv(1, 0) = -m(1, 0) / det;
        inv(1, 1) = m(0, 0) / det;
        return inv;
    }
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            // cofactor of (j, i) gives the adjugate entry (i, j)
            const std::size_t r0 = (j + 1) % 3, r1 = (j + 2) % 3;
            const std::size_t c0 = (i + 1) % 3, c1 = (i + 2) % 3;
            inv(i, j) = (m(r0, c0) * m(r1, c1) - m(r0, c1) * m(r1, c0)) / det;
        }
    }
    return inv;
}

namespace detail {

// Roots of x^2 + b x + c, avoiding cancellation in the smaller root.
inline std::array<std::complex<double>, 2> quadratic_roots(double b, double c)
{
    const double disc = b * b - 4.0 * c;
    if (disc >= 0.0) {
        const double q  = -0.5 * (b + std::copysign(std::sqrt(disc), b));
        const double x1 = q;
        const double x2 = q != 0.0 ? c / q : 0.0;
        return {std::complex<double>(x1), std::complex<double>(x2)};
    }
    const double re = -0.5 * b;
    const double im = 0.5 * std::sqrt(-disc);
    return {std::complex<double>(re, im), std::complex<double>(re, -im)};
}

// Roots of x^3 + a x^2 + b x + c. One real root comes from Cardano or the
// trigonometric form; the other two from the deflated quadratic, which keeps
// clustered small roots accurate.
inline std::array<std::complex<double>, 3> cubic_roots(double a, double b, double c)
{
    const double p    = b - a * a / 3.0;
    const double q    = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    const double disc = 0.25 * q * q + p * p * p / 27.0;

    double real_root = 0.0;
    if (disc > 0.0) {
        const double u = std::cbrt(-0.5 * q - std::copysign(std::sqrt(disc), q));
        const double v = u != 0.0 ? -p / (3.0 * u) : 0.0;
        real_root      = u + v - a / 3.0;
    }
    else if (p == 0.0) {
        real_root = -a / 3.0;
    }
    else {
        const double r   = std::sqrt(-p / 3.0);
        const double arg = std::clamp(-q / (2.0 * r * r * r), -1.0, 1.0);
        const double phi = std::acos(arg);
        double best      = 0.0;
        for (int k = 0; k < 3; ++k) {
            const double x = 2.0 * r * std::cos((phi + 2.0 * std::numbers::pi * k) / 3.0) - a / 3.0;
            if (k == 0 || std::abs(x) > std::abs(best)) {
                best = x;
            }
        }
        real_root = best;
    }

    // x^3 + a x^2 + b x + c = (x - r)(x^2 + (a + r) x + rest)
    const double lin  = a + real_root;
    const double cnst = real_root != 0.0 ? -c / real_root : b + real_root * lin;
    const auto pair   = quadratic_roots(lin, cnst);
    return {std::complex<double>(real_root), pair[0], pair[1]};
}

} // namespace detail

namespace detail {

inline std::array<double, 3> cross(const std::array<double, 3>& x, const std::array<double, 3>& y) noexcept
{
    return {x[1] * y[2] - x[2] * y[1], x[2] * y[0] - x[0] * y[2], x[0] * y[1] - x[1] * y[0]};
}

inline double norm2(const std::array<double, 3>& x) noexcept
{
    return std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
}

} // namespace detail

/**
 * Eigenvalues of a 2x2 or 3x3 matrix.
 *
 * 2x2 uses the characteristic polynomial directly. For 3x3 one real root of
 * the characteristic cubic is taken, its eigenvector found as a cross product
 * of two rows of (m - r I), and the other two eigenvalues read off the 2x2
 * block left after a Householder deflation. Going through the cubic's
 * coefficients alone would resolve a double zero eigenvalue (as in a rank-one
 * next-generation matrix) only to about sqrt(eps) * |m|.
 */
inline std::vector<std::complex<double>> eigenvalues(const SmallMatrix& m)
{
    if (m.dim() == 2) {
        const auto r = detail::quadratic_roots(-m.trace(), determinant(m));
        return {r[0], r[1]};
    }
    // sum of principal 2x2 minors
    const double c2 = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)) + (m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0)) +
                      (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1));
    const auto cubic = detail::cubic_roots(-m.trace(), c2, -determinant(m));
    const double r   = cubic[0].real();

    std::array<std::array<double, 3>, 3> rows{};
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            rows[i][j] = m(i, j) - (i == j ? r : 0.0);
        }
    }
    std::array<double, 3> v{};
    double best = 0.0;
    for (auto [i, j] : {std::pair<std::size_t, std::size_t>{0, 1}, {0, 2}, {1, 2}}) {
        const auto c = detail::cross(rows[i], rows[j]);
        if (detail::norm2(c) > best) {
            best = detail::norm2(c);
            v    = c;
        }
    }
    const double scale = std::max(m.max_abs(), std::abs(r));
    if (!(best > 1e-12 * scale * scale)) {
        // (m - r I) has rank <= 1: r is repeated and the cubic's roots are as good as it gets
        return {cubic[0], cubic[1], cubic[2]};
    }
    for (double& x : v) {
        x /= best;
    }

    // H = I - 2 w w^T / (w^T w) maps v onto a multiple of e1
    std::array<double, 3> w = v;
    w[0] += std::copysign(1.0, v[0]);
    const double ww = w[0] * w[0] + w[1] * w[1] + w[2] * w[2];
    SmallMatrix h(3);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            h(i, j) = (i == j ? 1.0 : 0.0) - 2.0 * w[i] * w[j] / ww;
        }
    }
    const SmallMatrix b = h * m * h;
    const double tr2    = b(1, 1) + b(2, 2);
    const double det2   = b(1, 1) * b(2, 2) - b(1, 2) * b(2, 1);
    const auto rest     = detail::quadratic_roots(-tr2, det2);
    return {std::complex<double>(r), rest[0], rest[1]};
}

struct NgmResult {
    SmallMatrix T;     ///< new-infection matrix
    SmallMatrix Sigma; ///< transition matrix
    SmallMatrix K;     ///< next-generation matrix -T * Sigma^-1
    std::vector<std::complex<double>> eigenvalues;
    double dominant = 0.0; ///< spectral radius of K
    std::size_t dimension = 0;
};

/**
 * Next-generation matrix of the linearized infection subsystem at the DFE.
 *
 * MA infected order (Is, Ia); MB order (A1, A2, Is). The A-switching rates
 * in Sigma follow `norm`, which leaves the spectrum unchanged.
 */
inline NgmResult ngm(const Params& p, TransitionNormalization norm = TransitionNormalization::AsPrinted)
{
    const double rho   = p.rho();
    const double B     = mixing_rate(p.beta1(), p.beta2(), rho);
    const double lam   = p.lambda();
    const double gamma = p.gamma();
    const double kappa = p.kappa();

    NgmResult out;
    if (p.model() == ModelKind::MB) {
        out.dimension   = 3;
        const double a1 = norm == TransitionNormalization::AsPrinted ? *p.alpha1() : *p.alpha1() / p.N();
        const double a2 = norm == TransitionNormalization::AsPrinted ? *p.alpha2() : *p.alpha2() / p.N();
        out.T           = SmallMatrix(3);
        const std::array<double, 3> rows{(1.0 - lam) * p.beta1() * rho, (1.0 - lam) * p.beta2() * (1.0 - rho),
                                         lam * B};
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = 0; j < 3; ++j) {
                out.T(i, j) = rows[i];
            }
        }
        out.Sigma       = SmallMatrix(3);
        out.Sigma(0, 0) = -(a1 + gamma + kappa);
        out.Sigma(0, 1) = a2;
        out.Sigma(1, 0) = a1;
        out.Sigma(1, 1) = -(a2 + gamma + kappa);
        out.Sigma(2, 0) = gamma;
        out.Sigma(2, 1) = gamma;
        out.Sigma(2, 2) = -kappa;
    }
    else {
        out.dimension = 2;
        out.T         = SmallMatrix(2);
        out.T(0, 0) = out.T(0, 1) = lam * B;
        out.T(1, 0) = out.T(1, 1) = (1.0 - lam) * B;
        out.Sigma                 = SmallMatrix(2);
        out.Sigma(0, 0)           = -kappa;
        out.Sigma(0, 1)           = gamma;
        out.Sigma(1, 1)           = -(gamma + kappa);
    }

    out.K           = -(out.T * inverse(out.Sigma));
    out.eigenvalues = eigenvalues(out.K);
    for (const auto& ev : out.eigenvalues) {
        out.dominant = std::max(out.dominant, std::abs(ev));
    }
    return out;
}

enum class Verdict { Stable, Unstable, Marginal };

constexpr std::string_view to_string(Verdict v)
{
    switch (v) {
    case Verdict::Stable: return "STABLE";
    case Verdict::Unstable: return "UNSTABLE";
    case Verdict::Marginal: return "MARGINAL";
    }
    return "?";
}

/// Relative band around R0 = 1 reported as Marginal.
inline constexpr double marginal_tolerance = 1e-12;

struct StabilityReport {
    double r0 = 0.0;
    Verdict verdict = Verdict::Marginal;
    AnyState dfe;
    double b_rho = 0.0;
};

inline Verdict classify_r0(double value) noexcept
{
    if (value < 1.0 - marginal_tolerance) return Verdict::Stable;
    if (value > 1.0 + marginal_tolerance) return Verdict::Unstable;
    return Verdict::Marginal;
}

/// Local stability of the disease-free equilibrium, decided by R0 against 1.
inline StabilityReport stability(const Params& p)
{
    StabilityReport rep;
    rep.r0      = r0(p);
    rep.verdict = classify_r0(rep.r0);
    rep.dfe     = dfe_of(p);
    rep.b_rho   = mixing_rate(p.beta1(), p.beta2(), p.rho());
    return rep;
}

} // namespace sociosir
