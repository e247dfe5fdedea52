#pragma once

// Regularized Mellin transform of the heat trace: the invariant function A_q and
// its q-derivative, and the spectral zeta functions built from it.

#include "qheat/errors.hpp"
#include "qheat/numerics.hpp"
#include "qheat/specfun.hpp"
#include "qheat/spectrum.hpp"
#include "qheat/traces.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/binomial.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <vector>

namespace qheat {

enum class MellinKind { value, q_derivative };

struct MellinResult {
    double q;
    double value;
    double err_estimate;
    int regularization_order;
    MellinKind kind;
};

inline int default_regularization_order(double q) { return static_cast<int>(std::floor(std::max(q, 0.0))) + 2; }

/// Evaluates A_q = Gamma(N-q)^{-1} int_0^inf t^{N-q-1} (-d/dt)^N Phi(t) dt with
/// Phi(t) = (4 pi)^{n/2} t^{n/2} Theta(t), and its q-derivative.
///
/// For an infinite spectrum the integral is split at a point h where the
/// non-polynomial part of Phi is below double precision. On [h, inf) the N-th
/// derivative is summed termwise in closed form. On [0, h] the same integral is
/// integrated by parts N times back to int_0^h t^{-q-1} Phi dt: the boundary
/// terms use the termwise derivatives at h, and the remaining (analytically
/// continued) moment is taken against a Chebyshev interpolant of Phi, whose
/// basis moments are exact rational functions of q.
class MellinEngine {
public:
    explicit MellinEngine(Spectrum spec, double tol = 1e-13) : spec_(std::move(spec)), tol_(tol) {
        a_ = 0.5 * spec_.dim();
        lambda1_ = spec_.lambda_min();
        if (!(lambda1_ > 0.0)) throw DomainError("mellin: spectrum must be positive");
        if (!spec_.finite()) {
            const double ell = shortest_period();
            t_split_ = ell * ell / 200.0;
            const double m2 = spec_.mass_sq();
            if (m2 > 0.0) t_split_ = std::min(t_split_, 4.0 / m2);
            fit_near_zero();
        }
    }

    const Spectrum& spectrum() const { return spec_; }
    double split_point() const { return t_split_; }

    MellinResult a_q(double q, int order = -1) const {
        const int N = order < 0 ? default_regularization_order(q) : order;
        check_order(q, N);
        const auto p = evaluate(q, N);
        return {q, p.value, p.err, N, MellinKind::value};
    }

    MellinResult a_q_prime(double q, int order = -1) const {
        const int N = order < 0 ? default_regularization_order(q) : order;
        check_order(q, N);
        const auto p = evaluate(q, N);
        return {q, p.deriv, p.deriv_err, N, MellinKind::q_derivative};
    }

private:
    using Wide = boost::multiprecision::cpp_bin_float_50;

    struct Parts {
        double value, err, deriv, deriv_err;
    };

    struct Termwise {
        double value, magnitude;
    };

    static constexpr int max_order = 12;
    static constexpr int fit_degree = 40;

    void check_order(double q, int N) const {
        if (!std::isfinite(q)) throw DomainError("mellin: q must be finite");
        if (!(N > q)) throw DomainError("mellin: regularization order must exceed q");
        if (N > max_order) throw DomainError("mellin: regularization order too large");
        if (spec_.finite() && spec_.dim() % 2 == 1 && q >= a_)
            throw DomainError("mellin: integral diverges at t=0 for q >= n/2 on a finite odd-dimensional spectrum");
    }

    double shortest_period() const {
        const auto& p = spec_.params();
        switch (spec_.kind()) {
            case SpectrumKind::circle:
            case SpectrumKind::sphere2: return 2.0 * std::numbers::pi * p[0];
            case SpectrumKind::flat_torus: return *std::min_element(p.begin(), p.end());
            case SpectrumKind::explicit_list: break;
        }
        return 1.0;
    }

    double norm() const { return std::pow(4.0 * std::numbers::pi, a_); }

    void fit_near_zero() {
        auto phi = [this](double t) { return std::pow(4.0 * std::numbers::pi * t, a_) * theta_classical(spec_, t, 1e-16); };
        numerics::Chebyshev fit(phi, 0.0, t_split_, fit_degree);
        coeffs_ = fit.coefficients();
        double cmax = 0.0;
        for (double v : coeffs_) cmax = std::max(cmax, std::abs(v));
        std::size_t keep = coeffs_.size();
        while (keep > 1 && std::abs(coeffs_[keep - 1]) < 2e-15 * cmax) --keep;
        double floor_level = 1e-16 * cmax;
        for (std::size_t k = keep; k < coeffs_.size(); ++k) floor_level = std::max(floor_level, std::abs(coeffs_[k]));
        coeffs_.resize(keep);
        coeff_noise_ = floor_level;

        // monomial coefficients of the shifted Chebyshev polynomials T_k(2s - 1)
        shifted_.assign(keep, {});
        for (std::size_t k = 0; k < keep; ++k) {
            shifted_[k].assign(k + 1, Wide(0));
            if (k == 0) {
                shifted_[0][0] = 1;
                continue;
            }
            shifted_[k][0] = (k % 2) ? -1 : 1;
            for (std::size_t j = 1; j <= k; ++j) {
                boost::multiprecision::cpp_int num = boost::multiprecision::cpp_int(k);
                for (std::size_t l = k - j + 1; l <= k + j - 1; ++l) num *= l;  // (k+j-1)!/(k-j)!
                num <<= 2 * j;
                boost::multiprecision::cpp_int den = 1;
                for (std::size_t l = 2; l <= 2 * j; ++l) den *= l;
                Wide v = Wide(num) / Wide(den);
                shifted_[k][j] = ((k - j) % 2) ? -v : v;
            }
        }
    }

    /// rgamma(-q) int_0^1 s^{-q-1} T_k(2s-1) ds (continued in q) and its q-derivative.
    std::pair<double, double> basis_moment(std::size_t k, double q) const {
        const auto& a = shifted_[k];
        const bool on_pole = q >= 0.0 && q == std::floor(q) && static_cast<std::size_t>(q) <= k;
        if (on_pole) {
            const auto i = static_cast<std::size_t>(q);
            Wide rest = 0;
            for (std::size_t j = 0; j < a.size(); ++j)
                if (j != i) rest += a[j] / (Wide(static_cast<double>(j)) - Wide(q));
            const double sign_fact = ((i % 2) ? -1.0 : 1.0) * specfun::factorial(static_cast<int>(i));
            const double ai = static_cast<double>(a[i]);
            return {sign_fact * ai, sign_fact * (ai * specfun::digamma(i + 1.0) - static_cast<double>(rest))};
        }
        Wide s1 = 0, s2 = 0;
        const Wide wq(q);
        for (std::size_t j = 0; j < a.size(); ++j) {
            const Wide inv = Wide(1) / (Wide(static_cast<double>(j)) - wq);
            s1 += a[j] * inv;
            s2 += a[j] * inv * inv;
        }
        const double rg = specfun::rgamma(-q);
        const double drg = specfun::rgamma_derivative(-q);
        return {rg * static_cast<double>(s1), -drg * static_cast<double>(s1) + rg * static_cast<double>(s2)};
    }

    /// (-d/dt)^N Phi(t) summed termwise with certified tail, and the sum of term magnitudes.
    Termwise g_termwise(double t, int N) const {
        std::vector<double> coef(static_cast<std::size_t>(N) + 1);
        double falling = 1.0;
        for (int j = 0; j <= N; ++j) {
            coef[static_cast<std::size_t>(j)] =
                falling == 0.0 ? 0.0
                               : boost::math::binomial_coefficient<double>(N, j) * ((j % 2) ? -1.0 : 1.0) * falling *
                                     std::pow(t, a_ - j);
            falling *= a_ - j;
        }
        const auto& g = spec_.growth();
        double cutoff = std::max(lambda1_ + (40.0 + 2.0 * N) / t, (N + 1.0) / t);
        for (int it = 0; it < 60; ++it) {
            const auto levels = spec_.levels_below(spec_.finite() ? 0.0 : cutoff);
            numerics::Sum acc;
            double mag = 0.0;
            for (const auto& lv : *levels) {
                if (lv.lambda > cutoff) break;
                const double w = static_cast<double>(lv.mult) * std::exp(-(lv.lambda - lambda1_) * t);
                // sum_j coef_j lambda^{N-j}
                double poly = 0.0, apoly = 0.0, lp = 1.0;
                for (int j = N; j >= 0; --j) {
                    const double term = coef[static_cast<std::size_t>(j)] * lp;
                    poly += term;
                    apoly += std::abs(term);
                    lp *= lv.lambda;
                }
                acc += w * poly;
                mag += w * apoly;
            }
            const double scale = norm() * std::exp(-lambda1_ * t);
            if (spec_.finite()) return {scale * acc.value(), scale * mag};
            double tail = 0.0;
            for (int j = 0; j <= N; ++j)
                tail += std::abs(coef[static_cast<std::size_t>(j)]) *
                        numerics::exp_tail_bound(g.C, a_, N - j, t, cutoff, lambda1_ * t);
            if (tail <= 1e-17 * mag || tail == 0.0) return {scale * acc.value(), scale * mag};
            cutoff *= 2.0;
        }
        throw ConvergenceError("mellin: termwise derivative sum did not certify");
    }

    /// int_lo^inf t^alpha g_N and int_lo^inf t^alpha log t g_N over doubling panels.
    void outer_integrals(double lo, double alpha, int N, double qtol, double& i0, double& e0, double& i1,
                         double& e1) const {
        using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
        std::map<double, double> memo;
        auto g = [&](double t) {
            auto it = memo.find(t);
            if (it != memo.end()) return it->second;
            const double v = g_termwise(t, N).value;
            memo.emplace(t, v);
            return v;
        };
        for (int panel = 0; panel < 400; ++panel) {
            const double hi = 2.0 * lo;
            double pe0 = 0.0, pe1 = 0.0;
            const double p0 = GK::integrate([&](double t) { return std::pow(t, alpha) * g(t); }, lo, hi, 10, qtol, &pe0);
            const double p1 = GK::integrate([&](double t) { return std::pow(t, alpha) * std::log(t) * g(t); }, lo, hi,
                                            10, qtol, &pe1);
            i0 += p0;
            i1 += p1;
            e0 += pe0 + 1e-16 * std::abs(p0);
            e1 += pe1 + 1e-16 * std::abs(p1);
            memo.clear();
            lo = hi;
            if (lo * lambda1_ > 40.0 && std::abs(p0) <= 1e-18 * std::abs(i0) && std::abs(p1) <= 1e-18 * std::abs(i1))
                return;
        }
        throw ConvergenceError("mellin: outer integral did not converge");
    }

    Parts evaluate(double q, int N) const {
        const double alpha = N - q - 1.0;
        const double qtol = std::min(tol_, 1e-10);
        const double rg = specfun::rgamma(N - q);
        const double drg = -specfun::rgamma_derivative(N - q);  // d/dq rgamma(N - q)

        double i0 = 0.0, e0 = 0.0, i1 = 0.0, e1 = 0.0;
        if (spec_.finite()) {
            const double start = 1.0 / spec_.lambda_max();
            boost::math::quadrature::tanh_sinh<double> ts;
            // the integrand is O(t^{n/2 - q - 1}) near zero with n/2 > q
            constexpr double t_floor = 1e-200;
            auto f0 = [&](double t) { return t <= t_floor ? 0.0 : std::pow(t, alpha) * g_termwise(t, N).value; };
            auto f1 = [&](double t) {
                return t <= t_floor ? 0.0 : std::pow(t, alpha) * std::log(t) * g_termwise(t, N).value;
            };
            double l0 = 0.0, l1 = 0.0;
            i0 = ts.integrate(f0, 0.0, start, qtol, &e0, &l0);
            i1 = ts.integrate(f1, 0.0, start, qtol, &e1, &l1);
            outer_integrals(start, alpha, N, qtol, i0, e0, i1, e1);
            return {rg * i0, std::abs(rg) * e0, drg * i0 - rg * i1, std::abs(drg) * e0 + std::abs(rg) * e1};
        }

        const double h = t_split_;
        outer_integrals(h, alpha, N, qtol, i0, e0, i1, e1);
        double value = rg * i0;
        double deriv = drg * i0 - rg * i1;
        double err = std::abs(rg) * e0;
        double derr = std::abs(drg) * e0 + std::abs(rg) * e1;

        const double log_h = std::log(h);
        for (int i = 0; i < N; ++i) {
            const auto phi = g_termwise(h, N - 1 - i);
            const double hp = std::pow(h, N - q - 1.0 - i);
            const double r = specfun::rgamma(N - q - i);
            const double dr = specfun::rgamma_derivative(N - q - i);
            const double b = hp * r * phi.value;
            value -= b;
            deriv += log_h * b + hp * phi.value * dr;
            const double noise = 1e-16 * (N + 1) * phi.magnitude * hp;
            err += noise * std::abs(r);
            derr += noise * (std::abs(log_h * r) + std::abs(dr));
        }

        const double hq = std::pow(h, -q);
        numerics::Sum inner, dinner;
        double moment_abs = 0.0, dmoment_abs = 0.0;
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            const auto [g0, g1] = basis_moment(k, q);
            inner += coeffs_[k] * g0;
            dinner += coeffs_[k] * g1;
            moment_abs += std::abs(g0);
            dmoment_abs += std::abs(g1);
        }
        value += hq * inner.value();
        deriv += hq * (dinner.value() - log_h * inner.value());
        err += hq * coeff_noise_ * moment_abs;
        derr += hq * coeff_noise_ * (dmoment_abs + std::abs(log_h) * moment_abs);
        return {value, err, deriv, derr};
    }

    Spectrum spec_;
    double tol_;
    double a_ = 0.5;
    double lambda1_ = 1.0;
    double t_split_ = 0.0;
    double coeff_noise_ = 0.0;
    std::vector<double> coeffs_;
    std::vector<std::vector<Wide>> shifted_;
};

inline MellinResult a_q(const Spectrum& spec, double q, double tol = 1e-12) { return MellinEngine(spec, tol).a_q(q); }

inline MellinResult a_q_prime(const Spectrum& spec, double q, double tol = 1e-12) {
    return MellinEngine(spec, tol).a_q_prime(q);
}

// ---------------------------------------------------------------------------
// Spectral zeta functions

enum class ZetaMethod { direct, via_a };
enum class ZrMethod { direct, mu_series, closed_mu0 };

struct ZetaValue {
    double value;
    double err_estimate;
};

/// zeta_H(s) = sum mult lambda^{-s}, s > n/2, certified by
/// tail <= C s (1 + 1/L)^{n/2} L^{n/2 - s} / (s - n/2).
inline ZetaValue zeta_h_direct(const Spectrum& spec, double s, double tol = 1e-12) {
    const double a = 0.5 * spec.dim();
    if (!(s > a)) throw DomainError("zeta_h direct: requires s > n/2");
    const auto& g = spec.growth();
    double cutoff = std::max(spec.lambda_min() * 16.0, 64.0);
    for (int it = 0; it < 80; ++it) {
        std::shared_ptr<const Spectrum::LevelList> levels;
        try {
            levels = spec.levels_below(spec.finite() ? 0.0 : cutoff);
        } catch (const ConvergenceError&) {
            throw ConvergenceError("zeta_h direct: tolerance unreachable under the enumeration cap");
        }
        numerics::Sum acc;
        for (const auto& lv : *levels) {
            if (lv.lambda > cutoff) break;
            acc += static_cast<double>(lv.mult) * std::exp(-s * std::log(lv.lambda));
        }
        const double v = acc.value();
        if (spec.finite() && cutoff >= spec.lambda_max()) return {v, 0.0};
        const double tail = g.C * s * std::pow(1.0 + 1.0 / cutoff, a) * std::pow(cutoff, a - s) / (s - a);
        if (tail <= tol * std::abs(v)) return {v + 0.5 * tail, 0.5 * tail};
        cutoff *= 2.0;
    }
    throw ConvergenceError("zeta_h direct: tolerance unreachable");
}

/// Gamma(s - a) / Gamma(s), including the finite limit when both arguments sit on poles.
inline double gamma_ratio_shifted(double s, double a) {
    const double x = s - a;
    const bool px = specfun::is_nonpositive_integer(x), ps = specfun::is_nonpositive_integer(s);
    if (px && ps) {
        const int j = static_cast<int>(-x), i = static_cast<int>(-s);
        // Res Gamma(-j) / Res Gamma(-i) = (-1)^{j-i} i! / j!
        return (((j - i) % 2) ? -1.0 : 1.0) * std::exp(std::lgamma(i + 1.0) - std::lgamma(j + 1.0));
    }
    if (px) throw PoleError("zeta_h: pole of the spectral zeta function");
    if (ps) return 0.0;
    return specfun::gamma(x) * specfun::rgamma(s);
}

/// zeta_H(s) = (4 pi)^{-n/2} Gamma(s - n/2) / Gamma(s) A_{n/2 - s}.
inline ZetaValue zeta_h_via_a(const MellinEngine& engine, double s) {
    const double a = 0.5 * engine.spectrum().dim();
    const double ratio = gamma_ratio_shifted(s, a);
    const double pre = std::pow(4.0 * std::numbers::pi, -a) * ratio;
    if (pre == 0.0) return {0.0, 0.0};
    const auto A = engine.a_q(a - s);
    return {pre * A.value, std::abs(pre) * A.err_estimate};
}

inline double zeta_h(const Spectrum& spec, double s, ZetaMethod method, double tol = 1e-12) {
    if (method == ZetaMethod::direct) return zeta_h_direct(spec, s, tol).value;
    return zeta_h_via_a(MellinEngine(spec), s).value;
}

struct ZetaSpecial {
    double zeta0;
    double zeta0_prime;
    double err_zeta0;
    double err_zeta0_prime;
};

/// zeta_H(0) and zeta_H'(0) from A at q = n/2 (odd n) or from A_m, A'_m (even n = 2m).
inline ZetaSpecial zeta_h_special(const MellinEngine& engine) {
    const int n = engine.spectrum().dim();
    const int m = n / 2;
    const double pi = std::numbers::pi;
    const double sign = (m % 2) ? -1.0 : 1.0;
    if (n % 2 == 1) {
        const auto A = engine.a_q(m + 0.5);
        const double c = -sign * std::pow(pi, -m) * specfun::factorial(m) / specfun::factorial(2 * m + 1);
        return {0.0, c * A.value, 0.0, std::abs(c) * A.err_estimate};
    }
    const auto A = engine.a_q(m);
    const auto Ap = engine.a_q_prime(m);
    const double c = std::pow(4.0 * pi, -m) * sign / specfun::factorial(m);
    const double bracket = specfun::digamma(m + 1.0) + specfun::euler_gamma;
    return {c * A.value, c * (-Ap.value + bracket * A.value), std::abs(c) * A.err_estimate,
            std::abs(c) * (Ap.err_estimate + std::abs(bracket) * A.err_estimate)};
}

inline ZetaSpecial zeta_h_special(const Spectrum& spec) { return zeta_h_special(MellinEngine(spec)); }

/// Z_r(s, mu) = sum mult (omega - mu)^{-s}, s > n, mu <= 0.
inline ZetaValue z_relativistic_direct(const Spectrum& spec, double s, double mu, double tol = 1e-12) {
    const int n = spec.dim();
    if (!(s > n)) throw DomainError("z_relativistic direct: requires s > n");
    if (mu > 0.0) throw DomainError("z_relativistic: requires mu <= 0");
    const auto& g = spec.growth();
    double omega_cut = std::max(spec.omega_min() * 16.0, 64.0);
    for (int it = 0; it < 80; ++it) {
        std::shared_ptr<const Spectrum::LevelList> levels;
        try {
            levels = spec.levels_below(spec.finite() ? 0.0 : omega_cut * omega_cut);
        } catch (const ConvergenceError&) {
            throw ConvergenceError("z_relativistic direct: tolerance unreachable under the enumeration cap");
        }
        numerics::Sum acc;
        for (const auto& lv : *levels) {
            if (lv.omega > omega_cut) break;
            acc += static_cast<double>(lv.mult) * std::exp(-s * std::log(lv.omega - mu));
        }
        const double v = acc.value();
        if (spec.finite() && omega_cut * omega_cut >= spec.lambda_max()) return {v, 0.0};
        // sum_{omega > W} omega^{-s} <= C s (1 + 1/W)^n W^{n-s} / (s - n)
        const double tail = g.C * s * std::pow(1.0 + 1.0 / omega_cut, n) * std::pow(omega_cut, n - s) / (s - n);
        if (tail <= tol * std::abs(v)) return {v + 0.5 * tail, 0.5 * tail};
        omega_cut *= 2.0;
    }
    throw ConvergenceError("z_relativistic direct: tolerance unreachable");
}

/// Z_r(s, 0) = (4 pi)^{-(n+1)/2} 2^s Gamma((s+1)/2) Gamma((s-n)/2) / Gamma(s) A_{(n-s)/2}.
inline ZetaValue z_relativistic_closed_mu0(const MellinEngine& engine, double s) {
    const int n = engine.spectrum().dim();
    const double h = 0.5 * (s - n);
    if (specfun::is_nonpositive_integer(h)) throw PoleError("z_relativistic: Gamma pole at even s - n <= 0");
    const double pre = std::pow(4.0 * std::numbers::pi, -0.5 * (n + 1)) * std::pow(2.0, s) *
                       specfun::gamma(0.5 * (s + 1.0)) * specfun::gamma(h) * specfun::rgamma(s);
    const auto A = engine.a_q(0.5 * (n - s));
    return {pre * A.value, std::abs(pre) * A.err_estimate};
}

/// mu-power series: (4 pi)^{-(n+1)/2}/Gamma(s) sum_k mu^k/k! 2^{s+k} Gamma((s+k+1)/2) Gamma((s+k-n)/2) A_{(n-s-k)/2}.
inline ZetaValue z_relativistic_mu_series(const MellinEngine& engine, double s, double mu, double tol = 1e-10) {
    const int n = engine.spectrum().dim();
    if (mu > 0.0) throw DomainError("z_relativistic: requires mu <= 0");
    if (mu == 0.0) return z_relativistic_closed_mu0(engine, s);
    const double pre = std::pow(4.0 * std::numbers::pi, -0.5 * (n + 1)) * specfun::rgamma(s);
    numerics::Sum acc;
    double err = 0.0;
    double prev = 0.0;
    constexpr int max_terms = 200;
    for (int k = 0; k < max_terms; ++k) {
        const double sk = s + k;
        const double h = 0.5 * (sk - n);
        if (specfun::is_nonpositive_integer(h)) throw PoleError("z_relativistic: Gamma pole in the mu-series");
        const double lg = k * std::log(std::abs(mu)) - std::lgamma(k + 1.0) + sk * std::numbers::ln2 +
                          std::lgamma(0.5 * (sk + 1.0));
        const double g = specfun::gamma(h);
        const auto A = engine.a_q(0.5 * (n - sk));
        const double sign = (k % 2) ? -1.0 : 1.0;  // mu < 0
        const double factor = pre * sign * std::exp(lg) * g;
        const double term = factor * A.value;
        acc += term;
        err += std::abs(factor) * A.err_estimate;
        const double total = acc.value();
        if (k > 0 && prev != 0.0) {
            const double ratio = std::abs(term / prev);
            if (ratio < 0.9 && std::abs(term) * ratio / (1.0 - ratio) <= tol * std::abs(total))
                return {total, err + std::abs(term) * ratio / (1.0 - ratio)};
        }
        prev = term;
    }
    throw ConvergenceError("z_relativistic mu-series: |mu| outside the working radius");
}

inline double z_relativistic(const Spectrum& spec, double s, double mu, ZrMethod method, double tol = 1e-12) {
    switch (method) {
        case ZrMethod::direct: return z_relativistic_direct(spec, s, mu, tol).value;
        case ZrMethod::mu_series: return z_relativistic_mu_series(MellinEngine(spec), s, mu).value;
        case ZrMethod::closed_mu0:
            if (mu != 0.0) throw DomainError("z_relativistic closed form requires mu = 0");
            return z_relativistic_closed_mu0(MellinEngine(spec), s).value;
    }
    return std::numeric_limits<double>::quiet_NaN();
}

/// Z_b = zeta(s) Z_r(s, mu), Z_f = (1 - 2^{1-s}) zeta(s) Z_r(s, mu), for s > n and mu <= 0.
inline ZetaValue z_quantum_ex(const Spectrum& spec, double s, double mu, Statistics stat, double tol = 1e-12) {
    if (!(s > spec.dim())) throw DomainError("z_quantum: requires s > n");
    if (mu > 0.0) throw DomainError("z_quantum: requires mu <= 0");
    const auto zr = z_relativistic_direct(spec, s, mu, tol);
    double factor = specfun::riemann_zeta(s);
    if (stat == Statistics::fermi) factor *= -std::expm1((1.0 - s) * std::numbers::ln2);
    return {factor * zr.value, std::abs(factor) * zr.err_estimate};
}

inline double z_quantum(const Spectrum& spec, double s, double mu, Statistics stat, double tol = 1e-12) {
    return z_quantum_ex(spec, s, mu, stat, tol).value;
}

/// (1/Gamma(s)) int_0^inf beta^{s-1} Theta_{b,f}(beta, mu) d beta by geometric panels; the
/// piece below beta0 uses Theta ~ c beta^{-n}.
inline ZetaValue z_quantum_quadrature(const Spectrum& spec, double s, double mu, Statistics stat, double tol = 1e-12) {
    const int n = spec.dim();
    if (!(s > n)) throw DomainError("z_quantum: requires s > n");
    if (mu > 0.0) throw DomainError("z_quantum: requires mu <= 0");
    constexpr double beta0 = 1e-3;
    const double gap = spec.omega_min() - mu;
    auto integrand = [&](double b) { return std::pow(b, s - 1.0) * theta_quantum(spec, b, mu, stat, 1e-15); };
    using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
    numerics::Sum acc;
    double err = 0.0;
    const double theta0 = theta_quantum(spec, beta0, mu, stat, 1e-15);
    const double head = theta0 * std::pow(beta0, s) / (s - n);
    acc += head;
    err += std::abs(head) * beta0 * 10.0;
    double lo = beta0;
    for (int panel = 0; panel < 200; ++panel) {
        const double hi = 2.0 * lo;
        double e = 0.0;
        const double p = GK::integrate(integrand, lo, hi, 10, std::min(tol, 1e-12), &e);
        acc += p;
        err += e;
        lo = hi;
        if (lo * gap > 40.0 && std::abs(p) < 1e-17 * std::abs(acc.value())) break;
    }
    const double rg = specfun::rgamma(s);
    return {acc.value() * rg, err * std::abs(rg)};
}

}  // namespace qheat
