#pragma once

// Classical, relativistic and quantum heat traces of a spectrum: direct eigen-sums
// with growth-bound tail certification, and the h-kernel reduction integral.

#include "qheat/errors.hpp"
#include "qheat/numerics.hpp"
#include "qheat/specfun.hpp"
#include "qheat/spectrum.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace qheat {

using specfun::Statistics;

enum class TracePath { direct_sum, reduction_integral };

struct TraceQuery {
    double beta_or_t;
    double mu = 0.0;
    double tol = 1e-14;
    TracePath path = TracePath::direct_sum;
};

struct TraceResult {
    double value;
    double tail_bound;  // certified bound on the omitted eigen-sum tail (direct path)
    double cutoff;      // lambda cutoff used
};

namespace detail {

inline constexpr int max_doublings = 60;

inline void check_tol(double tol) {
    if (!(tol > 0.0) || tol > 1e-2) throw DomainError("trace tolerance must lie in (0, 1e-2]");
}

/// Sum term(level) over lambda <= L, doubling L until tail(L) <= tol * |sum|.
template <class Term, class Tail>
TraceResult certified_sum(const Spectrum& spec, double initial_cutoff, double tol, Term&& term, Tail&& tail) {
    double cutoff = std::max(initial_cutoff, spec.lambda_min());
    for (int it = 0; it < max_doublings; ++it) {
        std::shared_ptr<const Spectrum::LevelList> levels;
        try {
            levels = spec.levels_below(spec.finite() ? 0.0 : cutoff);
        } catch (const ConvergenceError&) {
            throw ConvergenceError("trace: tolerance unreachable under the enumeration cap");
        }
        numerics::Sum acc;
        for (const auto& lv : *levels) {
            if (lv.lambda > cutoff) break;
            acc += static_cast<double>(lv.mult) * term(lv);
        }
        const double value = acc.value();
        if (spec.finite() && cutoff >= spec.lambda_max()) return {value, 0.0, cutoff};
        const double t = tail(cutoff);
        if (t <= tol * std::abs(value)) return {value, t, cutoff};
        cutoff *= 2.0;
    }
    throw ConvergenceError("trace: tolerance unreachable");
}

}  // namespace detail

/// Theta(t) = sum mult e^{-t lambda}.
inline TraceResult theta_classical_ex(const Spectrum& spec, double t, double tol = 1e-14) {
    if (!(t > 0.0)) throw DomainError("theta_classical: t must be positive");
    detail::check_tol(tol);
    const auto& g = spec.growth();
    const double a = 0.5 * g.dim;
    const double lam1 = spec.lambda_min();
    return detail::certified_sum(
        spec, lam1 + 40.0 / t, tol, [&](const Level& lv) { return std::exp(-t * (lv.lambda - lam1)); },
        [&](double L) { return numerics::exp_tail_bound(g.C, a, 0.0, t, L, t * lam1); });
}

inline double theta_classical(const Spectrum& spec, double t, double tol = 1e-14) {
    const auto r = theta_classical_ex(spec, t, tol);
    return r.value * std::exp(-t * spec.lambda_min());
}

/// Theta_r(beta) = sum mult e^{-beta omega}.
inline double theta_relativistic(const Spectrum& spec, double beta, double tol = 1e-14) {
    if (!(beta > 0.0)) throw DomainError("theta_relativistic: beta must be positive");
    detail::check_tol(tol);
    const auto& g = spec.growth();
    const double w1 = spec.omega_min();
    const double w0 = w1 + 40.0 / beta;
    // N(omega) <= C (1+omega)^n, tail <= C e^beta beta^{-n} Gamma(n+1, beta(1+Omega)); scaled by e^{beta w1}
    const auto r = detail::certified_sum(
        spec, w0 * w0, tol, [&](const Level& lv) { return std::exp(-beta * (lv.omega - w1)); },
        [&](double L) {
            const double omega = std::sqrt(L);
            return numerics::exp_tail_bound(g.C, g.dim, 0.0, beta, omega, beta * w1);
        });
    return r.value * std::exp(-beta * w1);
}

inline void check_quantum_args(const Spectrum& spec, double beta, double mu, Statistics stat) {
    if (!(beta > 0.0)) throw DomainError("theta_quantum: beta must be positive");
    if (!std::isfinite(mu)) throw DomainError("theta_quantum: mu must be finite");
    if (stat == Statistics::bose && !(mu < spec.omega_min()))
        throw DomainError("theta_quantum: bose requires mu < omega_1");
}

/// Direct eigen-sum of mult * E_{b,f}(beta (omega - mu)).
inline double theta_quantum_direct(const Spectrum& spec, double beta, double mu, Statistics stat, double tol) {
    const auto& g = spec.growth();
    const double w1 = spec.omega_min();
    const double omega0 = std::max(w1, mu) + 40.0 / beta;
    const auto r = detail::certified_sum(
        spec, omega0 * omega0, tol,
        [&](const Level& lv) { return specfun::occupation(beta * (lv.omega - mu), stat); },
        [&](double L) {
            const double omega = std::sqrt(L);
            const double x_min = beta * (omega - mu);
            if (!(x_min > 0.0)) return std::numeric_limits<double>::infinity();
            const double factor = stat == Statistics::bose ? 1.0 / -std::expm1(-x_min) : 1.0;
            // e^{beta mu} * relativistic tail, in log form to avoid overflow
            return numerics::exp_tail_bound(g.C, g.dim, 0.0, beta, omega, beta * mu) * factor;
        });
    return r.value;
}

/// Bottom of the spectrum (omega <= mu) and the projected-out remainder of Theta_f for mu > 0.
struct FermiSplit {
    double bottom;
    double remainder;
};

inline FermiSplit theta_fermi_split(const Spectrum& spec, double beta, double mu, double tol = 1e-14) {
    if (!(mu > 0.0)) throw DomainError("fermi split requires mu > 0");
    const auto levels = spec.levels_below(mu * mu * (1.0 + 1e-12));
    numerics::Sum bottom;
    for (const auto& lv : *levels) {
        if (lv.omega > mu) break;
        bottom += static_cast<double>(lv.mult) * specfun::occupation(beta * (lv.omega - mu), Statistics::fermi);
    }
    const auto& g = spec.growth();
    const double omega0 = mu + 40.0 / beta;
    const auto r = detail::certified_sum(
        spec, omega0 * omega0, tol,
        [&](const Level& lv) {
            return lv.omega > mu ? specfun::occupation(beta * (lv.omega - mu), Statistics::fermi) : 0.0;
        },
        [&](double L) {
            const double omega = std::sqrt(L);
            return numerics::exp_tail_bound(g.C, g.dim, 0.0, beta, omega, beta * mu);
        });
    return {bottom.value(), r.value};
}

/// h_{b,f}(t, x) = (4 pi)^{-1/2} t^{-3/2} sum_k (+-1)^{k+1} k e^{-k^2/(4t) + k x}, x <= 0.
inline double h_kernel(double t, double x, Statistics stat, double tol = 1e-15) {
    if (!(t > 0.0)) throw DomainError("h_kernel: t must be positive");
    if (x > 0.0) throw DomainError("h_kernel: x > 0 is not supported");
    const double k_star = std::sqrt(2.0 * t);  // terms decrease beyond this index
    numerics::Sum acc;
    for (long k = 1; k < 100000000; ++k) {
        const double kd = static_cast<double>(k);
        double term = kd * std::exp(-kd * kd / (4.0 * t) + kd * x);
        if (stat == Statistics::fermi && k % 2 == 0) term = -term;
        acc += term;
        if (kd >= k_star) {
            // sum_{j > k} j e^{-j^2/(4t)} <= 2t e^{-k^2/(4t)}
            const double tail = 2.0 * t * std::exp(-kd * kd / (4.0 * t) + kd * x);
            if (tail <= tol * std::abs(acc.value()) || tail <= 1e-300) break;
        }
    }
    return acc.value() / (2.0 * std::sqrt(std::numbers::pi) * t * std::sqrt(t));
}

/// Theta_{b,f}(beta, mu) = int_0^inf h_{b,f}(t, beta mu) Theta(t beta^2) dt, mu <= 0.
inline double theta_quantum_reduction(const Spectrum& spec, double beta, double mu, Statistics stat, double tol) {
    if (mu > 0.0) throw DomainError("theta_quantum: reduction path requires mu <= 0");
    const double x = beta * mu;
    const double b2 = beta * beta;
    // h ~ t^{-3/2} e^{-1/(4t)} below t_min: e^{-50} relative flatness
    constexpr double t_min = 0.005;
    auto integrand = [&](double t) {
        if (!std::isfinite(t)) return 0.0;
        const double theta = theta_classical(spec, t * b2, 1e-15);
        return theta < 1e-300 ? 0.0 : h_kernel(t, x, stat) * theta;
    };
    double err = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        integrand, t_min, std::numeric_limits<double>::infinity(), 20, std::min(tol, 1e-10) * 1e-2, &err);
    return v;
}

inline double theta_quantum(const Spectrum& spec, double beta, double mu, Statistics stat, double tol = 1e-14,
                            TracePath path = TracePath::direct_sum) {
    check_quantum_args(spec, beta, mu, stat);
    detail::check_tol(tol);
    if (path == TracePath::reduction_integral) return theta_quantum_reduction(spec, beta, mu, stat, tol);
    const double direct = theta_quantum_direct(spec, beta, mu, stat, tol);
    if (stat == Statistics::fermi && mu > 0.0) {
        const auto split = theta_fermi_split(spec, beta, mu, tol);
        const double recombined = split.bottom + split.remainder;
        if (std::abs(recombined - direct) > 10.0 * std::max(tol, 1e-13) * std::abs(direct) + 1e-300)
            throw ConvergenceError("theta_quantum: fermionic split disagrees with direct sum");
    }
    return direct;
}

inline double theta_quantum(const Spectrum& spec, const TraceQuery& q, Statistics stat) {
    return theta_quantum(spec, q.beta_or_t, q.mu, stat, q.tol, q.path);
}

/// mu(beta, N) = -(1/beta) log(Theta_r(beta) / N).
inline double chemical_potential_classical(const Spectrum& spec, double beta, double n_particles) {
    if (!(n_particles > 0.0)) throw DomainError("chemical_potential_classical: N must be positive");
    return -std::log(theta_relativistic(spec, beta) / n_particles) / beta;
}

}  // namespace qheat
