#pragma once

// Scalar special functions: gamma family, Bernoulli numbers, Riemann zeta and
// its derivative at the points the expansions consume, Bose/Fermi occupation
// numbers and the Dirichlet-type sums F_{b,f}(s, x).

#include "qheat/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <string>
#include <vector>

namespace qheat::specfun {

enum class Statistics { bose, fermi };
enum class GammaKind { gamma, log_gamma, digamma };

using Rational = boost::multiprecision::cpp_rational;

inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;
inline constexpr int default_bernoulli_max = 64;

inline std::string to_string(Statistics s) { return s == Statistics::bose ? "bose" : "fermi"; }

inline bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

inline bool is_integer(double x) { return std::isfinite(x) && x == std::floor(x); }

/// Gamma, log|Gamma| or digamma. Poles at non-positive integers raise PoleError
/// (log_gamma included, since |Gamma| is infinite there).
inline double gamma_family(double x, GammaKind kind) {
    if (!std::isfinite(x)) throw DomainError("gamma_family: non-finite argument");
    if (is_nonpositive_integer(x))
        throw PoleError("gamma_family: pole at non-positive integer x=" + std::to_string(x));
    switch (kind) {
        case GammaKind::gamma: return boost::math::tgamma(x);
        case GammaKind::log_gamma: return boost::math::lgamma(x);
        case GammaKind::digamma: return boost::math::digamma(x);
    }
    return std::numeric_limits<double>::quiet_NaN();
}

inline double gamma(double x) { return gamma_family(x, GammaKind::gamma); }
inline double log_gamma(double x) { return gamma_family(x, GammaKind::log_gamma); }
inline double digamma(double x) { return gamma_family(x, GammaKind::digamma); }

/// 1/Gamma(x); entire, zero at the poles of Gamma.
inline double rgamma(double x) {
    if (is_nonpositive_integer(x)) return 0.0;
    return 1.0 / boost::math::tgamma(x);
}

/// d/dx [1/Gamma(x)]. At x = -k this is (-1)^k k!.
inline double rgamma_derivative(double x) {
    if (is_nonpositive_integer(x)) {
        const int k = static_cast<int>(-x);
        return (k % 2 == 0 ? 1.0 : -1.0) * boost::math::factorial<double>(static_cast<unsigned>(k));
    }
    return -boost::math::digamma(x) / boost::math::tgamma(x);
}

inline double factorial(int k) {
    if (k < 0) throw DomainError("factorial: negative argument");
    return boost::math::factorial<double>(static_cast<unsigned>(k));
}

// ---------------------------------------------------------------------------
// Bernoulli numbers

namespace detail {

/// B_0..B_max by sum_{j=0}^{k} C(k+1, j) B_j = 0 (B_1 = -1/2 convention).
inline std::vector<Rational> bernoulli_table(int max_index) {
    using boost::multiprecision::cpp_int;
    std::vector<Rational> b(static_cast<std::size_t>(max_index) + 1);
    b[0] = 1;
    for (int k = 1; k <= max_index; ++k) {
        Rational acc = 0;
        cpp_int binom = 1;  // C(k+1, 0)
        for (int j = 0; j < k; ++j) {
            acc += Rational(binom) * b[static_cast<std::size_t>(j)];
            binom = binom * (k + 1 - j) / (j + 1);
        }
        b[static_cast<std::size_t>(k)] = -acc / (k + 1);
    }
    return b;
}

inline const std::vector<Rational>& default_bernoulli() {
    static const std::vector<Rational> table = bernoulli_table(default_bernoulli_max);
    return table;
}

}  // namespace detail

/// Exact Bernoulli number B_k for even k in [0, max_index].
inline Rational bernoulli(int k, int max_index = default_bernoulli_max) {
    if (k < 0 || k % 2 != 0) throw DomainError("bernoulli: index must be even and non-negative");
    if (k > max_index) throw DomainError("bernoulli: index exceeds configured maximum");
    if (max_index <= default_bernoulli_max) return detail::default_bernoulli()[static_cast<std::size_t>(k)];
    return detail::bernoulli_table(k)[static_cast<std::size_t>(k)];
}

inline double bernoulli_value(int k, int max_index = default_bernoulli_max) {
    return static_cast<double>(bernoulli(k, max_index));
}

// ---------------------------------------------------------------------------
// Riemann zeta

namespace detail {

inline constexpr int em_cut = 20;    // direct terms n < em_cut
inline constexpr int em_order = 10;  // Bernoulli corrections B_2..B_20

/// Euler-Maclaurin evaluation of zeta(s) and zeta'(s); valid for s > -2*em_order+1, s != 1.
struct ZetaEM {
    double value;
    double derivative;
};

inline ZetaEM zeta_euler_maclaurin(double s) {
    const double n_cut = em_cut;
    const double log_n = std::log(n_cut);
    double value = 0.0, deriv = 0.0;
    for (int n = em_cut - 1; n >= 1; --n) {
        const double term = std::pow(static_cast<double>(n), -s);
        value += term;
        deriv -= std::log(static_cast<double>(n)) * term;
    }
    const double n_pow = std::pow(n_cut, -s);
    value += n_cut * n_pow / (s - 1.0) + 0.5 * n_pow;
    deriv += -log_n * n_cut * n_pow / (s - 1.0) - n_cut * n_pow / ((s - 1.0) * (s - 1.0)) - 0.5 * log_n * n_pow;

    // sum_j B_2j/(2j)! (s)_{2j-1} N^{-s-2j+1}; the s-derivative of the rising
    // factorial is a sum of products, which stays finite at s = 0
    double npow = n_pow / n_cut;  // N^{-s-1}
    double fact = 2.0;            // (2j)!
    for (int j = 1; j <= em_order; ++j) {
        const int len = 2 * j - 1;
        double rising = 1.0, drising = 0.0;
        for (int i = 0; i < len; ++i) {
            drising = drising * (s + i) + rising;
            rising *= (s + i);
        }
        const double c = bernoulli_value(2 * j) / fact;
        value += c * rising * npow;
        deriv += c * (drising - log_n * rising) * npow;
        npow /= n_cut * n_cut;
        fact *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
    }
    return {value, deriv};
}

}  // namespace detail

/// Riemann zeta on the real line. Exact Bernoulli values at negative integers,
/// Euler-Maclaurin for s >= 0, functional equation for other s < 0.
inline double riemann_zeta(double s) {
    if (!std::isfinite(s)) throw DomainError("riemann_zeta: non-finite argument");
    if (s == 1.0) throw PoleError("riemann_zeta: pole at s=1");
    if (is_integer(s) && s <= 0.0) {
        if (s == 0.0) return -0.5;
        const long k = static_cast<long>(-s);
        if (k % 2 == 0) return 0.0;
        const int two_k = static_cast<int>(k + 1);
        if (two_k <= default_bernoulli_max) return -bernoulli_value(two_k) / two_k;
    }
    if (s >= 0.0) {
        if (s > 60.0) return 1.0 + std::pow(2.0, -s) + std::pow(3.0, -s);
        return detail::zeta_euler_maclaurin(s).value;
    }
    // zeta(s) = 2^s pi^{s-1} sin(pi s/2) Gamma(1-s) zeta(1-s)
    constexpr double pi = std::numbers::pi;
    const double reflected = riemann_zeta(1.0 - s);
    return std::pow(2.0, s) * std::pow(pi, s - 1.0) * std::sin(pi * s / 2.0) * boost::math::tgamma(1.0 - s) *
           reflected;
}

/// zeta'(s) for integer s <= 0 (closed forms through zeta, zeta', psi at
/// positive integers) and real s > 1 (differentiated Euler-Maclaurin series).
inline double riemann_zeta_prime(double s) {
    constexpr double pi = std::numbers::pi;
    const double log_two_pi = std::log(2.0 * pi);
    if (s > 1.0) {
        if (s > 60.0) return -std::log(2.0) * std::pow(2.0, -s) - std::log(3.0) * std::pow(3.0, -s);
        return detail::zeta_euler_maclaurin(s).derivative;
    }
    if (!is_integer(s)) throw DomainError("riemann_zeta_prime: unsupported argument region");
    if (s == 0.0) return -0.5 * log_two_pi;
    if (s == 1.0) throw PoleError("riemann_zeta_prime: pole at s=1");
    const long j = static_cast<long>(-s);
    if (j % 2 == 0) {
        // zeta'(-2k) = (-1)^k (2k)! / (2 (2 pi)^{2k}) zeta(2k+1)
        const int k = static_cast<int>(j / 2);
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        return sign * std::exp(boost::math::lgamma(2.0 * k + 1.0) - 2.0 * k * log_two_pi) / 2.0 *
               riemann_zeta(2.0 * k + 1.0);
    }
    // zeta'(-2k+1) = -(-1)^k 2 (2k-1)!/(2 pi)^{2k} {zeta'(2k) + [psi(2k) - log 2pi] zeta(2k)}
    const int k = static_cast<int>((j + 1) / 2);
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    const double scale = 2.0 * std::exp(boost::math::lgamma(2.0 * k) - 2.0 * k * log_two_pi);
    const double two_k = 2.0 * k;
    return -sign * scale *
           (riemann_zeta_prime(two_k) + (boost::math::digamma(two_k) - log_two_pi) * riemann_zeta(two_k));
}

/// Dirichlet eta (1 - 2^{1-s}) zeta(s); entire, eta(1) = log 2.
inline double dirichlet_eta(double s) {
    if (s == 1.0) return std::numbers::ln2;
    return -std::expm1((1.0 - s) * std::numbers::ln2) * riemann_zeta(s);
}

/// d/ds of (1 - 2^{1-s}) zeta(s), on the same region as riemann_zeta_prime plus s = 1.
inline double dirichlet_eta_prime(double s) {
    constexpr double ln2 = std::numbers::ln2;
    if (s == 1.0) return euler_gamma * ln2 - 0.5 * ln2 * ln2;
    const double p = std::exp((1.0 - s) * ln2);
    return p * ln2 * riemann_zeta(s) - std::expm1((1.0 - s) * ln2) * riemann_zeta_prime(s);
}

// ---------------------------------------------------------------------------
// Occupation numbers and F_{b,f}

/// E_f(x) = 1/(e^x+1), E_b(x) = 1/(e^x-1); exponentials only in e^{-|x|} form.
inline double occupation(double x, Statistics stat) {
    if (stat == Statistics::bose) {
        if (!(x > 0.0)) throw PoleError("occupation: Bose-Einstein pole for x <= 0");
        return std::exp(-x) / -std::expm1(-x);
    }
    if (x >= 0.0) {
        const double e = std::exp(-x);
        return e / (1.0 + e);
    }
    return 1.0 / (std::exp(x) + 1.0);
}

namespace detail {

/// Coefficients (in powers of E) of (-d/du)^order E(u) where E' = -E(1 + sigma E).
inline std::vector<double> occupation_derivative_poly(int order, Statistics stat) {
    const double sigma = stat == Statistics::bose ? 1.0 : -1.0;
    std::vector<double> p{0.0, 1.0};
    for (int step = 0; step < order; ++step) {
        std::vector<double> q(p.size() + 1, 0.0);
        for (std::size_t i = 1; i < p.size(); ++i) {
            const double d = static_cast<double>(i) * p[i];  // coefficient of E^{i-1} in P'
            q[i] += d;                                       // * E
            q[i + 1] += sigma * d;                           // * sigma E^2
        }
        p = std::move(q);
    }
    return p;
}

inline double eval_poly(const std::vector<double>& c, double e) {
    double acc = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * e + c[i];
    return acc;
}

struct FValue {
    double value;
    double derivative;
};

/// F(s,x) = Gamma(s+N)^{-1} int_0^inf t^{s+N-1} (-d/dt)^N E(t-x) dt, x < 0, and its s-derivative.
inline FValue f_statistic_integral(double s, double x, Statistics stat, double tol) {
    const int order = s >= 1.0 ? 0 : static_cast<int>(std::ceil(1.0 - s));
    const double power = s + order - 1.0;
    const auto poly = occupation_derivative_poly(order, stat);
    auto kernel = [&](double t) { return eval_poly(poly, occupation(t - x, stat)); };

    // breakpoints cluster near 0 at the scale |x| of the occupation's structure
    std::vector<double> cuts{0.0};
    for (double c = std::max(-x, 1e-12); c < 1.0; c *= 8.0) cuts.push_back(c);
    cuts.push_back(1.0);
    double upper = 1.0;
    const double t_max = 80.0 + std::max(0.0, power) * 4.0;
    while (upper < t_max) {
        upper *= 2.0;
        cuts.push_back(upper);
    }

    const double qtol = std::max(tol * 1e-2, 1e-15);
    boost::math::quadrature::tanh_sinh<double> ts;
    double value = 0.0, log_moment = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double a = cuts[i], b = cuts[i + 1];
        auto f0 = [&](double t) { return t <= 0.0 ? (power == 0.0 ? kernel(0.0) : 0.0) : std::pow(t, power) * kernel(t); };
        auto f1 = [&](double t) {
            if (t <= 0.0) return 0.0;
            return std::pow(t, power) * std::log(t) * kernel(t);
        };
        if (i == 0) {
            value += ts.integrate(f0, a, b, qtol);
            log_moment += ts.integrate(f1, a, b, qtol);
        } else {
            value += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f0, a, b, 12, qtol);
            log_moment += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f1, a, b, 12, qtol);
        }
    }
    const double rg = 1.0 / boost::math::tgamma(s + order);
    const double f = value * rg;
    return {f, -boost::math::digamma(s + order) * f + log_moment * rg};
}

}  // namespace detail

/// F_b(s,x) = sum_k e^{kx}/k^s, F_f(s,x) = sum_k (-1)^{k+1} e^{kx}/k^s for x <= 0;
/// deriv = 1 gives the s-derivative.
inline double f_statistic(double s, double x, Statistics stat, int deriv = 0, double tol = 1e-14) {
    if (deriv != 0 && deriv != 1) throw DomainError("f_statistic: deriv must be 0 or 1");
    if (x > 0.0) throw DomainError("f_statistic: x must be non-positive");
    if (x == 0.0) {
        if (stat == Statistics::bose) {
            if (s == 1.0) throw PoleError("f_statistic: F_b(s,0)=zeta(s) has a pole at s=1");
            if (s < 1.0) throw DomainError("f_statistic: F_b(s,0) requires s > 1");
            return deriv ? riemann_zeta_prime(s) : riemann_zeta(s);
        }
        return deriv ? dirichlet_eta_prime(s) : dirichlet_eta(s);
    }

    const bool use_series = x <= -1.0 || (x <= -0.05 && (stat == Statistics::bose || s >= 0.0));
    if (!use_series) {
        const auto r = detail::f_statistic_integral(s, x, stat, tol);
        return deriv ? r.derivative : r.value;
    }

    constexpr long max_terms = 1000000;
    double sum = 0.0, comp = 0.0;  // Neumaier
    double prev_abs = 0.0;
    for (long k = 1; k <= max_terms; ++k) {
        const double lk = std::log(static_cast<double>(k));
        double term = std::exp(k * x - s * lk);
        if (deriv) term *= -lk;
        if (stat == Statistics::fermi && k % 2 == 0) term = -term;
        const double t = sum + term;
        comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
        sum = t;
        const double a = std::abs(term);
        if (k > 1 && prev_abs > 0.0) {
            const double ratio = a / prev_abs;
            if (ratio < 0.99 && a * ratio / (1.0 - ratio) <= tol * std::abs(sum + comp)) return sum + comp;
        }
        prev_abs = a;
    }
    throw ConvergenceError("f_statistic: tolerance not met after max terms");
}

// ---------------------------------------------------------------------------

/// Tabulated special values; built once, read-only afterwards.
struct SpecialValueCache {
    std::map<int, Rational> bernoulli;
    std::map<int, double> zeta_pos;
    std::map<int, double> zeta_neg;
    std::map<int, double> zeta_prime;
    std::map<double, double> digamma;

    static SpecialValueCache build(int max_index = default_bernoulli_max) {
        SpecialValueCache c;
        for (int k = 0; k <= max_index; k += 2) c.bernoulli[k] = specfun::bernoulli(k, max_index);
        for (int s = 2; s <= max_index; ++s) c.zeta_pos[s] = riemann_zeta(s);
        for (int k = 1; 2 * k <= max_index; ++k) c.zeta_neg[-(2 * k - 1)] = riemann_zeta(-(2.0 * k - 1.0));
        for (int s = -20; s <= 0; ++s) c.zeta_prime[s] = riemann_zeta_prime(s);
        for (int s = 2; s <= 20; ++s) c.zeta_prime[s] = riemann_zeta_prime(s);
        for (int j = 1; j <= 2 * max_index; ++j) c.digamma[0.5 * j] = specfun::digamma(0.5 * j);
        return c;
    }
};

inline const SpecialValueCache& special_values() {
    static const SpecialValueCache cache = SpecialValueCache::build();
    return cache;
}

}  // namespace qheat::specfun
