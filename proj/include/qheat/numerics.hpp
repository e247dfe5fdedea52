#pragma once

// Shared numerical helpers: compensated summation, growth-bound tail estimates,
// Chebyshev interpolation on an interval.

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace qheat::numerics {

/// Neumaier compensated accumulator.
class Sum {
public:
    void add(double x) {
        const double t = sum_ + x;
        comp_ += std::abs(sum_) >= std::abs(x) ? (sum_ - t) + x : (x - t) + sum_;
        sum_ = t;
    }
    Sum& operator+=(double x) {
        add(x);
        return *this;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// log Gamma(s, x) for s > 0, x > 0, with an asymptotic upper bound once the
/// regularized value underflows.
inline double log_upper_gamma(double s, double x) {
    const double q = boost::math::gamma_q(s, x);
    if (q > 1e-290) return std::log(q) + boost::math::lgamma(s);
    // Gamma(s,x) <= x^{s-1} e^{-x} / (1 - (s-1)/x) for x > s - 1
    const double shrink = s > 1.0 ? 1.0 - (s - 1.0) / x : 1.0;
    return (s - 1.0) * std::log(x) - x - std::log(std::max(shrink, 1e-300));
}

/// Upper bound for sum_{lambda > L} lambda^p e^{-t lambda} over a spectrum with
/// counting function N(l) <= C (1+l)^a, valid once L >= p/t:
/// C e^t t^{-a-p} Gamma(a+p+1, t(1+L)), multiplied by e^{shift}.
inline double exp_tail_bound(double C, double a, double p, double t, double L, double shift = 0.0) {
    const double x = t * (1.0 + L);
    const double lg = std::log(C) + t - (a + p) * std::log(t) + log_upper_gamma(a + p + 1.0, x) + shift;
    return lg < -745.0 ? 0.0 : std::exp(std::min(lg, 700.0));
}

/// Chebyshev interpolant of f on [a, b] through first-kind nodes (no endpoint evaluations).
class Chebyshev {
public:
    Chebyshev() = default;

    template <class F>
    Chebyshev(F&& f, double a, double b, int degree) : a_(a), b_(b), c_(static_cast<std::size_t>(degree) + 1) {
        const int n = degree + 1;
        std::vector<double> fx(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) {
            const double theta = std::numbers::pi * (j + 0.5) / n;
            fx[static_cast<std::size_t>(j)] = f(map(std::cos(theta)));
        }
        // extended precision keeps the transform's rounding below the data noise
        const long double pi_l = std::numbers::pi_v<long double>;
        for (int k = 0; k < n; ++k) {
            long double acc = 0.0L;
            for (int j = 0; j < n; ++j)
                acc += static_cast<long double>(fx[static_cast<std::size_t>(j)]) *
                       std::cos(pi_l * static_cast<long double>((k * (2 * j + 1)) % (4 * n)) / (2.0L * n));
            c_[static_cast<std::size_t>(k)] = static_cast<double>((k == 0 ? 1.0L : 2.0L) / n * acc);
        }
    }

    static Chebyshev from_coefficients(double a, double b, std::vector<double> c) {
        Chebyshev r;
        r.a_ = a;
        r.b_ = b;
        r.c_ = std::move(c);
        return r;
    }

    double operator()(double t) const {
        const double x = (2.0 * t - a_ - b_) / (b_ - a_);
        double b1 = 0.0, b2 = 0.0;
        for (std::size_t k = c_.size(); k-- > 1;) {
            const double b0 = 2.0 * x * b1 - b2 + c_[k];
            b2 = b1;
            b1 = b0;
        }
        return x * b1 - b2 + c_[0];
    }

    /// Derivative with respect to t, as another Chebyshev series on [a, b].
    Chebyshev derivative() const {
        Chebyshev d;
        d.a_ = a_;
        d.b_ = b_;
        const std::size_t n = c_.size();
        if (n <= 1) {
            d.c_ = {0.0};
            return d;
        }
        // c'_{k-1} = c'_{k+1} + 2 k c_k, then c'_0 halved
        std::vector<double> cp(n + 1, 0.0);
        for (std::size_t k = n - 1; k >= 1; --k) cp[k - 1] = cp[k + 1] + 2.0 * static_cast<double>(k) * c_[k];
        cp[0] *= 0.5;
        const double scale = 2.0 / (b_ - a_);
        std::vector<double> dc(cp.begin(), cp.begin() + static_cast<std::ptrdiff_t>(n - 1));
        for (double& v : dc) v *= scale;
        d.c_ = std::move(dc);
        return d;
    }

    const std::vector<double>& coefficients() const { return c_; }
    double lower() const { return a_; }
    double upper() const { return b_; }

private:
    double map(double x) const { return 0.5 * (a_ + b_) + 0.5 * (b_ - a_) * x; }

    double a_ = 0.0, b_ = 1.0;
    std::vector<double> c_;
};

/// Least-squares line y = intercept + slope x with the standard error of the slope.
struct LineFit {
    double slope;
    double intercept;
    double slope_stderr;
};

inline LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const auto n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double sse = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - intercept - slope * x[i];
        sse += r * r;
    }
    const double se = x.size() > 2 ? std::sqrt(sse / (n - 2.0) / sxx) : std::numeric_limits<double>::infinity();
    return {slope, intercept, se};
}

}  // namespace qheat::numerics
