#include "qheat/specfun.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

using namespace qheat;
using namespace qheat::specfun;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double pi = std::numbers::pi;

// Brute-force sum_k (+-1)^{k+1} (-log k)^deriv e^{kx} k^{-s} in long double.
double brute_f(double s, double x, bool fermi, int deriv, long terms) {
    long double acc = 0.0L;
    for (long k = terms; k >= 1; --k) {
        const long double kl = static_cast<long double>(k);
        long double t = std::exp(static_cast<long double>(x) * kl - static_cast<long double>(s) * std::log(kl));
        if (deriv) t *= -std::log(kl);
        if (fermi && k % 2 == 0) t = -t;
        acc += t;
    }
    return static_cast<double>(acc);
}

// Direct series with an Euler-Maclaurin tail, in long double: sum_{k<N} k^{-s} + N^{1-s}/(s-1) + N^{-s}/2 + s N^{-s-1}/12.
double zeta_oracle(double s) {
    constexpr long N = 200000;
    long double acc = 0.0L;
    for (long k = N - 1; k >= 1; --k) acc += std::pow(static_cast<long double>(k), -static_cast<long double>(s));
    const long double n = N;
    const long double sl = s;
    acc += std::pow(n, 1 - sl) / (sl - 1) + 0.5L * std::pow(n, -sl) + sl / 12.0L * std::pow(n, -sl - 1);
    return static_cast<double>(acc);
}

}  // namespace

TEST_CASE("gamma family values", "[specfun]") {
    CHECK(specfun::gamma(1.0) == 1.0);
    CHECK_THAT(specfun::gamma(0.5), WithinRel(std::sqrt(pi), 1e-15));
    CHECK_THAT(digamma(1.0), WithinRel(-euler_gamma, 1e-15));
    CHECK_THAT(digamma(0.5), WithinRel(-euler_gamma - 2.0 * std::numbers::ln2, 1e-14));
    for (double x : {-3.5, -0.25, 0.1, 2.5, 7.0, 33.3, 49.0}) {
        CHECK_THAT(specfun::gamma(x), WithinRel(std::tgamma(x), 1e-13));
        CHECK_THAT(log_gamma(std::abs(x)), WithinRel(std::lgamma(std::abs(x)), 1e-13));
    }
    // psi(x+1) = psi(x) + 1/x
    for (double x : {-2.7, 0.3, 4.2, 40.0}) CHECK_THAT(digamma(x + 1.0), WithinRel(digamma(x) + 1.0 / x, 1e-13));
}

TEST_CASE("reciprocal gamma is entire", "[specfun]") {
    for (int k = 0; k < 6; ++k) {
        CHECK(rgamma(-k) == 0.0);
        const double h = 1e-6;
        const double fd = (rgamma(-k + h) - rgamma(-k - h)) / (2.0 * h);
        CHECK_THAT(rgamma_derivative(-k), WithinRel(fd, 1e-7));
    }
    CHECK_THAT(rgamma(3.0), WithinRel(0.5, 1e-15));
}

TEST_CASE("bernoulli numbers are exact rationals", "[specfun]") {
    CHECK(bernoulli(0) == Rational(1));
    CHECK(bernoulli(2) == Rational(1, 6));
    CHECK(bernoulli(4) == Rational(-1, 30));
    CHECK(bernoulli(12) == Rational(-691, 2730));
    CHECK(bernoulli(20) == Rational(-174611, 330));
    CHECK_THROWS_AS(bernoulli(3), DomainError);
    CHECK_THROWS_AS(bernoulli(-2), DomainError);
}

TEST_CASE("zeta at integers", "[specfun]") {
    for (int k = 1; k <= 5; ++k) CHECK(riemann_zeta(-2.0 * k) == 0.0);
    CHECK_THAT(riemann_zeta(-1), WithinAbs(-1.0 / 12.0, 1e-15));
    CHECK_THAT(riemann_zeta(-3), WithinAbs(1.0 / 120.0, 1e-15));
    CHECK_THAT(riemann_zeta(0), WithinAbs(-0.5, 1e-16));
    CHECK_THAT(riemann_zeta(2), WithinRel(pi * pi / 6.0, 1e-14));
    CHECK_THAT(riemann_zeta(4), WithinRel(std::pow(pi, 4) / 90.0, 1e-14));
    CHECK_THROWS_AS(riemann_zeta(1.0), PoleError);
}

TEST_CASE("zeta at even integers matches the Bernoulli closed form", "[specfun][property]") {
    for (int k = 1; k <= 8; ++k) {
        const double b = bernoulli_value(2 * k);
        const double closed =
            ((k + 1) % 2 == 0 ? 1.0 : -1.0) * b * std::pow(2.0 * pi, 2 * k) / (2.0 * factorial(2 * k));
        CHECK_THAT(riemann_zeta(2.0 * k), WithinRel(closed, 1e-13));
    }
    for (int k = 1; k <= 10; ++k)
        CHECK(riemann_zeta(-(2.0 * k - 1.0)) == -bernoulli_value(2 * k) / (2 * k));
}

TEST_CASE("zeta off the integers", "[specfun]") {
    for (double s : {1.5, 2.5, 3.7, 6.0}) CHECK_THAT(riemann_zeta(s), WithinRel(zeta_oracle(s), 1e-12));
    CHECK_THAT(riemann_zeta(0.5), WithinRel(-1.4603545088095868, 1e-13));
    // functional equation against the reflected value
    for (double s : {-0.5, -1.5, -2.5, -4.25}) {
        const double rhs = std::pow(2.0, s) * std::pow(pi, s - 1.0) * std::sin(pi * s / 2.0) * std::tgamma(1.0 - s) *
                           zeta_oracle(1.0 - s);
        CHECK_THAT(riemann_zeta(s), WithinRel(rhs, 1e-11));
    }
}

TEST_CASE("zeta derivative", "[specfun]") {
    CHECK_THAT(riemann_zeta_prime(0), WithinRel(-0.5 * std::log(2.0 * pi), 1e-14));
    CHECK_THAT(riemann_zeta_prime(-2), WithinRel(-riemann_zeta(3) / (4.0 * pi * pi), 1e-12));
    CHECK_THAT(riemann_zeta_prime(-2), WithinRel(-0.0304484570583932707, 1e-12));
    CHECK_THAT(riemann_zeta_prime(-1), WithinRel(-0.165421143700450929, 1e-12));
    CHECK_THAT(riemann_zeta_prime(-3), WithinRel(0.00537857635777430114, 1e-11));
    // differentiated series -sum log k k^{-2} with an integral tail, long double oracle
    {
        constexpr long N = 1000000;
        long double acc = 0.0L;
        for (long k = N - 1; k >= 2; --k) {
            const long double kl = k;
            acc -= std::log(kl) / (kl * kl);
        }
        const long double n = N;
        acc -= (std::log(n) + 1.0L) / n + 0.5L * std::log(n) / (n * n);
        CHECK_THAT(riemann_zeta_prime(2), WithinRel(static_cast<double>(acc), 1e-10));
    }
    for (double s : {2.5, 3.0, 5.0}) {
        const double h = 1e-5;
        const double fd = (zeta_oracle(s + h) - zeta_oracle(s - h)) / (2.0 * h);
        CHECK_THAT(riemann_zeta_prime(s), WithinRel(fd, 1e-8));
    }
}

TEST_CASE("eta function", "[specfun]") {
    CHECK_THAT(dirichlet_eta(1.0), WithinRel(std::numbers::ln2, 1e-15));
    CHECK_THAT(dirichlet_eta(2.0), WithinRel(pi * pi / 12.0, 1e-14));
    CHECK_THAT(dirichlet_eta(0.0), WithinRel(0.5, 1e-15));
    CHECK_THAT(dirichlet_eta(-1.0), WithinRel(0.25, 1e-14));
    // eta'(1) against a symmetric difference of the closed form around s = 1
    const double h = 1e-5;
    const double fd = (dirichlet_eta(1.0 + h) - dirichlet_eta(1.0 - h)) / (2.0 * h);
    CHECK_THAT(dirichlet_eta_prime(1.0), WithinRel(fd, 1e-7));
}

TEST_CASE("occupation numbers", "[specfun]") {
    const double l2 = std::numbers::ln2;
    CHECK_THAT(occupation(l2, Statistics::fermi), WithinRel(1.0 / 3.0, 1e-15));
    CHECK_THAT(occupation(l2, Statistics::bose), WithinRel(1.0, 1e-15));
    CHECK(occupation(0.0, Statistics::fermi) == 0.5);
    CHECK_THROWS_AS(occupation(0.0, Statistics::bose), PoleError);
    CHECK(occupation(800.0, Statistics::bose) == 0.0);
    CHECK(std::isfinite(occupation(-800.0, Statistics::fermi)));
}

TEST_CASE("occupation duplication identity", "[specfun][property]") {
    for (int i = 1; i <= 300; ++i) {
        const double x = 0.1 * i;
        const double ef = occupation(x, Statistics::fermi);
        const double rhs = occupation(x, Statistics::bose) - 2.0 * occupation(2.0 * x, Statistics::bose);
        // relative to the operands: E_b(x) and 2E_b(2x) cancel for small x
        const double scale = occupation(x, Statistics::bose) + 2.0 * occupation(2.0 * x, Statistics::bose);
        CHECK(std::abs(ef - rhs) <= 1e-15 * std::max(ef, scale));
    }
}

TEST_CASE("F statistic at zero chemical potential", "[specfun]") {
    CHECK_THAT(f_statistic(2.0, 0.0, Statistics::bose), WithinRel(pi * pi / 6.0, 1e-14));
    CHECK_THAT(f_statistic(1.0, 0.0, Statistics::fermi), WithinRel(std::numbers::ln2, 1e-15));
    CHECK_THAT(f_statistic(-1.0, 0.0, Statistics::fermi), WithinRel(0.25, 1e-14));
    CHECK_THROWS_AS(f_statistic(1.0, 0.0, Statistics::bose), PoleError);
    CHECK_THROWS_AS(f_statistic(2.0, 0.1, Statistics::bose), DomainError);
}

TEST_CASE("F statistic against closed forms", "[specfun]") {
    for (double x : {-0.01, -0.03, -0.2, -0.5, -3.0}) {
        const double e = std::exp(x);
        CHECK_THAT(f_statistic(0.0, x, Statistics::bose), WithinRel(e / (1.0 - e), 1e-12));
        CHECK_THAT(f_statistic(-1.0, x, Statistics::bose), WithinRel(e / ((1.0 - e) * (1.0 - e)), 1e-12));
        CHECK_THAT(f_statistic(1.0, x, Statistics::bose), WithinRel(-std::log1p(-e), 1e-12));
        CHECK_THAT(f_statistic(0.0, x, Statistics::fermi), WithinRel(e / (1.0 + e), 1e-12));
        CHECK_THAT(f_statistic(-1.0, x, Statistics::fermi), WithinRel(e / ((1.0 + e) * (1.0 + e)), 1e-12));
        CHECK_THAT(f_statistic(1.0, x, Statistics::fermi), WithinRel(std::log1p(e), 1e-12));
    }
    CHECK_THAT(f_statistic(2.0, -20.0, Statistics::bose), WithinRel(brute_f(2.0, -20.0, false, 0, 5), 1e-14));
    CHECK_THAT(f_statistic(2.0, -20.0, Statistics::bose), WithinRel(2.0611536e-9, 1e-7));
}

TEST_CASE("F statistic and its s-derivative against brute-force sums", "[specfun]") {
    for (bool fermi : {false, true}) {
        const auto stat = fermi ? Statistics::fermi : Statistics::bose;
        for (double s : {-3.0, -1.0, 0.5, 2.0, 3.5}) {
            for (double x : {-0.02, -0.3, -2.0}) {
                const long terms = static_cast<long>(60.0 / -x) + 200;
                CHECK_THAT(f_statistic(s, x, stat, 0), WithinRel(brute_f(s, x, fermi, 0, terms), 1e-11));
                CHECK_THAT(f_statistic(s, x, stat, 1), WithinRel(brute_f(s, x, fermi, 1, terms), 1e-10));
            }
        }
    }
}

TEST_CASE("F fermionic from bosonic by splitting even terms", "[specfun][property]") {
    for (int si = -3; si <= 4; ++si) {
        const double s = si;
        for (double x : {-5.0, -1.0, -0.1}) {
            const double fb = f_statistic(s, x, Statistics::bose);
            const double fb2 = std::pow(2.0, 1.0 - s) * f_statistic(s, 2.0 * x, Statistics::bose);
            const double ff = f_statistic(s, x, Statistics::fermi);
            // the subtraction cancels for s < 0 and small |x|: tolerance relative to the operands
            CHECK(std::abs(ff - (fb - fb2)) <= 1e-12 * (std::abs(fb) + std::abs(fb2)));
        }
    }
}

TEST_CASE("F statistic is increasing in x", "[specfun][property]") {
    for (double s : {-2.0, 0.0, 1.0, 2.5}) {
        double prev = f_statistic(s, -6.0, Statistics::bose);
        for (double x = -5.5; x < 0.0; x += 0.5) {
            const double v = f_statistic(s, x, Statistics::bose);
            CHECK(v > prev);
            prev = v;
        }
    }
    for (double s : {1.0, 2.0, 4.0}) {
        double prev = f_statistic(s, -6.0, Statistics::fermi);
        for (double x = -5.5; x < 0.0; x += 0.5) {
            const double v = f_statistic(s, x, Statistics::fermi);
            CHECK(v > prev);
            prev = v;
        }
    }
}

TEST_CASE("special value cache", "[specfun]") {
    const auto& c = special_values();
    CHECK(c.bernoulli.at(2) == Rational(1, 6));
    for (const auto& [s, v] : c.zeta_neg) CHECK(v == riemann_zeta(s));
    CHECK_THAT(c.zeta_prime.at(-2), WithinRel(-riemann_zeta(3) / (4.0 * pi * pi), 1e-12));
}
