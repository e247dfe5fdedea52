#include "qheat/mellin.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

using namespace qheat;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double pi = std::numbers::pi;

double rgamma(double x) { return specfun::rgamma(x); }

// Unit circle, m^2 = 1, by Poisson resummation of the heat trace:
// A_q = 2 pi [1 + 4 rgamma(-q) sum_j (pi j)^{-q} K_q(2 pi j)].
double circle_aq(double q) {
    double s = 0.0;
    for (int j = 1; j <= 12; ++j) s += std::pow(pi * j, -q) * std::cyl_bessel_k(std::abs(q), 2.0 * pi * j);
    return 2.0 * pi * (1.0 + 4.0 * rgamma(-q) * s);
}

// q-derivative of circle_aq at a non-negative integer k.
double circle_aq_prime_int(int k) {
    double s = 0.0;
    for (int j = 1; j <= 12; ++j) s += std::pow(pi * j, -k) * std::cyl_bessel_k(static_cast<double>(k), 2.0 * pi * j);
    return 2.0 * pi * 4.0 * -specfun::rgamma_derivative(-k) * s;
}

// Square torus of side 2 pi, m^2 = 1: A_q = 4 pi^2 [1 + 2 rgamma(-q) sum_{j != 0} (pi |j|)^{-q} K_q(2 pi |j|)].
double torus_aq(double q) {
    double s = 0.0;
    for (int a = -8; a <= 8; ++a)
        for (int b = -8; b <= 8; ++b) {
            if (a == 0 && b == 0) continue;
            const double r = std::hypot(a, b);
            s += std::pow(pi * r, -q) * std::cyl_bessel_k(std::abs(q), 2.0 * pi * r);
        }
    return 4.0 * pi * pi * (1.0 + 2.0 * rgamma(-q) * s);
}

// sum_{k in Z} (k^2 + 1)^{-2}
const double lattice_zeta2 = 0.5 * pi * (1.0 / std::tanh(pi) + pi / (std::sinh(pi) * std::sinh(pi)));

}  // namespace

TEST_CASE("A_q on the circle against the resummed closed form", "[mellin]") {
    const MellinEngine e(Spectrum::circle(1.0, 1.0));
    CHECK_THAT(e.a_q(0.0).value, WithinRel(2.0 * pi, 1e-8));
    CHECK_THAT(e.a_q(1.0).value, WithinRel(2.0 * pi, 1e-7));
    CHECK_THAT(e.a_q(-0.5).value, WithinRel(2.0 * pi / std::tanh(pi), 1e-6));
    for (double q : {-1.0, -0.5, -0.25, 0.0, 0.5, 1.0}) CHECK_THAT(e.a_q(q).value, WithinRel(circle_aq(q), 1e-11));
    for (double q : {1.5, 2.0}) CHECK_THAT(e.a_q(q).value, WithinRel(circle_aq(q), 1e-8));
    CHECK_THAT(e.a_q(3.0).value, WithinRel(circle_aq(3.0), 1e-6));
    for (double q : {-0.5, 0.5, 1.0, 2.0}) {
        const auto r = e.a_q(q);
        CHECK(r.err_estimate >= 0.0);
        CHECK(r.regularization_order > q);
        CHECK(std::abs(r.value - circle_aq(q)) <= 10.0 * r.err_estimate + 1e-13 * std::abs(r.value));
    }
}

TEST_CASE("A_q is independent of the regularization order", "[mellin][property]") {
    const MellinEngine e(Spectrum::circle(1.0, 1.0));
    for (double q : {-0.5, 0.0, 0.5, 1.0, 1.5, 2.0}) {
        const auto a = e.a_q(q);
        const auto b = e.a_q(q, a.regularization_order + 1);
        CHECK(std::abs(a.value - b.value) <= 3.0 * (a.err_estimate + b.err_estimate) + 1e-13 * std::abs(a.value));
    }
}

TEST_CASE("A_q has no spurious poles", "[mellin][property]") {
    const MellinEngine e(Spectrum::circle(1.0, 1.0));
    std::vector<double> v;
    for (double q = -1.0; q <= 3.0 + 1e-12; q += 0.25) {
        const double a = e.a_q(q).value;
        CHECK(std::isfinite(a));
        v.push_back(a);
    }
    for (std::size_t i = 1; i + 1 < v.size(); ++i) CHECK(std::abs(v[i + 1] - 2.0 * v[i] + v[i - 1]) < 0.1);
}

TEST_CASE("A_q derivative", "[mellin]") {
    const MellinEngine e(Spectrum::circle(1.0, 1.0));
    for (int k : {0, 1, 2}) CHECK_THAT(e.a_q_prime(k).value, WithinAbs(circle_aq_prime_int(k), 1e-8));
    for (double q : {-0.5, 0.3, 1.0, 1.5}) {
        const double h = 1e-4;
        auto d = [&](double hh) { return (e.a_q(q + hh).value - e.a_q(q - hh).value) / (2.0 * hh); };
        const double richardson = (4.0 * d(h / 2.0) - d(h)) / 3.0;
        const auto r = e.a_q_prime(q);
        CHECK(std::abs(r.value - richardson) <= std::max(1e-6, 50.0 * r.err_estimate));
        CHECK(r.kind == MellinKind::q_derivative);
    }
}

TEST_CASE("A_q on the square torus", "[mellin]") {
    const double L = 2.0 * pi;
    const MellinEngine e(Spectrum::flat_torus({L, L}, 1.0));
    for (double q : {-0.5, 0.0, 0.5, 1.0}) CHECK_THAT(e.a_q(q).value, WithinRel(torus_aq(q), 1e-10));
    CHECK_THAT(e.a_q(1.5).value, WithinRel(torus_aq(1.5), 1e-8));
}

TEST_CASE("A_q for a single mode", "[mellin]") {
    // Theta = e^{-t}: A_q = (4 pi)^{n/2} Gamma(n/2 - q) / Gamma(-q)
    const auto one = Spectrum::explicit_list(1, {{1.0, 1}}, 3.0);
    const MellinEngine e(one);
    for (double q : {-1.5, -0.5, 0.25}) {
        const double closed = std::sqrt(4.0 * pi) * std::tgamma(0.5 - q) * rgamma(-q);
        CHECK_THAT(e.a_q(q).value, WithinRel(closed, 1e-9));
    }
    CHECK_THAT(e.a_q(0.0).value, WithinAbs(0.0, 1e-12));
    CHECK_THAT(e.a_q_prime(0.0).value, WithinRel(-2.0 * pi, 1e-9));
    CHECK_THROWS_AS(e.a_q(0.5), DomainError);
    CHECK_THROWS_AS(e.a_q(1.0, 1), DomainError);
}

TEST_CASE("spectral zeta function", "[mellin]") {
    const auto c = Spectrum::circle(1.0, 1.0);
    const MellinEngine e(c);
    CHECK_THAT(zeta_h_direct(c, 2.0).value, WithinRel(lattice_zeta2, 1e-9));
    CHECK_THAT(zeta_h_via_a(e, 1.0).value, WithinRel(pi / std::tanh(pi), 1e-9));
    for (double s : {1.5, 2.0, 3.0}) CHECK_THAT(zeta_h_via_a(e, s).value, WithinRel(zeta_h_direct(c, s).value, 1e-6));
    const auto four = Spectrum::explicit_list(1, {{4.0, 3}}, 3.0);
    CHECK_THAT(zeta_h(four, 2.0, ZetaMethod::direct), WithinRel(3.0 / 16.0, 1e-15));
    CHECK_THROWS_AS(zeta_h_direct(c, 0.5), DomainError);
    CHECK_THROWS_AS(zeta_h_via_a(e, 0.5), PoleError);
}

TEST_CASE("zeta function at the origin", "[mellin]") {
    const MellinEngine e(Spectrum::circle(1.0, 1.0));
    const auto z = zeta_h_special(e);
    CHECK(z.zeta0 == 0.0);
    // -2 log(2 sinh pi) from the resummed lattice sum
    CHECK_THAT(z.zeta0_prime, WithinRel(-2.0 * std::log(2.0 * std::sinh(pi)), 1e-10));
    CHECK_THAT(z.zeta0_prime, WithinRel(-e.a_q(0.5).value, 1e-15));

    const auto mode = Spectrum::explicit_list(2, {{std::exp(1.0), 1}}, 3.0);
    const auto zm = zeta_h_special(mode);
    CHECK_THAT(zm.zeta0, WithinRel(1.0, 1e-9));
    CHECK_THAT(zm.zeta0_prime, WithinRel(-1.0, 1e-6));
}

TEST_CASE("relativistic zeta function", "[mellin]") {
    const auto mode = Spectrum::explicit_list(1, {{4.0, 1}}, 3.0);
    CHECK_THAT(z_relativistic(mode, 3.0, -1.0, ZrMethod::direct), WithinRel(1.0 / 27.0, 1e-15));
    const auto c = Spectrum::circle(1.0, 1.0);
    const MellinEngine e(c);
    const double direct0 = z_relativistic_direct(c, 4.0, 0.0).value;
    CHECK_THAT(direct0, WithinRel(lattice_zeta2, 1e-10));
    CHECK_THAT(z_relativistic_closed_mu0(e, 4.0).value, WithinRel(direct0, 1e-6));
    CHECK_THAT(z_relativistic_mu_series(e, 4.0, -0.5).value,
               WithinRel(z_relativistic_direct(c, 4.0, -0.5).value, 1e-7));
    CHECK_THROWS_AS(z_relativistic(c, 4.0, 0.3, ZrMethod::closed_mu0), DomainError);
}

TEST_CASE("quantum zeta functions", "[mellin]") {
    const auto mode = Spectrum::explicit_list(1, {{1.0, 1}}, 3.0);
    CHECK_THAT(z_quantum(mode, 4.0, 0.0, Statistics::bose), WithinRel(std::pow(pi, 4) / 90.0, 1e-13));
    CHECK_THAT(z_quantum(mode, 4.0, 0.0, Statistics::fermi), WithinRel(7.0 * std::pow(pi, 4) / 720.0, 1e-13));
    const auto c = Spectrum::circle(1.0, 1.0);
    for (auto stat : {Statistics::bose, Statistics::fermi}) {
        const double rel = z_quantum(c, 4.0, -0.5, stat);
        CHECK_THAT(z_quantum_quadrature(c, 4.0, -0.5, stat).value, WithinRel(rel, 1e-6));
    }
    for (double s : {4.0, 5.0, 6.0}) {
        const double zb = z_quantum(c, s, -0.5, Statistics::bose);
        const double zf = z_quantum(c, s, -0.5, Statistics::fermi);
        CHECK_THAT(zf / zb, WithinRel(1.0 - std::pow(2.0, 1.0 - s), 1e-15));
    }
    CHECK_THROWS_AS(z_quantum(c, 1.0, -0.5, Statistics::bose), DomainError);
}
