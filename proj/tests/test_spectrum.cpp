#include "qheat/spectrum.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

using namespace qheat;
using Catch::Matchers::WithinRel;

namespace {

// Multiplicity of each lambda below cutoff from brute-force lattice enumeration.
std::map<long, std::int64_t> torus_oracle(int side_count, long cutoff) {
    std::map<long, std::int64_t> out;
    for (long a = -side_count; a <= side_count; ++a)
        for (long b = -side_count; b <= side_count; ++b) {
            const long l = a * a + b * b + 1;
            if (l <= cutoff) ++out[l];
        }
    return out;
}

}  // namespace

TEST_CASE("circle levels", "[spectrum]") {
    const auto s = Spectrum::circle(1.0, 1.0);
    const auto lv = s.levels_below(10.0);
    REQUIRE(lv->size() >= 4);
    CHECK((*lv)[0].lambda == 1.0);
    CHECK((*lv)[0].mult == 1);
    CHECK((*lv)[1].lambda == 2.0);
    CHECK((*lv)[1].mult == 2);
    CHECK((*lv)[2].lambda == 5.0);
    CHECK((*lv)[3].lambda == 10.0);
    CHECK(s.dim() == 1);
    CHECK(s.lambda_min() == 1.0);
    CHECK(s.omega_min() == 1.0);
    const auto s2 = Spectrum::circle(2.0, 0.5);
    CHECK_THAT((*s2.levels_below(1.0))[1].lambda, WithinRel(0.25 + 0.5, 1e-15));
}

TEST_CASE("sphere levels", "[spectrum]") {
    const auto s = Spectrum::sphere2(1.0, 0.25);
    const auto lv = s.levels_below(20.0);
    const double expect[] = {0.25, 2.25, 6.25, 12.25};
    for (int l = 0; l < 4; ++l) {
        CHECK_THAT((*lv)[l].lambda, WithinRel(expect[l], 1e-15));
        CHECK((*lv)[l].mult == 2 * l + 1);
    }
}

TEST_CASE("flat torus levels match brute-force lattice counting", "[spectrum]") {
    const double L = 2.0 * std::numbers::pi;
    const auto s = Spectrum::flat_torus({L, L}, 1.0);
    const auto lv = s.levels_below(400.0);
    const auto oracle = torus_oracle(25, 400);
    std::map<long, std::int64_t> got;
    for (const auto& x : *lv)
        if (x.lambda <= 400.0 + 1e-9) got[std::lround(x.lambda)] += x.mult;
    CHECK(got == oracle);
    CHECK((*lv)[0].lambda == 1.0);
    CHECK((*lv)[1].lambda == 2.0);
    CHECK((*lv)[1].mult == 4);
}

TEST_CASE("levels are sorted with positive multiplicities", "[spectrum][property]") {
    const double L = 2.0 * std::numbers::pi;
    for (const auto& s : {Spectrum::circle(1.3, 0.7), Spectrum::sphere2(0.8, 1.0), Spectrum::flat_torus({L, 3.0}, 1.0),
                          Spectrum::flat_torus({2.0, 3.0, 4.0}, 0.1)}) {
        const auto lv = s.levels_below(300.0);
        for (std::size_t i = 0; i < lv->size(); ++i) {
            CHECK((*lv)[i].mult > 0);
            CHECK((*lv)[i].omega == std::sqrt((*lv)[i].lambda));
            if (i) CHECK((*lv)[i].lambda > (*lv)[i - 1].lambda);
        }
    }
}

TEST_CASE("counting function respects the growth bound", "[spectrum][property]") {
    const double L = 2.0 * std::numbers::pi;
    for (const auto& s : {Spectrum::circle(1.0, 1.0), Spectrum::circle(5.0, 0.01), Spectrum::sphere2(1.0, 0.25),
                          Spectrum::sphere2(3.0, 1.0), Spectrum::flat_torus({L, L}, 1.0),
                          Spectrum::flat_torus({1.0, 7.0}, 0.3)}) {
        const auto lv = s.levels_below(5000.0);
        std::int64_t n = 0;
        for (const auto& x : *lv) {
            n += x.mult;
            CHECK(static_cast<double>(n) <= s.growth_count(x.lambda));
        }
    }
}

TEST_CASE("Weyl asymptotics on the circle", "[spectrum]") {
    const double r = 1.0;
    const auto s = Spectrum::circle(r, 1.0);
    const double big = 1e6;
    std::int64_t n = 0;
    for (const auto& x : *s.levels_below(big))
        if (x.lambda <= big) n += x.mult;
    CHECK(std::abs(static_cast<double>(n) / std::sqrt(big) - 2.0 * r) <= 0.05 * 2.0 * r);
}

TEST_CASE("counting with the half-weight rule", "[spectrum]") {
    const auto s = Spectrum::circle(1.0, 1.0);
    CHECK(counting(s, 1.2).value() == 1.0);
    CHECK(counting(s, 1.5).value() == 3.0);
    CHECK(counting(s, 1.0).value() == 0.5);
    CHECK(counting(s, 0.5).value() == 0.0);
    CHECK(counting(s, std::sqrt(2.0)).value() == 2.0);
}

TEST_CASE("positivity and parameter validation", "[spectrum]") {
    CHECK_THROWS_AS(Spectrum::circle(1.0, 0.0), DomainError);
    CHECK_THROWS_AS(Spectrum::circle(-1.0, 1.0), DomainError);
    CHECK_THROWS_AS(Spectrum::flat_torus({1.0, 0.0}, 1.0), DomainError);
    CHECK_THROWS_AS(Spectrum::sphere2(1.0, 0.0), DomainError);
    CHECK_THROWS_AS(make_spectrum(SpectrumKind::circle, {1.0, 2.0}, 1.0), InputError);
    CHECK(make_spectrum(SpectrumKind::sphere2, {1.0}, 1.0).dim() == 2);
}

TEST_CASE("explicit spectra from a stream", "[spectrum]") {
    std::istringstream in("# two levels\ndim=2 growthC=4\n1.0 1\n2.5 3  # degenerate\n");
    const auto s = Spectrum::from_stream(in);
    CHECK(s.finite());
    CHECK(s.dim() == 2);
    CHECK(s.lambda_max() == 2.5);
    CHECK(s.levels_below(0.0)->size() == 2);

    std::istringstream bad_header("2 4\n1 1\n");
    CHECK_THROWS_AS(Spectrum::from_stream(bad_header), InputError);
    std::istringstream bad_row("dim=1 growthC=3\n1.0\n");
    CHECK_THROWS_AS(Spectrum::from_stream(bad_row), InputError);
    std::istringstream zero_mode("dim=1 growthC=3\n0.0 1\n");
    CHECK_THROWS_AS(Spectrum::from_stream(zero_mode), DomainError);
    std::istringstream too_many("dim=1 growthC=1\n1.0 5\n");
    CHECK_THROWS_AS(Spectrum::from_stream(too_many), InputError);
    CHECK_THROWS_AS(Spectrum::from_file("/nonexistent/levels.txt"), InputError);
}
