#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"

#include "specest/spectral_distribution.hpp"
#include "specest/transforms.hpp"

using namespace specest;
using oracles::integrate;

namespace {

SpectralDistribution half_half_12() {
    return SpectralDistribution::point_masses({1.0, 2.0}, {0.5, 0.5});
}

// Random mixture generator for property tests. Interval atoms keep length
// >= 0.1 so the Levy refinement grid resolves the continuous parts.
SpectralDistribution random_mixture(std::mt19937_64& rng, bool allow_intervals = true) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> natoms(1, 5);
    int k = natoms(rng);
    std::vector<BasisMeasure> atoms;
    std::vector<double> weights;
    for (int i = 0; i < k; ++i) {
        double roll = allow_intervals ? unit(rng) : 0.0;
        if (roll < 0.5) {
            atoms.push_back(BasisMeasure::point_mass(4.0 * unit(rng)));
        } else {
            double a = 3.0 * unit(rng);
            double b = a + 0.1 + 1.5 * unit(rng);
            if (roll < 0.67)
                atoms.push_back(BasisMeasure::uniform(a, b));
            else if (roll < 0.84)
                atoms.push_back(BasisMeasure::linear_inc(a, b));
            else
                atoms.push_back(BasisMeasure::linear_dec(a, b));
        }
        weights.push_back(0.05 + unit(rng));
    }
    double sum = 0.0;
    for (double w : weights) sum += w;
    for (double& w : weights) w /= sum;
    return SpectralDistribution(std::move(atoms), std::move(weights));
}

}  // namespace

TEST_CASE("basis measure validation") {
    CHECK_THROWS_AS(BasisMeasure::uniform(1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(BasisMeasure::uniform(2.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(BasisMeasure::linear_inc(-0.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(BasisMeasure::point_mass(-1.0), std::invalid_argument);
    CHECK(BasisMeasure::point_mass(0.0).location() == 0.0);
}

TEST_CASE("distribution invariants at construction") {
    CHECK_THROWS_AS(SpectralDistribution::point_masses({1.0}, {0.5}), std::invalid_argument);
    CHECK_THROWS_AS(SpectralDistribution::point_masses({1.0, 2.0}, {1.5, -0.5}),
                    std::invalid_argument);
    // Weight sum tolerance is 1e-9.
    CHECK_NOTHROW(SpectralDistribution::point_masses({1.0}, {1.0 + 0.5e-9}));
    CHECK_THROWS_AS(SpectralDistribution::point_masses({1.0}, {1.0 + 5e-9}),
                    std::invalid_argument);
}

TEST_CASE("cdf_eval on point masses and intervals") {
    CHECK(cdf_eval(SpectralDistribution::dirac(1.0), 0.5) == 0.0);
    CHECK(cdf_eval(half_half_12(), 1.5) == doctest::Approx(0.5).epsilon(1e-15));

    SpectralDistribution unif({BasisMeasure::uniform(0.0, 2.0)}, {1.0});
    CHECK(cdf_eval(unif, 0.5) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(cdf_eval(unif, -1.0) == 0.0);
    CHECK(cdf_eval(unif, 3.0) == 1.0);

    SpectralDistribution inc({BasisMeasure::linear_inc(0.0, 1.0)}, {1.0});
    CHECK(cdf_eval(inc, 0.5) == doctest::Approx(0.25).epsilon(1e-15));
    SpectralDistribution dec({BasisMeasure::linear_dec(0.0, 1.0)}, {1.0});
    CHECK(cdf_eval(dec, 0.5) == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("cdf is right-continuous and nondecreasing") {
    std::mt19937_64 rng(91);
    for (int trial = 0; trial < 20; ++trial) {
        auto dist = random_mixture(rng);
        double prev = 0.0;
        for (double x = dist.support_min() - 0.1; x <= dist.support_max() + 0.1; x += 0.01) {
            double v = cdf_eval(dist, x);
            CHECK(v >= prev - 1e-14);
            prev = v;
        }
        CHECK(cdf_eval(dist, dist.support_max()) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("compiled cdf agrees with direct evaluation") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 30; ++trial) {
        auto dist = random_mixture(rng);
        detail::CompiledCdf compiled(dist);
        for (int i = 0; i < 50; ++i) {
            double x = -0.5 + 5.0 * unit(rng);
            CHECK(compiled.value(x) == doctest::Approx(cdf_eval(dist, x)).epsilon(1e-12));
        }
    }
}

TEST_CASE("quantile examples") {
    CHECK(quantile(SpectralDistribution::dirac(1.0), 0.3) == 1.0);
    CHECK(quantile(half_half_12(), 25.0 / 101.0) == 1.0);
    CHECK(quantile(half_half_12(), 0.75) == 2.0);
    CHECK_THROWS_AS(quantile(half_half_12(), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(quantile(half_half_12(), 1.0), std::invalid_argument);
    CHECK_THROWS_AS(quantile(half_half_12(), -0.2), std::invalid_argument);
}

TEST_CASE("population eigenvalue extraction") {
    auto l1 = population_eigenvalues(SpectralDistribution::dirac(1.0), 3);
    CHECK(l1 == std::vector<double>{1.0, 1.0, 1.0});

    auto l2 = population_eigenvalues(half_half_12(), 4);
    CHECK(l2 == std::vector<double>{2.0, 2.0, 1.0, 1.0});

    SpectralDistribution unif({BasisMeasure::uniform(0.0, 1.0)}, {1.0});
    auto l3 = population_eigenvalues(unif, 3);
    REQUIRE(l3.size() == 3);
    CHECK(l3[0] == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(l3[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(l3[2] == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("quantile of cdf recovers interior points") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    // Strictly increasing CDFs: single interval atoms.
    for (int trial = 0; trial < 20; ++trial) {
        double a = 2.0 * unit(rng), b = a + 0.3 + unit(rng);
        for (int kind = 0; kind < 3; ++kind) {
            BasisMeasure m = kind == 0   ? BasisMeasure::uniform(a, b)
                             : kind == 1 ? BasisMeasure::linear_inc(a, b)
                                         : BasisMeasure::linear_dec(a, b);
            SpectralDistribution dist({m}, {1.0});
            double x = a + (0.1 + 0.8 * unit(rng)) * (b - a);
            double q = cdf_eval(dist, x);
            if (q <= 0.0 || q >= 1.0) continue;
            CHECK(quantile(dist, q) == doctest::Approx(x).epsilon(1e-9));
        }
    }
}

TEST_CASE("stieltjes transform of point mixtures") {
    std::complex<double> z{0.3, 0.7};
    auto m = stieltjes(SpectralDistribution::dirac(1.0), z);
    auto expected = 1.0 / (1.0 - z);
    CHECK(std::abs(m - expected) < 1e-15);

    auto mix = stieltjes(half_half_12(), {0.0, 1.0});
    CHECK(mix.real() == doctest::Approx(0.45).epsilon(1e-14));
    CHECK(mix.imag() == doctest::Approx(0.35).epsilon(1e-14));

    CHECK_THROWS_AS(stieltjes(half_half_12(), {1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(stieltjes(half_half_12(), {1.0, -0.5}), std::invalid_argument);
}

TEST_CASE("stieltjes transform of interval atoms matches quadrature") {
    SpectralDistribution unif({BasisMeasure::uniform(1.0, 2.0)}, {1.0});
    std::complex<double> z{0.0, 1.0};
    auto closed = stieltjes(unif, z);
    auto quad = integrate([&](double x) { return 1.0 / (x - z); }, 1.0, 2.0, 1e-13);
    CHECK(std::abs(closed - quad) < 1e-10);

    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        double a = 2.0 * unit(rng), b = a + 0.1 + unit(rng);
        std::complex<double> zz{4.0 * unit(rng) - 1.0, 0.05 + unit(rng)};
        for (int kind = 0; kind < 2; ++kind) {
            BasisMeasure m =
                kind == 0 ? BasisMeasure::linear_inc(a, b) : BasisMeasure::linear_dec(a, b);
            auto c = stieltjes(m, zz);
            auto q = integrate([&](double x) { return m.density(x) / (x - zz); }, a, b, 1e-13);
            CHECK(std::abs(c - q) < 1e-10);
        }
    }
}

TEST_CASE("stieltjes maps the upper half-plane to itself") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        auto dist = random_mixture(rng);
        std::complex<double> z{8.0 * unit(rng) - 2.0, 0.001 + 3.0 * unit(rng)};
        CHECK(stieltjes(dist, z).imag() > 0.0);
    }
}

TEST_CASE("stieltjes normalization at infinity") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 20; ++trial) {
        auto dist = random_mixture(rng);
        double prev = std::numeric_limits<double>::infinity();
        for (double y : {10.0, 100.0, 1000.0}) {
            std::complex<double> iy{0.0, y};
            double gap = std::abs(-iy * stieltjes(dist, iy) - 1.0);
            CHECK(gap < prev);
            prev = gap;
        }
        CHECK(prev < 1e-2);
    }
}

TEST_CASE("stieltjes lipschitz bound above u_min") {
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double u_min = 0.1;
    for (int trial = 0; trial < 100; ++trial) {
        auto dist = random_mixture(rng);
        std::complex<double> z1{6.0 * unit(rng) - 1.0, u_min + 2.0 * unit(rng)};
        std::complex<double> z2{6.0 * unit(rng) - 1.0, u_min + 2.0 * unit(rng)};
        double lhs = std::abs(stieltjes(dist, z1) - stieltjes(dist, z2));
        double rhs = std::abs(z1 - z2) / (u_min * u_min);
        CHECK(lhs <= rhs * (1.0 + 1e-12) + 1e-12);
    }
}

TEST_CASE("stieltjes inversion recovers interval densities") {
    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double eps = 1e-6;
    for (int trial = 0; trial < 15; ++trial) {
        double a = 1.5 * unit(rng), b = a + 0.4 + unit(rng);
        for (int kind = 0; kind < 3; ++kind) {
            BasisMeasure m = kind == 0   ? BasisMeasure::uniform(a, b)
                             : kind == 1 ? BasisMeasure::linear_inc(a, b)
                                         : BasisMeasure::linear_dec(a, b);
            SpectralDistribution dist({m}, {1.0});
            double t = a + (0.15 + 0.7 * unit(rng)) * (b - a);
            double recovered = stieltjes(dist, {t, eps}).imag() / std::numbers::pi;
            CHECK(recovered == doctest::Approx(m.density(t)).epsilon(1e-3).scale(1.0));
        }
    }
}

TEST_CASE("levy distance examples") {
    auto mix = half_half_12();
    CHECK(levy_distance(mix, mix) == 0.0);

    auto d1 = levy_distance(SpectralDistribution::dirac(0.0), SpectralDistribution::dirac(0.3));
    CHECK(d1 == doctest::Approx(0.3).epsilon(1e-5));
    CHECK(std::abs(d1 - oracles::brute_levy({{0.0, 1.0}}, {{0.3, 1.0}})) < 3e-6);

    auto d2 = levy_distance(SpectralDistribution::dirac(1.0), mix);
    CHECK(d2 == doctest::Approx(0.5).epsilon(1e-5));
    CHECK(std::abs(d2 - oracles::brute_levy({{1.0, 1.0}}, {{1.0, 0.5}, {2.0, 0.5}})) < 3e-6);
}

TEST_CASE("levy distance is symmetric and satisfies the triangle inequality") {
    std::mt19937_64 rng(59);
    for (int trial = 0; trial < 12; ++trial) {
        auto f = random_mixture(rng);
        auto g = random_mixture(rng);
        auto h = random_mixture(rng);
        double fg = levy_distance(f, g);
        double gf = levy_distance(g, f);
        CHECK(std::abs(fg - gf) <= 1e-6);
        double fh = levy_distance(f, h);
        double gh = levy_distance(g, h);
        CHECK(fh <= fg + gh + 2e-6);
    }
}

TEST_CASE("mp law density") {
    CHECK(mp_law_density(1.0, 2.0) ==
          doctest::Approx(1.0 / (2.0 * std::numbers::pi)).epsilon(1e-14));
    CHECK(mp_law_density(0.25, 2.25) == 0.0);
    CHECK(mp_law_density(0.25, 3.0) == 0.0);
    CHECK_THROWS_AS(mp_law_density(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(mp_law_density(1.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(mp_law_density(0.5, 0.0), std::invalid_argument);

    auto [a25, b25] = mp_support(0.25);
    CHECK(a25 == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(b25 == doctest::Approx(2.25).epsilon(1e-15));
}

TEST_CASE("mp law integrates to one") {
    for (double gamma : {0.1, 0.25, 0.5, 0.9}) {
        auto [a, b] = mp_support(gamma);
        double total = oracles::integrate_real(
            [&](double x) { return x <= a || x >= b ? 0.0 : mp_law_density(gamma, x); }, a, b,
            1e-9);
        CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
    }
    // gamma = 1: inverse-sqrt edge at 0; substituting x = u^2 hands the
    // quadrature a smooth integrand.
    double total = oracles::integrate_real(
        [&](double u) {
            return u == 0.0 ? 2.0 / std::numbers::pi : mp_law_density(1.0, u * u) * 2.0 * u;
        },
        0.0, 2.0, 1e-9);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("distribution json round trip") {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 10; ++trial) {
        auto dist = random_mixture(rng);
        auto j = distribution_to_json(dist);
        auto back = distribution_from_json(j);
        REQUIRE(back.size() == dist.size());
        for (std::size_t i = 0; i < dist.size(); ++i) {
            CHECK(back.atoms()[i] == dist.atoms()[i]);
            CHECK(back.weights()[i] == dist.weights()[i]);
        }
    }
    auto j = distribution_to_json(half_half_12());
    CHECK(j["atoms"][0]["kind"] == "point");
    CHECK(j["atoms"][0]["t"] == 1.0);
}

TEST_CASE("cdf csv emission") {
    auto dist = half_half_12();
    auto grid = default_cdf_grid(dist, 5);
    REQUIRE(grid.size() == 5);
    CHECK(grid.front() == doctest::Approx(1.0));
    CHECK(grid.back() == doctest::Approx(2.0));
    std::ostringstream out;
    write_cdf_csv(out, dist, grid);
    CHECK(out.str().substr(0, 6) == "x,cdf\n");
    CHECK(out.str().find("1.5,0.5") != std::string::npos);
}

TEST_CASE("scaled distribution maps support") {
    auto dist = half_half_12().scaled(3.0);
    CHECK(dist.support_min() == 3.0);
    CHECK(dist.support_max() == 6.0);
    CHECK(cdf_eval(dist, 4.0) == doctest::Approx(0.5));
}
