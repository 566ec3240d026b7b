#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "hmcf/errors.hpp"
#include "hmcf/potential.hpp"

using namespace hmcf;

TEST_CASE("zero-eta potential is identically one") {
    const auto spec = PotentialSpec::zero_eta();
    for (double s : {0.1, 1.0, 3.0, 10.0}) {
        CHECK(v_of_s(spec, s) == 1.0);
        CHECK(phi_of_s(spec, s) == 0.0);
    }
}

TEST_CASE("gaussian closed form") {
    const auto spec = PotentialSpec::gaussian(0.5, 1);
    CHECK(v_of_s(spec, 3.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(v_of_s(spec, 1.0) == doctest::Approx(1.0));
    // phi == gamma for the gaussian shape
    for (double s : {0.2, 1.0, 4.0}) CHECK(phi_of_s(spec, s) == doctest::Approx(0.5));
}

TEST_CASE("power law potential") {
    const auto spec = PotentialSpec::power_law(1.0, 1.0, 1);
    // eta/w = w, so log v = -(1/2)(s^2 - 1)/2
    CHECK(v_of_s(spec, 2.0) == doctest::Approx(std::exp(-0.75)).epsilon(1e-13));
    CHECK(phi_of_s(spec, 2.0) == doctest::Approx(1.0)); // (1/2) kappa s^p = s/2
}

TEST_CASE("normalization v(1) = 1 for every kind") {
    std::vector<double> w, eta;
    for (int i = 0; i <= 100; ++i) {
        w.push_back(0.05 + 0.05 * i);
        eta.push_back(0.8 * w.back());
    }
    const std::vector<PotentialSpec> specs = {
        PotentialSpec::zero_eta(), PotentialSpec::gaussian(0.7), PotentialSpec::power_law(0.3, 2.0),
        PotentialSpec::tabulated(w, eta)};
    for (const auto& spec : specs) CHECK(v_of_s(spec, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("tabulated eta reproduces the gaussian closed form") {
    // eta(w) = 2 gamma w with gamma = 0.4 is linear, so the linear
    // interpolation is exact and only quadrature error remains.
    const double gamma = 0.4;
    std::vector<double> w, eta;
    for (int i = 0; i <= 200; ++i) {
        w.push_back(0.05 + (5.0 - 0.05) * i / 200.0);
        eta.push_back(2.0 * gamma * w.back());
    }
    const auto tab = PotentialSpec::tabulated(w, eta);
    const auto exact = PotentialSpec::gaussian(gamma);
    for (double s : {0.1, 0.5, 1.0, 2.5, 4.9})
        CHECK(v_of_s(tab, s) == doctest::Approx(v_of_s(exact, s)).epsilon(1e-8));

    SUBCASE("out-of-range evaluation is an error, not an extrapolation") {
        CHECK_THROWS_AS(v_of_s(tab, 8.0), ConfigError);
    }
}

TEST_CASE("tabulated eta from CSV") {
    const auto path = std::filesystem::temp_directory_path() / "hmcf_eta_table.csv";
    {
        std::ofstream out(path);
        out << "# w, eta\n";
        for (int i = 0; i <= 50; ++i) {
            const double w = 0.1 + 0.1 * i;
            out << w << "," << 0.6 * w << "\n";
        }
    }
    const auto tab = PotentialSpec::tabulated_from_csv(path.string());
    const auto exact = PotentialSpec::gaussian(0.3);
    CHECK(v_of_s(tab, 2.0) == doctest::Approx(v_of_s(exact, 2.0)).epsilon(1e-8));
    std::filesystem::remove(path);

    SUBCASE("non-increasing w is rejected") {
        CHECK_THROWS_AS(PotentialSpec::tabulated({1.0, 1.0, 2.0}, {0.0, 0.0, 0.0}), ConfigError);
    }
}

TEST_CASE("phi equals the negative logarithmic derivative of v") {
    const std::vector<PotentialSpec> specs = {PotentialSpec::gaussian(0.8),
                                              PotentialSpec::power_law(0.5, 1.5)};
    const double d = 1e-5;
    for (const auto& spec : specs) {
        for (double s : {0.5, 1.0, 2.0}) {
            const double fd = -(v_of_s(spec, s + d) - v_of_s(spec, s - d)) /
                              (2.0 * d * v_of_s(spec, s));
            CHECK(phi_of_s(spec, s) == doctest::Approx(fd).epsilon(1e-8));
        }
    }
}

TEST_CASE("growth condition report") {
    SUBCASE("gaussian inside the bound") {
        const auto rep = check_growth(PotentialSpec::gaussian(0.4), 0.0, 0.5, 4.0);
        CHECK(rep.pass);
        CHECK(!rep.boundary_case);
        CHECK(rep.worst_margin == doctest::Approx(1.0 - 0.8).epsilon(1e-12));
    }
    SUBCASE("gaussian violating the bound") {
        const auto rep = check_growth(PotentialSpec::gaussian(0.6), 0.0, 0.5, 4.0);
        CHECK(!rep.pass);
        CHECK(rep.worst_margin == doctest::Approx(1.0 - 1.2).epsilon(1e-12));
    }
    SUBCASE("power law on the equality boundary") {
        // eta = w^2, so |eta/w| = w = |w|^1: margin zero everywhere
        const auto rep = check_growth(PotentialSpec::power_law(1.0, 1.0), 1.0, 0.1, 2.0);
        CHECK(rep.pass);
        CHECK(rep.worst_margin == doctest::Approx(0.0));
    }
    SUBCASE("zero-eta is the flagged boundary case") {
        const auto rep = check_growth(PotentialSpec::zero_eta(), 0.0, 0.5, 4.0);
        CHECK(rep.pass);
        CHECK(rep.boundary_case);
    }
}
