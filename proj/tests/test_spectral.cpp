#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "hmcf/errors.hpp"
#include "hmcf/spectral.hpp"
#include "hmcf/state.hpp"

using namespace hmcf;
namespace sp = hmcf::spectral;

namespace {

// Independent O(M^2) discrete Fourier transform with the library convention.
std::vector<std::complex<double>> dft_oracle(const RealField& u) {
    const std::size_t m = u.size();
    std::vector<std::complex<double>> out(m);
    for (std::size_t i = 0; i < m; ++i) {
        const int k = sp::mode_number(i, m);
        std::complex<double> acc = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            const double th = 2.0 * std::numbers::pi * static_cast<double>(j) / m;
            acc += u[j] * std::exp(std::complex<double>(0.0, -k * th));
        }
        out[i] = acc / static_cast<double>(m);
    }
    return out;
}

RealField sampled(std::size_t m, double (*f)(double)) {
    RealField u(m);
    const auto th = sp::grid_angles(m);
    for (std::size_t j = 0; j < m; ++j) u[j] = f(th[j]);
    return u;
}

} // namespace

TEST_CASE("constant function transforms to the zero mode only") {
    RealField u(64, 1.0);
    const auto modes = sp::to_modes(u);
    CHECK(modes[0].real() == doctest::Approx(1.0).epsilon(1e-14));
    for (std::size_t i = 1; i < modes.size(); ++i) CHECK(std::abs(modes[i]) < 1e-14);
}

TEST_CASE("single harmonic lands on the expected bins") {
    const std::size_t m = 64;
    const auto u = sampled(m, [](double th) { return std::sin(3.0 * th); });
    const auto modes = sp::to_modes(u);
    for (std::size_t i = 0; i < m; ++i) {
        const int k = sp::mode_number(i, m);
        if (k == 3) {
            CHECK(modes[i].real() == doctest::Approx(0.0).epsilon(1e-13));
            CHECK(modes[i].imag() == doctest::Approx(-0.5).epsilon(1e-13));
        } else if (k == -3) {
            CHECK(modes[i].imag() == doctest::Approx(0.5).epsilon(1e-13));
        } else {
            CHECK(std::abs(modes[i]) < 1e-13);
        }
    }
}

TEST_CASE("transform matches the direct DFT summation oracle") {
    const std::size_t m = 32;
    std::mt19937_64 rng(42);
    std::normal_distribution<double> gauss;
    RealField u(m);
    for (auto& v : u) v = gauss(rng);
    const auto fast = sp::to_modes(u);
    const auto slow = dft_oracle(u);
    for (std::size_t i = 0; i < m; ++i) CHECK(std::abs(fast[i] - slow[i]) < 1e-12);

    SUBCASE("conjugate symmetry for real input") {
        for (std::size_t i = 1; i < m; ++i) {
            const int k = sp::mode_number(i, m);
            if (k == -static_cast<int>(m / 2)) continue;
            // find index of -k
            const std::size_t ineg = (m - i) % m;
            CHECK(std::abs(fast[i] - std::conj(fast[ineg])) < 1e-13);
        }
    }
    SUBCASE("round trip reproduces samples") {
        const auto back = sp::from_modes(fast);
        for (std::size_t j = 0; j < m; ++j)
            CHECK(back[j] == doctest::Approx(u[j]).epsilon(1e-12));
    }
}

TEST_CASE("non power of two grid is rejected") {
    RealField u(48, 1.0);
    CHECK_THROWS_AS(sp::to_modes(u), ConfigError);
    RealField tiny(8, 1.0);
    CHECK_THROWS_AS(sp::to_modes(tiny), ConfigError);
}

TEST_CASE("spectral derivative of a harmonic") {
    const std::size_t m = 64;
    const auto u = sampled(m, [](double th) { return std::sin(3.0 * th); });
    const auto du = sp::derivative(u, 1);
    const auto th = sp::grid_angles(m);
    for (std::size_t j = 0; j < m; ++j)
        CHECK(du[j] == doctest::Approx(3.0 * std::cos(3.0 * th[j])).epsilon(1e-12));
}

TEST_CASE("Sobolev norms of reference fields") {
    const std::size_t m = 64;
    RealField ones(m, 1.0);
    CHECK(sp::sobolev_norm(ones, 0.0) == doctest::Approx(1.0));
    CHECK(sp::sobolev_norm(ones, 3.7) == doctest::Approx(1.0));

    const auto u = sampled(m, [](double th) { return std::sin(3.0 * th); });
    CHECK(sp::sobolev_norm(u, 0.0) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    CHECK(sp::sobolev_norm(u, 2.0) == doctest::Approx(std::sqrt(50.0)).epsilon(1e-12));

    SUBCASE("monotone in s") {
        std::mt19937_64 rng(7);
        std::normal_distribution<double> gauss;
        RealField w(m);
        for (auto& v : w) v = gauss(rng);
        double prev = sp::sobolev_norm(w, 0.0);
        for (double s : {0.5, 1.0, 2.0, 3.0}) {
            const double cur = sp::sobolev_norm(w, s);
            CHECK(cur >= prev);
            prev = cur;
        }
    }
}

TEST_CASE("Parseval against the quadrature L2 norm") {
    const std::size_t m = 128;
    std::mt19937_64 rng(11);
    std::normal_distribution<double> gauss;
    RealField u(m);
    for (auto& v : u) v = gauss(rng);
    double quad = 0.0;
    for (double v : u) quad += v * v;
    quad = std::sqrt(quad / static_cast<double>(m)); // (1/2pi) int |u|^2 dtheta
    CHECK(sp::sobolev_norm(u, 0.0) == doctest::Approx(quad).epsilon(1e-10));
}

TEST_CASE("smooth truncation acts as documented") {
    const std::size_t m = 64;
    SUBCASE("above-Nyquist cutoff is the identity on Nyquist-free fields") {
        std::mt19937_64 rng(3);
        std::normal_distribution<double> gauss;
        const auto th = sp::grid_angles(m);
        RealField u(m, 0.0);
        for (int k = 1; k < static_cast<int>(m / 2); ++k) {
            const double a = gauss(rng), b = gauss(rng);
            for (std::size_t j = 0; j < m; ++j)
                u[j] += a * std::cos(k * th[j]) + b * std::sin(k * th[j]);
        }
        const auto cut = sp::smooth_truncate(u, static_cast<double>(m / 2));
        for (std::size_t j = 0; j < m; ++j)
            CHECK(cut[j] == doctest::Approx(u[j]).epsilon(1e-12));
    }
    SUBCASE("mode above the cutoff is annihilated") {
        const auto u = sampled(m, [](double th) { return std::sin(3.0 * th); });
        const auto cut = sp::smooth_truncate(u, 2.0);
        for (double v : cut) CHECK(std::fabs(v) < 1e-13);
    }
    SUBCASE("never increases a Sobolev norm") {
        std::mt19937_64 rng(9);
        std::normal_distribution<double> gauss;
        RealField u(m);
        for (auto& v : u) v = gauss(rng);
        for (double n : {2.0, 4.0, 8.0, 16.0})
            CHECK(sp::sobolev_norm(sp::smooth_truncate(u, n), 2.0) <=
                  sp::sobolev_norm(u, 2.0) * (1.0 + 1e-13));
    }
    SUBCASE("nonpositive cutoff is rejected") {
        RealField u(m, 1.0);
        CHECK_THROWS_AS(sp::smooth_truncate(u, 0.0), ConfigError);
    }
}

TEST_CASE("smoothing estimates hold with stable constants on one grid") {
    // Low-pass estimate at (s1, s2) = (3, 1): ||Pi_N u||_{H^3} <= c N^2 ||u||_{H^1}.
    // Fields carry a deterministic amplitude envelope and random phases; the
    // norms are phase-blind, so c probes the N-scaling alone.
    const std::size_t m = 128;
    const auto th = sp::grid_angles(m);
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    std::vector<double> cs;
    for (double n_cut : {2.0, 4.0, 8.0, 16.0}) {
        double c = 0.0;
        for (int f = 0; f < 10; ++f) {
            RealField u(m, 0.0);
            for (int k = 1; k <= 60; ++k) {
                const double w = std::pow(1.0 + k, -1.7);
                const double ph = phase(rng);
                const double a = w * std::cos(ph), b = w * std::sin(ph);
                for (std::size_t j = 0; j < m; ++j)
                    u[j] += a * std::cos(k * th[j]) + b * std::sin(k * th[j]);
            }
            const double num = sp::sobolev_norm(sp::smooth_truncate(u, n_cut), 3.0);
            const double den = n_cut * n_cut * sp::sobolev_norm(u, 1.0);
            c = std::max(c, num / den);
        }
        cs.push_back(c);
    }
    const auto [lo, hi] = std::minmax_element(cs.begin(), cs.end());
    CHECK(*hi / *lo <= 1.5);
}

TEST_CASE("spacetime norm on reference histories") {
    const std::size_t m = 64;
    SUBCASE("static unit field") {
        FieldHistory h = FieldHistory::zeros({0.0, 0.5, 1.0}, m);
        for (auto& v : h.value)
            for (auto& p : v) p = {1.0, 0.0};
        CHECK(spacetime_norm(h, 2.0, 1.0) == doctest::Approx(1.0));
    }
    SUBCASE("linear-in-time field attains the sup at the horizon") {
        std::vector<double> t;
        for (int i = 0; i <= 30; ++i) t.push_back(0.1 * i);
        FieldHistory h = FieldHistory::zeros(t, m);
        for (std::size_t i = 0; i < h.size(); ++i)
            for (std::size_t j = 0; j < m; ++j) {
                h.value[i][j] = {t[i], 0.0};
                h.rate[i][j] = {1.0, 0.0};
            }
        CHECK(spacetime_norm(h, 2.0, 3.0) == doctest::Approx(4.0).epsilon(1e-12));
    }
    SUBCASE("separable field against the closed form") {
        // u(t, theta) = sin(t) sin(3 theta) on [0, 1]
        std::vector<double> t;
        const double dt = 1e-3;
        for (int i = 0; i <= 1000; ++i) t.push_back(dt * i);
        FieldHistory h = FieldHistory::zeros(t, m);
        const auto th = sp::grid_angles(m);
        for (std::size_t i = 0; i < h.size(); ++i)
            for (std::size_t j = 0; j < m; ++j) {
                const double sp3 = std::sin(3.0 * th[j]);
                h.value[i][j] = {std::sin(t[i]) * sp3, 0.0};
                h.rate[i][j] = {std::cos(t[i]) * sp3, 0.0};
                h.accel[i][j] = {-std::sin(t[i]) * sp3, 0.0};
            }
        const double base = std::sqrt(0.5);
        auto closed = [&](double tt) {
            return std::fabs(std::sin(tt)) * 10.0 * base +
                   std::fabs(std::cos(tt)) * std::sqrt(10.0) * base +
                   std::fabs(std::sin(tt)) * base;
        };
        double sup = 0.0;
        for (double tt = 0.0; tt <= 1.0; tt += 1e-5) sup = std::max(sup, closed(tt));
        CHECK(spacetime_norm(h, 2.0, 1.0) == doctest::Approx(sup).epsilon(1e-4));
    }
    SUBCASE("order below two is rejected") {
        FieldHistory h = FieldHistory::zeros({0.0, 1.0}, m);
        CHECK_THROWS_AS(spacetime_norm(h, 1.5, 1.0), ConfigError);
    }
}
