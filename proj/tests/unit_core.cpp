#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>

#include "hslab/exponents.hpp"
#include "hslab/field.hpp"
#include "hslab/norms.hpp"
#include "hslab/radial.hpp"

using namespace hslab;

TEST_CASE("make_exponents critical case") {
    const auto cfg = make_exponents(1, 0.25, 4.0, true);
    CHECK(cfg.beta == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(cfg.q_crit == doctest::Approx(4.0));
}

TEST_CASE("make_exponents subcritical arithmetic") {
    const auto cfg = make_exponents(1, 0.3, 3.0);
    CHECK(cfg.beta == doctest::Approx(1.0 / 3.0 - 0.5 + 0.3).epsilon(1e-14));
    CHECK(std::fabs(cfg.beta - (cfg.n / cfg.q - 0.5 * cfg.n + cfg.s)) <= 1e-12);
}

TEST_CASE("make_exponents rejects bad ranges") {
    CHECK_THROWS(make_exponents(1, 0.6, 3.0));   // s >= n/2
    CHECK_THROWS(make_exponents(1, 0.3, 2.0));   // q <= 2
    CHECK_THROWS(make_exponents(1, 0.3, 10.0));  // q > q_crit
    CHECK_THROWS(make_exponents(1, 0.25, 4.0));  // critical without the flag
    CHECK_THROWS(make_exponents(4, 0.3, 3.0));
}

TEST_CASE("beta range over admissible parameters") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> us(0.01, 0.49), uq(0.0, 1.0);
    for (int n = 1; n <= 3; ++n)
        for (int trial = 0; trial < 200; ++trial) {
            const double s = us(rng) * n;
            const double q_crit = 2.0 * n / (n - 2.0 * s);
            const double q = 2.0 + (q_crit - 2.0) * (0.01 + 0.98 * uq(rng));
            const auto cfg = make_exponents(n, s, q);
            CHECK(cfg.beta >= 0.0);
            CHECK(cfg.beta < cfg.s);
        }
}

TEST_CASE("grid geometry") {
    const auto g = make_grid(2, 8, 4.0);
    CHECK(g.h == doctest::Approx(1.0));
    CHECK(g.total_cells() == 64);
    CHECK(g.cell_volume() == doctest::Approx(1.0));
    double rmin = 1e300;
    for (std::size_t i = 0; i < g.total_cells(); ++i) rmin = std::min(rmin, g.radius(i));
    CHECK(rmin >= 0.5 * g.h - 1e-15);
    CHECK_THROWS(make_grid(1, 12, 4.0));  // not a power of two
    CHECK_THROWS(make_grid(1, 16, -1.0));
}

TEST_CASE("weighted q norm trivial values") {
    const auto cfg = make_exponents(1, 0.25, 4.0, true);  // beta = 0
    const auto g = make_grid(1, 256, 5.0);
    Field zero = make_field(g);
    CHECK(weighted_q_norm(zero, cfg) == 0.0);
    Field one = make_field(g, 1.0);
    CHECK(weighted_q_norm(one, cfg) == doctest::Approx(std::pow(10.0, 0.25)).epsilon(1e-13));
}

TEST_CASE("weighted q norm against closed-form radial integral") {
    // (2 int_0^1 x^{-0.4} dx)^{1/3} = (2/0.6)^{1/3}
    const auto cfg = make_exponents(1, 0.3, 3.0);
    const auto g = make_grid(1, 8192, 4.0);
    Field ind = make_field(g);
    for (std::size_t i = 0; i < g.total_cells(); ++i)
        ind.values[i] = std::fabs(g.coord(static_cast<int>(i))) <= 1.0 ? 1.0 : 0.0;
    const double exact = std::pow(2.0 / 0.6, 1.0 / 3.0);
    CHECK(weighted_q_norm(ind, cfg) == doctest::Approx(exact).epsilon(1e-3));
}

TEST_CASE("weighted q norm with beta 0 equals the plain q norm") {
    const auto cfg = make_exponents(1, 0.25, 4.0, true);
    const auto g = make_grid(1, 512, 6.0);
    std::mt19937 rng(3);
    std::normal_distribution<double> nd;
    for (int trial = 0; trial < 50; ++trial) {
        Field u = make_field(g);
        for (double& v : u.values) v = nd(rng);
        const double a = weighted_q_norm(u, cfg);
        const double b = lp_norm(u, cfg.q);
        CHECK(std::fabs(a - b) <= 1e-13 * b);
    }
}

TEST_CASE("norm homogeneity") {
    const auto cfg = make_exponents(1, 0.3, 3.0);
    const auto g = make_grid(1, 512, 6.0);
    std::mt19937 rng(4);
    std::normal_distribution<double> nd;
    Field u = make_field(g);
    for (double& v : u.values) v = nd(rng);
    const double base = weighted_q_norm(u, cfg);
    for (double lam : {2.5, -0.7, 1e-3}) {
        Field v = u;
        for (double& x : v.values) x *= lam;
        CHECK(weighted_q_norm(v, cfg) ==
              doctest::Approx(std::fabs(lam) * base).epsilon(1e-13));
    }
}

TEST_CASE("l2 norm oracle") {
    const auto g = make_grid(2, 32, 3.0);
    Field one = make_field(g, 1.0);
    CHECK(l2_norm(one) == doctest::Approx(6.0));  // (2L)^{n/2}
    std::mt19937 rng(5);
    std::normal_distribution<double> nd;
    Field u = make_field(g);
    for (double& v : u.values) v = nd(rng);
    // independent reverse-order summation
    double acc = 0.0;
    for (auto it = u.values.rbegin(); it != u.values.rend(); ++it) acc += *it * *it;
    const double oracle = std::sqrt(acc * g.cell_volume());
    CHECK(l2_norm(u) == doctest::Approx(oracle).epsilon(1e-13));
}

TEST_CASE("radial profile basics") {
    const auto g = make_grid(1, 128, 4.0);
    Field c = make_field(g, 3.25);
    const auto prof = radial_profile(c);
    long count = 0;
    for (std::size_t k = 0; k < prof.bin_means.size(); ++k) {
        if (prof.bin_counts[k] > 0) CHECK(prof.bin_means[k] == doctest::Approx(3.25));
        count += prof.bin_counts[k];
    }
    CHECK(count == 128);

    Field r = make_field(g);
    for (std::size_t i = 0; i < g.total_cells(); ++i) r.values[i] = g.radius(i);
    const auto pr = radial_profile(r);
    double prev = -1.0;
    for (std::size_t k = 0; k < pr.bin_means.size(); ++k) {
        if (pr.bin_counts[k] == 0) continue;
        CHECK(pr.bin_means[k] > prev);
        prev = pr.bin_means[k];
    }
}

TEST_CASE("radial profile matches per-shell recomputation") {
    const auto g = make_grid(2, 16, 2.0);
    std::mt19937 rng(6);
    std::normal_distribution<double> nd;
    Field u = make_field(g);
    for (double& v : u.values) v = nd(rng);
    const auto prof = radial_profile(u);
    for (std::size_t k = 0; k < prof.bin_means.size(); ++k) {
        double sum = 0.0;
        long cnt = 0;
        for (std::size_t i = 0; i < g.total_cells(); ++i) {
            const double r = g.radius(i);
            const bool last = (k + 1 == prof.bin_means.size());
            if (r >= prof.bin_edges[k] && (r < prof.bin_edges[k + 1] || last)) {
                sum += u.values[i];
                ++cnt;
            }
        }
        CHECK(cnt == prof.bin_counts[k]);
        if (cnt > 0) CHECK(prof.bin_means[k] == doctest::Approx(sum / cnt));
    }
}

TEST_CASE("field file round trip is bit exact") {
    const auto g = make_grid(1, 64, 2.5);
    std::mt19937_64 rng(7);
    std::normal_distribution<double> nd;
    Field u = make_field(g);
    for (double& v : u.values) v = nd(rng) * 1e-7;
    const auto path = std::filesystem::temp_directory_path() / "hslab_roundtrip.field";
    save_field(u, path);
    const Field v = load_field(path);
    CHECK(v.grid == u.grid);
    REQUIRE(v.values.size() == u.values.size());
    for (std::size_t i = 0; i < u.values.size(); ++i) CHECK(v.values[i] == u.values[i]);
    std::filesystem::remove(path);
}

TEST_CASE("field file error cases") {
    const auto dir = std::filesystem::temp_directory_path();
    {
        std::ofstream f(dir / "hslab_short.field");
        f << "1 8 2.0\n1\n2\n3\n";
    }
    CHECK_THROWS(load_field(dir / "hslab_short.field"));
    {
        std::ofstream f(dir / "hslab_nan.field");
        f << "1 2 2.0\n1\nnan\n";
    }
    CHECK_THROWS(load_field(dir / "hslab_nan.field"));
    {
        std::ofstream f(dir / "hslab_hdr.field");
        f << "1 notanumber 2.0\n";
    }
    CHECK_THROWS(load_field(dir / "hslab_hdr.field"));
    CHECK_THROWS(load_field(dir / "hslab_missing.field"));
    std::filesystem::remove(dir / "hslab_short.field");
    std::filesystem::remove(dir / "hslab_nan.field");
    std::filesystem::remove(dir / "hslab_hdr.field");
}

TEST_CASE("boundary shell fraction") {
    const auto g = make_grid(1, 64, 4.0);
    Field u = make_field(g);
    for (std::size_t i = 0; i < g.total_cells(); ++i) {
        const double x = g.coord(static_cast<int>(i));
        u.values[i] = std::exp(-x * x);
    }
    CHECK(boundary_shell_fraction(u) < 1e-3);
    Field flat = make_field(g, 1.0);
    CHECK(boundary_shell_fraction(flat) == doctest::Approx(1.0));
}
