#include <doctest.h>

#include <cmath>
#include <numbers>

#include "becimp/grid.hpp"

using namespace becimp;

namespace {

ComplexField ground(GridPtr g, double w = 1.0) {
    const double pref = std::pow(std::numbers::pi * w * w, -0.25);
    return sample(g, [&](double z) { return cplx{pref * std::exp(-z * z / (2 * w * w))}; });
}

// first excited oscillator state of length a
ComplexField excited(GridPtr g, double a) {
    const double pref = std::sqrt(2.0 / (std::sqrt(std::numbers::pi) * a * a * a));
    return sample(g, [&](double z) { return cplx{pref * z * std::exp(-z * z / (2 * a * a))}; });
}

}  // namespace

TEST_CASE("grid construction") {
    auto g = make_grid(8, 4.0);
    CHECK(g->dz() == 1.0);
    for (int j = 0; j < 8; ++j) CHECK(g->z(j) == -4.0 + j);
    CHECK(make_grid(2048, 16.0)->dz() == 0.015625);
    CHECK(make_grid(1024, 32.0)->k_max() == doctest::Approx(16 * std::numbers::pi).epsilon(1e-14));

    CHECK_THROWS_AS(make_grid(7, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(6, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(16, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(16, -2.0), std::invalid_argument);
}

TEST_CASE("grid invariants") {
    for (int n : {8, 64, 1000, 2048}) {
        auto g = make_grid(n, 7.5);
        CHECK(g->dz() * n == doctest::Approx(15.0).epsilon(1e-15));
        CHECK(g->z(g->center_index()) == 0.0);
        for (int j = 0; j < n; ++j) {
            CHECK(g->mirror(g->mirror(j)) == j);
            if (j != 0) CHECK(std::abs(g->z(j) + g->z(g->mirror(j))) < 1e-13);
        }
        CHECK(g->mirror(0) == 0);
        // wavenumbers span [-pi/dz, pi/dz)
        double kmin = 1e300, kmax = -1e300;
        for (int j = 0; j < n; ++j) kmin = std::min(kmin, g->k(j)), kmax = std::max(kmax, g->k(j));
        CHECK(kmin == doctest::Approx(-g->k_max()));
        CHECK(kmax < g->k_max());
    }
}

TEST_CASE("fft round trip") {
    auto g = make_grid(512, 10.0);
    auto f = sample(g, [](double z) { return cplx{std::exp(-z * z) * std::cos(3 * z), std::sin(z) / (1 + z * z)}; });
    auto h = f.values;
    g->forward(h);
    g->backward(h);
    double err = 0, ref = 0;
    for (int j = 0; j < g->size(); ++j) {
        err = std::max(err, std::abs(h[j] / double(g->size()) - f[j]));
        ref = std::max(ref, std::abs(f[j]));
    }
    CHECK(err / ref < 1e-12);
}

TEST_CASE("norms and moments") {
    auto g = make_grid(2048, 16.0);
    CHECK(norm2(ComplexField(g)) == 0.0);
    CHECK(norm2(ground(g)) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(moment(ground(g), 2) == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(std::abs(moment(ground(g), 1)) < 1e-10);

    const double a = 0.808;
    auto e = excited(g, a);
    CHECK(norm2(e) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(moment(e, 1)) < 1e-10);
    // independent oracle: Simpson quadrature of z^4 exp(-z^2/a^2) on a fine grid
    const int m = 200000;
    const double lo = -12.0, hi = 12.0, h = (hi - lo) / m;
    double s = 0;
    for (int i = 0; i <= m; ++i) {
        const double z = lo + i * h;
        const double w = (i == 0 || i == m) ? 1 : (i % 2 ? 4 : 2);
        s += w * z * z * z * z * std::exp(-z * z / (a * a));
    }
    const double z2 = 2.0 / (std::sqrt(std::numbers::pi) * a * a * a) * s * h / 3;
    CHECK(z2 == doctest::Approx(0.9793).epsilon(1e-4));
    CHECK(moment(e, 2) == doctest::Approx(z2).epsilon(1e-6));

    auto f = ground(g);
    const double before = normalize(f);
    CHECK(before == doctest::Approx(1.0));
    for (auto& v : f.values) v *= 3.0;
    CHECK(normalize(f) == doctest::Approx(9.0));
    CHECK(std::abs(norm2(f) - 1.0) < 1e-12);
    ComplexField zero(g);
    CHECK_THROWS_AS(normalize(zero), std::domain_error);
}

TEST_CASE("parity projection") {
    auto g = make_grid(256, 8.0);
    auto even = ground(g);
    auto odd = excited(g, 1.0);
    const auto pe = project_odd(even);
    for (int j = 0; j < g->size(); ++j) CHECK(std::abs(pe[j]) == 0.0);
    const auto po = project_odd(odd);
    // sampled nodes are mirror images only up to rounding
    for (int j = 0; j < g->size(); ++j) CHECK(std::abs(po[j] - odd[j]) < 1e-12);

    // e^{-z^2}(1+z): odd part is z e^{-z^2}
    auto mixed = sample(g, [](double z) { return cplx{std::exp(-z * z) * (1 + z)}; });
    auto part = project_odd(mixed);
    for (int j = 1; j < g->size(); ++j) {
        const double z = g->z(j);
        CHECK(std::abs(part[j] - z * std::exp(-z * z)) < 1e-15);
    }
    CHECK(part[0] == cplx{0.0});  // z = -L is its own mirror

    // closure and antisymmetry on arbitrary data
    auto junk = sample(g, [](double z) { return cplx{std::cos(1.7 * z + 0.3) + z * z * z, std::sin(z * z - z)}; });
    auto once = project_odd(junk);
    auto twice = project_odd(once);
    for (int j = 0; j < g->size(); ++j) {
        CHECK(std::abs(twice[j] - once[j]) <= 1e-15);
        CHECK(once[j] == -once[g->mirror(j)]);
    }
    auto ev = project_even(junk);
    for (int j = 0; j < g->size(); ++j) CHECK(std::abs(ev[j] + once[j] - junk[j]) < 1e-15 * (1 + std::abs(junk[j])));
}

TEST_CASE("spectral kinetic phase") {
    auto g = make_grid(1024, 40.0);
    auto f = ground(g);
    auto same = spectral_kinetic_phase(f, 1.0, 0.0);
    CHECK(l2_distance(same, f) < 1e-13);

    // free spreading of a unit Gaussian: width sqrt(1+t^2)
    for (double t : {0.5, 1.0, 2.0, 3.0}) {
        auto ft = spectral_kinetic_phase(f, 1.0, t);
        CHECK(std::abs(norm2(ft) - 1.0) < 1e-12);
        CHECK(std::sqrt(2 * moment(ft, 2)) == doctest::Approx(std::sqrt(1 + t * t)).epsilon(1e-6));
    }

    // plane wave eigenmode
    const int m = 5;
    const double k0 = 2 * std::numbers::pi * m / (2 * g->half_width());
    auto pw = sample(g, [&](double z) { return std::exp(cplx{0, k0 * z}); });
    const double dt = 0.37;
    auto out = spectral_kinetic_phase(pw, 1.0, dt);
    const cplx phase = std::exp(cplx{0, -dt * k0 * k0 / 2});
    double err = 0;
    for (int j = 0; j < g->size(); ++j) err = std::max(err, std::abs(out[j] - phase * pw[j]));
    CHECK(err < 1e-12);

    // unitarity per step for arbitrary data
    auto junk = sample(g, [](double z) { return cplx{std::exp(-z * z / 9) * std::cos(2 * z), 0.3 * std::exp(-std::abs(z))}; });
    const double n0 = norm2(junk);
    auto cur = junk;
    for (int i = 0; i < 100; ++i) {
        cur = spectral_kinetic_phase(cur, 0.653, 1e-3);
        CHECK(std::abs(norm2(cur) - n0) / n0 < 1e-12);
    }
}

TEST_CASE("kinetic energy") {
    auto g = make_grid(1024, 16.0);
    CHECK(kinetic_energy(ground(g)) == doctest::Approx(0.25).epsilon(1e-10));
    // excited state of length a: <p^2>/2 = 3/(4a^2), times the mass factor
    const double a = 0.808;
    CHECK(kinetic_energy(excited(g, a), a * a) == doctest::Approx(0.75).epsilon(1e-10));
}

TEST_CASE("grid mismatch is rejected") {
    auto a = make_grid(64, 4.0);
    auto b = make_grid(64, 5.0);
    CHECK_THROWS_AS(l2_distance(ComplexField(a), ComplexField(b)), std::invalid_argument);
    CHECK_NOTHROW(l2_distance(ComplexField(a), ComplexField(make_grid(64, 4.0))));
}
