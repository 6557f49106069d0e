#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>
#include <stdexcept>

#include "becimp/analytics.hpp"

using namespace becimp;

namespace {

// Hand arithmetic in long double, SI units throughout, built from the raw
// baseline numbers rather than from PhysicalParams.
struct Oracle {
    long double hbar = 1.054571817e-34L, kB = 1.380649e-23L, a0 = 5.29177210903e-11L,
                u = 1.66053906660e-27L;
    long double pi = 3.141592653589793238462643383279L;
    long double wr = 2 * pi * 179, wz = 2 * pi * 50;
    long double mB = 87 * u, mI = 133 * u;
    long double aB = 94.7L * a0, aIB = 650 * a0;
    long double NB = 200;

    long double lz() const { return std::sqrt(hbar / (mB * wz)); }
    long double lr() const { return std::sqrt(hbar / (mB * wr)); }
    long double lIz() const { return std::sqrt(hbar / (mI * wz)); }
    long double f() const { return (1 + 87.0L / 133) / (1 + 87.0L / 133); }
    long double GB() const { return 2 * NB * wr * aB / (wz * lz()); }
    long double gIB() const { return 2 * aIB * wr * f() / (wz * lz()); }
    long double healing(long double n) const { return aIB * std::sqrt(2 * n * aB / lz()) / lr(); }
    long double qf() const {
        return std::exp(std::log(3.0L) / 3 - std::log(4.0L) +
                        (4 * std::log(aB) + std::log(NB) - 2 * std::log(lr()) - 2 * std::log(lz())) / 3);
    }
    long double gamma() const {
        const long double z3 = 1.2020569L;
        const long double logpre = 0.4L * std::log(5.0L) + 2 * std::log(pi) - 1.5L * std::log(2.0L) -
                                   0.6L * std::log(3.0L);
        const long double logb = std::log(NB) / 3 - 8 * std::log(z3) / 3 + 2 * std::log(aB) -
                                 4 * std::log(lr()) / 3 - 2 * std::log(lz()) / 3;
        return std::exp(logpre + logb / 5);
    }
    long double Tc() const { return hbar / kB * std::cbrt(wr * wr * wz * NB / 1.2020569L); }
};

bool close(double a, long double b, double rel = 1e-10) {
    return std::abs(a - static_cast<double>(b)) <= rel * std::abs(static_cast<double>(b));
}

}  // namespace

TEST_CASE("baseline conversion against hand arithmetic") {
    const Oracle o;
    const PhysicalParams p;
    const auto d = nondimensionalize(p);
    CHECK(close(d.l_z, o.lz() / o.a0));
    CHECK(close(d.l_r, o.lr() / o.a0));
    CHECK(close(d.l_Iz, o.lIz() / o.a0));
    CHECK(close(d.f_geometric, o.f()));
    CHECK(close(d.G_B_dimless, o.GB()));
    CHECK(close(d.g_IB_dimless, o.gIB()));
    CHECK(close(d.alpha, o.lIz() / o.lz()));
    CHECK(close(d.N_QF_fraction, o.qf()));
    CHECK(close(d.gamma, o.gamma()));
    CHECK(close(d.T_c, o.Tc()));
    CHECK(close(healing_check(p, 0.355), o.healing(0.355L)));
    CHECK(close(healing_check(p, 0.164), o.healing(0.164L)));

    const auto t = thermal_temperature_for(p, 1e-3);
    CHECK(close(t.T, o.Tc() * std::sqrt(1e-3L / o.gamma())));
}

TEST_CASE("published scales") {
    const PhysicalParams p;
    const auto d = nondimensionalize(p);
    CHECK(d.G_B_dimless == doctest::Approx(4.71).epsilon(0.01));
    CHECK(d.g_IB_dimless == doctest::Approx(0.16).epsilon(0.05));
    CHECK(d.alpha == doctest::Approx(0.808).epsilon(0.001));
    // the quoted oscillator length follows from hbar = 1.05e-34
    CHECK(nondimensionalize(p, UnitConstants::rounded_hbar()).l_z == doctest::Approx(28742.3).epsilon(0.001));
    CHECK(healing_check(p, 0.355) == doctest::Approx(0.0020).epsilon(0.05));
    CHECK(healing_check(p, 0.164) == doctest::Approx(0.0014).epsilon(0.05));
}

TEST_CASE("scaling properties") {
    PhysicalParams p;
    const auto base = nondimensionalize(p);

    PhysicalParams twice = p;
    twice.N_B *= 2;
    CHECK(nondimensionalize(twice).G_B_dimless == doctest::Approx(2 * base.G_B_dimless).epsilon(1e-15));

    PhysicalParams eight = p;
    eight.N_B *= 8;
    CHECK(quantum_depletion_fraction(eight) == doctest::Approx(2 * base.N_QF_fraction).epsilon(1e-14));

    PhysicalParams dry = p;
    dry.a_B = 0.0;
    CHECK(quantum_depletion_fraction(dry) == 0.0);
    PhysicalParams free = p;
    free.a_IB = 0.0;
    CHECK(healing_check(free, 0.3) == 0.0);

    PhysicalParams same = p;
    same.m_I = same.m_B;
    CHECK(nondimensionalize(same).f_geometric == 1.0);

    // common frequency rescaling leaves length ratios fixed
    PhysicalParams fast = p;
    for (double* w : {&fast.omega_r, &fast.omega_z, &fast.omega_Ir, &fast.omega_Iz}) *w *= 3.7;
    CHECK(nondimensionalize(fast).alpha == doctest::Approx(base.alpha).epsilon(1e-14));
    CHECK(nondimensionalize(fast).f_geometric == doctest::Approx(base.f_geometric).epsilon(1e-14));

    // monotone in |a_IB| and in the density
    double prev = 0;
    for (double a : {10.0, 100.0, 650.0, 2000.0}) {
        PhysicalParams q = p;
        q.a_IB = -a;
        const double h = healing_check(q, 0.2);
        CHECK(h > prev);
        prev = h;
    }
    CHECK(healing_check(p, 0.4) > healing_check(p, 0.2));
    CHECK_THROWS_AS(healing_check(p, 0.0), std::invalid_argument);
}

TEST_CASE("thermal depletion") {
    const PhysicalParams p;
    CHECK(thermal_temperature_for(p, 0.0).T == 0.0);
    const auto at = thermal_depletion_at(p, 1.0);
    CHECK(at.fraction == doctest::Approx(at.gamma).epsilon(1e-15));
    const auto back = thermal_temperature_for(p, thermal_depletion_at(p, 0.3).fraction);
    CHECK(back.T / back.T_c == doctest::Approx(0.3).epsilon(1e-14));
    CHECK_THROWS_AS(thermal_temperature_for(p, -1.0), std::invalid_argument);
}

TEST_CASE("Thomas-Fermi profile") {
    const auto tf = thomas_fermi_profile(4.71);
    // unit norm: (4 sqrt2 / 3) mu^(3/2) / G = 1
    CHECK(tf.mu == doctest::Approx(std::pow(3 * 4.71 / (4 * std::sqrt(2.0)), 2.0 / 3)).epsilon(1e-14));
    CHECK(tf.mu == doctest::Approx(1.841).epsilon(1e-3));
    CHECK(tf.peak() == doctest::Approx(0.3909).epsilon(1e-3));
    for (double G : {1.0, 4.71, 100.0}) {
        const auto t = thomas_fermi_profile(G);
        const int m = 100000;
        const double R = t.radius(), h = 2 * R / m;
        double s = 0;
        for (int i = 0; i <= m; ++i) s += (i == 0 || i == m ? 0.5 : 1.0) * t.density(-R + i * h);
        CHECK(s * h == doctest::Approx(1.0).epsilon(1e-8));
        CHECK(t.density(1.01 * R) == 0.0);
    }
    CHECK(thomas_fermi_profile(8.0).mu / thomas_fermi_profile(1.0).mu == doctest::Approx(4.0).epsilon(1e-14));
    CHECK_THROWS_AS(thomas_fermi_profile(0.0), std::invalid_argument);
}

TEST_CASE("analysis report") {
    const auto rep = analyze(PhysicalParams{});
    auto find = [&](const std::string& k) {
        for (const auto& e : rep)
            if (e.key == k) return e;
        FAIL("missing key " << k);
        return ReportEntry{};
    };
    CHECK_FALSE(find("G_B").mismatch);
    CHECK_FALSE(find("alpha").mismatch);
    CHECK_FALSE(find("l_z_bohr").mismatch);
    // printed appendix numbers do not follow from the printed formulas
    CHECK(find("T_c_nK").mismatch);
    CHECK(find("T_c_nK").computed == doctest::Approx(31).epsilon(0.05));
    CHECK(find("quasi_1d").computed == 1.0);
    // pure: identical on repetition
    const auto again = analyze(PhysicalParams{});
    REQUIRE(again.size() == rep.size());
    for (std::size_t i = 0; i < rep.size(); ++i) CHECK(std::memcmp(&rep[i].computed, &again[i].computed, 8) == 0);

    PhysicalParams bad;
    bad.omega_z = -1;
    CHECK_THROWS_AS(analyze(bad), std::invalid_argument);
    PhysicalParams flat;
    flat.omega_z = flat.omega_r;
    CHECK_FALSE(flat.quasi_1d());
}
