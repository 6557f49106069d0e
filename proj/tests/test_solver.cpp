#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "becimp/solver.hpp"
#include "becimp/stationary.hpp"

using namespace becimp;

namespace {

SystemState make_state(GridPtr g, double alpha) {
    SystemState s;
    s.psi_B = gaussian(g, 1.0);
    s.psi_I = trial_impurity(g, alpha);
    return s;
}

// Lowest eigenvalues of -m/2 d^2 + w z^2/2 on a periodic grid, built from the
// closed-form Fourier second-derivative matrix (no FFT involved).
Eigen::VectorXd oscillator_levels(int n, double L, double m, double w) {
    const double h = 2 * std::numbers::pi / n;
    const double scale = std::pow(2 * std::numbers::pi / (2 * L), 2);
    Eigen::MatrixXd H(n, n);
    for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) {
            double d2;
            if (j == l) {
                d2 = -std::numbers::pi * std::numbers::pi / (3 * h * h) - 1.0 / 6;
            } else {
                const int k = j - l;
                const double s = std::sin(k * h / 2);
                d2 = -((k % 2) ? -1.0 : 1.0) / (2 * s * s);
            }
            H(j, l) = -0.5 * m * scale * d2;
        }
    for (int j = 0; j < n; ++j) {
        const double z = -L + j * 2 * L / n;
        H(j, j) += 0.5 * w * z * z;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    return es.eigenvalues();
}

}  // namespace

TEST_CASE("model parameters") {
    ModelParams p;
    p.g_IB = 0.5;
    CHECK(p.G_IB() == 0.5);
    CHECK(p.G_BI() == 100.0);
    p.G_BI_ratio = 0.005;
    CHECK(p.G_BI() == doctest::Approx(0.0025));
    p.G_BI_override = 7.0;
    CHECK(p.G_BI() == 7.0);
    p.G_IB_override = -3.0;
    CHECK(p.G_IB() == -3.0);
    p.alpha = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    ModelParams q;
    q.N_B = 0;
    CHECK_THROWS_AS(q.validate(), std::invalid_argument);
}

TEST_CASE("potentials") {
    auto g = make_grid(256, 8.0);
    auto s = make_state(g, 0.808);
    ModelParams p;
    p.G_B = 0.0;
    auto VB = potential_B(s, p);
    for (int j = 0; j < g->size(); ++j) CHECK(VB[j] == doctest::Approx(0.5 * g->z(j) * g->z(j)));

    p.G_B = 2.0;
    p.trap_B_on = false;
    VB = potential_B(s, p);
    for (int j = 0; j < g->size(); ++j) CHECK(VB[j] == doctest::Approx(2.0 * std::norm(s.psi_B[j])));

    ModelParams q;
    auto VI = potential_I(s, q);
    for (int j = 0; j < g->size(); ++j)
        CHECK(VI[j] == doctest::Approx(g->z(j) * g->z(j) / (2 * 0.808 * 0.808)));
    q.trap_I_on = false;
    VI = potential_I(s, q);
    for (double v : VI) CHECK(v == 0.0);

    // repulsive Thomas-Fermi background: barrier highest at the centre
    ModelParams r;
    r.g_IB = 0.1;
    r.trap_I_on = false;
    s.psi_B = thomas_fermi_seed(g, 20.0);
    VI = potential_I(s, r);
    CHECK(VI[g->center_index()] == doctest::Approx(*std::max_element(VI.begin(), VI.end())));

    auto other = make_grid(256, 9.0);
    s.psi_I = trial_impurity(other, 1.0);
    CHECK_THROWS_AS(potential_B(s, p), std::invalid_argument);
}

TEST_CASE("oscillator eigenvalues by independent diagonalization") {
    for (double alpha : {0.2, 0.808, 1.5}) {
        // impurity: -alpha^2/2 d^2 + z^2/(2 alpha^2); unit frequency for any alpha
        const auto ev = oscillator_levels(128, 12.0 * alpha, alpha * alpha,
                                          1.0 / (alpha * alpha));
        CHECK(ev(0) == doctest::Approx(0.5).epsilon(1e-10));
        CHECK(ev(1) == doctest::Approx(1.5).epsilon(1e-10));
    }
}

TEST_CASE("imaginary-time steps reach the oscillator levels") {
    auto g = make_grid(512, 12.0);
    for (double alpha : {0.808, 1.5}) {
        ModelParams p;
        p.G_B = 0.0;
        p.alpha = alpha;
        SystemState s;
        s.psi_B = gaussian(g, 1.7);
        s.psi_I = trial_impurity(g, 1.3 * alpha);
        Propagator prop(g);
        for (int i = 0; i < 20000; ++i) prop.step(s, p, 1e-3, true, true);
        const auto e = energy(s, p);
        CHECK(e.E_B == doctest::Approx(0.5).epsilon(1e-7));
        CHECK(e.E_I == doctest::Approx(1.5).epsilon(1e-7));
    }
}

TEST_CASE("energy of exact eigenstates") {
    auto g = make_grid(2048, 16.0);
    ModelParams p;
    p.G_B = 0.0;
    SystemState s = make_state(g, p.alpha);
    const auto e = energy(s, p);
    CHECK(std::abs(e.E_B - 0.5) < 1e-8);
    CHECK(std::abs(e.E_I - 1.5) < 1e-8);
}

TEST_CASE("real-time unitarity with couplings on") {
    auto g = make_grid(1024, 16.0);
    ModelParams p;
    p.g_IB = 3.0;
    p.G_BI_ratio = 0.5;
    SystemState s = make_state(g, p.alpha);
    s.psi_B = thomas_fermi_seed(g, p.G_B);
    Propagator prop(g);
    double worst_B = 0, worst_I = 0;
    for (int i = 0; i < 1000; ++i) {
        prop.step(s, p, 1e-3, false, false);
        worst_B = std::max(worst_B, std::abs(norm2(s.psi_B) - 1));
        worst_I = std::max(worst_I, std::abs(norm2(s.psi_I) - 1));
    }
    CHECK(worst_B < 1e-8);
    CHECK(worst_I < 1e-8);
    CHECK(s.time == doctest::Approx(1.0));
}

TEST_CASE("time reversal") {
    auto g = make_grid(512, 16.0);
    ModelParams p;
    p.g_IB = -2.0;
    p.G_BI_ratio = 1.0;
    SystemState s0 = make_state(g, p.alpha);
    s0.psi_B = gaussian(g, 1.3);
    SystemState s = s0;
    Propagator prop(g);
    for (int i = 0; i < 500; ++i) prop.step(s, p, 2e-3, false, false);
    CHECK(l2_distance(s.psi_B, s0.psi_B) > 1e-3);
    for (int i = 0; i < 500; ++i) prop.step(s, p, -2e-3, false, false);
    CHECK(l2_distance(s.psi_B, s0.psi_B) < 1e-8);
    CHECK(l2_distance(s.psi_I, s0.psi_I) < 1e-8);
}

TEST_CASE("parity is conserved without projection") {
    auto g = make_grid(512, 16.0);
    ModelParams p;
    p.g_IB = 5.0;
    p.G_BI_ratio = 1.0;
    SystemState s = make_state(g, p.alpha);
    s.psi_B = thomas_fermi_seed(g, p.G_B);
    Propagator prop(g);
    for (int i = 0; i < 5000; ++i) prop.step(s, p, 2e-3, false, false);
    const auto even = project_even(s.psi_I);
    double worst = 0;
    for (const auto& v : even.values) worst = std::max(worst, std::abs(v));
    CHECK(worst < 1e-10);
}

TEST_CASE("second-order convergence") {
    auto g = make_grid(256, 12.0);
    ModelParams p;
    p.G_B = 0.0;
    // displaced, squeezed packets: both move and breathe
    SystemState s0;
    s0.psi_B = sample(g, [](double z) { return cplx{std::exp(-(z - 1.0) * (z - 1.0) / (2 * 0.49))}; });
    s0.psi_I = sample(g, [](double z) { return cplx{(z - 0.5) * std::exp(-(z - 0.5) * (z - 0.5) / 0.8)}; });
    normalize(s0.psi_B);
    normalize(s0.psi_I);
    auto run = [&](double dt) {
        SystemState s = s0;
        Propagator prop(g);
        const int n = static_cast<int>(std::lround(1.0 / dt));
        for (int i = 0; i < n; ++i) prop.step(s, p, dt, false, false);
        return s;
    };
    const double dt = 0.02;
    const auto ref = run(dt / 8);
    const auto a = run(dt);
    const auto b = run(dt / 2);
    const double ea = l2_distance(a.psi_B, ref.psi_B) + l2_distance(a.psi_I, ref.psi_I);
    const double eb = l2_distance(b.psi_B, ref.psi_B) + l2_distance(b.psi_I, ref.psi_I);
    // exact ratio 4 against the true solution; against dt/8 it is (1-1/64)/(1/4-1/64)
    CHECK(ea / eb == doctest::Approx(4.0 * (1 - 1.0 / 64) / (1 - 1.0 / 16)).epsilon(0.05));
}

TEST_CASE("free-function step reports blow-up") {
    auto g = make_grid(64, 4.0);
    ModelParams p;
    SystemState s = make_state(g, p.alpha);
    s.psi_B.values[3] = cplx{std::nan(""), 0.0};
    CHECK_THROWS_AS(step(s, p, 1e-3, false, false), NumericalError);
    CHECK_THROWS_AS(step(make_state(g, p.alpha), p, 0.0, false, false), std::invalid_argument);
}

TEST_CASE("quench schedules") {
    ModelParams p;
    p.g_IB = 80.0;
    p.G_BI_override = 4.0;
    auto q = QuenchSchedule::coupling_quench(p, 0.0, 5.0);
    CHECK(q.t_end() == 5.0);
    const auto after = QuenchSchedule::apply(p, q.at(1.0));
    CHECK(after.G_IB() == 0.0);
    CHECK(after.G_BI() == 0.0);

    auto tof = QuenchSchedule::time_of_flight(p, 3.0);
    const auto free = QuenchSchedule::apply(p, tof.at(0.0));
    CHECK_FALSE(free.trap_B_on);
    CHECK_FALSE(free.trap_I_on);
    CHECK(free.G_IB() == 80.0);

    QuenchSegment a{0.0, 1.0, true, true, 1.0, {}, {}};
    QuenchSegment b{1.5, 2.0, true, true, 1.0, {}, {}};
    CHECK_THROWS_AS(QuenchSchedule({a, b}), std::invalid_argument);
    QuenchSegment c{0.5, 1.0, true, true, 1.0, {}, {}};
    CHECK_THROWS_AS(QuenchSchedule({c}), std::invalid_argument);
}

TEST_CASE("evolve hits segment boundaries and snapshots") {
    auto g = make_grid(128, 10.0);
    ModelParams p;
    p.G_B = 0.0;
    QuenchSegment a{0.0, 0.25, true, true, 0.0, {}, {}};
    QuenchSegment b{0.25, 1.0, false, false, 0.0, {}, {}};
    QuenchSchedule sched({a, b});
    EvolveOptions eo;
    eo.snapshot_stride = 10;
    // dt = 0.03 does not divide 0.25: the step across it is split
    auto series = evolve(make_state(g, p.alpha), p, sched, 0.9, 0.03, eo);
    CHECK(series.frames.front().time == 0.0);
    CHECK(series.frames.back().time == doctest::Approx(0.9));
    CHECK(series.size() == 4);  // t = 0, 0.3, 0.6, 0.9
    CHECK_FALSE(series.frames[1].params.trap_B_on);

    // compare against running the two pieces by hand
    SystemState s = make_state(g, p.alpha);
    Propagator prop(g);
    auto pa = QuenchSchedule::apply(p, a), pb = QuenchSchedule::apply(p, b);
    for (int i = 0; i < 8; ++i) prop.step(s, pa, 0.03, false, false);
    prop.step(s, pa, 0.01, false, false);
    prop.step(s, pb, 0.02, false, false);
    for (int i = 9; i < 30; ++i) prop.step(s, pb, 0.03, false, false);
    CHECK(l2_distance(s.psi_B, series.frames.back().psi_B) < 1e-12);

    CHECK_THROWS_AS(evolve(make_state(g, p.alpha), p, sched, 2.0, 0.03, eo), std::invalid_argument);
}

TEST_CASE("stationary state stays put under a null schedule") {
    auto g = make_grid(256, 12.0);
    ModelParams p;
    p.G_B = 0.0;
    SystemState s = make_state(g, p.alpha);  // exact eigenstates
    auto series = evolve(s, p, QuenchSchedule::constant(p, 5.0), 5.0, 1e-3, {.snapshot_stride = 1000});
    const auto n0 = s.psi_B;
    for (const auto& f : series.frames) {
        const auto d0 = density(n0), d = f.density_B();
        for (std::size_t j = 0; j < d.size(); ++j) CHECK(std::abs(d[j] - d0[j]) < 1e-6);
    }
}

TEST_CASE("free expansion under time of flight") {
    auto g = make_grid(1024, 40.0);
    ModelParams p;
    p.G_B = 0.0;
    SystemState s = make_state(g, p.alpha);
    auto series = evolve(s, p, QuenchSchedule::time_of_flight(p, 3.0), 3.0, 1e-3, {.snapshot_stride = 500});
    for (const auto& f : series.frames) {
        const double w = std::sqrt(2 * moment(f.psi_B, 2));
        CHECK(w == doctest::Approx(std::sqrt(1 + f.time * f.time)).epsilon(1e-6));
    }
}

TEST_CASE("blow-up is reported, optionally keeping frames") {
    auto g = make_grid(64, 4.0);
    ModelParams p;
    SystemState s = make_state(g, p.alpha);
    // a kick this large overflows the imaginary-time exponent
    p.G_B = 1e308;
    EvolveOptions eo;
    eo.imaginary = true;
    eo.keep_partial = true;
    auto series = evolve(s, p, QuenchSchedule::constant(p, 1.0), 1.0, 0.1, eo);
    CHECK(series.aborted);
    CHECK(series.size() >= 1);
    eo.keep_partial = false;
    CHECK_THROWS_AS(evolve(s, p, QuenchSchedule::constant(p, 1.0), 1.0, 0.1, eo), NumericalError);
}

TEST_CASE("energy descends in imaginary time without interspecies coupling") {
    // with coupling the two equations are not one gradient flow, so only the bare case is monotone
    auto g = make_grid(256, 10.0);
    ModelParams p;
    SystemState s;
    s.psi_B = gaussian(g, 2.5);
    s.psi_I = trial_impurity(g, 1.7);
    Propagator prop(g);
    double prev = energy(s, p).total();
    for (int i = 0; i < 3000; ++i) {
        prop.step(s, p, 1e-3, true, true);
        const double e = energy(s, p).total();
        CHECK(e <= prev + 1e-12);
        prev = e;
    }
}
