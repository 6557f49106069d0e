#include "becimp/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "becimp/analytics.hpp"

namespace becimp {

ComplexField trial_impurity(GridPtr grid, double A) {
    if (!(A > 0.0)) throw std::invalid_argument("trial width must be positive");
    const double pref = std::sqrt(2.0 / (std::sqrt(std::numbers::pi) * A * A * A));
    auto f = sample(grid, [&](double z) { return cplx{pref * z * std::exp(-z * z / (2 * A * A))}; });
    return project_odd(f);
}

ComplexField gaussian(GridPtr grid, double w) {
    if (!(w > 0.0)) throw std::invalid_argument("gaussian width must be positive");
    const double pref = std::pow(std::numbers::pi * w * w, -0.25);
    return sample(grid, [&](double z) { return cplx{pref * std::exp(-z * z / (2 * w * w))}; });
}

ComplexField thomas_fermi_seed(GridPtr grid, double G_B) {
    const auto tf = thomas_fermi_profile(G_B);
    auto f = sample(grid, [&](double z) { return cplx{std::sqrt(tf.density(z))}; });
    normalize(f);
    return f;
}

namespace {

bool settled(double e_now, double e_prev, double span, double tol) {
    const double scale = std::max(std::abs(e_now), 1e-12);
    return std::abs(e_now - e_prev) / scale / span < tol;
}

}  // namespace

RelaxationReport relax_coupled(const ModelParams& params, GridPtr grid, const RelaxOptions& opts) {
    params.validate();
    if (!(opts.tol > 0.0)) throw std::invalid_argument("relaxation tolerance must be positive");
    if (!(opts.dtau > 0.0)) throw std::invalid_argument("relaxation step must be positive");
    if (opts.check_every < 1) throw std::invalid_argument("check_every must be >= 1");

    RelaxationReport rep;
    if (opts.initial) {
        rep.final_state = *opts.initial;
    } else {
        rep.final_state.psi_B = params.G_B > opts.tf_seed_threshold
                                    ? thomas_fermi_seed(grid, params.G_B)
                                    : gaussian(grid, 1.0);
        rep.final_state.psi_I = trial_impurity(grid, params.alpha);
    }
    auto& s = rep.final_state;
    s.time = 0.0;

    Propagator prop(grid);
    auto e_prev = energy(s, params);
    rep.energy_trace.push_back({0.0, e_prev.E_B, e_prev.E_I});
    const double span = opts.check_every * opts.dtau;

    for (long it = 1; it <= opts.max_iters; ++it) {
        prop.step(s, params, opts.dtau, true, opts.zeno);
        rep.iterations = it;
        if (it % opts.check_every != 0) continue;
        if (!all_finite(s.psi_B) || !all_finite(s.psi_I))
            throw NumericalError("imaginary-time relaxation produced non-finite values");
        const auto e = energy(s, params);
        rep.energy_trace.push_back({it * opts.dtau, e.E_B, e.E_I});
        if (settled(e.E_B, e_prev.E_B, span, opts.tol) && settled(e.E_I, e_prev.E_I, span, opts.tol)) {
            rep.converged = true;
            break;
        }
        e_prev = e;
    }
    return rep;
}

std::vector<EnergySample> zeno_durability_experiment(GridPtr grid, double alpha, double dtau,
                                                     double tau_max, bool zeno, double even_seed,
                                                     int sample_every) {
    if (!(dtau > 0.0) || !(tau_max > 0.0)) throw std::invalid_argument("bad imaginary-time span");
    if (sample_every < 1) throw std::invalid_argument("sample_every must be >= 1");
    ModelParams p;
    p.alpha = alpha;
    p.g_IB = 0.0;
    p.G_B = 0.0;

    auto psi = trial_impurity(grid, alpha);
    if (even_seed != 0.0) {
        const auto g = gaussian(grid, alpha);
        for (int j = 0; j < psi.size(); ++j) psi[j] += even_seed * g[j];
        normalize(psi);
    }

    // Impurity alone: no condensate field, so the kicks and kinetic factors are fixed.
    const int n = grid->size();
    const auto z = grid->z();
    std::vector<double> half_kick(n), kin(n);
    for (int j = 0; j < n; ++j) {
        half_kick[j] = std::exp(-0.5 * dtau * z[j] * z[j] / (2 * alpha * alpha));
        kin[j] = std::exp(-dtau * 0.5 * alpha * alpha * grid->k(j) * grid->k(j)) / n;
    }

    auto impurity_energy = [&](const ComplexField& f) {
        double pot = 0.0;
        for (int j = 0; j < n; ++j) pot += z[j] * z[j] / (2 * alpha * alpha) * std::norm(f[j]);
        return kinetic_energy(f, alpha * alpha) + pot * grid->dz();
    };

    std::vector<EnergySample> trace;
    trace.push_back({0.0, 0.0, impurity_energy(psi)});
    const auto steps = static_cast<long>(std::llround(tau_max / dtau));
    for (long it = 1; it <= steps; ++it) {
        for (int j = 0; j < n; ++j) psi[j] *= half_kick[j];
        grid->forward(psi.values);
        for (int j = 0; j < n; ++j) psi[j] *= kin[j];
        grid->backward(psi.values);
        for (int j = 0; j < n; ++j) psi[j] *= half_kick[j];
        if (zeno) psi = project_odd(psi);
        normalize(psi);
        if (it % sample_every == 0 || it == steps)
            trace.push_back({it * dtau, 0.0, impurity_energy(psi)});
    }
    return trace;
}

ImprintDescriptor classify_imprint(const RelaxationReport& with, const RelaxationReport& without,
                                   const ImprintOptions& opts) {
    if (!with.converged || !without.converged)
        throw std::invalid_argument("imprint classification needs converged relaxations");
    return classify_imprint(with.final_state, without.final_state, opts);
}

ImprintDescriptor classify_imprint(const SystemState& with, const SystemState& without,
                                   const ImprintOptions& opts) {
    require_same_grid(with.psi_B, without.psi_B);
    const auto nw = density(with.psi_B);
    const auto n0 = density(without.psi_B);
    const int n = static_cast<int>(nw.size());

    std::vector<double> dd(n);
    for (int j = 0; j < n; ++j) dd[j] = nw[j] - n0[j];

    // Cloud: where either density exceeds the fragmentation threshold.
    const double peak_w = *std::max_element(nw.begin(), nw.end());
    const double peak_0 = *std::max_element(n0.begin(), n0.end());
    const double cut = opts.fragment_threshold * std::max(peak_w, peak_0);
    int lo = 0, hi = n - 1;
    while (lo < n && nw[lo] < cut && n0[lo] < cut) ++lo;
    while (hi > lo && nw[hi] < cut && n0[hi] < cut) --hi;

    ImprintDescriptor d;
    double amp = 0.0;
    for (int j = lo; j <= hi; ++j) amp = std::max(amp, std::abs(dd[j]));
    if (amp > 0.0) {
        const double floor = opts.relative_floor * amp;
        for (int j = std::max(lo, 1); j <= std::min(hi, n - 2); ++j) {
            if (dd[j] > floor && dd[j] > dd[j - 1] && dd[j] >= dd[j + 1]) ++d.n_bumps;
            if (dd[j] < -floor && dd[j] < dd[j - 1] && dd[j] <= dd[j + 1]) ++d.n_dips;
        }
    }

    // Fragmentation: >= 2 separate near-zero stretches strictly inside the cloud.
    const double zero_cut = opts.fragment_threshold * peak_w;
    int first = 0, last = n - 1;
    while (first < n && nw[first] < zero_cut) ++first;
    while (last > first && nw[last] < zero_cut) --last;
    int holes = 0;
    bool in_hole = false;
    for (int j = first; j <= last; ++j) {
        const bool low = nw[j] < zero_cut;
        if (low && !in_hole) ++holes;
        in_hole = low;
    }
    d.fragmented = holes >= 2;
    return d;
}

}  // namespace becimp
