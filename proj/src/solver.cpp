#include "becimp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace becimp {

void ModelParams::validate() const {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw std::invalid_argument("alpha must be positive");
    if (N_B < 1) throw std::invalid_argument("N_B must be >= 1");
    if (N_I < 1) throw std::invalid_argument("N_I must be >= 1");
    if (!std::isfinite(G_B) || !std::isfinite(g_IB))
        throw std::invalid_argument("couplings must be finite");
    if (G_BI_ratio && !std::isfinite(*G_BI_ratio))
        throw std::invalid_argument("G_BI ratio must be finite");
}

// ---------------------------------------------------------------------------
// Schedules

QuenchSchedule::QuenchSchedule(std::vector<QuenchSegment> segments)
    : segments_(std::move(segments)) {
    if (segments_.empty()) throw std::invalid_argument("schedule has no segments");
    if (segments_.front().t_start != 0.0)
        throw std::invalid_argument("schedule must start at t = 0");
    for (std::size_t i = 0; i < segments_.size(); ++i) {
        const auto& s = segments_[i];
        if (!(s.t_end > s.t_start))
            throw std::invalid_argument("schedule segment " + std::to_string(i) + " is empty");
        if (i > 0 && s.t_start != segments_[i - 1].t_end)
            throw std::invalid_argument("schedule segments " + std::to_string(i - 1) + " and " +
                                        std::to_string(i) + " are not contiguous");
    }
}

QuenchSchedule QuenchSchedule::constant(const ModelParams& p, double t_final) {
    return QuenchSchedule({{0.0, t_final, p.trap_B_on, p.trap_I_on, p.g_IB, p.G_IB_override,
                            p.G_BI_override}});
}

QuenchSchedule QuenchSchedule::time_of_flight(const ModelParams& p, double t_final) {
    return QuenchSchedule(
        {{0.0, t_final, false, false, p.g_IB, p.G_IB_override, p.G_BI_override}});
}

QuenchSchedule QuenchSchedule::coupling_quench(const ModelParams& p, double g_after,
                                               double t_final) {
    return QuenchSchedule({{0.0, t_final, p.trap_B_on, p.trap_I_on, g_after, {}, {}}});
}

const QuenchSegment& QuenchSchedule::at(double t) const {
    if (segments_.empty()) throw std::invalid_argument("empty schedule");
    for (const auto& s : segments_)
        if (t >= s.t_start && t < s.t_end) return s;
    if (t == segments_.back().t_end) return segments_.back();
    throw std::invalid_argument("schedule does not cover t = " + std::to_string(t));
}

ModelParams QuenchSchedule::apply(const ModelParams& base, const QuenchSegment& seg) {
    ModelParams p = base;
    p.trap_B_on = seg.trap_B_on;
    p.trap_I_on = seg.trap_I_on;
    p.g_IB = seg.g_IB;
    p.G_IB_override = seg.G_IB_override;
    p.G_BI_override = seg.G_BI_override;
    return p;
}

// ---------------------------------------------------------------------------
// Potentials and energies

std::vector<double> potential_B(const SystemState& s, const ModelParams& p) {
    require_same_grid(s.psi_B, s.psi_I);
    const auto z = s.grid().z();
    const double gb = p.G_B, gib = p.G_IB();
    std::vector<double> V(z.size());
    for (std::size_t j = 0; j < V.size(); ++j) {
        V[j] = gb * std::norm(s.psi_B.values[j]) + gib * std::norm(s.psi_I.values[j]);
        if (p.trap_B_on) V[j] += 0.5 * z[j] * z[j];
    }
    return V;
}

std::vector<double> potential_I(const SystemState& s, const ModelParams& p) {
    require_same_grid(s.psi_B, s.psi_I);
    const auto z = s.grid().z();
    const double gbi = p.G_BI();
    const double w = 0.5 / (p.alpha * p.alpha);
    std::vector<double> V(z.size());
    for (std::size_t j = 0; j < V.size(); ++j) {
        V[j] = gbi * std::norm(s.psi_B.values[j]);
        if (p.trap_I_on) V[j] += w * z[j] * z[j];
    }
    return V;
}

Energies energy(const SystemState& s, const ModelParams& p) {
    require_same_grid(s.psi_B, s.psi_I);
    const auto z = s.grid().z();
    const double dz = s.grid().dz();
    const double gib = p.G_IB(), gbi = p.G_BI();
    const double wi = 0.5 / (p.alpha * p.alpha);

    double eb = 0.0, ei = 0.0;
    for (std::size_t j = 0; j < z.size(); ++j) {
        const double nb = std::norm(s.psi_B.values[j]);
        const double ni = std::norm(s.psi_I.values[j]);
        const double zz = z[j] * z[j];
        eb += (p.trap_B_on ? 0.5 * zz : 0.0) * nb + 0.5 * p.G_B * nb * nb + gib * ni * nb;
        ei += ((p.trap_I_on ? wi * zz : 0.0) + gbi * nb) * ni;
    }
    Energies e;
    e.E_B = kinetic_energy(s.psi_B, 1.0) + eb * dz;
    e.E_I = kinetic_energy(s.psi_I, p.alpha * p.alpha) + ei * dz;
    return e;
}

bool all_finite(const ComplexField& f) {
    return std::all_of(f.values.begin(), f.values.end(), [](const cplx& v) {
        return std::isfinite(v.real()) && std::isfinite(v.imag());
    });
}

// ---------------------------------------------------------------------------
// Split-step propagator

Propagator::Propagator(GridPtr grid) : grid_(std::move(grid)) {
    if (!grid_) throw std::invalid_argument("propagator needs a grid");
    kin_B_.resize(grid_->size());
    kin_I_.resize(grid_->size());
}

void Propagator::ensure_kinetic(double dt, double alpha, bool imaginary) {
    if (have_cache_ && dt == cached_dt_ && alpha == cached_alpha_ && imaginary == cached_imag_)
        return;
    const double inv_n = 1.0 / grid_->size();
    const double a2 = alpha * alpha;
    for (int j = 0; j < grid_->size(); ++j) {
        const double half_k2 = 0.5 * grid_->k(j) * grid_->k(j);
        if (imaginary) {
            kin_B_[j] = std::exp(-dt * half_k2) * inv_n;
            kin_I_[j] = std::exp(-dt * a2 * half_k2) * inv_n;
        } else {
            kin_B_[j] = std::polar(inv_n, -dt * half_k2);
            kin_I_[j] = std::polar(inv_n, -dt * a2 * half_k2);
        }
    }
    cached_dt_ = dt;
    cached_alpha_ = alpha;
    cached_imag_ = imaginary;
    have_cache_ = true;
}

void Propagator::kick(std::vector<cplx>& psi, const std::vector<double>& V, cplx half_dt) const {
    if (half_dt.imag() == 0.0) {
        const double h = half_dt.real();
        for (std::size_t j = 0; j < psi.size(); ++j) psi[j] *= std::polar(1.0, -h * V[j]);
    } else {
        // half_dt = -i tau/2: exp(-i * half_dt * V) = exp(-tau/2 V)
        const double h = -half_dt.imag();
        for (std::size_t j = 0; j < psi.size(); ++j) psi[j] *= std::exp(-h * V[j]);
    }
}

void Propagator::step(SystemState& s, const ModelParams& p, double dt, bool imaginary, bool zeno) {
    if (!(std::abs(dt) > 0.0)) throw std::invalid_argument("time step must be nonzero");
    if (!s.psi_B.grid->same_as(*grid_) || !s.psi_I.grid->same_as(*grid_))
        throw std::invalid_argument("state is not on the propagator grid");

    ensure_kinetic(dt, p.alpha, imaginary);
    const cplx half = imaginary ? cplx{0.0, -0.5 * dt} : cplx{0.5 * dt, 0.0};

    auto VB = potential_B(s, p);
    auto VI = potential_I(s, p);
    kick(s.psi_B.values, VB, half);
    kick(s.psi_I.values, VI, half);

    grid_->forward(s.psi_B.values);
    grid_->forward(s.psi_I.values);
    for (int j = 0; j < grid_->size(); ++j) {
        s.psi_B.values[j] *= kin_B_[j];
        s.psi_I.values[j] *= kin_I_[j];
    }
    grid_->backward(s.psi_B.values);
    grid_->backward(s.psi_I.values);
    if (imaginary) {
        // the closing kick must see unit-norm densities, else the fixed point drifts by O(dt)
        normalize(s.psi_B);
        normalize(s.psi_I);
    }

    VB = potential_B(s, p);
    VI = potential_I(s, p);
    kick(s.psi_B.values, VB, half);
    kick(s.psi_I.values, VI, half);

    if (zeno) {
        s.psi_I = project_odd(s.psi_I);
        normalize(s.psi_I);
    }
    if (imaginary) {
        normalize(s.psi_B);
        if (!zeno) normalize(s.psi_I);
    }
    s.time += imaginary ? 0.0 : dt;
}

SystemState step(const SystemState& s, const ModelParams& p, double dt, bool imaginary,
                 bool zeno) {
    SystemState out = s;
    Propagator prop(s.psi_B.grid);
    try {
        prop.step(out, p, dt, imaginary, zeno);
    } catch (const std::domain_error& e) {
        throw NumericalError(std::string("step produced a degenerate field: ") + e.what());
    }
    if (!all_finite(out.psi_B) || !all_finite(out.psi_I))
        throw NumericalError("non-finite values after one step; dt is probably too large");
    return out;
}

std::vector<double> SnapshotSeries::times() const {
    std::vector<double> t;
    t.reserve(frames.size());
    for (const auto& f : frames) t.push_back(f.time);
    return t;
}

SnapshotSeries evolve(SystemState state, const ModelParams& params,
                      const QuenchSchedule& schedule, double t_final, double dt,
                      const EvolveOptions& opts) {
    params.validate();
    if (!(dt > 0.0)) throw std::invalid_argument("evolve needs dt > 0");
    if (opts.snapshot_stride < 1) throw std::invalid_argument("snapshot stride must be >= 1");
    if (schedule.segments().empty() || schedule.t_end() < t_final)
        throw std::invalid_argument("schedule does not cover [0, t_final]");
    const double t0 = state.time;
    if (t_final < t0) throw std::invalid_argument("t_final precedes the state time");

    SnapshotSeries out;
    out.dt = dt;
    out.stride = opts.snapshot_stride;
    auto params_at = [&](double t) { return QuenchSchedule::apply(params, schedule.at(t)); };
    out.frames.push_back({state.time, state.psi_B, state.psi_I, params_at(t0)});

    Propagator prop(state.psi_B.grid);
    const auto n_steps = static_cast<long>(std::ceil((t_final - t0) / dt - 1e-9));

    auto advance = [&](double ta, double tb) {
        // split at any segment boundary strictly inside (ta, tb)
        double t = ta;
        for (const auto& seg : schedule.segments()) {
            if (seg.t_end > t && seg.t_end < tb) {
                prop.step(state, QuenchSchedule::apply(params, seg), seg.t_end - t,
                          opts.imaginary, opts.zeno);
                t = seg.t_end;
            }
        }
        prop.step(state, params_at(t), tb - t, opts.imaginary, opts.zeno);
        state.time = tb;
    };

    for (long i = 0; i < n_steps; ++i) {
        const double ta = t0 + i * dt;
        const double tb = std::min(t0 + (i + 1) * dt, t_final);
        bool bad = false;
        std::string why;
        try {
            advance(ta, tb);
            bad = !all_finite(state.psi_B) || !all_finite(state.psi_I);
            why = "non-finite values";
        } catch (const std::domain_error& e) {
            bad = true;
            why = e.what();
        }
        if (bad) {
            const std::string msg = "evolution blew up at t = " + std::to_string(tb) + " (" + why +
                                    "); reduce dt";
            if (!opts.keep_partial) throw NumericalError(msg);
            out.aborted = true;
            out.abort_reason = msg;
            return out;
        }
        if ((i + 1) % opts.snapshot_stride == 0 || i + 1 == n_steps)
            out.frames.push_back({state.time, state.psi_B, state.psi_I, params_at(state.time)});
    }
    return out;
}

}  // namespace becimp
