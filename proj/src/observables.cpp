#include "becimp/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace becimp {

void ObservableSeries::validate() const {
    if (times.size() != values.size())
        throw std::invalid_argument("series '" + label + "': times and values differ in length");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw std::invalid_argument("series '" + label + "': times not strictly increasing");
}

std::vector<double> depleted_density(const std::vector<double>& n_with,
                                     const std::vector<double>& n_without) {
    if (n_with.size() != n_without.size())
        throw std::invalid_argument("depleted density: grid mismatch");
    std::vector<double> d(n_with.size());
    for (std::size_t j = 0; j < d.size(); ++j) d[j] = n_with[j] - n_without[j];
    return d;
}

double effective_mass_ratio(const ComplexField& psi_I, double alpha) {
    const double n2 = norm2(psi_I);
    const double m1 = moment(psi_I, 1) / n2;
    const double var = moment(psi_I, 2) / n2 - m1 * m1;
    if (!(var > 0.0)) throw std::domain_error("effective mass: zero spatial spread");
    return alpha * alpha / (2.0 * var);
}

ObservableSeries width_series(const SnapshotSeries& snaps, Species species) {
    ObservableSeries s;
    s.label = species == Species::Condensate ? "width_B" : "width_I";
    for (const auto& f : snaps.frames) {
        const auto& psi = species == Species::Condensate ? f.psi_B : f.psi_I;
        s.times.push_back(f.time);
        s.values.push_back(std::sqrt(moment(psi, 2) / norm2(psi)));
    }
    return s;
}

double dominant_frequency(const ObservableSeries& series) {
    series.validate();
    const std::size_t N = series.size();
    if (N < 8) throw std::invalid_argument("dominant_frequency: series too short");
    const double h = series.times[1] - series.times[0];
    for (std::size_t i = 1; i < N; ++i)
        if (std::abs(series.times[i] - series.times[i - 1] - h) > 1e-6 * h)
            throw std::invalid_argument("dominant_frequency: sampling is not uniform");

    double mean = 0.0;
    for (double v : series.values) mean += v;
    mean /= N;
    double spread = 0.0;
    for (double v : series.values) spread = std::max(spread, std::abs(v - mean));
    if (!(spread > 1e-14 * std::max(1.0, std::abs(mean))))
        throw std::invalid_argument("dominant_frequency: series has no oscillation");

    // Hann window suppresses the leakage of the negative-frequency image,
    // which dominates the bias when only a few periods are sampled.
    std::vector<double> x(N);
    for (std::size_t i = 0; i < N; ++i) {
        const double w = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / (N - 1));
        x[i] = (series.values[i] - mean) * w;
    }

    constexpr int pad = 16;
    const double bin = 2.0 * std::numbers::pi / (N * h);
    const double step = bin / pad;
    const int m_lo = pad;  // skip the first DFT bin (residual DC leakage)
    const int m_hi = static_cast<int>((N / 2) * pad);
    auto amplitude = [&](double w) {
        const cplx rot = std::polar(1.0, -w * h);
        cplx ph = std::polar(1.0, -w * series.times[0]);
        cplx acc{};
        for (std::size_t i = 0; i < N; ++i) {
            acc += x[i] * ph;
            ph *= rot;
        }
        return std::abs(acc);
    };

    std::vector<double> S(m_hi - m_lo + 1);
    for (int m = m_lo; m <= m_hi; ++m) S[m - m_lo] = amplitude(m * step);
    const auto it = std::max_element(S.begin(), S.end());
    const auto i = static_cast<std::size_t>(it - S.begin());
    double w = (i + m_lo) * step;
    if (i > 0 && i + 1 < S.size()) {
        const double a = S[i - 1], b = S[i], c = S[i + 1];
        const double den = a - 2.0 * b + c;
        if (den < 0.0) w += 0.5 * (a - c) / den * step;
    }
    const double periods = w * N * h / (2.0 * std::numbers::pi);
    if (periods < 2.0)
        throw std::invalid_argument("dominant_frequency: fewer than two periods sampled");
    return w;
}

// ---------------------------------------------------------------------------
// Soliton tracking

std::vector<double> moving_median(const std::vector<double>& v, double dz, double half_width) {
    const int n = static_cast<int>(v.size());
    const int hw = std::max(1, static_cast<int>(std::lround(half_width / dz)));
    std::vector<double> out(n), buf;
    buf.reserve(2 * hw + 1);
    for (int j = 0; j < n; ++j) {
        buf.clear();
        for (int i = std::max(0, j - hw); i <= std::min(n - 1, j + hw); ++i) buf.push_back(v[i]);
        auto mid = buf.begin() + buf.size() / 2;
        std::nth_element(buf.begin(), mid, buf.end());
        out[j] = *mid;
    }
    return out;
}

namespace {

double cloud_radius(const std::vector<double>& n, const Grid1D& grid, double edge_fraction) {
    const double peak = *std::max_element(n.begin(), n.end());
    double r = 0.0;
    for (int j = 0; j < grid.size(); ++j)
        if (n[j] > edge_fraction * peak) r = std::max(r, std::abs(grid.z(j)));
    return r;
}

// Sub-grid position of a sampled minimum from the parabola through its neighbours.
double refine_minimum(const std::vector<double>& n, const Grid1D& grid, int j) {
    const int m = grid.size();
    if (j <= 0 || j >= m - 1) return grid.z(j);
    const double a = n[j - 1], b = n[j], c = n[j + 1];
    const double den = a - 2.0 * b + c;
    const double off = den > 0.0 ? 0.5 * (a - c) / den : 0.0;
    return grid.z(j) + std::clamp(off, -0.5, 0.5) * grid.dz();
}

}  // namespace

std::vector<int> find_gray_minima(const std::vector<double>& n, const Grid1D& grid,
                                  const TrackOptions& opts) {
    const double R = cloud_radius(n, grid, opts.edge_fraction);
    const auto env = moving_median(n, grid.dz(), opts.envelope_half_width);
    std::vector<int> out;
    for (int j = 1; j + 1 < grid.size(); ++j) {
        if (std::abs(grid.z(j)) >= opts.window_fraction * R) continue;
        if (!(n[j] < n[j - 1] && n[j] <= n[j + 1])) continue;
        if (n[j] <= opts.depth_threshold * env[j]) out.push_back(j);
    }
    return out;
}

std::vector<const SolitonTrack*> TrackResult::persistent(double min_lifetime) const {
    std::vector<const SolitonTrack*> out;
    for (const auto& t : tracks) {
        if (t.position.size() < 2) continue;
        const double life = t.position.times.back() - t.position.times.front();
        if (life >= min_lifetime * frame_span) out.push_back(&t);
    }
    return out;
}

TrackResult track_minima(const SnapshotSeries& snaps, const TrackOptions& opts) {
    if (snaps.empty()) return {};
    std::vector<std::vector<double>> dens;
    dens.reserve(snaps.size());
    for (const auto& f : snaps.frames) dens.push_back(f.density_B());
    return track_minima(snaps.times(), dens, *snaps.frames.front().psi_B.grid, opts);
}

TrackResult track_minima(const std::vector<double>& times,
                         const std::vector<std::vector<double>>& densities, const Grid1D& grid,
                         const TrackOptions& opts) {
    if (times.size() != densities.size())
        throw std::invalid_argument("track_minima: times and frames differ in length");
    TrackResult res;
    res.n_frames = times.size();
    if (times.empty()) return res;
    res.frame_span = times.back() - times.front();

    struct Active {
        std::size_t id;
        double pos, vel;
        std::size_t last_frame;
    };
    struct Raw {
        std::vector<std::size_t> frames;
        std::vector<double> pos;
        bool lost = false;
    };
    std::vector<Raw> raw;
    std::vector<Active> active;

    // Gate: a soliton cannot outrun the sound speed by much; allow generous slack.
    const double gate_speed = 4.0;

    for (std::size_t f = 0; f < times.size(); ++f) {
        const auto idx = find_gray_minima(densities[f], grid, opts);
        std::vector<double> cand;
        for (int j : idx) cand.push_back(refine_minimum(densities[f], grid, j));

        // drop tracks that have been missing too long
        std::erase_if(active, [&](const Active& a) {
            if (f - a.last_frame > static_cast<std::size_t>(opts.max_gap)) {
                raw[a.id].lost = true;
                return true;
            }
            return false;
        });

        struct Pair {
            double d;
            std::size_t a, c;
        };
        std::vector<Pair> pairs;
        for (std::size_t a = 0; a < active.size(); ++a) {
            const double dt = times[f] - times[active[a].last_frame];
            const double pred = active[a].pos + active[a].vel * dt;
            const double gate = gate_speed * dt + 2.0 * grid.dz();
            for (std::size_t c = 0; c < cand.size(); ++c) {
                const double d = std::abs(cand[c] - pred);
                if (d <= gate) pairs.push_back({d, a, c});
            }
        }
        std::sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) {
            if (x.d != y.d) return x.d < y.d;
            if (x.a != y.a) return x.a < y.a;
            return x.c < y.c;
        });
        std::vector<bool> a_used(active.size(), false), c_used(cand.size(), false);
        for (const auto& p : pairs) {
            if (a_used[p.a] || c_used[p.c]) continue;
            a_used[p.a] = c_used[p.c] = true;
            auto& a = active[p.a];
            const double dt = times[f] - times[a.last_frame];
            const double v = (cand[p.c] - a.pos) / dt;
            // first link fixes the velocity; later ones are lightly smoothed
            a.vel = raw[a.id].frames.size() == 1 ? v : 0.5 * (a.vel + v);
            a.pos = cand[p.c];
            a.last_frame = f;
            raw[a.id].frames.push_back(f);
            raw[a.id].pos.push_back(cand[p.c]);
        }
        for (std::size_t c = 0; c < cand.size(); ++c) {
            if (c_used[c]) continue;
            raw.push_back({{f}, {cand[c]}, false});
            active.push_back({raw.size() - 1, cand[c], 0.0, f});
        }
    }

    // Fill gaps by linear interpolation so each track is uniformly sampled.
    for (auto& r : raw) {
        SolitonTrack t;
        t.lost = r.lost;
        t.position.label = "soliton_z";
        for (std::size_t i = 0; i < r.frames.size(); ++i) {
            if (i > 0) {
                const std::size_t f0 = r.frames[i - 1], f1 = r.frames[i];
                for (std::size_t g = f0 + 1; g < f1; ++g) {
                    const double s = (times[g] - times[f0]) / (times[f1] - times[f0]);
                    t.position.times.push_back(times[g]);
                    t.position.values.push_back(r.pos[i - 1] + s * (r.pos[i] - r.pos[i - 1]));
                }
            }
            t.position.times.push_back(times[r.frames[i]]);
            t.position.values.push_back(r.pos[i]);
        }
        res.tracks.push_back(std::move(t));
    }
    return res;
}

int count_fringes(const std::vector<double>& n) {
    if (n.size() < 3) return 0;
    const double peak = *std::max_element(n.begin(), n.end());
    if (!(peak > 0.0)) return 0;
    const double floor = 0.01 * peak;
    int count = 0;
    const std::size_t m = n.size();
    for (std::size_t j = 1; j + 1 < m; ++j) {
        if (!(n[j] > n[j - 1]) || n[j] <= floor) continue;
        // walk across a plateau, then require a descent
        std::size_t k = j;
        while (k + 1 < m && n[k + 1] == n[j]) ++k;
        if (k + 1 < m && n[k + 1] < n[j]) ++count;
        j = k;
    }
    return count;
}

// ---------------------------------------------------------------------------
// Variational breathing width

double variational_width_at(double A0, double alpha, double t) {
    const double a4 = std::pow(alpha, 4), b4 = std::pow(A0, 4);
    return std::sqrt((a4 + (b4 - a4) * std::cos(2.0 * t) + b4) / (2.0 * A0 * A0));
}

VariationalWidth variational_width(double A0, double alpha, const std::vector<double>& t_grid) {
    if (!(A0 > 0.0) || !(alpha > 0.0)) throw std::invalid_argument("widths must be positive");
    VariationalWidth vw;
    vw.A0 = A0;
    vw.alpha = alpha;
    vw.closed_form.label = "A_closed_form";
    vw.numeric.label = "A_rk4";

    const double a4 = std::pow(alpha, 4);
    auto accel = [a4](double A) { return a4 / (A * A * A) - A; };

    double A = A0, V = 0.0, t = t_grid.empty() ? 0.0 : t_grid.front();
    for (double target : t_grid) {
        const double span = target - t;
        const long sub = std::max(1L, static_cast<long>(std::ceil(std::abs(span) / 1e-3)));
        const double h = span / sub;
        for (long s = 0; s < sub && h != 0.0; ++s) {
            const double k1a = V, k1v = accel(A);
            const double k2a = V + 0.5 * h * k1v, k2v = accel(A + 0.5 * h * k1a);
            const double k3a = V + 0.5 * h * k2v, k3v = accel(A + 0.5 * h * k2a);
            const double k4a = V + h * k3v, k4v = accel(A + h * k3a);
            A += h / 6.0 * (k1a + 2 * k2a + 2 * k3a + k4a);
            V += h / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
        }
        t = target;
        const double exact = variational_width_at(A0, alpha, target);
        vw.closed_form.times.push_back(target);
        vw.closed_form.values.push_back(exact);
        vw.numeric.times.push_back(target);
        vw.numeric.values.push_back(A);
        vw.max_discrepancy = std::max(vw.max_discrepancy, std::abs(A - exact));
    }
    return vw;
}

// ---------------------------------------------------------------------------
// Shock diagnostics

namespace {
double max_gradient(const std::vector<double>& n, double dz) {
    double g = 0.0;
    for (std::size_t j = 1; j + 1 < n.size(); ++j)
        g = std::max(g, std::abs(n[j + 1] - n[j - 1]) / (2.0 * dz));
    return g;
}
}  // namespace

ShockReport detect_shock(const SnapshotSeries& snaps, double factor, double window) {
    ShockReport r;
    if (snaps.empty()) return r;
    const double dz = snaps.frames.front().psi_B.grid->dz();
    const double t0 = snaps.frames.front().time;
    r.equilibrium_max_gradient = max_gradient(snaps.frames.front().density_B(), dz);
    for (const auto& f : snaps.frames) {
        if (f.time - t0 >= window) break;
        const double g = max_gradient(f.density_B(), dz);
        r.peak_gradient = std::max(r.peak_gradient, g);
        if (!r.tripped && g > factor * r.equilibrium_max_gradient) {
            r.tripped = true;
            r.trip_time = f.time - t0;
        }
    }
    return r;
}

ObservableSeries disturbance_front(const SnapshotSeries& snaps, const TrackOptions& opts) {
    ObservableSeries s;
    s.label = "disturbance_z";
    if (snaps.empty()) return s;
    const auto& grid = *snaps.frames.front().psi_B.grid;
    for (const auto& f : snaps.frames) {
        const auto n = f.density_B();
        const auto env = moving_median(n, grid.dz(), opts.envelope_half_width);
        double best = 2.0, where = 0.0;
        for (int j : find_gray_minima(n, grid, opts)) {
            if (grid.z(j) <= 0.0 || !(env[j] > 0.0)) continue;
            if (n[j] / env[j] < best) {
                best = n[j] / env[j];
                where = refine_minimum(n, grid, j);
            }
        }
        if (best > 1.0) continue;  // nothing detected in this frame
        s.times.push_back(f.time);
        s.values.push_back(where);
    }
    return s;
}

CollisionReport disturbance_collision(const ObservableSeries& front, double return_fraction) {
    CollisionReport r;
    if (front.size() < 3) return r;
    // outward leg: first local maximum of the position
    std::size_t k = 1;
    while (k < front.size() && front.values[k] >= front.values[k - 1]) ++k;
    const std::size_t turn = k - 1;
    r.z_turn = front.values[turn];
    r.t_turn = front.times[turn];
    r.outward = front.values[turn] > front.values.front();
    for (std::size_t i = turn + 1; i < front.size(); ++i)
        if (front.values[i] < return_fraction * r.z_turn) {
            r.t_return = front.times[i];
            r.recollided = r.outward;
            break;
        }
    return r;
}

}  // namespace becimp
