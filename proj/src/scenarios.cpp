#include "becimp/scenarios.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <mutex>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "becimp/analytics.hpp"
#include "becimp/io.hpp"

namespace becimp {

ModelParams uncoupled(const ModelParams& p) {
    ModelParams q = p;
    q.g_IB = 0.0;
    q.G_IB_override.reset();
    q.G_BI_override.reset();
    return q;
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double frequency_or_nan(const ObservableSeries& s) {
    try {
        return dominant_frequency(s);
    } catch (const std::invalid_argument&) {
        return kNaN;
    }
}

bool is_coupled(const ModelParams& p) { return p.G_IB() != 0.0 || p.G_BI() != 0.0; }

}  // namespace

QuenchResult run_quench(const ModelParams& params, GridPtr grid, const RelaxOptions& relax,
                        const EvolveSpec& spec, double g_after, const TrackOptions& tracking,
                        double fringe_time) {
    QuenchResult q;
    q.equilibrium = relax_coupled(params, grid, relax);
    if (!q.equilibrium.converged) return q;

    const auto schedule = QuenchSchedule::coupling_quench(params, g_after, spec.t_final);
    EvolveOptions eo;
    eo.snapshot_stride = spec.snapshot_stride;
    eo.zeno = spec.zeno;
    eo.keep_partial = true;
    q.series = evolve(q.equilibrium.final_state, params, schedule, spec.t_final, spec.dt, eo);
    q.steps = static_cast<long>(std::ceil(spec.t_final / spec.dt - 1e-9));
    if (q.series.size() < 2) return q;

    q.tracks = track_minima(q.series, tracking);
    for (const auto* t : q.tracks.persistent(tracking.min_lifetime))
        q.soliton_frequencies.push_back(frequency_or_nan(t->position));

    q.width_I = width_series(q.series, Species::Impurity);
    q.breathing_frequency = frequency_or_nan(q.width_I);

    // odd Gaussian trial: <z^2> = 3/2 A^2
    const double A0 = q.width_I.values.front() / std::sqrt(1.5);
    const auto vw = variational_width(A0, params.alpha, q.width_I.times);
    q.width_variational = vw.closed_form;
    for (auto& v : q.width_variational.values) v *= std::sqrt(1.5);
    q.width_variational.label = "W_variational";
    q.variational_frequency = frequency_or_nan(q.width_variational);

    std::size_t best = 0;
    for (std::size_t i = 0; i < q.series.size(); ++i)
        if (std::abs(q.series.frames[i].time - fringe_time) <
            std::abs(q.series.frames[best].time - fringe_time))
            best = i;
    q.fringe_time = q.series.frames[best].time;
    q.fringes = count_fringes(q.series.frames[best].density_I());
    q.shock = detect_shock(q.series);
    q.front = disturbance_front(q.series, tracking);
    q.collision = disturbance_collision(q.front);
    return q;
}

namespace {

using Clock = std::chrono::steady_clock;

struct Status {
    int exit_code = kExitOk;
    bool converged = true;
    bool aborted = false;
    std::string abort_reason;
    long steps = 0;
    long relax_iterations = 0;

    void unconverged() {
        converged = false;
        if (exit_code == kExitOk) exit_code = kExitUnconverged;
    }
    void blowup(const std::string& why) {
        aborted = true;
        if (abort_reason.empty()) abort_reason = why;
        exit_code = kExitBlowup;
    }
    void merge(const Status& o) {
        if (!o.converged) unconverged();
        if (o.aborted) blowup(o.abort_reason);
        steps += o.steps;
        relax_iterations += o.relax_iterations;
    }
};

std::string kv_line(const std::string& k, const std::string& v) { return k + " = " + v + "\n"; }
std::string kv_line(const std::string& k, double v) { return kv_line(k, format_number(v)); }
std::string kv_line(const std::string& k, bool v) { return kv_line(k, std::string(v ? "true" : "false")); }
std::string kv_line(const std::string& k, int v) { return kv_line(k, std::to_string(v)); }
std::string kv_line(const std::string& k, long v) { return kv_line(k, std::to_string(v)); }
std::string kv_line(const std::string& k, std::size_t v) { return kv_line(k, std::to_string(v)); }

void write_energy_trace(const fs::path& path, const std::vector<EnergySample>& trace) {
    std::vector<std::vector<double>> rows;
    rows.reserve(trace.size());
    for (const auto& e : trace) rows.push_back({e.tau, e.E_B, e.E_I});
    write_table(path, {"tau", "E_B", "E_I"}, rows);
}

void write_wavefunctions(const fs::path& dir, const SystemState& s) {
    const auto& g = s.grid();
    std::vector<std::vector<double>> rows;
    for (int j = 0; j < g.size(); ++j)
        rows.push_back({g.z(j), s.psi_B[j].real(), s.psi_B[j].imag(), s.psi_I[j].real(),
                        s.psi_I[j].imag()});
    write_table(dir / "wavefunctions.csv", {"z", "re_psi_B", "im_psi_B", "re_psi_I", "im_psi_I"}, rows);
}

// ---------------------------------------------------------------------------
// relax

struct RelaxPoint {
    RelaxationReport with;
    ImprintDescriptor imprint;
    double m_eff = kNaN;
    bool imprint_valid = false;
};

RelaxPoint relax_point(const RunConfig& cfg, const ModelParams& params, GridPtr grid,
                       const fs::path& dir, Status& st, std::ostream* log) {
    RelaxPoint pt;
    pt.with = relax_coupled(params, grid, cfg.relax);
    st.relax_iterations += pt.with.iterations;
    if (!pt.with.converged) st.unconverged();

    RelaxationReport ref;
    if (is_coupled(params)) {
        ref = relax_coupled(uncoupled(params), grid, cfg.relax);
        st.relax_iterations += ref.iterations;
        if (!ref.converged) st.unconverged();
    } else {
        ref = pt.with;
    }
    if (log)
        *log << "relax g_IB=" << params.g_IB << " iterations=" << pt.with.iterations
             << " converged=" << pt.with.converged << "\n";

    const auto nB = density(pt.with.final_state.psi_B);
    const auto nI = density(pt.with.final_state.psi_I);
    const auto n0 = density(ref.final_state.psi_B);
    const auto dd = depleted_density(nB, n0);
    std::vector<std::vector<double>> rows;
    for (int j = 0; j < grid->size(); ++j) rows.push_back({grid->z(j), nB[j], nI[j], n0[j], dd[j]});
    write_table(dir / "equilibrium.csv", {"z", "n_B", "n_I", "n_B_ref", "depleted_B"}, rows);
    write_energy_trace(dir / "energy_trace.csv", pt.with.energy_trace);
    if (cfg.write_wavefunctions) write_wavefunctions(dir, pt.with.final_state);

    pt.m_eff = effective_mass_ratio(pt.with.final_state.psi_I, params.alpha);
    const auto e = energy(pt.with.final_state, params);
    std::string s;
    s += kv_line("converged", pt.with.converged && ref.converged);
    s += kv_line("iterations", pt.with.iterations);
    s += kv_line("E_B", e.E_B);
    s += kv_line("E_I", e.E_I);
    s += kv_line("G_IB", params.G_IB());
    s += kv_line("G_BI", params.G_BI());
    s += kv_line("peak_density_B", *std::max_element(nB.begin(), nB.end()));
    s += kv_line("m_eff_ratio", pt.m_eff);
    if (pt.with.converged && ref.converged) {
        pt.imprint = classify_imprint(pt.with, ref);
        pt.imprint_valid = true;
        s += kv_line("n_bumps", pt.imprint.n_bumps);
        s += kv_line("n_dips", pt.imprint.n_dips);
        s += kv_line("fragmented", pt.imprint.fragmented);
    } else {
        s += kv_line("imprint", std::string("unavailable (relaxation not converged)"));
    }
    write_file(dir / "imprint.txt", s);
    return pt;
}

void scenario_relax(const RunConfig& cfg, Status& st, std::ostream& log) {
    auto grid = make_grid(cfg.n_points, cfg.half_width);
    relax_point(cfg, cfg.model, grid, cfg.output_dir, st, &log);
}

// ---------------------------------------------------------------------------
// tof

void scenario_tof(const RunConfig& cfg, Status& st, std::ostream& log) {
    auto grid = make_grid(cfg.n_points, cfg.half_width);
    const auto& dir = cfg.output_dir;
    const auto with = relax_coupled(cfg.model, grid, cfg.relax);
    const auto ref_params = uncoupled(cfg.model);
    const auto ref = is_coupled(cfg.model) ? relax_coupled(ref_params, grid, cfg.relax) : with;
    st.relax_iterations += with.iterations + (is_coupled(cfg.model) ? ref.iterations : 0);
    log << "tof: relaxed (" << with.iterations << " iterations)\n";
    if (!with.converged || !ref.converged) {
        st.unconverged();
        write_energy_trace(dir / "energy_trace.csv", with.energy_trace);
        return;
    }

    EvolveOptions eo;
    eo.snapshot_stride = cfg.evolve.snapshot_stride;
    eo.zeno = cfg.evolve.zeno;
    eo.keep_partial = true;
    const double T = cfg.evolve.t_final;
    const auto s_with = evolve(with.final_state, cfg.model,
                               QuenchSchedule::time_of_flight(cfg.model, T), T, cfg.evolve.dt, eo);
    const auto s_ref = evolve(ref.final_state, ref_params,
                              QuenchSchedule::time_of_flight(ref_params, T), T, cfg.evolve.dt, eo);
    st.steps += 2 * static_cast<long>(std::ceil(T / cfg.evolve.dt - 1e-9));
    if (s_with.aborted) st.blowup(s_with.abort_reason);
    if (s_ref.aborted) st.blowup("reference run: " + s_ref.abort_reason);

    write_snapshot_series(s_with, dir);
    const auto rows = std::min(s_with.size(), s_ref.size());
    Matrix dd = density_matrix(s_with, false);
    const auto mref = density_matrix(s_ref, false);
    dd.rows = rows;
    dd.data.resize(rows * dd.cols);
    for (std::size_t i = 0; i < dd.data.size(); ++i) dd.data[i] -= mref.data[i];
    write_matrix_csv(dir / "depleted_B.csv", dd);
    write_matrix_binary(dir / "depleted_B.bin", dd);

    const auto wB = width_series(s_with, Species::Condensate);
    const auto wI = width_series(s_with, Species::Impurity);
    std::vector<std::vector<double>> wrows;
    for (std::size_t i = 0; i < wB.size(); ++i) wrows.push_back({wB.times[i], wB.values[i], wI.values[i]});
    write_table(dir / "widths.csv", {"t", "W_B", "W_I"}, wrows);
}

// ---------------------------------------------------------------------------
// quench

struct QuenchRow {
    double g_IB = 0.0;
    double alpha = 0.0;
    std::size_t n_tracks = 0;
    double soliton_frequency = kNaN;  // mean over persistent tracks
    double breathing = kNaN;
    double variational = kNaN;
    int fringes = 0;
    bool shock = false;
};

QuenchRow quench_point(const RunConfig& cfg, const ModelParams& params, const fs::path& dir,
                       Status& st, std::ostream* log) {
    auto grid = make_grid(cfg.n_points, cfg.half_width);
    const auto q = run_quench(params, grid, cfg.relax, cfg.evolve, cfg.g_after, cfg.tracking,
                              cfg.fringe_time);
    st.relax_iterations += q.equilibrium.iterations;
    st.steps += q.steps;
    QuenchRow row;
    row.g_IB = params.g_IB;
    row.alpha = params.alpha;
    write_energy_trace(dir / "energy_trace.csv", q.equilibrium.energy_trace);
    if (!q.equilibrium.converged) {
        st.unconverged();
        if (log) *log << "quench: relaxation did not converge, dynamics skipped\n";
        return row;
    }
    if (q.series.aborted) st.blowup(q.series.abort_reason);
    if (log)
        *log << "quench g_IB=" << params.g_IB << " alpha=" << params.alpha
             << " frames=" << q.series.size() << "\n";

    write_snapshot_series(q.series, dir);

    std::vector<std::vector<double>> wrows;
    for (std::size_t i = 0; i < q.width_I.size(); ++i)
        wrows.push_back({q.width_I.times[i], q.width_I.values[i], q.width_variational.values[i]});
    write_table(dir / "widths.csv", {"t", "W_I", "W_variational"}, wrows);

    std::vector<std::vector<double>> trows;
    const auto persistent = q.tracks.persistent(cfg.tracking.min_lifetime);
    for (std::size_t k = 0; k < persistent.size(); ++k) {
        const auto& pos = persistent[k]->position;
        for (std::size_t i = 0; i < pos.size(); ++i)
            trows.push_back({static_cast<double>(k), pos.times[i], pos.values[i]});
    }
    write_table(dir / "solitons.csv", {"track", "t", "z"}, trows);

    const auto& fr = *std::find_if(q.series.frames.begin(), q.series.frames.end(),
                                   [&](const Snapshot& s) { return s.time == q.fringe_time; });
    const auto nI = fr.density_I();
    std::vector<std::vector<double>> frows;
    for (int j = 0; j < grid->size(); ++j) frows.push_back({grid->z(j), nI[j]});
    write_table(dir / "fringes.csv", {"z", "n_I"}, frows);

    row.n_tracks = persistent.size();
    double fsum = 0.0;
    int fcount = 0;
    for (double f : q.soliton_frequencies)
        if (std::isfinite(f)) fsum += f, ++fcount;
    if (fcount) row.soliton_frequency = fsum / fcount;
    row.breathing = q.breathing_frequency;
    row.variational = q.variational_frequency;
    row.fringes = q.fringes;
    row.shock = q.shock.tripped;

    std::string s;
    s += kv_line("g_IB", params.g_IB);
    s += kv_line("g_IB_after", cfg.g_after);
    s += kv_line("alpha", params.alpha);
    s += kv_line("frames", q.series.size());
    s += kv_line("aborted", q.series.aborted);
    s += kv_line("tracks_detected", q.tracks.tracks.size());
    s += kv_line("tracks_persistent", persistent.size());
    for (std::size_t k = 0; k < q.soliton_frequencies.size(); ++k)
        s += kv_line("soliton_frequency_" + std::to_string(k), q.soliton_frequencies[k]);
    s += kv_line("breathing_frequency", q.breathing_frequency);
    s += kv_line("variational_frequency", q.variational_frequency);
    s += kv_line("fringe_time", q.fringe_time);
    s += kv_line("fringes", q.fringes);
    s += kv_line("shock_tripped", q.shock.tripped);
    s += kv_line("shock_trip_time", q.shock.trip_time);
    s += kv_line("shock_peak_gradient", q.shock.peak_gradient);
    s += kv_line("shock_equilibrium_gradient", q.shock.equilibrium_max_gradient);
    s += kv_line("disturbance_turn_z", q.collision.z_turn);
    s += kv_line("disturbance_turn_t", q.collision.t_turn);
    s += kv_line("disturbance_return_t", q.collision.t_return);
    s += kv_line("disturbance_recollided", q.collision.recollided);
    write_file(dir / "quench_summary.txt", s);
    return row;
}

/// Runs fn(i) for i in [0, n) on up to `workers` threads.  Results must go to
/// per-index slots, which keeps the output independent of scheduling.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
    const auto nthreads = static_cast<std::size_t>(std::max(1, std::min<int>(workers, static_cast<int>(n))));
    if (nthreads <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex err_mutex;
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < nthreads; ++t)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < n;) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(err_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

std::vector<std::vector<double>> quench_rows_table(const std::vector<QuenchRow>& rows) {
    std::vector<std::vector<double>> out;
    for (const auto& r : rows)
        out.push_back({r.g_IB, r.alpha, static_cast<double>(r.n_tracks), r.soliton_frequency,
                       r.breathing, r.variational, static_cast<double>(r.fringes),
                       r.shock ? 1.0 : 0.0});
    return out;
}

const std::vector<std::string> kQuenchColumns = {"g_IB", "alpha", "n_solitons", "soliton_frequency",
                                                 "breathing_frequency", "variational_frequency",
                                                 "fringes", "shock"};

template <typename MakeParams>
void quench_scan(const RunConfig& cfg, Status& st, std::ostream& log, std::size_t n,
                 const std::string& stem, const std::string& table, MakeParams make) {
    std::vector<QuenchRow> rows(n);
    std::vector<Status> status(n);
    std::mutex log_mutex;
    parallel_for(n, cfg.workers, [&](std::size_t i) {
        const auto dir = cfg.output_dir / (stem + "_" + std::to_string(i));
        fs::create_directories(dir);
        const auto p = make(i);
        try {
            rows[i] = quench_point(cfg, p, dir, status[i], nullptr);
        } catch (const NumericalError& e) {
            status[i].blowup(e.what());
            rows[i].g_IB = p.g_IB;
            rows[i].alpha = p.alpha;
        }
        std::lock_guard lock(log_mutex);
        log << stem << " point " << i << " done\n";
    });
    for (const auto& s : status) st.merge(s);
    write_table(cfg.output_dir / table, kQuenchColumns, quench_rows_table(rows));
}

void scenario_quench(const RunConfig& cfg, Status& st, std::ostream& log) {
    if (cfg.scan_g_IB.empty()) {
        quench_point(cfg, cfg.model, cfg.output_dir, st, &log);
        return;
    }
    quench_scan(cfg, st, log, cfg.scan_g_IB.size(), "g", "quench_scan.csv", [&](std::size_t i) {
        auto p = cfg.model;
        p.g_IB = cfg.scan_g_IB[i];
        return p;
    });
}

void scenario_mass_scan(const RunConfig& cfg, Status& st, std::ostream& log) {
    quench_scan(cfg, st, log, cfg.scan_alpha.size(), "alpha", "mass_scan.csv", [&](std::size_t i) {
        auto p = cfg.model;
        p.alpha = cfg.scan_alpha[i];
        return p;
    });
}

// ---------------------------------------------------------------------------
// coupling_scan

void scenario_coupling_scan(const RunConfig& cfg, Status& st, std::ostream& log) {
    const auto n = cfg.scan_g_IB.size();
    std::vector<RelaxPoint> pts(n);
    std::vector<Status> status(n);
    std::mutex log_mutex;
    parallel_for(n, cfg.workers, [&](std::size_t i) {
        auto grid = make_grid(cfg.n_points, cfg.half_width);
        auto p = cfg.model;
        p.g_IB = cfg.scan_g_IB[i];
        const auto dir = cfg.output_dir / ("g_" + std::to_string(i));
        fs::create_directories(dir);
        try {
            pts[i] = relax_point(cfg, p, grid, dir, status[i], nullptr);
        } catch (const NumericalError& e) {
            status[i].blowup(e.what());
        }
        std::lock_guard lock(log_mutex);
        log << "coupling_scan g_IB=" << p.g_IB << " done\n";
    });
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < n; ++i) {
        st.merge(status[i]);
        const auto& pt = pts[i];
        rows.push_back({cfg.scan_g_IB[i], pt.m_eff, pt.with.converged ? 1.0 : 0.0,
                        pt.imprint_valid ? double(pt.imprint.n_bumps) : kNaN,
                        pt.imprint_valid ? double(pt.imprint.n_dips) : kNaN,
                        pt.imprint_valid ? (pt.imprint.fragmented ? 1.0 : 0.0) : kNaN});
    }
    write_table(cfg.output_dir / "coupling_scan.csv",
                {"g_IB", "m_eff_ratio", "converged", "n_bumps", "n_dips", "fragmented"}, rows);
}

// ---------------------------------------------------------------------------
// zeno_decay

void scenario_zeno(const RunConfig& cfg, Status& st, std::ostream& log) {
    auto grid = make_grid(cfg.n_points, cfg.half_width);
    const auto& z = cfg.zeno;
    const auto trace = zeno_durability_experiment(grid, cfg.model.alpha, z.dtau, z.tau_max, z.zeno,
                                                  z.even_seed, z.sample_every);
    st.relax_iterations = static_cast<long>(std::llround(z.tau_max / z.dtau));
    std::vector<std::vector<double>> rows;
    for (const auto& e : trace) rows.push_back({e.tau, e.E_I});
    write_table(cfg.output_dir / "energy_trace.csv", {"tau", "E_I"}, rows);

    // decay onset: first sample below the midpoint of the two levels
    double onset = kNaN;
    for (const auto& e : trace)
        if (e.E_I < 1.0) {
            onset = e.tau;
            break;
        }
    std::string s;
    s += kv_line("zeno", z.zeno);
    s += kv_line("even_seed", z.even_seed);
    s += kv_line("E_I_initial", trace.front().E_I);
    s += kv_line("E_I_final", trace.back().E_I);
    s += kv_line("decay_onset_tau", onset);
    write_file(cfg.output_dir / "zeno_summary.txt", s);
    log << "zeno_decay: E_I " << trace.front().E_I << " -> " << trace.back().E_I << "\n";
}

// ---------------------------------------------------------------------------
// analyze

void scenario_analyze(const RunConfig& cfg, Status&, std::ostream& log) {
    const auto units = cfg.constants == "rounded_hbar" ? UnitConstants::rounded_hbar()
                                                       : UnitConstants::codata();
    const auto report = analyze(cfg.phys, units);
    std::string text = "# key computed quoted mismatch\n";
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& e : report) {
        const bool quoted = !std::isnan(e.quoted);
        text += e.key + " " + format_number(e.computed) + " " +
                (quoted ? format_number(e.quoted) : std::string("-")) + " " +
                (e.mismatch ? "MISMATCH" : "ok") + "\n";
        nlohmann::ordered_json row;
        row["computed"] = e.computed;
        if (quoted) row["quoted"] = e.quoted;
        else row["quoted"] = nullptr;
        row["mismatch"] = e.mismatch;
        j[e.key] = row;
    }
    write_file(cfg.output_dir / "analysis.txt", text);
    write_file(cfg.output_dir / "analysis.json", j.dump(2) + "\n");
    log << text;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& log) {
    const auto t0 = Clock::now();
    Status st;
    std::error_code ec;
    fs::create_directories(cfg.output_dir, ec);
    if (ec) {
        log << "error: cannot create " << cfg.output_dir << ": " << ec.message() << "\n";
        return kExitConfig;
    }
    write_file(cfg.output_dir / "resolved.cfg", cfg.resolved.to_text());

    try {
        switch (cfg.scenario) {
            case Scenario::Relax: scenario_relax(cfg, st, log); break;
            case Scenario::Tof: scenario_tof(cfg, st, log); break;
            case Scenario::Quench: scenario_quench(cfg, st, log); break;
            case Scenario::MassScan: scenario_mass_scan(cfg, st, log); break;
            case Scenario::CouplingScan: scenario_coupling_scan(cfg, st, log); break;
            case Scenario::ZenoDecay: scenario_zeno(cfg, st, log); break;
            case Scenario::Analyze: scenario_analyze(cfg, st, log); break;
        }
    } catch (const NumericalError& e) {
        st.blowup(e.what());
    }

    if (st.exit_code == kExitOk) {
        try {
            emit_plot_data(cfg.output_dir);
        } catch (const IoError& e) {
            log << "warning: " << e.what() << "\n";
        }
    }
    if (st.aborted) log << "numerical blow-up: " << st.abort_reason << " (partial outputs kept)\n";
    if (!st.converged) log << "relaxation did not converge\n";

    ManifestInfo mi;
    mi.scenario = to_string(cfg.scenario);
    mi.resolved_config = cfg.resolved.to_text();
    mi.wall_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    mi.n_points = cfg.n_points;
    mi.half_width = cfg.half_width;
    mi.steps = st.steps;
    mi.relax_iterations = st.relax_iterations;
    mi.converged = st.converged;
    mi.aborted = st.aborted;
    mi.abort_reason = st.abort_reason;
    mi.exit_code = st.exit_code;
    write_manifest(cfg.output_dir, mi);
    return st.exit_code;
}

}  // namespace becimp
