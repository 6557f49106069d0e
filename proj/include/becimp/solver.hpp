#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "becimp/grid.hpp"

namespace becimp {

/// Dimensionless couplings of the condensate (B) and impurity (I) equations.
///
/// g_IB is the per-pair interspecies coupling.  Unless overridden, the
/// condensate feels G_IB = N_I * g_IB and the impurity feels G_BI = N_B * g_IB.
/// G_BI_ratio replaces the N_B factor (G_BI = ratio * g_IB) and, unlike the
/// overrides, survives coupling quenches.
struct ModelParams {
    double G_B = 4.71;
    double g_IB = 0.0;
    int N_B = 200;
    int N_I = 1;
    double alpha = 0.808;
    bool trap_B_on = true;
    bool trap_I_on = true;
    std::optional<double> G_IB_override;
    std::optional<double> G_BI_override;
    std::optional<double> G_BI_ratio;

    double G_IB() const { return G_IB_override ? *G_IB_override : N_I * g_IB; }
    double G_BI() const {
        if (G_BI_override) return *G_BI_override;
        return (G_BI_ratio ? *G_BI_ratio : N_B) * g_IB;
    }

    /// Throws std::invalid_argument on alpha <= 0, N_B < 1 or N_I < 1.
    void validate() const;
};

struct SystemState {
    ComplexField psi_B;
    ComplexField psi_I;
    double time = 0.0;

    const Grid1D& grid() const { return *psi_B.grid; }
};

/// Piecewise-constant course of the trap switches and interspecies coupling.
struct QuenchSegment {
    double t_start = 0.0;
    double t_end = 0.0;
    bool trap_B_on = true;
    bool trap_I_on = true;
    double g_IB = 0.0;
    std::optional<double> G_IB_override;
    std::optional<double> G_BI_override;
};

class QuenchSchedule {
public:
    QuenchSchedule() = default;
    explicit QuenchSchedule(std::vector<QuenchSegment> segments);

    /// Keeps `params` unchanged up to t_final.
    static QuenchSchedule constant(const ModelParams& params, double t_final);
    /// Both traps switched off at t = 0, coupling kept.
    static QuenchSchedule time_of_flight(const ModelParams& params, double t_final);
    /// Coupling set to g_after at t = 0 (overrides dropped), traps unchanged.
    static QuenchSchedule coupling_quench(const ModelParams& params, double g_after,
                                          double t_final);

    const std::vector<QuenchSegment>& segments() const { return segments_; }
    double t_end() const { return segments_.empty() ? 0.0 : segments_.back().t_end; }
    /// Segment active on [t_start, t_end); the last one also owns t_end.
    const QuenchSegment& at(double t) const;
    /// `base` with the trap flags and couplings of `seg` applied.
    static ModelParams apply(const ModelParams& base, const QuenchSegment& seg);

private:
    std::vector<QuenchSegment> segments_;
};

/// Potential felt by the condensate: z^2/2 [trap] + G_B|psi_B|^2 + G_IB|psi_I|^2.
std::vector<double> potential_B(const SystemState& s, const ModelParams& p);
/// Potential felt by the impurity: z^2/(2 alpha^2) [trap] + G_BI|psi_B|^2.
std::vector<double> potential_I(const SystemState& s, const ModelParams& p);

struct Energies {
    double E_B = 0.0;
    double E_I = 0.0;
    double total() const { return E_B + E_I; }
};

/// GP energy of the condensate and single-particle energy of the impurity,
/// kinetic parts evaluated spectrally.
Energies energy(const SystemState& s, const ModelParams& p);

/// Strang split-step propagator for the coupled pair.
///
/// One step: half potential kick on both species from the current densities,
/// full kinetic step (mass factor 1 for B, alpha^2 for I), half kick from the
/// updated densities.  Imaginary steps renormalize both fields; zeno steps
/// project psi_I onto the odd subspace.  Kinetic factors are cached per
/// (dt, alpha, imaginary).
class Propagator {
public:
    explicit Propagator(GridPtr grid);

    void step(SystemState& s, const ModelParams& p, double dt, bool imaginary, bool zeno);

private:
    void ensure_kinetic(double dt, double alpha, bool imaginary);
    void kick(std::vector<cplx>& psi, const std::vector<double>& V, cplx half_dt) const;

    GridPtr grid_;
    std::vector<cplx> kin_B_;
    std::vector<cplx> kin_I_;
    double cached_dt_ = 0.0;
    double cached_alpha_ = 0.0;
    bool cached_imag_ = false;
    bool have_cache_ = false;
};

/// Throws NumericalError when any value is non-finite.
SystemState step(const SystemState& s, const ModelParams& p, double dt, bool imaginary,
                 bool zeno);

struct Snapshot {
    double time = 0.0;
    ComplexField psi_B;
    ComplexField psi_I;
    ModelParams params;  // parameters in force at this time

    std::vector<double> density_B() const { return density(psi_B); }
    std::vector<double> density_I() const { return density(psi_I); }
};

struct SnapshotSeries {
    std::vector<Snapshot> frames;
    double dt = 0.0;
    int stride = 1;
    bool aborted = false;  // blow-up with keep_partial; frames hold what was reached
    std::string abort_reason;

    bool empty() const { return frames.empty(); }
    std::size_t size() const { return frames.size(); }
    std::vector<double> times() const;
};

struct EvolveOptions {
    int snapshot_stride = 1;
    bool zeno = false;
    bool imaginary = false;
    bool keep_partial = false;  // return frames so far instead of throwing on blow-up
};

/// Real-time (default) evolution under `schedule` from state.time up to t_final.
/// Segment boundaries are hit exactly by shortening the last step before them.
/// The first frame is the input state.  Throws NumericalError on blow-up,
/// std::invalid_argument when the schedule does not cover [0, t_final].
SnapshotSeries evolve(SystemState state, const ModelParams& params,
                      const QuenchSchedule& schedule, double t_final, double dt,
                      const EvolveOptions& opts = {});

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

bool all_finite(const ComplexField& f);

}  // namespace becimp
