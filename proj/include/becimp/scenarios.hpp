#pragma once

#include <iosfwd>
#include <limits>
#include <vector>

#include "becimp/config.hpp"
#include "becimp/observables.hpp"
#include "becimp/stationary.hpp"

namespace becimp {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitBlowup = 3;
inline constexpr int kExitUnconverged = 4;

/// Same parameters with the interspecies coupling removed.
ModelParams uncoupled(const ModelParams& p);

struct QuenchResult {
    RelaxationReport equilibrium;
    SnapshotSeries series;
    TrackResult tracks;
    /// Persistent tracks only, in track order; NaN where too short to analyse.
    std::vector<double> soliton_frequencies;
    ObservableSeries width_I;
    ObservableSeries width_variational;
    double breathing_frequency = std::numeric_limits<double>::quiet_NaN();
    double variational_frequency = std::numeric_limits<double>::quiet_NaN();
    double fringe_time = 0.0;  // frame closest to the requested time
    int fringes = 0;
    ShockReport shock;
    ObservableSeries front;
    CollisionReport collision;
    long steps = 0;

    std::size_t n_persistent(double min_lifetime) const { return tracks.persistent(min_lifetime).size(); }
};

/// Relax with `params`, then switch the coupling to g_after (traps kept) and
/// evolve.  The dynamics are skipped when the relaxation does not converge;
/// a blow-up leaves series.aborted set.
QuenchResult run_quench(const ModelParams& params, GridPtr grid, const RelaxOptions& relax,
                        const EvolveSpec& evolve, double g_after, const TrackOptions& tracking,
                        double fringe_time);

/// Executes one scenario and writes its outputs (manifest last).  Returns the
/// process exit code; progress goes to `log`.
int run(const RunConfig& cfg, std::ostream& log);

}  // namespace becimp
