#pragma once

#include <string>
#include <vector>

#include "becimp/solver.hpp"

namespace becimp {

struct ObservableSeries {
    std::vector<double> times;
    std::vector<double> values;
    std::string label;

    std::size_t size() const { return times.size(); }
    /// Throws std::invalid_argument unless lengths match and times increase.
    void validate() const;
};

enum class Species { Condensate, Impurity };

/// n_with - n_without, pointwise.
std::vector<double> depleted_density(const std::vector<double>& n_with,
                                     const std::vector<double>& n_without);

/// m_eff / m_I = alpha^2 / (2 sigma^2) with sigma^2 = <z^2> - <z>^2.
double effective_mass_ratio(const ComplexField& psi_I, double alpha);

/// RMS width sqrt(<z^2>) of one species per snapshot.
ObservableSeries width_series(const SnapshotSeries& snaps, Species species);

/// Peak of the mean-subtracted amplitude spectrum, as an angular frequency.
///
/// The spectrum is evaluated on a grid 16x finer than the DFT bin spacing
/// (zero padding) and refined by a parabola through the peak sample and its
/// neighbours.  Throws std::invalid_argument for non-uniform sampling, fewer
/// than 8 samples, a constant series, or fewer than two periods in the window.
double dominant_frequency(const ObservableSeries& series);

struct TrackOptions {
    double window_fraction = 0.9;   // of the instantaneous cloud radius
    double depth_threshold = 0.8;   // minimum / envelope
    double envelope_half_width = 0.5;
    int max_gap = 3;                // frames a track may go undetected
    /// Minimum persistence, as a fraction of the frames, for a track to count
    /// in `persistent()`.
    double min_lifetime = 0.5;
    /// Cloud radius from the density: outermost point above this fraction of the peak.
    double edge_fraction = 0.05;
};

struct SolitonTrack {
    ObservableSeries position;
    bool lost = false;  // terminated by a gap longer than max_gap
};

struct TrackResult {
    std::vector<SolitonTrack> tracks;
    std::size_t n_frames = 0;
    double frame_span = 0.0;

    /// Tracks present for at least min_lifetime of the frame span.
    std::vector<const SolitonTrack*> persistent(double min_lifetime) const;
};

/// Detects density minima deeper than depth_threshold x local median envelope
/// and links them frame to frame by nearest neighbour, predicted with each
/// track's last velocity.
TrackResult track_minima(const SnapshotSeries& snaps, const TrackOptions& opts = {});
/// Same on a plain space-time density matrix (rows = frames).
TrackResult track_minima(const std::vector<double>& times,
                         const std::vector<std::vector<double>>& densities,
                         const Grid1D& grid, const TrackOptions& opts = {});

/// Minima of one density frame passing the depth and window tests.
std::vector<int> find_gray_minima(const std::vector<double>& n, const Grid1D& grid,
                                  const TrackOptions& opts = {});

/// Local maxima above 1 % of the peak (plateaus count once).
int count_fringes(const std::vector<double>& density);

/// Breathing width of the odd Gaussian trial state: A'' - alpha^4/A^3 + A = 0.
struct VariationalWidth {
    double A0 = 0.0;
    double alpha = 0.0;
    ObservableSeries closed_form;
    ObservableSeries numeric;
    double max_discrepancy = 0.0;
};

/// Closed-form A(t).
double variational_width_at(double A0, double alpha, double t);

/// Both the closed form and an RK4 integration (internal step <= 1e-3) on t_grid.
VariationalWidth variational_width(double A0, double alpha, const std::vector<double>& t_grid);

struct ShockReport {
    double equilibrium_max_gradient = 0.0;
    double peak_gradient = 0.0;
    double trip_time = -1.0;  // first time the gradient exceeded the factor; < 0 if never
    bool tripped = false;
};

/// Steep-gradient detector: max |dn/dz| exceeding factor x its t = 0 value
/// within t < window.
ShockReport detect_shock(const SnapshotSeries& snaps, double factor = 5.0, double window = 0.1);

/// Position (z > 0) of the deepest gray minimum of the condensate, per frame;
/// frames without one are skipped.
ObservableSeries disturbance_front(const SnapshotSeries& snaps, const TrackOptions& opts = {});

struct CollisionReport {
    double z_turn = 0.0;    // outermost point of the first outward leg
    double t_turn = 0.0;
    double t_return = -1.0; // first time back inside return_fraction * z_turn
    bool outward = false;
    bool recollided = false;
};

/// Out-and-back test on a disturbance_front series.
CollisionReport disturbance_collision(const ObservableSeries& front, double return_fraction = 0.3);

/// Sliding median of half-width `half_width` (in grid units of z).
std::vector<double> moving_median(const std::vector<double>& v, double dz, double half_width);

}  // namespace becimp
