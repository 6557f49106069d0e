#pragma once

#include <vector>

#include "becimp/solver.hpp"

namespace becimp {

/// sqrt(2/(sqrt(pi) A^3)) z exp(-z^2/(2A^2)), exactly odd on the grid.
ComplexField trial_impurity(GridPtr grid, double width);

/// exp(-z^2/(2 w^2)) / (pi w^2)^(1/4).
ComplexField gaussian(GridPtr grid, double width = 1.0);

/// sqrt of the Thomas-Fermi density for self-coupling G, normalized.
ComplexField thomas_fermi_seed(GridPtr grid, double G_B);

struct EnergySample {
    double tau = 0.0;
    double E_B = 0.0;
    double E_I = 0.0;
};

struct RelaxationReport {
    SystemState final_state;
    std::vector<EnergySample> energy_trace;
    long iterations = 0;
    bool converged = false;
};

struct RelaxOptions {
    double dtau = 1e-4;
    /// Relative energy change per unit imaginary time, both species.
    double tol = 1e-10;
    long max_iters = 5'000'000;
    /// Steps between convergence checks (and energy trace samples).
    int check_every = 100;
    bool zeno = true;
    /// G_B above which the condensate is seeded with a Thomas-Fermi profile.
    double tf_seed_threshold = 10.0;
    /// Start the relaxation from this state instead of the default seeds.
    const SystemState* initial = nullptr;
};

/// Simultaneous imaginary-time relaxation of both species.  Seeds: Gaussian
/// (or Thomas-Fermi for large G_B) condensate and trial_impurity(alpha).
/// Returns converged = false with the partial result when max_iters is hit.
RelaxationReport relax_coupled(const ModelParams& params, GridPtr grid,
                               const RelaxOptions& opts = {});

/// Impurity-only imaginary-time run without condensate background, starting
/// from the exact odd trial state.  Without zeno the only even component is
/// round-off (plus an optional seeded contaminant `even_seed` * gaussian(alpha)),
/// which grows at rate E_1 - E_0 = 1 until the state falls to the ground level.
std::vector<EnergySample> zeno_durability_experiment(GridPtr grid, double alpha, double dtau,
                                                     double tau_max, bool zeno = false,
                                                     double even_seed = 0.0,
                                                     int sample_every = 100);

struct ImprintDescriptor {
    int n_bumps = 0;
    int n_dips = 0;
    bool fragmented = false;
};

struct ImprintOptions {
    /// Extrema of the depleted density smaller than this fraction of its
    /// largest magnitude are ignored.
    double relative_floor = 0.05;
    /// Interior near-zero threshold relative to the peak BEC density.
    double fragment_threshold = 1e-3;
};

/// Counts the sign-consistent extrema of n_with - n_without inside the cloud.
ImprintDescriptor classify_imprint(const RelaxationReport& with, const RelaxationReport& without,
                                   const ImprintOptions& opts = {});
ImprintDescriptor classify_imprint(const SystemState& with, const SystemState& without,
                                   const ImprintOptions& opts = {});

}  // namespace becimp
