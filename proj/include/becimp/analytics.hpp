#pragma once

#include <string>
#include <vector>

namespace becimp {

inline constexpr double zeta3 = 1.2020569;

/// Physical constants in SI units.  CODATA 2018 by default; `rounded_hbar`
/// swaps in hbar = 1.05e-34 J s, the value behind the published oscillator
/// length of 28742.3 Bohr radii.
struct UnitConstants {
    double hbar = 1.054571817e-34;
    double k_B = 1.380649e-23;
    double bohr = 5.29177210903e-11;
    double amu = 1.66053906660e-27;

    static UnitConstants codata() { return {}; }
    static UnitConstants rounded_hbar() {
        UnitConstants c;
        c.hbar = 1.05e-34;
        return c;
    }
};

/// Dimensional experimental inputs.  Lengths in Bohr radii, angular
/// frequencies in rad/s, masses in atomic mass units.
struct PhysicalParams {
    int N_B = 200;
    double a_B = 94.7;
    double a_IB = 650.0;
    double omega_r = 2.0 * 3.14159265358979323846 * 179.0;
    double omega_z = 2.0 * 3.14159265358979323846 * 50.0;
    double omega_Ir = 2.0 * 3.14159265358979323846 * 179.0;
    double omega_Iz = 2.0 * 3.14159265358979323846 * 50.0;
    double m_B = 87.0;
    double m_I = 133.0;

    /// Throws std::invalid_argument unless every field is positive (a_IB may
    /// take either sign, a_B may be zero).
    void validate() const;
    /// False when omega_z is not well below omega_r (quasi-1D assumption).
    bool quasi_1d() const { return omega_z < 0.5 * omega_r; }
};

struct DerivedScales {
    double l_z = 0.0;   // Bohr radii
    double l_r = 0.0;   // Bohr radii
    double l_Iz = 0.0;  // Bohr radii
    double f_geometric = 0.0;
    double G_B_dimless = 0.0;
    double g_IB_dimless = 0.0;
    double alpha = 0.0;
    double T_c = 0.0;  // K
    double gamma = 0.0;
    double N_QF_fraction = 0.0;
    double healing_product = 0.0;  // at the Thomas-Fermi peak density of G_B_dimless
};

/// Dimensionless couplings and length scales of the quasi-1D reduction.
DerivedScales nondimensionalize(const PhysicalParams& phys,
                                const UnitConstants& c = UnitConstants::codata());

/// Mean-field validity figure |a_IB| / xi with xi^-1 = l_r / sqrt(2 n a_B),
/// n a_B taken dimensionlessly as n_peak * a_B / l_z.
double healing_check(const PhysicalParams& phys, double n_peak_dimless,
                     const UnitConstants& c = UnitConstants::codata());

struct ThomasFermi {
    double mu = 0.0;
    double G = 0.0;
    double radius() const;
    double density(double z) const;  // clamped to zero outside |z| > R
    double peak() const { return mu / G; }
};

/// Unit-normalized Thomas-Fermi profile of the dimensionless 1D GPE.
ThomasFermi thomas_fermi_profile(double G_B);

/// (3^(1/3)/4) (a_B^4 N_B / (l_r^2 l_z^2))^(1/3).
double quantum_depletion_fraction(const PhysicalParams& phys,
                                  const UnitConstants& c = UnitConstants::codata());

/// Prefactor gamma of N_TF/N_B = gamma (T/T_c)^2.
double thermal_gamma(const PhysicalParams& phys,
                     const UnitConstants& c = UnitConstants::codata());
/// (hbar/k_B) (omega_r^2 omega_z N_B / zeta(3))^(1/3), in kelvin.
double critical_temperature(const PhysicalParams& phys,
                            const UnitConstants& c = UnitConstants::codata());

struct ThermalDepletion {
    double gamma = 0.0;
    double T_c = 0.0;
    double T = 0.0;         // K
    double fraction = 0.0;  // N_TF / N_B
};

/// Fraction at the given temperature ratio T/T_c.
ThermalDepletion thermal_depletion_at(const PhysicalParams& phys, double T_over_Tc,
                                      const UnitConstants& c = UnitConstants::codata());
/// Temperature at which the thermal fraction reaches `fraction`.
ThermalDepletion thermal_temperature_for(const PhysicalParams& phys, double fraction,
                                         const UnitConstants& c = UnitConstants::codata());

/// One line of the analysis report: computed value next to the published one.
struct ReportEntry {
    std::string key;
    double computed = 0.0;
    double quoted = 0.0;   // NaN when nothing is quoted
    bool mismatch = false; // |computed - quoted| / |quoted| > 20 %
};

/// Full dimensional analysis of `phys`, including healing checks at the two
/// quoted peak densities.
std::vector<ReportEntry> analyze(const PhysicalParams& phys,
                                 const UnitConstants& c = UnitConstants::codata());

}  // namespace becimp
