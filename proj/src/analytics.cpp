#include "becimp/analytics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace becimp {

void PhysicalParams::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::invalid_argument(std::string(name) + " must be positive");
    };
    if (N_B < 1) throw std::invalid_argument("N_B must be >= 1");
    if (!(a_B >= 0.0)) throw std::invalid_argument("a_B must be non-negative");
    if (!std::isfinite(a_IB)) throw std::invalid_argument("a_IB must be finite");
    positive(omega_r, "omega_r");
    positive(omega_z, "omega_z");
    positive(omega_Ir, "omega_Ir");
    positive(omega_Iz, "omega_Iz");
    positive(m_B, "m_B");
    positive(m_I, "m_I");
}

namespace {

struct Lengths {
    double l_z, l_r, l_Iz;  // metres
};

Lengths lengths(const PhysicalParams& p, const UnitConstants& c) {
    const double mB = p.m_B * c.amu, mI = p.m_I * c.amu;
    return {std::sqrt(c.hbar / (mB * p.omega_z)), std::sqrt(c.hbar / (mB * p.omega_r)),
            std::sqrt(c.hbar / (mI * p.omega_Iz))};
}

}  // namespace

DerivedScales nondimensionalize(const PhysicalParams& p, const UnitConstants& c) {
    p.validate();
    const Lengths L = lengths(p, c);
    const double a_B = p.a_B * c.bohr, a_IB = p.a_IB * c.bohr;

    DerivedScales d;
    d.l_z = L.l_z / c.bohr;
    d.l_r = L.l_r / c.bohr;
    d.l_Iz = L.l_Iz / c.bohr;
    d.f_geometric = (1.0 + p.m_B / p.m_I) / (1.0 + (p.m_B * p.omega_r) / (p.m_I * p.omega_Ir));
    d.G_B_dimless = 2.0 * p.N_B * p.omega_r * a_B / (p.omega_z * L.l_z);
    d.g_IB_dimless = 2.0 * a_IB * p.omega_r * d.f_geometric / (p.omega_z * L.l_z);
    d.alpha = L.l_Iz / L.l_z;
    d.T_c = critical_temperature(p, c);
    d.gamma = thermal_gamma(p, c);
    d.N_QF_fraction = quantum_depletion_fraction(p, c);
    d.healing_product = healing_check(p, thomas_fermi_profile(d.G_B_dimless).peak(), c);
    return d;
}

double healing_check(const PhysicalParams& p, double n_peak, const UnitConstants& c) {
    if (!(n_peak > 0.0)) throw std::invalid_argument("peak density must be positive");
    const Lengths L = lengths(p, c);
    const double a_B = p.a_B * c.bohr, a_IB = p.a_IB * c.bohr;
    return std::abs(a_IB) * std::sqrt(2.0 * n_peak * a_B / L.l_z) / L.l_r;
}

double ThomasFermi::radius() const { return std::sqrt(2.0 * mu); }

double ThomasFermi::density(double z) const {
    const double n = (mu - 0.5 * z * z) / G;
    return n > 0.0 ? n : 0.0;
}

ThomasFermi thomas_fermi_profile(double G) {
    if (!(G > 0.0)) throw std::invalid_argument("Thomas-Fermi profile needs G > 0");
    // int (mu - z^2/2)/G dz over |z| < sqrt(2 mu) = (4 sqrt2 / 3) mu^(3/2) / G = 1
    return {std::pow(3.0 * G / (4.0 * std::numbers::sqrt2), 2.0 / 3.0), G};
}

double quantum_depletion_fraction(const PhysicalParams& p, const UnitConstants& c) {
    const Lengths L = lengths(p, c);
    const double a_B = p.a_B * c.bohr;
    const double inner = std::pow(a_B, 4) * p.N_B / (L.l_r * L.l_r * L.l_z * L.l_z);
    return std::cbrt(3.0) / 4.0 * std::cbrt(inner);
}

double thermal_gamma(const PhysicalParams& p, const UnitConstants& c) {
    const Lengths L = lengths(p, c);
    const double a_B = p.a_B * c.bohr;
    const double pi2 = std::numbers::pi * std::numbers::pi;
    const double pre = std::pow(5.0, 0.4) * pi2 / (std::pow(2.0, 1.5) * std::pow(3.0, 0.6));
    const double braces = std::cbrt(static_cast<double>(p.N_B)) / std::pow(zeta3, 8.0 / 3.0) *
                          a_B * a_B / (std::pow(L.l_r, 4.0 / 3.0) * std::pow(L.l_z, 2.0 / 3.0));
    return pre * std::pow(braces, 0.2);
}

double critical_temperature(const PhysicalParams& p, const UnitConstants& c) {
    return c.hbar / c.k_B * std::cbrt(p.omega_r * p.omega_r * p.omega_z * p.N_B / zeta3);
}

ThermalDepletion thermal_depletion_at(const PhysicalParams& p, double T_over_Tc,
                                      const UnitConstants& c) {
    if (!(T_over_Tc >= 0.0)) throw std::invalid_argument("T/T_c must be non-negative");
    ThermalDepletion r;
    r.gamma = thermal_gamma(p, c);
    r.T_c = critical_temperature(p, c);
    r.T = T_over_Tc * r.T_c;
    r.fraction = r.gamma * T_over_Tc * T_over_Tc;
    return r;
}

ThermalDepletion thermal_temperature_for(const PhysicalParams& p, double fraction,
                                         const UnitConstants& c) {
    if (!(fraction >= 0.0)) throw std::invalid_argument("fraction must be non-negative");
    ThermalDepletion r;
    r.gamma = thermal_gamma(p, c);
    r.T_c = critical_temperature(p, c);
    r.fraction = fraction;
    r.T = r.T_c * std::sqrt(fraction / r.gamma);
    return r;
}

std::vector<ReportEntry> analyze(const PhysicalParams& p, const UnitConstants& c) {
    const auto d = nondimensionalize(p, c);
    const double none = std::numeric_limits<double>::quiet_NaN();
    std::vector<ReportEntry> out;
    auto add = [&](std::string key, double computed, double quoted) {
        ReportEntry e{std::move(key), computed, quoted, false};
        if (!std::isnan(quoted)) e.mismatch = std::abs(computed - quoted) > 0.2 * std::abs(quoted);
        out.push_back(std::move(e));
    };
    add("l_z_bohr", d.l_z, 28742.3);
    add("l_r_bohr", d.l_r, none);
    add("l_Iz_bohr", d.l_Iz, none);
    add("f_geometric", d.f_geometric, none);
    add("G_B", d.G_B_dimless, 4.71);
    add("g_IB", d.g_IB_dimless, 0.16);
    add("alpha", d.alpha, 0.808);
    add("healing_product_G10", healing_check(p, 0.355, c), 0.0020);
    add("healing_product_G100", healing_check(p, 0.164, c), 0.0014);
    add("healing_product_tf_peak", d.healing_product, none);
    add("quantum_depletion_fraction", d.N_QF_fraction, 0.0022);
    add("thermal_gamma", d.gamma, 0.046);
    add("T_c_nK", d.T_c * 1e9, 14.7);
    add("T_for_fraction_0.001_nK", thermal_temperature_for(p, 1e-3, c).T * 1e9, 2.15);
    add("quasi_1d", p.quasi_1d() ? 1.0 : 0.0, none);
    return out;
}

}  // namespace becimp
