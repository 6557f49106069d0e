#pragma once

#include <complex>
#include <memory>
#include <span>
#include <vector>

namespace becimp {

using cplx = std::complex<double>;

class FftPlan;

/// Uniform periodic grid on [-L, L) with node spacing dz = 2L/n.
///
/// Node j sits at z_j = -L + j*dz, so z = 0 is node n/2 and the mirror of
/// node j is (n - j) mod n.  Wavenumbers follow the usual FFT ordering.
class Grid1D {
public:
    Grid1D(int n_points, double half_width);
    ~Grid1D();

    Grid1D(const Grid1D&) = delete;
    Grid1D& operator=(const Grid1D&) = delete;

    int size() const { return n_; }
    double half_width() const { return half_width_; }
    double dz() const { return dz_; }
    double k_max() const;  // pi/dz

    std::span<const double> z() const { return z_; }
    std::span<const double> k() const { return k_; }
    double z(int j) const { return z_[j]; }
    double k(int j) const { return k_[j]; }

    int mirror(int j) const { return (n_ - j) % n_; }
    int center_index() const { return n_ / 2; }

    bool same_as(const Grid1D& other) const {
        return n_ == other.n_ && half_width_ == other.half_width_;
    }

    /// Unnormalized forward/backward DFT in place (backward * forward = n).
    void forward(std::span<cplx> data) const;
    void backward(std::span<cplx> data) const;

private:
    int n_;
    double half_width_;
    double dz_;
    std::vector<double> z_;
    std::vector<double> k_;
    std::unique_ptr<FftPlan> plan_;
};

using GridPtr = std::shared_ptr<const Grid1D>;

/// Validating factory: n_points >= 8 and even, half_width > 0.
GridPtr make_grid(int n_points, double half_width);

/// One species' wave function sampled on a grid.
struct ComplexField {
    GridPtr grid;
    std::vector<cplx> values;

    ComplexField() = default;
    explicit ComplexField(GridPtr g);
    ComplexField(GridPtr g, std::vector<cplx> v);

    int size() const { return static_cast<int>(values.size()); }
    cplx& operator[](int j) { return values[j]; }
    const cplx& operator[](int j) const { return values[j]; }
};

/// Throws std::invalid_argument unless both fields live on equivalent grids.
void require_same_grid(const ComplexField& a, const ComplexField& b);

double norm2(const ComplexField& f);
/// Rescales to unit norm and returns the norm^2 before rescaling.
double normalize(ComplexField& f);
/// <z^power> = sum z^power |f|^2 dz.
double moment(const ComplexField& f, int power);
std::vector<double> density(const ComplexField& f);

/// Odd part (f_j - f_mirror(j)) / 2.
ComplexField project_odd(const ComplexField& f);
/// Even part (f_j + f_mirror(j)) / 2.
ComplexField project_even(const ComplexField& f);
/// L2 distance sqrt(sum |a-b|^2 dz).
double l2_distance(const ComplexField& a, const ComplexField& b);

/// exp(-i dt m k^2/2) applied in Fourier space.  A purely imaginary dt = -i tau
/// gives the imaginary-time heat kernel.
ComplexField spectral_kinetic_phase(const ComplexField& f, double mass_factor, cplx dt);

/// int |f'|^2 / 2 dz, derivative taken spectrally.
double kinetic_energy(const ComplexField& f, double mass_factor = 1.0);

/// Samples fn(z) on the grid.
template <typename Fn>
ComplexField sample(GridPtr g, Fn&& fn) {
    ComplexField f(g);
    for (int j = 0; j < g->size(); ++j) f.values[j] = fn(g->z(j));
    return f;
}

}  // namespace becimp
