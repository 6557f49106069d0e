#include "becimp/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace becimp {

namespace {
// The FFTW planner is not reentrant; plan execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }
}  // namespace

class FftPlan {
public:
    explicit FftPlan(int n) : n_(n) {
        std::lock_guard lock(planner_mutex());
        std::vector<cplx> scratch(n);
        // ESTIMATE keeps the chosen algorithm, hence the round-off, run-independent.
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        fwd_ = fftw_plan_dft_1d(n, as_fftw(scratch.data()), as_fftw(scratch.data()),
                                FFTW_FORWARD, flags);
        bwd_ = fftw_plan_dft_1d(n, as_fftw(scratch.data()), as_fftw(scratch.data()),
                                FFTW_BACKWARD, flags);
        if (!fwd_ || !bwd_) throw std::runtime_error("FFTW planning failed");
    }
    ~FftPlan() {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(bwd_);
    }
    FftPlan(const FftPlan&) = delete;
    FftPlan& operator=(const FftPlan&) = delete;

    void forward(std::span<cplx> d) const { run(fwd_, d); }
    void backward(std::span<cplx> d) const { run(bwd_, d); }

private:
    void run(fftw_plan p, std::span<cplx> d) const {
        if (static_cast<int>(d.size()) != n_)
            throw std::invalid_argument("FFT length mismatch");
        fftw_execute_dft(p, as_fftw(d.data()), as_fftw(d.data()));
    }

    int n_;
    fftw_plan fwd_ = nullptr;
    fftw_plan bwd_ = nullptr;
};

Grid1D::Grid1D(int n_points, double half_width)
    : n_(n_points), half_width_(half_width), dz_(2.0 * half_width / n_points) {
    if (n_points < 8 || n_points % 2 != 0)
        throw std::invalid_argument("grid needs an even number of points >= 8, got " +
                                    std::to_string(n_points));
    if (!(half_width > 0.0) || !std::isfinite(half_width))
        throw std::invalid_argument("grid half-width must be positive");

    z_.resize(n_);
    k_.resize(n_);
    const double dk = std::numbers::pi / half_width_;
    for (int j = 0; j < n_; ++j) {
        z_[j] = -half_width_ + j * dz_;
        k_[j] = (j < n_ / 2 ? j : j - n_) * dk;
    }
    plan_ = std::make_unique<FftPlan>(n_);
}

Grid1D::~Grid1D() = default;

double Grid1D::k_max() const { return std::numbers::pi / dz_; }

void Grid1D::forward(std::span<cplx> data) const { plan_->forward(data); }
void Grid1D::backward(std::span<cplx> data) const { plan_->backward(data); }

GridPtr make_grid(int n_points, double half_width) {
    return std::make_shared<const Grid1D>(n_points, half_width);
}

ComplexField::ComplexField(GridPtr g) : grid(std::move(g)) {
    if (!grid) throw std::invalid_argument("field needs a grid");
    values.assign(grid->size(), cplx{});
}

ComplexField::ComplexField(GridPtr g, std::vector<cplx> v)
    : grid(std::move(g)), values(std::move(v)) {
    if (!grid) throw std::invalid_argument("field needs a grid");
    if (static_cast<int>(values.size()) != grid->size())
        throw std::invalid_argument("field length does not match grid");
}

void require_same_grid(const ComplexField& a, const ComplexField& b) {
    if (!a.grid || !b.grid || !a.grid->same_as(*b.grid))
        throw std::invalid_argument("fields are sampled on different grids");
}

double norm2(const ComplexField& f) {
    double s = 0.0;
    for (const auto& v : f.values) s += std::norm(v);
    return s * f.grid->dz();
}

double normalize(ComplexField& f) {
    const double n2 = norm2(f);
    if (!(n2 > 0.0) || !std::isfinite(n2))
        throw std::domain_error("cannot normalize a field with norm^2 = " + std::to_string(n2));
    const double scale = 1.0 / std::sqrt(n2);
    for (auto& v : f.values) v *= scale;
    return n2;
}

double moment(const ComplexField& f, int power) {
    const auto z = f.grid->z();
    double s = 0.0;
    for (int j = 0; j < f.size(); ++j) s += std::pow(z[j], power) * std::norm(f.values[j]);
    return s * f.grid->dz();
}

std::vector<double> density(const ComplexField& f) {
    std::vector<double> n(f.values.size());
    for (std::size_t j = 0; j < n.size(); ++j) n[j] = std::norm(f.values[j]);
    return n;
}

ComplexField project_odd(const ComplexField& f) {
    ComplexField g(f.grid);
    const auto& grid = *f.grid;
    for (int j = 0; j < f.size(); ++j) g.values[j] = 0.5 * (f.values[j] - f.values[grid.mirror(j)]);
    return g;
}

ComplexField project_even(const ComplexField& f) {
    ComplexField g(f.grid);
    const auto& grid = *f.grid;
    for (int j = 0; j < f.size(); ++j) g.values[j] = 0.5 * (f.values[j] + f.values[grid.mirror(j)]);
    return g;
}

double l2_distance(const ComplexField& a, const ComplexField& b) {
    require_same_grid(a, b);
    double s = 0.0;
    for (int j = 0; j < a.size(); ++j) s += std::norm(a.values[j] - b.values[j]);
    return std::sqrt(s * a.grid->dz());
}

ComplexField spectral_kinetic_phase(const ComplexField& f, double mass_factor, cplx dt) {
    ComplexField g = f;
    const auto& grid = *f.grid;
    grid.forward(g.values);
    const double inv_n = 1.0 / grid.size();
    const cplx minus_i{0.0, -1.0};
    for (int j = 0; j < grid.size(); ++j) {
        const double kk = grid.k(j);
        g.values[j] *= std::exp(minus_i * dt * (0.5 * mass_factor * kk * kk)) * inv_n;
    }
    grid.backward(g.values);
    return g;
}

double kinetic_energy(const ComplexField& f, double mass_factor) {
    std::vector<cplx> hat = f.values;
    const auto& grid = *f.grid;
    grid.forward(hat);
    double s = 0.0;
    for (int j = 0; j < grid.size(); ++j) s += grid.k(j) * grid.k(j) * std::norm(hat[j]);
    // Parseval: int |f|^2 dz = dz/n sum |f_hat|^2
    return 0.5 * mass_factor * s * grid.dz() / grid.size();
}

}  // namespace becimp
