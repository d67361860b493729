#include "nsmild/spectral.hpp"

#include "nsmild/operators.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nsmild {
namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Uniform in (0, 1], 53 bits.
double to_unit(std::uint64_t bits)
{
    return (static_cast<double>(bits >> 11) + 1.0) * 0x1.0p-53;
}

// Standard complex Gaussian (E|z|^2 = 1) keyed on (seed, salt, k). Box-Muller on a
// counter-based hash keeps the draw independent of grid size and iteration order.
Complex keyed_gaussian(std::uint64_t seed, std::uint64_t salt, const std::array<int, 3>& k)
{
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ salt);
    for (int c : k)
        h = splitmix64(h ^ static_cast<std::uint64_t>(static_cast<std::int64_t>(c) + (1LL << 20)));
    const double u1 = to_unit(splitmix64(h ^ 0x1ULL));
    const double u2 = to_unit(splitmix64(h ^ 0x2ULL));
    const double r = std::sqrt(-std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(theta), r * std::sin(theta)};
}

// First nonzero component positive.
bool is_canonical(const std::array<int, 3>& k)
{
    for (int c : k)
        if (c != 0)
            return c > 0;
    return false;
}

bool touches_nyquist(const TorusGrid& grid, const std::array<int, 3>& k)
{
    for (int a = 0; a < grid.dim(); ++a)
        if (k[static_cast<std::size_t>(a)] == grid.n_modes() / 2)
            return true;
    return false;
}

// Fills `out` (one column per component) with Hermitian keyed draws scaled by the spectrum.
void fill_random(const TorusGrid& grid, std::uint64_t seed, std::uint64_t salt, double decay, double amplitude,
                 Eigen::Ref<SpectralArray> out)
{
    out.setZero();
    if (amplitude == 0.0)
        return;
    const Eigen::ArrayXd& ksq = grid.k_squared();
    for (Eigen::Index idx = 0; idx < grid.size(); ++idx) {
        const auto k = grid.integer_wavenumbers(idx);
        if (!is_canonical(k) || touches_nyquist(grid, k))
            continue;
        const double weight = amplitude * std::pow(1.0 + ksq(idx), -0.5 * decay);
        const Eigen::Index partner = grid.conjugate_index(idx);
        for (Eigen::Index i = 0; i < out.cols(); ++i) {
            const Complex z = weight * keyed_gaussian(seed, salt + static_cast<std::uint64_t>(i), k);
            out(idx, i) = z;
            out(partner, i) = std::conj(z);
        }
    }
}

} // namespace

int dealias_cutoff(const TorusGrid& grid)
{
    return grid.n_modes() / 3;
}

SpectralVectorField dealias(const SpectralVectorField& u)
{
    const int cutoff = dealias_cutoff(u.grid);
    SpectralVectorField out = u;
    const Eigen::ArrayXi& kmax = u.grid.max_abs_wavenumber();
    for (Eigen::Index idx = 0; idx < u.grid.size(); ++idx)
        if (kmax(idx) > cutoff)
            out.coeffs.row(idx).setZero();
    return out;
}

SpectralVectorField truncate(const SpectralVectorField& u, int m)
{
    if (m < 0 || m > u.grid.n_modes() / 2)
        throw std::invalid_argument("truncate: m must lie in [0, n_modes/2], got " + std::to_string(m));
    SpectralVectorField out = u;
    const Eigen::ArrayXi& kmax = u.grid.max_abs_wavenumber();
    for (Eigen::Index idx = 0; idx < u.grid.size(); ++idx)
        if (kmax(idx) > m)
            out.coeffs.row(idx).setZero();
    return out;
}

PhysicalVectorField lattice_part(const PhysicalVectorField& u, LatticePart which)
{
    PhysicalVectorField out(u.grid);
    switch (which) {
    case LatticePart::pos:
        out.values = u.values.max(0.0);
        break;
    case LatticePart::neg:
        out.values = (-u.values).max(0.0);
        break;
    case LatticePart::abs:
        out.values = u.values.abs();
        break;
    }
    return out;
}

SpectralVectorField random_divfree_field(const TorusGrid& grid, std::uint64_t seed, double spectrum_decay,
                                         double amplitude)
{
    if (!(spectrum_decay > 0.0))
        throw std::invalid_argument("random_divfree_field: spectrum_decay must be positive");
    SpectralVectorField raw(grid);
    fill_random(grid, seed, 0, spectrum_decay, amplitude, raw.coeffs);
    return leray_project(raw);
}

SpectralScalarField random_scalar_field(const TorusGrid& grid, std::uint64_t seed, double spectrum_decay,
                                        double amplitude)
{
    if (!(spectrum_decay > 0.0))
        throw std::invalid_argument("random_scalar_field: spectrum_decay must be positive");
    SpectralArray raw(grid.size(), 1);
    fill_random(grid, seed, 0x5ca1a7ULL, spectrum_decay, amplitude, raw);
    return {grid, raw.col(0)};
}

} // namespace nsmild
