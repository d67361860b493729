#include "nsmild/taylor_green.hpp"

#include "nsmild/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace nsmild {

SpectralVectorField taylor_green(const TorusGrid& grid, double nu, double t)
{
    if (grid.dim() != 2)
        throw std::invalid_argument("taylor_green: closed form exists only for dim = 2");
    const double kappa = grid.base_wavenumber();
    const double amp = std::exp(-2.0 * nu * kappa * kappa * t);

    // sin x cos y -> -i sgn(kx) / 4 on (+-1, +-1); -cos x sin y -> i sgn(ky) / 4.
    SpectralVectorField u(grid);
    for (int sx : {-1, 1}) {
        for (int sy : {-1, 1}) {
            const Eigen::Index idx = grid.flat_index({sx, sy, 0});
            u.coeffs(idx, 0) = Complex(0.0, -0.25 * sx * amp);
            u.coeffs(idx, 1) = Complex(0.0, 0.25 * sy * amp);
        }
    }
    u.divergence_free = true;
    return u;
}

std::vector<double> compare_oracle(const Trajectory& traj, double nu)
{
    std::vector<double> errors;
    if (traj.size() == 0)
        return errors;
    const TorusGrid& grid = traj.fields.front().grid;
    const double t0 = traj.times.front();
    const SpectralVectorField shape = taylor_green(grid, nu, 0.0);
    // Scale of the initial datum relative to the unit vortex.
    const double scale = std::real(l2_inner(shape, traj.fields.front())) / std::real(l2_inner(shape, shape));
    for (std::size_t s = 0; s < traj.size(); ++s) {
        const SpectralVectorField exact = scale * taylor_green(grid, nu, traj.times[s] - t0);
        const double denom = l2_norm_parseval(exact);
        const double diff = l2_norm_parseval(traj.fields[s] - exact);
        errors.push_back(denom > 0.0 ? diff / denom : diff);
    }
    return errors;
}

double taylor_green_residual(const TorusGrid& grid, double nu, double t, bool dealiased)
{
    const SpectralVectorField u = taylor_green(grid, nu, t);
    const double kappa = grid.base_wavenumber();
    // du/dt = -2 nu kappa^2 u for the closed form.
    const SpectralVectorField dudt = (-2.0 * nu * kappa * kappa) * u;
    const SpectralVectorField residual = dudt - nu * laplacian(u) - nonlinear_F(u, dealiased);
    return l2_norm_parseval(residual) / l2_norm_parseval(u);
}

} // namespace nsmild
