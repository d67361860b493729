#ifndef NSMILD_TAYLOR_GREEN_HPP
#define NSMILD_TAYLOR_GREEN_HPP

#include "nsmild/solver.hpp"

#include <vector>

namespace nsmild {

/// 2D Taylor-Green vortex exp(-2 nu kappa^2 t) (sin kx cos ky, -cos kx sin ky),
/// kappa = 2 pi / period, built directly from its four Fourier coefficients per
/// component. Its convective term is a gradient, so it solves the projected
/// equations exactly. Rejects dim != 2.
SpectralVectorField taylor_green(const TorusGrid& grid, double nu, double t);

/// Relative L2 error of every snapshot against the analytic vortex at the same
/// time, with the amplitude taken from the trajectory's first field.
std::vector<double> compare_oracle(const Trajectory& traj, double nu);

/// || du/dt - nu Laplacian u - F(u) ||_2 / ||u||_2 for the analytic vortex at time t.
double taylor_green_residual(const TorusGrid& grid, double nu, double t, bool dealiased = true);

} // namespace nsmild

#endif // NSMILD_TAYLOR_GREEN_HPP
