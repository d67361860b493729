#ifndef NSMILD_OPERATORS_HPP
#define NSMILD_OPERATORS_HPP

#include "nsmild/field.hpp"

namespace nsmild {

// ---------------------------------------------------------------------------
// Modewise symbols. Every linear operator below is multiplication by a real,
// even symbol in Fourier space, so it commutes with the projection and keeps
// real fields real.

Eigen::ArrayXd laplacian_symbol(const TorusGrid& grid);
Eigen::ArrayXd resolvent_symbol(const TorusGrid& grid, double lambda);
Eigen::ArrayXd heat_symbol(const TorusGrid& grid, double t, double nu);
/// |k|^(2 alpha), with the k = 0 entry set to 0.
Eigen::ArrayXd frac_power_symbol(const TorusGrid& grid, double alpha);
Eigen::ArrayXd phi1_symbol(const TorusGrid& grid, double h, double nu);

/// Scales every component of `u` by `symbol`; the divergence-free flag is kept.
SpectralVectorField apply_symbol(const SpectralVectorField& u, const Eigen::ArrayXd& symbol);

// phi1(z) = (exp(z) - 1) / z with phi1(0) = 1.
double phi1(double z);
double phi1_direct(double z);
double phi1_series(double z);
inline constexpr double phi1_series_radius = 1e-6;

// ---------------------------------------------------------------------------
// Operators.

/// Leray projection I - k k^T / |k|^2 on every mode k != 0; output flagged divergence-free.
SpectralVectorField leray_project(const SpectralVectorField& u);

SpectralVectorField laplacian(const SpectralVectorField& u);
/// (lambda I - Laplacian)^-1, lambda > 0.
SpectralVectorField resolvent(double lambda, const SpectralVectorField& u);
/// lambda u - Laplacian u.
SpectralVectorField shifted_operator(double lambda, const SpectralVectorField& u);
/// exp(t nu Laplacian) u, t >= 0.
SpectralVectorField heat_semigroup(double t, double nu, const SpectralVectorField& u);
/// (-Laplacian)^alpha u for alpha in [-1, 1]; u must be mean-zero.
SpectralVectorField frac_power(double alpha, const SpectralVectorField& u);
SpectralVectorField phi1_apply(double h, double nu, const SpectralVectorField& u);

/// (u . grad) v computed pseudospectrally. With `dealiased`, inputs and output
/// pass through the two-thirds filter.
SpectralVectorField advect(const SpectralVectorField& u, const SpectralVectorField& v, bool dealiased = true);

/// F(u) = -P (u . grad) u for solenoidal, mean-zero u. The mean mode of the
/// result is set to zero (it vanishes analytically for solenoidal u).
SpectralVectorField nonlinear_F(const SpectralVectorField& u, bool dealiased = true);

// ---------------------------------------------------------------------------
// Differential helpers.

/// Fourier coefficients of div u.
Eigen::ArrayXcd divergence(const SpectralVectorField& u);
/// max_k |k . u(k)| / max_k |u(k)|, zero for the zero field.
double divergence_defect(const SpectralVectorField& u);
/// max over collocation points of |div u|.
double max_pointwise_divergence(const SpectralVectorField& u);
/// grad h as a spectral vector field.
SpectralVectorField gradient(const SpectralScalarField& h);
/// Physical Jacobian; column i * dim + j holds d u_i / d x_j.
PhysicalArray jacobian(const SpectralVectorField& u);

// ---------------------------------------------------------------------------
// Norms.

struct FracNormParams {
    double alpha = 0.5;
    double p = 2.0;

    FracNormParams() = default;
    FracNormParams(double alpha_, double p_);
};

/// (cell volume * sum_x sum_i |u_i(x)|^p)^(1/p), p >= 2.
double lp_norm(const SpectralVectorField& u, double p);
double lp_norm(const PhysicalVectorField& u, double p);
/// lp_norm((-Laplacian)^alpha u, p).
double frac_norm(const SpectralVectorField& u, const FracNormParams& params);

/// L2 inner product and norm by Parseval.
Complex l2_inner(const SpectralVectorField& a, const SpectralVectorField& b);
double l2_norm_parseval(const SpectralVectorField& u);

enum class GradientVariant { full, diagonal };
/// L_p norm of the full Jacobian, or of its diagonal (d u_1/dx_1, ..., d u_n/dx_n).
double gradient_norm(const SpectralVectorField& u, double p, GradientVariant variant);

} // namespace nsmild

#endif // NSMILD_OPERATORS_HPP
