#include "nsmild/operators.hpp"

#include "nsmild/spectral.hpp"
#include "nsmild/transform.hpp"

#include <cmath>
#include <stdexcept>

namespace nsmild {
namespace {

// i * k * c for real k and complex c, without a complex product.
template <class K, class C>
auto i_times(const K& k, const C& c)
{
    return (k * c).unaryExpr([](const Complex& z) { return Complex(-z.imag(), z.real()); });
}

void require_mean_zero(const SpectralVectorField& u, const char* what)
{
    if (!is_mean_zero(u))
        throw std::invalid_argument(std::string(what) + ": field must have zero mean mode");
}

double sum_pow(const PhysicalArray& values, double p)
{
    if (p == 2.0)
        return values.square().sum();
    return values.abs().pow(p).sum();
}

} // namespace

Eigen::ArrayXd laplacian_symbol(const TorusGrid& grid)
{
    return -grid.k_squared();
}

Eigen::ArrayXd resolvent_symbol(const TorusGrid& grid, double lambda)
{
    if (!(lambda > 0.0))
        throw std::invalid_argument("resolvent: lambda must be positive");
    return (lambda + grid.k_squared()).inverse();
}

Eigen::ArrayXd heat_symbol(const TorusGrid& grid, double t, double nu)
{
    if (!(t >= 0.0))
        throw std::invalid_argument("heat_semigroup: t must be nonnegative");
    if (!(nu > 0.0))
        throw std::invalid_argument("heat_semigroup: nu must be positive");
    return (-(nu * t) * grid.k_squared()).exp();
}

Eigen::ArrayXd frac_power_symbol(const TorusGrid& grid, double alpha)
{
    if (alpha < -1.0 || alpha > 1.0)
        throw std::invalid_argument("frac_power: alpha must lie in [-1, 1]");
    const Eigen::ArrayXd& ksq = grid.k_squared();
    return (ksq > 0.0).select(ksq.pow(alpha), 0.0);
}

Eigen::ArrayXd phi1_symbol(const TorusGrid& grid, double h, double nu)
{
    if (!(h > 0.0))
        throw std::invalid_argument("phi1: h must be positive");
    return (-(nu * h) * grid.k_squared()).unaryExpr([](double z) { return phi1(z); });
}

SpectralVectorField apply_symbol(const SpectralVectorField& u, const Eigen::ArrayXd& symbol)
{
    SpectralVectorField out(u.grid, scale_modes(u.coeffs, symbol), u.divergence_free);
    return out;
}

double phi1_direct(double z)
{
    return z == 0.0 ? 1.0 : std::expm1(z) / z;
}

double phi1_series(double z)
{
    return 1.0 + z * (1.0 / 2.0 + z * (1.0 / 6.0 + z * (1.0 / 24.0 + z * (1.0 / 120.0))));
}

double phi1(double z)
{
    return std::abs(z) < phi1_series_radius ? phi1_series(z) : phi1_direct(z);
}

SpectralVectorField leray_project(const SpectralVectorField& u)
{
    const TorusGrid& g = u.grid;
    const Eigen::ArrayXd& kdsq = g.kd_squared();
    const Eigen::ArrayXd inv = (kdsq > 0.0).select(kdsq.inverse(), 0.0);

    Eigen::ArrayXcd dot = Eigen::ArrayXcd::Zero(g.size());
    for (int i = 0; i < u.dim(); ++i)
        dot += g.derivative_wavenumber(i) * u.coeffs.col(i);
    dot *= inv;

    SpectralVectorField out(g, u.coeffs, true);
    for (int i = 0; i < u.dim(); ++i)
        out.coeffs.col(i) -= g.derivative_wavenumber(i) * dot;
    return out;
}

SpectralVectorField laplacian(const SpectralVectorField& u)
{
    return apply_symbol(u, laplacian_symbol(u.grid));
}

SpectralVectorField resolvent(double lambda, const SpectralVectorField& u)
{
    return apply_symbol(u, resolvent_symbol(u.grid, lambda));
}

SpectralVectorField shifted_operator(double lambda, const SpectralVectorField& u)
{
    return apply_symbol(u, lambda + u.grid.k_squared());
}

SpectralVectorField heat_semigroup(double t, double nu, const SpectralVectorField& u)
{
    return apply_symbol(u, heat_symbol(u.grid, t, nu));
}

SpectralVectorField frac_power(double alpha, const SpectralVectorField& u)
{
    require_mean_zero(u, "frac_power");
    return apply_symbol(u, frac_power_symbol(u.grid, alpha));
}

SpectralVectorField phi1_apply(double h, double nu, const SpectralVectorField& u)
{
    return apply_symbol(u, phi1_symbol(u.grid, h, nu));
}

SpectralVectorField advect(const SpectralVectorField& u, const SpectralVectorField& v, bool dealiased)
{
    require_same_grid(u.grid, v.grid, "advect");
    const TorusGrid& g = u.grid;
    const SpectralVectorField uu = dealiased ? dealias(u) : u;
    const SpectralVectorField vv = dealiased ? dealias(v) : v;

    const PhysicalArray up = inverse_transform(uu).values;
    PhysicalArray w = PhysicalArray::Zero(g.size(), g.dim());
    for (int i = 0; i < g.dim(); ++i) {
        for (int j = 0; j < g.dim(); ++j) {
            const Eigen::ArrayXcd dvij = i_times(g.derivative_wavenumber(j), vv.coeffs.col(i));
            w.col(i) += up.col(j) * inverse_scalar(g, dvij);
        }
    }

    SpectralVectorField out(g);
    for (int i = 0; i < g.dim(); ++i)
        out.coeffs.col(i) = forward_scalar(g, w.col(i));
    return dealiased ? dealias(out) : out;
}

SpectralVectorField nonlinear_F(const SpectralVectorField& u, bool dealiased)
{
    require_mean_zero(u, "nonlinear_F");
    if (divergence_defect(u) > 1e-10)
        throw std::invalid_argument("nonlinear_F: field must be divergence-free");
    SpectralVectorField out = leray_project(advect(u, u, dealiased));
    out.coeffs = -out.coeffs;
    out.coeffs.row(0).setZero();
    return out;
}

Eigen::ArrayXcd divergence(const SpectralVectorField& u)
{
    Eigen::ArrayXcd div = Eigen::ArrayXcd::Zero(u.grid.size());
    for (int i = 0; i < u.dim(); ++i)
        div += i_times(u.grid.derivative_wavenumber(i), u.coeffs.col(i));
    return div;
}

double divergence_defect(const SpectralVectorField& u)
{
    const double scale = max_abs_coeff(u);
    if (scale == 0.0)
        return 0.0;
    return max_modulus(divergence(u)) / scale;
}

double max_pointwise_divergence(const SpectralVectorField& u)
{
    return inverse_scalar(u.grid, divergence(u)).abs().maxCoeff();
}

SpectralVectorField gradient(const SpectralScalarField& h)
{
    SpectralVectorField out(h.grid);
    for (int i = 0; i < h.grid.dim(); ++i)
        out.coeffs.col(i) = i_times(h.grid.derivative_wavenumber(i), h.coeffs);
    return out;
}

PhysicalArray jacobian(const SpectralVectorField& u)
{
    const int d = u.dim();
    PhysicalArray jac(u.grid.size(), d * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            jac.col(i * d + j) = inverse_scalar(u.grid, i_times(u.grid.derivative_wavenumber(j), u.coeffs.col(i)));
    return jac;
}

FracNormParams::FracNormParams(double alpha_, double p_) : alpha(alpha_), p(p_)
{
    if (alpha < 0.0 || alpha > 1.0)
        throw std::invalid_argument("FracNormParams: alpha must lie in [0, 1]");
    if (!(p >= 2.0))
        throw std::invalid_argument("FracNormParams: p must be >= 2");
}

double lp_norm(const PhysicalVectorField& u, double p)
{
    if (!(p >= 2.0))
        throw std::invalid_argument("lp_norm: p must be >= 2");
    return std::pow(u.grid.cell_volume() * sum_pow(u.values, p), 1.0 / p);
}

double lp_norm(const SpectralVectorField& u, double p)
{
    if (!(p >= 2.0))
        throw std::invalid_argument("lp_norm: p must be >= 2");
    return lp_norm(inverse_transform(u), p);
}

double frac_norm(const SpectralVectorField& u, const FracNormParams& params)
{
    if (params.alpha == 0.0)
        return lp_norm(u, params.p);
    return lp_norm(frac_power(params.alpha, u), params.p);
}

Complex l2_inner(const SpectralVectorField& a, const SpectralVectorField& b)
{
    require_same_grid(a.grid, b.grid, "l2_inner");
    return a.grid.domain_volume() * (a.coeffs.conjugate() * b.coeffs).sum();
}

double l2_norm_parseval(const SpectralVectorField& u)
{
    return std::sqrt(u.grid.domain_volume() * u.coeffs.abs2().sum());
}

double gradient_norm(const SpectralVectorField& u, double p, GradientVariant variant)
{
    if (!(p >= 2.0))
        throw std::invalid_argument("gradient_norm: p must be >= 2");
    const int d = u.dim();
    const PhysicalArray jac = jacobian(u);
    double total = 0.0;
    if (variant == GradientVariant::full) {
        total = sum_pow(jac, p);
    } else {
        for (int i = 0; i < d; ++i)
            total += sum_pow(jac.col(i * d + i), p);
    }
    return std::pow(u.grid.cell_volume() * total, 1.0 / p);
}

} // namespace nsmild
