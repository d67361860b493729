#include "nsmild/field.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace nsmild {

SpectralVectorField::SpectralVectorField(TorusGrid g)
    : grid(std::move(g)), coeffs(SpectralArray::Zero(grid.size(), grid.dim()))
{
}

SpectralVectorField::SpectralVectorField(TorusGrid g, SpectralArray c, bool divfree)
    : grid(std::move(g)), coeffs(std::move(c)), divergence_free(divfree)
{
    if (coeffs.rows() != grid.size() || coeffs.cols() != grid.dim())
        throw std::invalid_argument("spectral field: coefficient shape does not match grid");
}

SpectralVectorField SpectralVectorField::zero(const TorusGrid& g)
{
    SpectralVectorField u(g);
    u.divergence_free = true;
    return u;
}

PhysicalVectorField::PhysicalVectorField(TorusGrid g)
    : grid(std::move(g)), values(PhysicalArray::Zero(grid.size(), grid.dim()))
{
}

PhysicalVectorField::PhysicalVectorField(TorusGrid g, PhysicalArray v) : grid(std::move(g)), values(std::move(v))
{
    if (values.rows() != grid.size() || values.cols() != grid.dim())
        throw std::invalid_argument("physical field: value shape does not match grid");
    if (!values.allFinite())
        throw std::invalid_argument("physical field: non-finite values");
}

SpectralScalarField::SpectralScalarField(TorusGrid g) : grid(std::move(g)), coeffs(Eigen::ArrayXcd::Zero(grid.size()))
{
}

SpectralScalarField::SpectralScalarField(TorusGrid g, Eigen::ArrayXcd c) : grid(std::move(g)), coeffs(std::move(c))
{
    if (coeffs.size() != grid.size())
        throw std::invalid_argument("spectral scalar: coefficient count does not match grid");
}

void require_same_grid(const TorusGrid& a, const TorusGrid& b, const char* what)
{
    if (!(a == b))
        throw std::invalid_argument(std::string(what) + ": grid mismatch");
}

SpectralVectorField operator+(const SpectralVectorField& a, const SpectralVectorField& b)
{
    require_same_grid(a.grid, b.grid, "operator+");
    return {a.grid, a.coeffs + b.coeffs, a.divergence_free && b.divergence_free};
}

SpectralVectorField operator-(const SpectralVectorField& a, const SpectralVectorField& b)
{
    require_same_grid(a.grid, b.grid, "operator-");
    return {a.grid, a.coeffs - b.coeffs, a.divergence_free && b.divergence_free};
}

SpectralVectorField operator*(double s, const SpectralVectorField& a)
{
    return {a.grid, s * a.coeffs, a.divergence_free};
}

SpectralArray scale_modes(const SpectralArray& c, const Eigen::ArrayXd& s)
{
    SpectralArray out(c.rows(), c.cols());
    for (Eigen::Index i = 0; i < c.cols(); ++i)
        out.col(i) = s * c.col(i);
    return out;
}

double max_abs_coeff(const SpectralVectorField& u)
{
    return max_modulus(u.coeffs);
}

double hermitian_defect(const SpectralVectorField& u)
{
    double worst = 0.0;
    for (Eigen::Index idx = 0; idx < u.grid.size(); ++idx) {
        const Eigen::Index partner = u.grid.conjugate_index(idx);
        for (int i = 0; i < u.dim(); ++i)
            worst = std::max(worst, std::abs(u.coeffs(partner, i) - std::conj(u.coeffs(idx, i))));
    }
    const double scale = max_abs_coeff(u);
    return scale > 0.0 ? worst / scale : worst;
}

SpectralVectorField symmetrize(const SpectralVectorField& u)
{
    SpectralVectorField out(u.grid);
    out.divergence_free = u.divergence_free;
    for (Eigen::Index idx = 0; idx < u.grid.size(); ++idx) {
        const Eigen::Index partner = u.grid.conjugate_index(idx);
        for (int i = 0; i < u.dim(); ++i)
            out.coeffs(idx, i) = 0.5 * (u.coeffs(idx, i) + std::conj(u.coeffs(partner, i)));
    }
    return out;
}

bool is_mean_zero(const SpectralVectorField& u, double rel_tol)
{
    const double scale = max_abs_coeff(u);
    return max_modulus(u.coeffs.row(0)) <= rel_tol * scale;
}

SpectralVectorField remove_mean(const SpectralVectorField& u)
{
    SpectralVectorField out = u;
    out.coeffs.row(0).setZero();
    return out;
}

} // namespace nsmild
