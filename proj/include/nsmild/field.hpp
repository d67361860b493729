#ifndef NSMILD_FIELD_HPP
#define NSMILD_FIELD_HPP

#include "nsmild/grid.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>

namespace nsmild {

using Complex = std::complex<double>;
/// One column per vector component, one row per lattice mode / point.
using SpectralArray = Eigen::Array<Complex, Eigen::Dynamic, Eigen::Dynamic>;
using PhysicalArray = Eigen::Array<double, Eigen::Dynamic, Eigen::Dynamic>;

/// Velocity field as Fourier coefficients u_i(k) of exp(i k.x).
///
/// `divergence_free` records membership in the solenoidal subspace; it is set
/// by operations that guarantee it (projection, modewise scalings of a
/// solenoidal field) and cleared by those that do not (advection).
struct SpectralVectorField {
    TorusGrid grid;
    SpectralArray coeffs;
    bool divergence_free = false;

    explicit SpectralVectorField(TorusGrid g);
    SpectralVectorField(TorusGrid g, SpectralArray c, bool divfree = false);

    int dim() const { return grid.dim(); }
    auto component(int i) { return coeffs.col(i); }
    auto component(int i) const { return coeffs.col(i); }

    static SpectralVectorField zero(const TorusGrid& g);
};

struct PhysicalVectorField {
    TorusGrid grid;
    PhysicalArray values;

    explicit PhysicalVectorField(TorusGrid g);
    PhysicalVectorField(TorusGrid g, PhysicalArray v);

    int dim() const { return grid.dim(); }
    auto component(int i) { return values.col(i); }
    auto component(int i) const { return values.col(i); }
};

struct SpectralScalarField {
    TorusGrid grid;
    Eigen::ArrayXcd coeffs;

    explicit SpectralScalarField(TorusGrid g);
    SpectralScalarField(TorusGrid g, Eigen::ArrayXcd c);
};

/// Throws std::invalid_argument unless both fields live on the same grid.
void require_same_grid(const TorusGrid& a, const TorusGrid& b, const char* what);

// Vector-space arithmetic. The divergence-free flag survives iff both inputs carry it.
SpectralVectorField operator+(const SpectralVectorField& a, const SpectralVectorField& b);
SpectralVectorField operator-(const SpectralVectorField& a, const SpectralVectorField& b);
SpectralVectorField operator*(double s, const SpectralVectorField& a);

/// Largest coefficient modulus over all modes and components.
/// max |a|, through the squared modulus (avoids hypot).
template <class Derived>
double max_modulus(const Eigen::ArrayBase<Derived>& a)
{
    return a.size() == 0 ? 0.0 : std::sqrt(a.abs2().maxCoeff());
}

/// Every column of `c` multiplied by the real per-mode factor `s`.
SpectralArray scale_modes(const SpectralArray& c, const Eigen::ArrayXd& s);

double max_abs_coeff(const SpectralVectorField& u);

/// Largest |u_i(-k) - conj(u_i(k))| over the lattice, relative to max_abs_coeff.
double hermitian_defect(const SpectralVectorField& u);
/// Replaces each coefficient pair by its Hermitian average so the field is exactly real.
SpectralVectorField symmetrize(const SpectralVectorField& u);

bool is_mean_zero(const SpectralVectorField& u, double rel_tol = 1e-12);
SpectralVectorField remove_mean(const SpectralVectorField& u);

} // namespace nsmild

#endif // NSMILD_FIELD_HPP
