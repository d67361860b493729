#ifndef NSMILD_SPECTRAL_HPP
#define NSMILD_SPECTRAL_HPP

#include "nsmild/field.hpp"

#include <cstdint>

namespace nsmild {

/// Two-thirds rule: zeroes every mode with some |k_i| > floor(n/3).
SpectralVectorField dealias(const SpectralVectorField& u);
int dealias_cutoff(const TorusGrid& grid);

/// Zeroes every mode with some |k_i| > m; requires 0 <= m <= n/2.
SpectralVectorField truncate(const SpectralVectorField& u, int m);

enum class LatticePart { pos, neg, abs };

/// Pointwise f+ = f v 0, f- = (-f) v 0 or |f|, componentwise.
PhysicalVectorField lattice_part(const PhysicalVectorField& u, LatticePart which);

/// Random solenoidal, mean-zero, exactly Hermitian field with coefficient
/// magnitudes ~ amplitude * (1 + |k|^2)^(-spectrum_decay / 2).
///
/// Each coefficient is a pure function of (seed, component, integer k), so
/// the same seed yields the same low modes on every resolution. Modes on the
/// Nyquist planes are left at zero.
SpectralVectorField random_divfree_field(const TorusGrid& grid, std::uint64_t seed, double spectrum_decay,
                                         double amplitude);

/// Scalar counterpart of random_divfree_field (no projection), mean zero.
SpectralScalarField random_scalar_field(const TorusGrid& grid, std::uint64_t seed, double spectrum_decay,
                                        double amplitude);

} // namespace nsmild

#endif // NSMILD_SPECTRAL_HPP
