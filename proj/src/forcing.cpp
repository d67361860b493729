#include "nsmild/forcing.hpp"

#include "nsmild/operators.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nsmild {

ForcingKind parse_forcing_kind(std::string_view name)
{
    if (name == "zero")
        return ForcingKind::zero;
    if (name == "steady")
        return ForcingKind::steady;
    if (name == "hoelder_modulated")
        return ForcingKind::hoelder_modulated;
    throw std::invalid_argument("unknown forcing kind '" + std::string(name) + "'");
}

std::string_view to_string(ForcingKind kind)
{
    switch (kind) {
    case ForcingKind::zero:
        return "zero";
    case ForcingKind::steady:
        return "steady";
    case ForcingKind::hoelder_modulated:
        return "hoelder_modulated";
    }
    return "zero";
}

ForcingSpec::ForcingSpec(ForcingKind kind, std::optional<SpectralVectorField> base_field, double exponent)
    : kind_(kind), base_(std::move(base_field)), exponent_(exponent)
{
    if (kind_ == ForcingKind::zero)
        return;
    if (!base_)
        throw std::invalid_argument("forcing: nonzero forcing needs a base field");
    if (divergence_defect(*base_) > 1e-10)
        throw std::invalid_argument("forcing: base field must be divergence-free");
    if (kind_ == ForcingKind::hoelder_modulated && !(exponent_ > 0.0 && exponent_ <= 1.0))
        throw std::invalid_argument("forcing: Hoelder exponent must lie in (0, 1]");
}

SpectralVectorField ForcingSpec::projected(const TorusGrid& grid, double t) const
{
    if (kind_ == ForcingKind::zero)
        return SpectralVectorField::zero(grid);
    require_same_grid(grid, base_->grid, "forcing");
    double scale = 1.0;
    if (kind_ == ForcingKind::hoelder_modulated)
        scale = t > 0.0 ? std::pow(t, exponent_) : 0.0;
    SpectralVectorField f = leray_project(*base_);
    f.coeffs *= scale;
    f.coeffs.row(0).setZero();
    return f;
}

} // namespace nsmild
