#ifndef NSMILD_FORCING_HPP
#define NSMILD_FORCING_HPP

#include "nsmild/field.hpp"

#include <optional>
#include <string_view>

namespace nsmild {

enum class ForcingKind { zero, steady, hoelder_modulated };

ForcingKind parse_forcing_kind(std::string_view name);
std::string_view to_string(ForcingKind kind);

/// Body force f(t): zero, the steady base field, or t^exponent * base field.
class ForcingSpec {
public:
    ForcingSpec() = default;
    ForcingSpec(ForcingKind kind, std::optional<SpectralVectorField> base_field, double exponent = 1.0);

    static ForcingSpec zero() { return {}; }

    ForcingKind kind() const { return kind_; }
    double exponent() const { return exponent_; }
    const std::optional<SpectralVectorField>& base_field() const { return base_; }

    /// Projected forcing P f(t) on `grid`, mean mode removed.
    SpectralVectorField projected(const TorusGrid& grid, double t) const;

private:
    ForcingKind kind_ = ForcingKind::zero;
    std::optional<SpectralVectorField> base_;
    double exponent_ = 1.0;
};

} // namespace nsmild

#endif // NSMILD_FORCING_HPP
