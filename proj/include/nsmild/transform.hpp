#ifndef NSMILD_TRANSFORM_HPP
#define NSMILD_TRANSFORM_HPP

#include "nsmild/field.hpp"

namespace nsmild {

// Normalization: u(x) = sum_k u(k) exp(i k.x), so the k = 0 coefficient is the
// spatial mean. Collocation point j along an axis sits at j * period / n.

Eigen::ArrayXcd forward_scalar(const TorusGrid& grid, const Eigen::ArrayXd& values);
/// Real part of the synthesized field; the imaginary part is discarded.
Eigen::ArrayXd inverse_scalar(const TorusGrid& grid, const Eigen::ArrayXcd& coeffs);

SpectralVectorField forward_transform(const PhysicalVectorField& u);
PhysicalVectorField inverse_transform(const SpectralVectorField& u);

/// Coordinate along `axis` of every collocation point, in flat storage order.
Eigen::ArrayXd collocation_coordinate(const TorusGrid& grid, int axis);

/// Builds a physical field by evaluating `f(x, component)` at every collocation point.
template <class F>
PhysicalVectorField sample(const TorusGrid& grid, F&& f)
{
    PhysicalVectorField out(grid);
    const Eigen::ArrayXd x0 = collocation_coordinate(grid, 0);
    const Eigen::ArrayXd x1 = collocation_coordinate(grid, 1);
    const Eigen::ArrayXd x2 = grid.dim() == 3 ? collocation_coordinate(grid, 2) : Eigen::ArrayXd::Zero(grid.size());
    for (Eigen::Index p = 0; p < grid.size(); ++p) {
        const std::array<double, 3> x{x0(p), x1(p), x2(p)};
        for (int i = 0; i < grid.dim(); ++i)
            out.values(p, i) = f(x, i);
    }
    return out;
}

} // namespace nsmild

#endif // NSMILD_TRANSFORM_HPP
