#include "nsmild/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace nsmild {

TorusGrid::TorusGrid(int dim, int n_modes, double period) : dim_(dim), n_(n_modes), period_(period)
{
    if (dim != 2 && dim != 3)
        throw std::invalid_argument("grid: dim must be 2 or 3, got " + std::to_string(dim));
    if (n_modes % 2 != 0)
        throw std::invalid_argument("grid: n_modes must be even, got " + std::to_string(n_modes));
    if (n_modes < 8)
        throw std::invalid_argument("grid: n_modes must be >= 8, got " + std::to_string(n_modes));
    if (!(period > 0.0) || !std::isfinite(period))
        throw std::invalid_argument("grid: period must be positive and finite");

    size_ = 1;
    for (int a = 0; a < dim_; ++a)
        size_ *= n_;

    auto sym = std::make_shared<Symbols>();
    const double kappa = base_wavenumber();
    for (auto& arr : sym->k)
        arr = Eigen::ArrayXd::Zero(size_);
    for (auto& arr : sym->kd)
        arr = Eigen::ArrayXd::Zero(size_);
    sym->kmax = Eigen::ArrayXi::Zero(size_);

    for (Eigen::Index idx = 0; idx < size_; ++idx) {
        const auto kint = integer_wavenumbers(idx);
        int kmax = 0;
        for (int a = 0; a < dim_; ++a) {
            const auto ua = static_cast<std::size_t>(a);
            sym->k[ua](idx) = kappa * kint[ua];
            sym->kd[ua](idx) = kint[ua] == n_ / 2 ? 0.0 : kappa * kint[ua];
            kmax = std::max(kmax, std::abs(kint[ua]));
        }
        sym->kmax(idx) = kmax;
    }
    sym->ksq = sym->k[0].square() + sym->k[1].square() + sym->k[2].square();
    sym->kdsq = sym->kd[0].square() + sym->kd[1].square() + sym->kd[2].square();
    symbols_ = std::move(sym);
}

double TorusGrid::cell_volume() const
{
    return std::pow(period_ / n_, dim_);
}

double TorusGrid::domain_volume() const
{
    return std::pow(period_, dim_);
}

std::array<int, 3> TorusGrid::integer_wavenumbers(Eigen::Index idx) const
{
    std::array<int, 3> k{0, 0, 0};
    for (int a = dim_ - 1; a >= 0; --a) {
        k[static_cast<std::size_t>(a)] = wavenumber_of(static_cast<int>(idx % n_));
        idx /= n_;
    }
    return k;
}

Eigen::Index TorusGrid::flat_index(const std::array<int, 3>& k) const
{
    Eigen::Index idx = 0;
    for (int a = 0; a < dim_; ++a)
        idx = idx * n_ + index_of(k[static_cast<std::size_t>(a)]);
    return idx;
}

Eigen::Index TorusGrid::conjugate_index(Eigen::Index idx) const
{
    auto k = integer_wavenumbers(idx);
    for (auto& c : k)
        c = -c;
    return flat_index(k);
}

TorusGrid make_grid(int dim, int n_modes, double period)
{
    return TorusGrid(dim, n_modes, period);
}

} // namespace nsmild
