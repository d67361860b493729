#ifndef NSMILD_GRID_HPP
#define NSMILD_GRID_HPP

#include <Eigen/Dense>

#include <array>
#include <cstddef>
#include <memory>
#include <numbers>

namespace nsmild {

/// Uniform periodic discretization of the box [0, period)^dim.
///
/// Modes are stored in FFT order: along each axis storage index j holds the
/// integer wavenumber j for j <= n/2 and j - n otherwise, so the lattice is
/// {-n/2+1, ..., n/2}^dim. Axis 0 varies slowest (row-major).
class TorusGrid {
public:
    TorusGrid(int dim, int n_modes, double period);

    int dim() const { return dim_; }
    int n_modes() const { return n_; }
    double period() const { return period_; }

    /// 2*pi / period, the physical size of one lattice step.
    double base_wavenumber() const { return 2.0 * std::numbers::pi / period_; }

    /// Number of lattice points (= collocation points).
    Eigen::Index size() const { return size_; }

    double cell_volume() const;
    double domain_volume() const;

    /// Integer wavenumber of storage index j along one axis.
    int wavenumber_of(int j) const { return j <= n_ / 2 ? j : j - n_; }
    /// Storage index of integer wavenumber k (taken modulo n).
    int index_of(int k) const { return ((k % n_) + n_) % n_; }

    /// Integer wavenumbers of flat storage index `idx`; unused axes are 0.
    std::array<int, 3> integer_wavenumbers(Eigen::Index idx) const;
    Eigen::Index flat_index(const std::array<int, 3>& k) const;
    /// Flat index of -k (modulo n), the Hermitian partner of `idx`.
    Eigen::Index conjugate_index(Eigen::Index idx) const;

    /// Physical wavenumber along `axis` per mode.
    const Eigen::ArrayXd& wavenumber(int axis) const { return symbols_->k[static_cast<std::size_t>(axis)]; }
    /// Wavenumber used for first derivatives: as wavenumber() but zero on the
    /// Nyquist plane, so odd-order derivatives of real fields stay real.
    const Eigen::ArrayXd& derivative_wavenumber(int axis) const
    {
        return symbols_->kd[static_cast<std::size_t>(axis)];
    }
    /// |k|^2 per mode (full wavenumber, Nyquist included).
    const Eigen::ArrayXd& k_squared() const { return symbols_->ksq; }
    /// |kd|^2 per mode, the symbol of -div grad.
    const Eigen::ArrayXd& kd_squared() const { return symbols_->kdsq; }
    /// Largest |k_i| over axes, in integer units.
    const Eigen::ArrayXi& max_abs_wavenumber() const { return symbols_->kmax; }

    friend bool operator==(const TorusGrid& a, const TorusGrid& b)
    {
        return a.dim_ == b.dim_ && a.n_ == b.n_ && a.period_ == b.period_;
    }

private:
    struct Symbols {
        std::array<Eigen::ArrayXd, 3> k;
        std::array<Eigen::ArrayXd, 3> kd;
        Eigen::ArrayXd ksq;
        Eigen::ArrayXd kdsq;
        Eigen::ArrayXi kmax;
    };

    int dim_;
    int n_;
    double period_;
    Eigen::Index size_;
    std::shared_ptr<const Symbols> symbols_;
};

/// Validating factory; throws std::invalid_argument on bad parameters.
TorusGrid make_grid(int dim, int n_modes, double period = 2.0 * std::numbers::pi);

} // namespace nsmild

#endif // NSMILD_GRID_HPP
