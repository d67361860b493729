#include "nsmild/transform.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace nsmild {
namespace {

struct FftwBuffer {
    explicit FftwBuffer(Eigen::Index n) : data(fftw_alloc_complex(static_cast<std::size_t>(n)))
    {
        if (data == nullptr)
            throw std::bad_alloc();
    }
    ~FftwBuffer() { fftw_free(data); }
    FftwBuffer(const FftwBuffer&) = delete;
    FftwBuffer& operator=(const FftwBuffer&) = delete;

    fftw_complex* data;
};

// Plans are created once per (shape, direction) against aligned scratch buffers
// and then executed through the new-array interface, which is thread safe.
// fftw_malloc alignment is identical for every buffer, so execution always hits
// the same codelets and results are reproducible bit for bit.
class PlanCache {
public:
    fftw_plan get(int dim, int n, int sign)
    {
        const std::scoped_lock lock(mutex_);
        const auto key = std::make_tuple(dim, n, sign);
        if (auto it = plans_.find(key); it != plans_.end())
            return it->second;

        Eigen::Index size = 1;
        int dims[3];
        for (int a = 0; a < dim; ++a) {
            dims[a] = n;
            size *= n;
        }
        FftwBuffer in(size);
        FftwBuffer out(size);
        fftw_plan plan = fftw_plan_dft(dim, dims, in.data, out.data, sign, FFTW_ESTIMATE);
        if (plan == nullptr)
            throw std::runtime_error("fftw: planning failed");
        plans_.emplace(key, plan);
        return plan;
    }

    ~PlanCache()
    {
        for (auto& [key, plan] : plans_)
            fftw_destroy_plan(plan);
    }

private:
    std::mutex mutex_;
    std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

PlanCache& plan_cache()
{
    static PlanCache cache;
    return cache;
}

void execute(const TorusGrid& grid, int sign, const Complex* src, Complex* dst)
{
    const Eigen::Index n = grid.size();
    FftwBuffer in(n);
    FftwBuffer out(n);
    auto* in_c = reinterpret_cast<Complex*>(in.data);
    std::copy(src, src + n, in_c);
    fftw_execute_dft(plan_cache().get(grid.dim(), grid.n_modes(), sign), in.data, out.data);
    const auto* out_c = reinterpret_cast<const Complex*>(out.data);
    std::copy(out_c, out_c + n, dst);
}

} // namespace

Eigen::ArrayXcd forward_scalar(const TorusGrid& grid, const Eigen::ArrayXd& values)
{
    if (values.size() != grid.size())
        throw std::invalid_argument("forward transform: value count does not match grid");
    const Eigen::ArrayXcd src = values.cast<Complex>();
    Eigen::ArrayXcd dst(grid.size());
    execute(grid, FFTW_FORWARD, src.data(), dst.data());
    return dst / static_cast<double>(grid.size());
}

Eigen::ArrayXd inverse_scalar(const TorusGrid& grid, const Eigen::ArrayXcd& coeffs)
{
    if (coeffs.size() != grid.size())
        throw std::invalid_argument("inverse transform: coefficient count does not match grid");
    Eigen::ArrayXcd dst(grid.size());
    execute(grid, FFTW_BACKWARD, coeffs.data(), dst.data());
    return dst.real();
}

SpectralVectorField forward_transform(const PhysicalVectorField& u)
{
    if (u.values.rows() != u.grid.size() || u.values.cols() != u.grid.dim())
        throw std::invalid_argument("forward transform: shape mismatch with grid");
    SpectralVectorField out(u.grid);
    for (int i = 0; i < u.dim(); ++i)
        out.coeffs.col(i) = forward_scalar(u.grid, u.values.col(i));
    return out;
}

PhysicalVectorField inverse_transform(const SpectralVectorField& u)
{
    if (u.coeffs.rows() != u.grid.size() || u.coeffs.cols() != u.grid.dim())
        throw std::invalid_argument("inverse transform: shape mismatch with grid");
    PhysicalVectorField out(u.grid);
    for (int i = 0; i < u.dim(); ++i)
        out.values.col(i) = inverse_scalar(u.grid, u.coeffs.col(i));
    return out;
}

Eigen::ArrayXd collocation_coordinate(const TorusGrid& grid, int axis)
{
    if (axis < 0 || axis >= grid.dim())
        throw std::invalid_argument("collocation_coordinate: axis out of range");
    const int n = grid.n_modes();
    const double h = grid.period() / n;
    Eigen::Index stride = 1;
    for (int a = grid.dim() - 1; a > axis; --a)
        stride *= n;
    Eigen::ArrayXd x(grid.size());
    for (Eigen::Index p = 0; p < grid.size(); ++p)
        x(p) = h * static_cast<double>((p / stride) % n);
    return x;
}

} // namespace nsmild
