#include "nsmild/io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nsmild::io {
namespace {

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

template <class T>
void put(std::string& out, T value)
{
    char bytes[sizeof(T)];
    std::memcpy(bytes, &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big)
        std::reverse(bytes, bytes + sizeof(T));
    out.append(bytes, sizeof(T));
}

class Reader {
public:
    explicit Reader(const std::string& bytes) : bytes_(bytes) {}

    template <class T>
    T get()
    {
        if (pos_ + sizeof(T) > bytes_.size())
            throw std::runtime_error("snapshot: truncated data");
        char bytes[sizeof(T)];
        std::memcpy(bytes, bytes_.data() + pos_, sizeof(T));
        if constexpr (std::endian::native == std::endian::big)
            std::reverse(bytes, bytes + sizeof(T));
        pos_ += sizeof(T);
        T value;
        std::memcpy(&value, bytes, sizeof(T));
        return value;
    }

    bool at_end() const { return pos_ == bytes_.size(); }

private:
    const std::string& bytes_;
    std::size_t pos_ = 4;
};

// Storage index of every lattice point, in file order.
std::vector<Eigen::Index> file_order(const TorusGrid& grid)
{
    const int n = grid.n_modes();
    std::vector<Eigen::Index> order;
    order.reserve(static_cast<std::size_t>(grid.size()));
    std::array<int, 3> k{0, 0, 0};
    const int lo = -n / 2 + 1;
    for (int a = 0; a < grid.dim(); ++a)
        k[static_cast<std::size_t>(a)] = lo;
    for (Eigen::Index count = 0; count < grid.size(); ++count) {
        order.push_back(grid.flat_index(k));
        for (int a = grid.dim() - 1; a >= 0; --a) {
            auto& c = k[static_cast<std::size_t>(a)];
            if (++c <= n / 2)
                break;
            c = lo;
        }
    }
    return order;
}

} // namespace

std::string encode_snapshot(const SpectralVectorField& u, double time)
{
    const TorusGrid& g = u.grid;
    std::string out;
    out.reserve(32 + static_cast<std::size_t>(g.size() * g.dim()) * 16);
    out.append("NSMS", 4);
    put<std::uint32_t>(out, snapshot_version);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(g.dim()));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(g.n_modes()));
    put<double>(out, g.period());
    put<double>(out, time);
    const auto order = file_order(g);
    for (int i = 0; i < g.dim(); ++i) {
        for (Eigen::Index idx : order) {
            put<double>(out, u.coeffs(idx, i).real());
            put<double>(out, u.coeffs(idx, i).imag());
        }
    }
    return out;
}

Snapshot decode_snapshot(const std::string& bytes)
{
    if (bytes.size() < 4 || bytes.compare(0, 4, "NSMS") != 0)
        throw std::runtime_error("snapshot: bad magic");
    Reader r(bytes);
    const auto version = r.get<std::uint32_t>();
    if (version != snapshot_version)
        throw std::runtime_error("snapshot: unsupported version " + std::to_string(version));
    const auto dim = static_cast<int>(r.get<std::uint32_t>());
    const auto n = static_cast<int>(r.get<std::uint32_t>());
    const double period = r.get<double>();
    const double time = r.get<double>();
    const TorusGrid grid = make_grid(dim, n, period);

    SpectralVectorField u(grid);
    const auto order = file_order(grid);
    for (int i = 0; i < dim; ++i) {
        for (Eigen::Index idx : order) {
            const double re = r.get<double>();
            const double im = r.get<double>();
            u.coeffs(idx, i) = Complex(re, im);
        }
    }
    if (!r.at_end())
        throw std::runtime_error("snapshot: trailing bytes");
    return {std::move(u), time};
}

void write_snapshot(const std::filesystem::path& path, const SpectralVectorField& u, double time)
{
    write_text(path, encode_snapshot(u, time));
}

Snapshot read_snapshot(const std::filesystem::path& path)
{
    return decode_snapshot(read_text(path));
}

std::string format_double(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string diagnostics_csv(const std::vector<Diagnostics>& rows)
{
    std::string out = "time,energy,enstrophy,max_div,norm_x_half,norm_F\n";
    for (const auto& d : rows) {
        out += format_double(d.time) + ',' + format_double(d.energy) + ',' + format_double(d.enstrophy) + ',' +
               format_double(d.max_div) + ',' + format_double(d.norm_x_half) + ',' + format_double(d.norm_F) + '\n';
    }
    return out;
}

void write_text(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out)
        throw std::runtime_error("write to '" + path.string() + "' failed");
}

std::string read_text(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

nlohmann::json to_json(const CheckReport& report)
{
    nlohmann::json measurements = nlohmann::json::object();
    for (const auto& [k, v] : report.measurements)
        measurements[k] = v;
    return {{"name", report.name},
            {"asserted", report.asserted},
            {"verdict", report.passed ? "pass" : "fail"},
            {"measurements", measurements},
            {"detail", report.detail}};
}

nlohmann::json to_json(const EstimateReport& report)
{
    nlohmann::json per = nlohmann::json::array();
    for (const auto& [n, r] : report.per_resolution)
        per.push_back({{"n_modes", n}, {"max_ratio", r}});
    return {{"name", report.name},
            {"ensemble_size", report.ensemble_size},
            {"exponent_triple", {report.exponents.delta, report.exponents.theta, report.exponents.omega}},
            {"fitted_constant", report.fitted_constant},
            {"max_ratio", report.max_ratio},
            {"per_resolution", per},
            {"verdict", to_string(report.verdict)}};
}

nlohmann::json to_json(const HoelderFit& fit)
{
    return {{"C", fit.C}, {"beta", fit.beta}, {"r_squared", fit.r_squared}, {"sample_pairs", fit.sample_pairs}};
}

nlohmann::json to_json(const AdaptiveWindowReport& report)
{
    nlohmann::json attempts = nlohmann::json::array();
    for (const auto& a : report.attempts)
        attempts.push_back({{"window_T", a.window_T},
                            {"converged", a.converged},
                            {"iterations", a.iterations},
                            {"failure", a.failure}});
    return {{"T_star", report.T_star}, {"attempts", attempts}};
}

} // namespace nsmild::io
