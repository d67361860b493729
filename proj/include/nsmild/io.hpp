#ifndef NSMILD_IO_HPP
#define NSMILD_IO_HPP

#include "nsmild/solver.hpp"
#include "nsmild/verification.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace nsmild::io {

// Snapshot layout, little-endian:
//   "NSMS" | u32 version = 1 | u32 dim | u32 n_modes | f64 period | f64 time
//   then for each component, every lattice coefficient as (f64 re, f64 im).
// Lattice order is row-major over (k_0, ..., k_{dim-1}), axis 0 slowest, each
// axis running k = -n/2+1, ..., n/2.
inline constexpr std::uint32_t snapshot_version = 1;

struct Snapshot {
    SpectralVectorField field;
    double time = 0.0;
};

std::string encode_snapshot(const SpectralVectorField& u, double time);
Snapshot decode_snapshot(const std::string& bytes);

void write_snapshot(const std::filesystem::path& path, const SpectralVectorField& u, double time);
Snapshot read_snapshot(const std::filesystem::path& path);

/// Shortest-roundtrip-safe decimal form ("%.17g").
std::string format_double(double x);

/// Header time,energy,enstrophy,max_div,norm_x_half,norm_F and one row per entry.
std::string diagnostics_csv(const std::vector<Diagnostics>& rows);
void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

nlohmann::json to_json(const CheckReport& report);
nlohmann::json to_json(const EstimateReport& report);
nlohmann::json to_json(const HoelderFit& fit);
nlohmann::json to_json(const AdaptiveWindowReport& report);

} // namespace nsmild::io

#endif // NSMILD_IO_HPP
