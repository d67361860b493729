#ifndef NSMILD_CONFIG_HPP
#define NSMILD_CONFIG_HPP

#include "nsmild/solver.hpp"
#include "nsmild/verification.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nsmild {

/// Configuration problem; what() names the offending line or field.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GridParams {
    int dim = 3;
    int n_modes = 16;
    double period = 6.283185307179586;
};

struct ForcingParams {
    ForcingKind kind = ForcingKind::zero;
    double exponent = 1.0;
    std::uint64_t seed = 11;
    double amplitude = 0.0;
    double decay = 4.0;
};

enum class InitialKind { zero, taylor_green, random };

struct InitialParams {
    InitialKind kind = InitialKind::random;
    double amplitude = 1.0;
    double decay = 4.0;
    /// When set, the random field is rescaled to this X_{1/2} norm.
    std::optional<double> x_half_norm;
};

struct RunParams {
    double t_end = 0.1;
    int snapshot_every = 10;
    std::uint64_t seed = 1;
    std::string out_dir;
};

struct EstimateParams {
    int ensemble_size = 100;
    std::vector<int> resolutions{16, 32};
    ExponentTriple exponents;
    double p = 2.0;
    double decay = 4.0;
    double amplitude = 1.0;
    double gamma = 0.75;
    double trajectory_t_end = 0.1;
    double trajectory_dt = 1e-3;
};

/// Parsed experiment file. Top-level sections: grid, solver, forcing, initial,
/// run, verify, estimate; all optional, unknown keys rejected.
struct RunConfig {
    GridParams grid;
    SolverConfig solver;
    ForcingParams forcing;
    InitialParams initial;
    RunParams run;
    VerifySuiteConfig verify;
    EstimateParams estimate;
    nlohmann::json source;

    TorusGrid make_grid() const;
    /// Solver settings with the forcing field materialized on `grid`.
    SolverConfig solver_config(const TorusGrid& grid) const;
    SpectralVectorField initial_field(const TorusGrid& grid) const;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

} // namespace nsmild

#endif // NSMILD_CONFIG_HPP
