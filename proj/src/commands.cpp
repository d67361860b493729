#include "nsmild/commands.hpp"

#include "nsmild/config.hpp"
#include "nsmild/io.hpp"
#include "nsmild/operators.hpp"
#include "nsmild/spectral.hpp"
#include "nsmild/taylor_green.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <iomanip>
#include <sstream>

namespace nsmild::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char* artifact_version = "0.1.0";

std::string utc_now()
{
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream ss;
    ss << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return ss.str();
}

// Parsed configuration plus the resolved output directory.
struct Prepared {
    RunConfig config;
    fs::path out_dir;
};

Prepared prepare(const CommandOptions& options)
{
    Prepared p{load_config(options.config_path), {}};
    if (options.seed)
        p.config.run.seed = *options.seed;
    p.config.verify.ensemble.seed = p.config.run.seed;
    p.out_dir = options.out_dir.empty() ? fs::path(p.config.run.out_dir) : fs::path(options.out_dir);
    if (p.out_dir.empty())
        throw ConfigError("no output directory: pass --out or set run.out_dir");
    return p;
}

void ensure_dir(const fs::path& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir))
        throw ConfigError("cannot create output directory '" + dir.string() + "'");
}

void write_json(const fs::path& path, const json& j)
{
    io::write_text(path, j.dump(2) + "\n");
}

// Runs `body` with the standard error mapping: configuration problems exit 1.
template <class Body>
int guarded(const CommandOptions& options, Body&& body)
{
    try {
        return body();
    } catch (const ConfigError& e) {
        *options.err << "error: " << e.what() << "\n";
        return exit_config_error;
    } catch (const std::invalid_argument& e) {
        *options.err << "error: " << e.what() << "\n";
        return exit_config_error;
    }
}

json checks_to_json(const std::vector<CheckReport>& reports)
{
    json arr = json::array();
    for (const auto& r : reports)
        arr.push_back(io::to_json(r));
    return arr;
}

bool all_asserted_pass(const std::vector<CheckReport>& reports)
{
    for (const auto& r : reports)
        if (r.asserted && !r.passed)
            return false;
    return true;
}

void print_summary(const CommandOptions& options, const std::vector<CheckReport>& reports)
{
    if (options.quiet)
        return;
    for (const auto& r : reports) {
        const char* tag = !r.asserted ? "MEASURE" : (r.passed ? "PASS" : "FAIL");
        *options.out << std::left << std::setw(8) << tag << r.name;
        if (!r.passed)
            *options.out << "  (" << r.detail << ")";
        *options.out << "\n";
    }
}

} // namespace

int cmd_run(const CommandOptions& options)
{
    return guarded(options, [&]() -> int {
        const std::string started = utc_now();
        Prepared prep = prepare(options);
        const RunConfig& cfg = prep.config;
        const TorusGrid grid = cfg.make_grid();
        const SolverConfig solver = cfg.solver_config(grid);
        const SpectralVectorField u0 = cfg.initial_field(grid);

        Trajectory traj;
        std::string status = "completed";
        json extra = json::object();
        if (solver.scheme == Scheme::exp_euler) {
            traj = march(u0, solver, cfg.run.t_end);
            if (traj.blew_up) {
                status = "blowup";
                extra["blowup_time"] = traj.blowup_time;
            }
        } else {
            try {
                PicardResult result = picard_solve(u0, solver);
                extra["picard_iterations"] = result.iterations;
                extra["picard_residuals"] = result.residuals;
                // Keep every snapshot_every-th node plus the last one.
                const Trajectory& all = result.trajectory;
                for (std::size_t j = 0; j < all.size(); ++j) {
                    if (j % static_cast<std::size_t>(cfg.run.snapshot_every) != 0 && j + 1 != all.size())
                        continue;
                    traj.times.push_back(all.times[j]);
                    traj.fields.push_back(all.fields[j]);
                    traj.diagnostics.push_back(all.diagnostics[j]);
                }
            } catch (const PicardError& e) {
                status = std::string(to_string(e.reason()));
                extra["picard_residuals"] = e.residuals();
            }
        }

        ensure_dir(prep.out_dir);
        json outputs = json::array();
        io::write_text(prep.out_dir / "diagnostics.csv", io::diagnostics_csv(traj.diagnostics));
        outputs.push_back("diagnostics.csv");
        for (std::size_t s = 0; s < traj.size(); ++s) {
            std::ostringstream name;
            name << "snapshot_" << std::setw(6) << std::setfill('0') << s << ".nsms";
            io::write_snapshot(prep.out_dir / name.str(), traj.fields[s], traj.times[s]);
            outputs.push_back(name.str());
        }

        json config_snapshot = cfg.source;
        config_snapshot["run"]["seed"] = cfg.run.seed;
        config_snapshot["run"]["out_dir"] = prep.out_dir.string();
        json manifest = {{"artifact_version", artifact_version},
                         {"command", "run"},
                         {"config", config_snapshot},
                         {"seed", cfg.run.seed},
                         {"grid", {{"dim", grid.dim()}, {"n_modes", grid.n_modes()}, {"period", grid.period()}}},
                         {"scheme", to_string(solver.scheme)},
                         {"status", status},
                         {"start_time", started},
                         {"end_time", utc_now()},
                         {"outputs", outputs}};
        manifest.update(extra);
        write_json(prep.out_dir / "manifest.json", manifest);

        if (!options.quiet)
            *options.out << "run: " << status << ", " << traj.size() << " snapshots in " << prep.out_dir.string()
                         << "\n";
        return status == "completed" ? exit_ok : exit_blowup;
    });
}

int cmd_verify(const CommandOptions& options)
{
    return guarded(options, [&]() -> int {
        const Prepared prep = prepare(options);
        const std::vector<CheckReport> reports = run_verification_suite(prep.config.verify);
        const bool ok = all_asserted_pass(reports);

        ensure_dir(prep.out_dir);
        write_json(prep.out_dir / "report.json", {{"command", "verify"},
                                                  {"seed", prep.config.run.seed},
                                                  {"passed", ok},
                                                  {"checks", checks_to_json(reports)}});
        print_summary(options, reports);
        return ok ? exit_ok : exit_verification_failed;
    });
}

int cmd_estimate(const CommandOptions& options)
{
    return guarded(options, [&]() -> int {
        const Prepared prep = prepare(options);
        const RunConfig& cfg = prep.config;
        const EstimateParams& ep = cfg.estimate;

        EstimateSpec spec;
        spec.dim = cfg.grid.dim;
        spec.period = cfg.grid.period;
        spec.ensemble = {ep.ensemble_size, cfg.run.seed, ep.decay, ep.amplitude};
        spec.exponents = ep.exponents;
        spec.p = ep.p;
        spec.resolutions = ep.resolutions;
        spec.dealias = cfg.solver.dealias;

        const EstimateReport main = estimate_bilinear_constant(spec);
        EstimateSpec half = spec;
        half.exponents = {0.0, 0.5, 0.5};
        EstimateReport half_half = estimate_bilinear_constant(half);
        half_half.name = "bilinear_estimate_half_half";
        const auto [gamma_over_half, half_over_gamma] = estimate_norm_equivalence(spec, ep.gamma);

        // Hoelder fit and empirical assumption (F) constant on a pair of nearby
        // trajectories at the coarsest and finest resolution.
        SolverConfig solver = cfg.solver;
        solver.forcing = ForcingSpec::zero();
        solver.dt = ep.trajectory_dt;
        solver.snapshot_every = 1;
        json fits = json::array();
        std::vector<double> lipschitz;
        for (int n : {ep.resolutions.front(), ep.resolutions.back()}) {
            const TorusGrid grid = make_grid(cfg.grid.dim, n, cfg.grid.period);
            const SpectralVectorField ua = random_divfree_field(grid, cfg.run.seed, ep.decay, ep.amplitude);
            const SpectralVectorField ub =
                ua + random_divfree_field(grid, cfg.run.seed + 1, ep.decay, 0.1 * ep.amplitude);
            const Trajectory ta = march(ua, solver, ep.trajectory_t_end);
            const Trajectory tb = march(ub, solver, ep.trajectory_t_end);
            const HoelderFit fit = estimate_hoelder(ta, 0.5, ep.p);
            const AssumptionFReport af = check_assumption_F(ta, tb, std::min(fit.beta, 1.0), 0.5, ep.p, solver.dealias);
            lipschitz.push_back(af.max_ratio);
            fits.push_back({{"n_modes", n},
                            {"hoelder", io::to_json(fit)},
                            {"assumption_F_max_ratio", af.max_ratio},
                            {"pairs", af.pairs},
                            {"skipped", af.skipped}});
        }
        const Verdict f_verdict = growth_verdict(lipschitz.front(), lipschitz.back());

        std::vector<CheckReport> checks;
        {
            CheckReport r;
            r.name = "bilinear_estimate_bounded";
            r.measure("max_ratio", main.max_ratio);
            r.passed = main.verdict == Verdict::bounded;
            if (!r.passed)
                r.detail = "verdict " + to_string(main.verdict);
            checks.push_back(r);
        }
        {
            CheckReport r;
            r.name = "bilinear_estimate_half_half";
            r.asserted = false;
            r.measure("max_ratio", half_half.max_ratio);
            r.detail = "verdict " + to_string(half_half.verdict);
            checks.push_back(r);
        }
        {
            CheckReport r;
            r.name = "norm_equivalence";
            r.asserted = false;
            r.measure("sup_gamma_over_half", gamma_over_half.max_ratio);
            r.measure("sup_half_over_gamma", half_over_gamma.max_ratio);
            checks.push_back(r);
        }
        {
            CheckReport r;
            r.name = "assumption_F_stable";
            r.measure("max_ratio_coarse", lipschitz.front());
            r.measure("max_ratio_fine", lipschitz.back());
            r.passed = f_verdict == Verdict::bounded;
            if (!r.passed)
                r.detail = "verdict " + to_string(f_verdict);
            checks.push_back(r);
        }
        const bool ok = all_asserted_pass(checks);

        ensure_dir(prep.out_dir);
        write_json(prep.out_dir / "report.json",
                   {{"command", "estimate"},
                    {"seed", cfg.run.seed},
                    {"passed", ok},
                    {"estimates",
                     {io::to_json(main), io::to_json(half_half), io::to_json(gamma_over_half),
                      io::to_json(half_over_gamma)}},
                    {"trajectory_fits", fits},
                    {"assumption_F_verdict", to_string(f_verdict)},
                    {"checks", checks_to_json(checks)}});
        print_summary(options, checks);
        return ok ? exit_ok : exit_verification_failed;
    });
}

int cmd_oracle(const CommandOptions& options)
{
    return guarded(options, [&]() -> int {
        const Prepared prep = prepare(options);
        const RunConfig& cfg = prep.config;
        if (cfg.grid.dim != 2)
            throw ConfigError("field 'grid.dim': oracle requires dim = 2");
        const TorusGrid grid = cfg.make_grid();
        SolverConfig solver = cfg.solver;
        solver.forcing = ForcingSpec::zero();

        const double amp = cfg.initial.kind == InitialKind::taylor_green ? cfg.initial.amplitude : 1.0;
        const SpectralVectorField u0 = amp * taylor_green(grid, solver.nu, 0.0);
        const Trajectory traj = march(u0, solver, cfg.run.t_end);
        const std::vector<double> errors = compare_oracle(traj, solver.nu);

        const double kappa = grid.base_wavenumber();
        const double e0 = traj.diagnostics.front().energy;
        double max_err = 0.0;
        double max_energy_err = 0.0;
        std::string csv = "time,relative_l2_error,energy,energy_exact\n";
        for (std::size_t s = 0; s < traj.size(); ++s) {
            const double t = traj.times[s] - traj.times.front();
            const double exact = e0 * std::exp(-4.0 * solver.nu * kappa * kappa * t);
            max_err = std::max(max_err, errors[s]);
            max_energy_err = std::max(max_energy_err, std::abs(traj.diagnostics[s].energy - exact) / e0);
            csv += io::format_double(traj.times[s]) + ',' + io::format_double(errors[s]) + ',' +
                   io::format_double(traj.diagnostics[s].energy) + ',' + io::format_double(exact) + '\n';
        }
        double residual = 0.0;
        for (double t : {0.0, 0.5 * cfg.run.t_end, cfg.run.t_end})
            residual = std::max(residual, taylor_green_residual(grid, solver.nu, t, solver.dealias));

        std::vector<CheckReport> checks(1);
        checks[0].name = "taylor_green_oracle";
        checks[0].require_at_most("max_relative_l2_error", max_err, cfg.verify.oracle_tol);
        checks[0].require_at_most("max_relative_energy_error", max_energy_err, 1e-8);
        checks[0].require_at_most("max_substitution_residual", residual, cfg.verify.oracle_tol);
        if (traj.blew_up) {
            checks[0].passed = false;
            checks[0].detail += "trajectory blew up";
        }
        const bool ok = all_asserted_pass(checks);

        ensure_dir(prep.out_dir);
        io::write_text(prep.out_dir / "oracle.csv", csv);
        write_json(prep.out_dir / "report.json",
                   {{"command", "oracle"}, {"passed", ok}, {"checks", checks_to_json(checks)}});
        print_summary(options, checks);
        return ok ? exit_ok : exit_verification_failed;
    });
}

} // namespace nsmild::cli
