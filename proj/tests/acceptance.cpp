// Acceptance suite: one PASS/FAIL line per criterion; exits 1 if any fails.
#include "nsmild/commands.hpp"
#include "nsmild/io.hpp"
#include "nsmild/operators.hpp"
#include "nsmild/spectral.hpp"
#include "nsmild/taylor_green.hpp"
#include "nsmild/verification.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace nsmild;
namespace fs = std::filesystem;

namespace {

constexpr double pi = std::numbers::pi;

// Tolerances and limits.
constexpr double identity_tol = 1e-12;
constexpr double gradient_norm_tol = 1e-10;
constexpr double max_growth = 0.10;
constexpr double closed_form_tol = 1e-6;
constexpr double oracle_tol = 1e-10;
constexpr double energy_tol = 1e-8;
constexpr double cross_tol = 1e-4;
constexpr double residual_ratio_limit = 0.9;
constexpr double convergence_target = 2.0;
constexpr double convergence_band = 0.2;

struct Outcome {
    bool passed = true;
    std::string detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok)
            passed = false;
        add(std::string(ok ? "" : "!") + what);
    }
    void add(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string num(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

int failures = 0;

void criterion(int id, const char* title, double limit_s, const std::function<Outcome()>& body)
{
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = body();
    } catch (const std::exception& e) {
        out.passed = false;
        out.add(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (limit_s > 0.0)
        out.require(secs < limit_s, "runtime " + num(secs) + " s < " + num(limit_s) + " s");
    else
        out.add("runtime " + num(secs) + " s");
    if (!out.passed)
        ++failures;
    std::printf("%s criterion %d: %s [%s]\n", out.passed ? "PASS" : "FAIL", id, title, out.detail.c_str());
    std::fflush(stdout);
}

EnsembleSpec hundred(std::uint64_t seed)
{
    EnsembleSpec e;
    e.size = 100;
    e.seed = seed;
    e.spectrum_decay = 4.0;
    return e;
}

SpectralVectorField with_x_half_norm(SpectralVectorField u, double target)
{
    u.coeffs *= target / frac_norm(u, FracNormParams(0.5, 2.0));
    return u;
}

SpectralVectorField single_mode(const TorusGrid& g, int component, std::array<int, 3> k)
{
    SpectralVectorField u(g);
    u.coeffs(g.flat_index(k), component) = Complex(0.0, -0.5);
    u.coeffs(g.flat_index({-k[0], -k[1], -k[2]}), component) = Complex(0.0, 0.5);
    u.divergence_free = true;
    return u;
}

double rel_l2(const SpectralVectorField& a, const SpectralVectorField& b)
{
    return l2_norm_parseval(a - b) / l2_norm_parseval(b);
}

void take_check(Outcome& out, const CheckReport& r)
{
    for (const auto& [k, v] : r.measurements)
        out.add(r.name + "." + k + " = " + num(v));
    out.require(r.passed, r.name + (r.passed ? " ok" : " failed " + r.detail));
}

} // namespace

int main()
{
    const TorusGrid g32 = make_grid(3, 32);

    criterion(1, "operator identities, N=32, 100 fields", 10.0, [&] {
        Outcome out;
        const auto ens = make_ensemble(g32, hundred(1));
        EnsembleSpec pspec = hundred(1);
        pspec.seed += 1000003;
        const auto pots = make_scalar_ensemble(g32, pspec);
        take_check(out, check_operator_identities(ens, pots, identity_tol));
        return out;
    });

    criterion(2, "resolvent preserves divergence-free fields, both directions", 5.0, [&] {
        Outcome out;
        const TorusGrid g = make_grid(3, 16);
        const auto ens = make_ensemble(g, hundred(2));
        EnsembleSpec pspec = hundred(2);
        pspec.seed += 1000003;
        const auto pots = make_scalar_ensemble(g, pspec);
        take_check(out, check_resolvent_divfree({1.0, 10.0, 100.0}, ens, pots, identity_tol));
        return out;
    });

    criterion(3, "heat semigroup invariance and L_p contraction", 10.0, [&] {
        Outcome out;
        const TorusGrid g = make_grid(3, 16);
        take_check(out, check_semigroup(make_ensemble(g, hundred(3)), {0.01, 0.1, 1.0}, 1.0, identity_tol));
        return out;
    });

    criterion(4, "gradient norm equals half-power norm at p=2", 5.0, [&] {
        Outcome out;
        const TorusGrid g = make_grid(3, 16);
        const CheckReport r = check_gradient_norm_identity(make_ensemble(g, hundred(4)), gradient_norm_tol);
        out.require(r.passed, "max_relative_gap_p2 = " + num(r.get("max_relative_gap_p2")));
        return out;
    });

    criterion(5, "bilinear estimate, theta = omega = 3/4, p=2", 60.0, [&] {
        Outcome out;
        const TorusGrid g = make_grid(3, 16);
        const double closed = std::sqrt(2.0) * std::pow(pi, 1.5) / (4.0 * pi * pi * pi);
        const double ratio = bilinear_ratio(single_mode(g, 0, {0, 1, 0}), single_mode(g, 1, {1, 0, 0}), {}, 2.0);
        out.require(std::abs(ratio - closed) <= closed_form_tol,
                    "single-mode ratio " + num(ratio) + " vs " + num(closed));

        EstimateSpec spec;
        spec.ensemble = hundred(5);
        spec.resolutions = {16, 32};
        const EstimateReport r = estimate_bilinear_constant(spec);
        const double first = r.per_resolution.front().second;
        const double last = r.per_resolution.back().second;
        out.require(r.verdict == Verdict::bounded && last / first - 1.0 < max_growth,
                    "max ratio N=16 " + num(first) + ", N=32 " + num(last) + ", growth " +
                        num(last / first - 1.0));
        return out;
    });

    criterion(6, "2D Taylor-Green oracle, N=64, dt=1e-3, t=1", 60.0, [&] {
        Outcome out;
        const TorusGrid g = make_grid(2, 64);
        SolverConfig cfg;
        cfg.nu = 1.0;
        cfg.dt = 1e-3;
        cfg.snapshot_every = 100;
        const SpectralVectorField u0 = taylor_green(g, 1.0, 0.0);
        const Trajectory traj = march(u0, cfg, 1.0);
        out.require(!traj.blew_up && traj.times.back() == 1.0, "reached t = 1");
        const double err = rel_l2(traj.fields.back(), std::exp(-2.0) * u0);
        out.require(err <= oracle_tol, "relative L2 error " + num(err));
        double energy_err = 0.0;
        for (const Diagnostics& d : traj.diagnostics)
            energy_err = std::max(energy_err, std::abs(d.energy - 2.0 * pi * pi * std::exp(-4.0 * d.time)));
        out.require(energy_err <= energy_tol, "energy error " + num(energy_err));
        return out;
    });

    criterion(7, "Picard and marching agree, geometric residual decay", 300.0, [&] {
        Outcome out;
        const TorusGrid g = make_grid(3, 16);
        SolverConfig cfg;
        cfg.window_T = 0.1;
        cfg.n_nodes = 101;
        SolverConfig mcfg = cfg;
        mcfg.dt = 1e-3;
        mcfg.snapshot_every = 1000;
        double worst_gap = 0.0;
        double worst_ratio = 0.0;
        int max_iters = 0;
        for (std::uint64_t s = 0; s < 10; ++s) {
            const SpectralVectorField u0 = with_x_half_norm(random_divfree_field(g, 700 + s, 4.0, 1.0), 0.1);
            const PicardResult pr = picard_solve(u0, cfg);
            const Trajectory m = march(u0, mcfg, 0.1);
            worst_gap = std::max(worst_gap, rel_l2(pr.trajectory.fields.back(), m.fields.back()));
            for (std::size_t i = 1; i < pr.residuals.size(); ++i)
                worst_ratio = std::max(worst_ratio, pr.residuals[i] / pr.residuals[i - 1]);
            max_iters = std::max(max_iters, pr.iterations);
        }
        out.require(worst_gap <= cross_tol, "max relative gap " + num(worst_gap));
        out.require(worst_ratio < residual_ratio_limit, "max residual ratio " + num(worst_ratio));
        out.add("max iterations " + std::to_string(max_iters));
        return out;
    });

    criterion(8, "first-order self-convergence, 3D N=32, t=0.2", 120.0, [&] {
        Outcome out;
        const SpectralVectorField u0 = with_x_half_norm(random_divfree_field(g32, 800, 4.0, 1.0), 1.0);
        SolverConfig cfg;
        cfg.snapshot_every = 1 << 20;
        auto final_state = [&](double dt) {
            cfg.dt = dt;
            return march(u0, cfg, 0.2).fields.back();
        };
        const double dt = 1e-2;
        const SpectralVectorField a = final_state(dt);
        const SpectralVectorField b = final_state(dt / 2.0);
        const SpectralVectorField ref = final_state(dt / 4.0);
        // Errors of dt and dt/2, each measured against the next finer run.
        const double e1 = l2_norm_parseval(a - b);
        const double e2 = l2_norm_parseval(b - ref);
        const double ratio = e1 / e2;
        out.require(std::abs(ratio - convergence_target) <= convergence_band, "error ratio " + num(ratio));
        out.add("ratio with both errors against the dt/4 run " +
                num(l2_norm_parseval(a - ref) / l2_norm_parseval(b - ref)));
        return out;
    });

    criterion(9, "existence window nonincreasing in amplitude", 300.0, [&] {
        Outcome out;
        const TorusGrid g = make_grid(3, 16);
        SolverConfig cfg;
        cfg.window_T = 1.0;
        cfg.n_nodes = 21;
        const SpectralVectorField base = with_x_half_norm(random_divfree_field(g, 900, 4.0, 1.0), 20.0);
        const TrendReport r = existence_time_trend({0.1, 1.0, 10.0}, base, cfg);
        std::string pairs;
        for (const auto& [a, T] : r.amplitude_T_star)
            pairs += (pairs.empty() ? "" : ", ") + num(a) + " -> " + num(T);
        out.require(r.nonincreasing, "T_star " + pairs);
        bool all_positive = true;
        for (const auto& at : r.amplitude_T_star)
            all_positive = all_positive && at.second > 0.0;
        out.require(all_positive, "every amplitude found a window");
        return out;
    });

    criterion(10, "determinism and bit-exact snapshots", 0.0, [&] {
        Outcome out;
        const fs::path root = fs::temp_directory_path() / "nsmild_acceptance";
        fs::remove_all(root);
        fs::create_directories(root);
        const fs::path config = root / "config.json";
        std::ofstream(config) << R"({
            "grid": {"dim": 3, "n_modes": 16},
            "solver": {"nu": 0.5, "dt": 0.005},
            "forcing": {"kind": "hoelder_modulated", "exponent": 0.5, "seed": 4, "amplitude": 0.5},
            "initial": {"kind": "random", "x_half_norm": 1.0},
            "run": {"t_end": 0.1, "snapshot_every": 5}
        })";
        std::ostringstream sink;
        auto run_into = [&](const std::string& name) {
            cli::CommandOptions o;
            o.config_path = config.string();
            o.out_dir = (root / name).string();
            o.seed = 12345;
            o.quiet = true;
            o.out = &sink;
            o.err = &sink;
            return cli::cmd_run(o);
        };
        out.require(run_into("a") == 0 && run_into("b") == 0, "two runs completed");
        int compared = 0;
        int differing = 0;
        int readback_bad = 0;
        for (const auto& entry : fs::directory_iterator(root / "a")) {
            const std::string name = entry.path().filename().string();
            if (name == "manifest.json")
                continue;
            ++compared;
            if (io::read_text(entry.path()) != io::read_text(root / "b" / name))
                ++differing;
            if (entry.path().extension() == ".nsms") {
                const io::Snapshot s = io::read_snapshot(entry.path());
                if (io::encode_snapshot(s.field, s.time) != io::read_text(entry.path()))
                    ++readback_bad;
            }
        }
        out.require(compared > 2 && differing == 0,
                    std::to_string(compared) + " files compared, " + std::to_string(differing) + " differ");

        const TorusGrid g = make_grid(3, 16);
        const SpectralVectorField u = random_divfree_field(g, 99, 2.0, 1.0);
        const fs::path snap = root / "roundtrip.nsms";
        io::write_snapshot(snap, u, 0.75);
        const io::Snapshot back = io::read_snapshot(snap);
        out.require(readback_bad == 0 && (back.field.coeffs == u.coeffs).all() && back.time == 0.75,
                    "snapshot read-back bit-exact");
        fs::remove_all(root);
        return out;
    });

    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
