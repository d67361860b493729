#include "nsmild/solver.hpp"

#include "nsmild/operators.hpp"

#include <cmath>
#include <string>

namespace nsmild {
namespace {

void require_solver_input(const SpectralVectorField& u0)
{
    if (!is_mean_zero(u0))
        throw std::invalid_argument("solver: initial field must have zero mean");
    if (divergence_defect(u0) > 1e-10)
        throw std::invalid_argument("solver: initial field must be divergence-free");
}

// Modewise weights of one exponential Euler step of size h.
struct StepWeights {
    double h;
    Eigen::ArrayXd decay;
    Eigen::ArrayXd phi;

    StepWeights(const TorusGrid& grid, double h_, double nu)
        : h(h_), decay(heat_symbol(grid, h_, nu)), phi(h_ * phi1_symbol(grid, h_, nu))
    {
    }
};

SpectralVectorField step_with(const SpectralVectorField& u, double t, const StepWeights& w, const SolverConfig& config)
{
    SpectralVectorField rhs = nonlinear_F(u, config.dealias);
    if (config.forcing.kind() != ForcingKind::zero)
        rhs.coeffs += config.forcing.projected(u.grid, t).coeffs;

    SpectralVectorField next(u.grid, scale_modes(u.coeffs, w.decay) + scale_modes(rhs.coeffs, w.phi),
                             true);
    next.coeffs.row(0).setZero();
    if (!next.coeffs.allFinite())
        throw BlowUpError("exp_euler_step: non-finite coefficients at t = " + std::to_string(t + w.h));
    return next;
}

} // namespace

Scheme parse_scheme(std::string_view name)
{
    if (name == "picard_window")
        return Scheme::picard_window;
    if (name == "exp_euler")
        return Scheme::exp_euler;
    throw std::invalid_argument("unknown scheme '" + std::string(name) + "'");
}

std::string_view to_string(Scheme scheme)
{
    return scheme == Scheme::picard_window ? "picard_window" : "exp_euler";
}

void SolverConfig::validate() const
{
    if (!(nu > 0.0))
        throw std::invalid_argument("solver.nu must be positive");
    if (!(p >= 2.0))
        throw std::invalid_argument("solver.p must be >= 2");
    if (!(dt > 0.0))
        throw std::invalid_argument("solver.dt must be positive");
    if (!(window_T > 0.0))
        throw std::invalid_argument("solver.window_T must be positive");
    if (n_nodes < 3)
        throw std::invalid_argument("solver.n_nodes must be >= 3");
    if (!(picard_tol > 0.0))
        throw std::invalid_argument("solver.picard_tol must be positive");
    if (picard_max_iters < 1)
        throw std::invalid_argument("solver.picard_max_iters must be >= 1");
    if (snapshot_every < 1)
        throw std::invalid_argument("run.snapshot_every must be >= 1");
}

Diagnostics compute_diagnostics(const SpectralVectorField& u, double t, const SolverConfig& config)
{
    Diagnostics d;
    d.time = t;
    const double vol = u.grid.domain_volume();
    d.energy = vol * u.coeffs.abs2().sum();
    d.enstrophy = vol * (u.coeffs.abs2().colwise() * u.grid.kd_squared()).sum();
    d.max_div = max_pointwise_divergence(u);
    d.norm_x_half = frac_norm(u, FracNormParams(0.5, config.p));
    d.norm_F = lp_norm(nonlinear_F(u, config.dealias), config.p);
    return d;
}

void Trajectory::push(double t, SpectralVectorField u, const SolverConfig& config)
{
    diagnostics.push_back(compute_diagnostics(u, t, config));
    times.push_back(t);
    fields.push_back(std::move(u));
}

PicardError::PicardError(Reason reason, std::vector<double> residuals)
    : std::runtime_error(std::string("picard_solve: ") + std::string(to_string(reason))), reason_(reason),
      residuals_(std::move(residuals))
{
}

std::string_view to_string(PicardError::Reason reason)
{
    return reason == PicardError::Reason::not_contracting ? "NotContracting" : "MaxIters";
}

SpectralVectorField exp_euler_step(const SpectralVectorField& u, double t, double h, const SolverConfig& config)
{
    require_solver_input(u);
    return step_with(u, t, StepWeights(u.grid, h, config.nu), config);
}

Trajectory march(const SpectralVectorField& u0, const SolverConfig& config, double t_end)
{
    config.validate();
    require_solver_input(u0);
    if (!(t_end > config.t0))
        throw std::invalid_argument("march: t_end must exceed t0");

    const double span = t_end - config.t0;
    const auto n_steps = static_cast<long>(std::max(1.0, std::ceil(span / config.dt - 1e-9)));
    const StepWeights full(u0.grid, config.dt, config.nu);

    Trajectory traj;
    SpectralVectorField u = remove_mean(u0);
    u.divergence_free = true;
    traj.push(config.t0, u, config);

    for (long m = 0; m < n_steps; ++m) {
        const double t = config.t0 + static_cast<double>(m) * config.dt;
        const bool last = m + 1 == n_steps;
        const double t_next = last ? t_end : config.t0 + static_cast<double>(m + 1) * config.dt;
        try {
            const double h = t_next - t;
            if (!last || std::abs(h - config.dt) <= 1e-12 * config.dt)
                u = step_with(u, t, full, config);
            else
                u = step_with(u, t, StepWeights(u.grid, h, config.nu), config);
        } catch (const BlowUpError&) {
            traj.blew_up = true;
            traj.blowup_time = t_next;
            return traj;
        }
        const double norm = l2_norm_parseval(u);
        if (!std::isfinite(norm) || norm > config.blowup_threshold) {
            traj.blew_up = true;
            traj.blowup_time = t_next;
            if (std::isfinite(norm))
                traj.push(t_next, u, config);
            return traj;
        }
        if (last || (m + 1) % config.snapshot_every == 0)
            traj.push(t_next, u, config);
    }
    return traj;
}

PicardResult picard_solve(const SpectralVectorField& u0, const SolverConfig& config)
{
    config.validate();
    require_solver_input(u0);

    const TorusGrid& grid = u0.grid;
    const int n = config.n_nodes;
    const double h = config.window_T / (n - 1);
    const FracNormParams x_half(0.5, config.p);
    const Eigen::ArrayXd step_decay = heat_symbol(grid, h, config.nu);

    auto node_time = [&](int j) { return config.t0 + j * h; };

    // Free evolution exp((t_j - t0) nu Laplacian) u0, also the initial iterate.
    std::vector<SpectralVectorField> free;
    free.reserve(static_cast<std::size_t>(n));
    SpectralVectorField base = remove_mean(u0);
    base.divergence_free = true;
    for (int j = 0; j < n; ++j)
        free.push_back(j == 0 ? base : apply_symbol(base, heat_symbol(grid, j * h, config.nu)));

    std::vector<SpectralVectorField> forcing;
    if (config.forcing.kind() != ForcingKind::zero)
        for (int j = 0; j < n; ++j)
            forcing.push_back(config.forcing.projected(grid, node_time(j)));

    std::vector<SpectralVectorField> current = free;
    std::vector<double> residuals;
    int non_decreasing = 0;

    for (int iter = 1; iter <= config.picard_max_iters; ++iter) {
        std::vector<SpectralArray> g(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) {
            const auto uj = static_cast<std::size_t>(j);
            g[uj] = nonlinear_F(current[uj], config.dealias).coeffs;
            if (!forcing.empty())
                g[uj] += forcing[uj].coeffs;
        }

        // Trapezoid with exact weights, accumulated recursively:
        // I_j = E_h I_{j-1} + h/2 (E_h g_{j-1} + g_j).
        std::vector<SpectralVectorField> next;
        next.reserve(static_cast<std::size_t>(n));
        next.push_back(free[0]);
        SpectralArray integral = SpectralArray::Zero(grid.size(), grid.dim());
        double residual = 0.0;
        for (int j = 1; j < n; ++j) {
            const auto uj = static_cast<std::size_t>(j);
            integral = scale_modes(integral + 0.5 * h * g[uj - 1], step_decay) + 0.5 * h * g[uj];
            SpectralVectorField uj_next(grid, free[uj].coeffs + integral, true);
            uj_next.coeffs.row(0).setZero();
            const double r = frac_norm(uj_next - current[uj], x_half);
            residual = std::isfinite(r) ? std::max(residual, r) : r;
            next.push_back(std::move(uj_next));
        }
        if (!std::isfinite(residual)) {
            residuals.push_back(residual);
            throw PicardError(PicardError::Reason::not_contracting, residuals);
        }
        if (!residuals.empty() && residual >= residuals.back())
            ++non_decreasing;
        else
            non_decreasing = 0;
        residuals.push_back(residual);
        current = std::move(next);

        if (residual < config.picard_tol) {
            PicardResult result;
            for (int j = 0; j < n; ++j)
                result.trajectory.push(node_time(j), current[static_cast<std::size_t>(j)], config);
            result.iterations = iter;
            result.residuals = std::move(residuals);
            return result;
        }
        if (non_decreasing >= 3)
            throw PicardError(PicardError::Reason::not_contracting, residuals);
    }
    throw PicardError(PicardError::Reason::max_iters, residuals);
}

AdaptiveWindowReport adaptive_window(const SpectralVectorField& u0, const SolverConfig& config)
{
    AdaptiveWindowReport report;
    SolverConfig trial = config;
    for (int halvings = 0; halvings <= max_window_halvings; ++halvings) {
        WindowAttempt attempt;
        attempt.window_T = trial.window_T;
        try {
            const PicardResult result = picard_solve(u0, trial);
            attempt.converged = true;
            attempt.iterations = result.iterations;
        } catch (const PicardError& e) {
            attempt.failure = to_string(e.reason());
            attempt.iterations = static_cast<int>(e.residuals().size());
        }
        report.attempts.push_back(attempt);
        if (attempt.converged) {
            report.T_star = attempt.window_T;
            return report;
        }
        trial.window_T *= 0.5;
    }
    report.T_star = 0.0;
    return report;
}

} // namespace nsmild
