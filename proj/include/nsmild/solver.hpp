#ifndef NSMILD_SOLVER_HPP
#define NSMILD_SOLVER_HPP

#include "nsmild/field.hpp"
#include "nsmild/forcing.hpp"

#include <stdexcept>
#include <string_view>
#include <vector>

namespace nsmild {

enum class Scheme { picard_window, exp_euler };

Scheme parse_scheme(std::string_view name);
std::string_view to_string(Scheme scheme);

struct SolverConfig {
    double nu = 1.0;
    double p = 2.0;
    Scheme scheme = Scheme::exp_euler;
    double dt = 1e-3;
    double window_T = 0.1;
    int n_nodes = 101;
    double picard_tol = 1e-10;
    int picard_max_iters = 50;
    ForcingSpec forcing;
    bool dealias = true;
    /// Marching: store every k-th step (first and last state always stored).
    int snapshot_every = 1;
    double t0 = 0.0;
    double blowup_threshold = 1e8;

    /// Throws std::invalid_argument on nonpositive nu, dt, window_T or n_nodes < 3.
    void validate() const;
};

struct Diagnostics {
    double time = 0.0;
    double energy = 0.0;      // ||u||_2^2
    double enstrophy = 0.0;   // ||grad u||_2^2
    double max_div = 0.0;     // max_x |div u|
    double norm_x_half = 0.0; // ||(-Laplacian)^(1/2) u||_p
    double norm_F = 0.0;      // ||F(u)||_p
};

Diagnostics compute_diagnostics(const SpectralVectorField& u, double t, const SolverConfig& config);

struct Trajectory {
    std::vector<double> times;
    std::vector<SpectralVectorField> fields;
    std::vector<Diagnostics> diagnostics;
    bool blew_up = false;
    double blowup_time = 0.0;

    std::size_t size() const { return times.size(); }
    void push(double t, SpectralVectorField u, const SolverConfig& config);
};

/// Raised by a step that produces non-finite coefficients.
class BlowUpError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class PicardError : public std::runtime_error {
public:
    enum class Reason { not_contracting, max_iters };

    PicardError(Reason reason, std::vector<double> residuals);

    Reason reason() const { return reason_; }
    const std::vector<double>& residuals() const { return residuals_; }

private:
    Reason reason_;
    std::vector<double> residuals_;
};

std::string_view to_string(PicardError::Reason reason);

/// One exponential Euler step of size h:
/// u + = exp(h nu Laplacian) u + h phi1(h nu Laplacian) [F(u) + P f(t)].
SpectralVectorField exp_euler_step(const SpectralVectorField& u, double t, double h, const SolverConfig& config);
inline SpectralVectorField exp_euler_step(const SpectralVectorField& u, double t, const SolverConfig& config)
{
    return exp_euler_step(u, t, config.dt, config);
}

/// Exponential Euler from config.t0 to t_end. Blow-up (non-finite values or an
/// L2 norm above config.blowup_threshold) ends the run early and is recorded in
/// the trajectory, not thrown.
Trajectory march(const SpectralVectorField& u0, const SolverConfig& config, double t_end);

struct PicardResult {
    Trajectory trajectory;
    int iterations = 0;
    std::vector<double> residuals;
};

/// Fixed-point iteration of the Duhamel equation on n_nodes uniform nodes over
/// [t0, t0 + window_T]. The time integral uses the trapezoidal rule with exact
/// semigroup weights; convergence is measured as the max over nodes of the
/// X_{1/2} norm of the update. Throws PicardError.
PicardResult picard_solve(const SpectralVectorField& u0, const SolverConfig& config);

struct WindowAttempt {
    double window_T = 0.0;
    bool converged = false;
    int iterations = 0;
    std::string failure;
};

struct AdaptiveWindowReport {
    double T_star = 0.0;
    std::vector<WindowAttempt> attempts;
};

inline constexpr int max_window_halvings = 20;

/// Halves window_T until picard_solve converges. T_star = 0 after 20 failed halvings.
AdaptiveWindowReport adaptive_window(const SpectralVectorField& u0, const SolverConfig& config);

} // namespace nsmild

#endif // NSMILD_SOLVER_HPP
