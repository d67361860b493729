#ifndef NSMILD_VERIFICATION_HPP
#define NSMILD_VERIFICATION_HPP

#include "nsmild/solver.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace nsmild {

/// Outcome of one check. Measurement-only checks (asserted == false) always pass.
struct CheckReport {
    std::string name;
    bool asserted = true;
    bool passed = true;
    std::vector<std::pair<std::string, double>> measurements;
    std::string detail;

    void measure(std::string key, double value) { measurements.emplace_back(std::move(key), value); }
    /// Records `value` and fails the check if value > tol.
    void require_at_most(const std::string& key, double value, double tol);
    double get(const std::string& key) const;
};

struct EnsembleSpec {
    int size = 100;
    std::uint64_t seed = 1;
    double spectrum_decay = 4.0;
    double amplitude = 1.0;
};

std::vector<SpectralVectorField> make_ensemble(const TorusGrid& grid, const EnsembleSpec& spec);
std::vector<SpectralScalarField> make_scalar_ensemble(const TorusGrid& grid, const EnsembleSpec& spec);

/// max |a - b| / max |b| over coefficients (absolute when b vanishes).
double relative_difference(const SpectralVectorField& a, const SpectralVectorField& b);

// ---------------------------------------------------------------------------
// Exact identities.

/// P^2 = P, div P = 0, P grad = 0, resolvent identity for each lambda,
/// semigroup law, and composition of fractional powers.
CheckReport check_operator_identities(const std::vector<SpectralVectorField>& ensemble,
                                      const std::vector<SpectralScalarField>& potentials, double tol = 1e-12);

/// Both directions of: div u = 0 iff div (lambda I - Laplacian) u = 0. Gradient
/// potentials, when given, must keep a nonzero divergence and stay gradients.
CheckReport check_resolvent_divfree(const std::vector<double>& lambdas,
                                    const std::vector<SpectralVectorField>& ensemble,
                                    const std::vector<SpectralScalarField>& potentials = {}, double tol = 1e-12);

/// Semigroup law, t = 0 identity, L_p contraction for p in {2, 4} and invariance
/// of the solenoidal subspace, for every pair from `times`.
CheckReport check_semigroup(const std::vector<SpectralVectorField>& ensemble, const std::vector<double>& times,
                            double nu = 1.0, double tol = 1e-12);

/// Truncation to every m and dealiasing keep solenoidal fields solenoidal.
CheckReport check_truncation_divergence(const std::vector<SpectralVectorField>& ensemble, double tol = 1e-12);

/// ||grad u||_2 = ||(-Laplacian)^(1/2) u||_2 (asserted); ratios at p = 4 and the
/// diagonal-gradient variant are measured only.
CheckReport check_gradient_norm_identity(const std::vector<SpectralVectorField>& ensemble, double tol = 1e-10);

/// |<(u.grad)u, u>| / ||u||_2^3 for solenoidal u.
CheckReport check_energy_orthogonality(const std::vector<SpectralVectorField>& ensemble, double tol = 1e-8);

// ---------------------------------------------------------------------------
// Membership probes.

/// max of |<w, grad h>| / (||w|| ||grad h||) over the potential of w's own
/// gradient part and n_test random potentials h. Vanishes iff P w = w.
double check_gradient_orthogonality(const SpectralVectorField& w, int n_test, std::uint64_t seed = 7,
                                    double spectrum_decay = 4.0);

struct DiagonalDependence {
    bool is_diagonal = false;
    double max_offdiag = 0.0;
};

/// Whether every off-diagonal Jacobian entry vanishes (<= 1e-10 * max_x |u|).
DiagonalDependence check_diagonal_dependence(const SpectralVectorField& u);

// ---------------------------------------------------------------------------
// Estimates.

struct ExponentTriple {
    double delta = 0.0;
    double theta = 0.75;
    double omega = 0.75;
};

enum class Verdict { bounded, growing, inconclusive };
std::string to_string(Verdict v);

struct EstimateReport {
    std::string name;
    int ensemble_size = 0;
    ExponentTriple exponents;
    double fitted_constant = 0.0;
    double max_ratio = 0.0;
    std::vector<std::pair<int, double>> per_resolution;
    Verdict verdict = Verdict::inconclusive;
};

/// ||(u.grad)v||_p / (||(-Laplacian)^theta u||_p ||(-Laplacian)^omega v||_p).
double bilinear_ratio(const SpectralVectorField& u, const SpectralVectorField& v, const ExponentTriple& exponents,
                      double p, bool dealiased = true);

struct EstimateSpec {
    int dim = 3;
    double period = 6.283185307179586;
    EnsembleSpec ensemble;
    ExponentTriple exponents;
    double p = 2.0;
    std::vector<int> resolutions{16, 32};
    bool dealias = true;
};

/// Max of bilinear_ratio over `ensemble.size` pairs at each resolution. The
/// verdict is bounded iff the max grows by less than 10% from the smallest to
/// the largest resolution.
EstimateReport estimate_bilinear_constant(const EstimateSpec& spec);

/// Measures sup ||u||_gamma / ||u||_{1/2} and sup ||u||_{1/2} / ||u||_gamma
/// over the ensemble, per resolution. Measurement only.
std::pair<EstimateReport, EstimateReport> estimate_norm_equivalence(const EstimateSpec& spec, double gamma);

Verdict growth_verdict(double first, double last, double max_growth = 0.10);

struct HoelderFit {
    double C = 0.0;
    double beta = 0.0;
    double r_squared = 0.0;
    int sample_pairs = 0;
};

/// Least-squares fit of log ||u(t1) - u(t2)||_{X_alpha} against log |t1 - t2|
/// over all snapshot pairs with |t1 - t2| >= min_lag (default: twice the
/// smallest snapshot spacing). Needs >= 10 snapshots; throws
/// std::invalid_argument on coincident times and std::domain_error when no
/// pair differs.
HoelderFit estimate_hoelder(const Trajectory& traj, double alpha, double p = 2.0, double min_lag = 0.0);

struct AssumptionFReport {
    double max_ratio = 0.0;
    int pairs = 0;
    int skipped = 0;
};

/// Empirical Lipschitz-Hoelder constant
///   max ||F(u1(t1)) - F(u2(t2))||_p / (|t1 - t2|^beta + ||u1(t1) - u2(t2)||_{X_alpha})
/// over all snapshot pairs of two trajectories on the same time grid.
AssumptionFReport check_assumption_F(const Trajectory& a, const Trajectory& b, double beta, double alpha = 0.5,
                                     double p = 2.0, bool dealiased = true);

struct TrendReport {
    std::vector<std::pair<double, double>> amplitude_T_star;
    bool nonincreasing = false;
};

/// adaptive_window on amplitude * base for each amplitude (strictly increasing).
TrendReport existence_time_trend(const std::vector<double>& amplitudes, const SpectralVectorField& base,
                                 const SolverConfig& config);

// ---------------------------------------------------------------------------
// Suite.

struct VerifySuiteConfig {
    int dim = 3;
    int n_modes = 16;
    double period = 6.283185307179586;
    EnsembleSpec ensemble;
    double identity_tol = 1e-12;
    double gradient_norm_tol = 1e-10;
    double orthogonality_tol = 1e-8;
    double oracle_tol = 1e-10;
    int n_test = 20;
};

/// Every identity and claim check plus the measurement-only probes.
std::vector<CheckReport> run_verification_suite(const VerifySuiteConfig& config);

} // namespace nsmild

#endif // NSMILD_VERIFICATION_HPP
