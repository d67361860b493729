#include "nsmild/verification.hpp"

#include "nsmild/operators.hpp"
#include "nsmild/spectral.hpp"
#include "nsmild/taylor_green.hpp"
#include "nsmild/transform.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nsmild {
namespace {

double norm_for(const SpectralVectorField& u, double p)
{
    return p == 2.0 ? l2_norm_parseval(u) : lp_norm(u, p);
}

// ||u||_{X_alpha} with p = 2 short-circuited through Parseval.
double x_norm(const SpectralVectorField& u, double alpha, double p)
{
    if (alpha == 0.0)
        return norm_for(u, p);
    return norm_for(frac_power(alpha, u), p);
}

} // namespace

void CheckReport::require_at_most(const std::string& key, double value, double tol)
{
    measure(key, value);
    if (!(value <= tol)) {
        passed = false;
        if (!detail.empty())
            detail += "; ";
        detail += key + " exceeds tolerance";
    }
}

double CheckReport::get(const std::string& key) const
{
    for (const auto& [k, v] : measurements)
        if (k == key)
            return v;
    throw std::out_of_range("CheckReport: no measurement '" + key + "'");
}

std::vector<SpectralVectorField> make_ensemble(const TorusGrid& grid, const EnsembleSpec& spec)
{
    std::vector<SpectralVectorField> out;
    out.reserve(static_cast<std::size_t>(spec.size));
    for (int i = 0; i < spec.size; ++i)
        out.push_back(random_divfree_field(grid, spec.seed + static_cast<std::uint64_t>(i), spec.spectrum_decay,
                                           spec.amplitude));
    return out;
}

std::vector<SpectralScalarField> make_scalar_ensemble(const TorusGrid& grid, const EnsembleSpec& spec)
{
    std::vector<SpectralScalarField> out;
    out.reserve(static_cast<std::size_t>(spec.size));
    for (int i = 0; i < spec.size; ++i)
        out.push_back(random_scalar_field(grid, spec.seed + static_cast<std::uint64_t>(i), spec.spectrum_decay,
                                          spec.amplitude));
    return out;
}

double relative_difference(const SpectralVectorField& a, const SpectralVectorField& b)
{
    require_same_grid(a.grid, b.grid, "relative_difference");
    const double diff = max_modulus(a.coeffs - b.coeffs);
    const double scale = max_abs_coeff(b);
    return scale > 0.0 ? diff / scale : diff;
}

CheckReport check_operator_identities(const std::vector<SpectralVectorField>& ensemble,
                                      const std::vector<SpectralScalarField>& potentials, double tol)
{
    CheckReport report;
    report.name = "operator_identities";
    if (potentials.empty())
        throw std::invalid_argument("check_operator_identities: needs gradient potentials");

    double idempotence = 0.0;
    double div_after_projection = 0.0;
    double gradient_annihilation = 0.0;
    double resolvent_identity = 0.0;
    double semigroup_law = 0.0;
    double power_composition = 0.0;

    constexpr std::array<double, 3> lambdas{1.0, 10.0, 100.0};
    constexpr std::array<double, 2> times{0.1, 0.3};
    constexpr std::array<std::pair<double, double>, 4> powers{{{0.5, -0.5}, {0.25, 0.5}, {-0.75, 0.25}, {1.0, -1.0}}};

    // Symbols are built once; the operators are multiplication by them.
    const TorusGrid& grid = ensemble.front().grid;
    std::vector<Eigen::ArrayXd> shifted;
    std::vector<Eigen::ArrayXd> inverse;
    for (double lambda : lambdas) {
        shifted.emplace_back(lambda + grid.k_squared());
        inverse.push_back(resolvent_symbol(grid, lambda));
    }
    std::vector<std::array<Eigen::ArrayXd, 3>> heat;
    for (double s : times)
        for (double t : times)
            heat.push_back({heat_symbol(grid, s, 1.0), heat_symbol(grid, t, 1.0), heat_symbol(grid, s + t, 1.0)});
    std::vector<std::array<Eigen::ArrayXd, 3>> frac;
    for (const auto& [a, b] : powers)
        frac.push_back({frac_power_symbol(grid, a), frac_power_symbol(grid, b), frac_power_symbol(grid, a + b)});

    for (std::size_t i = 0; i < ensemble.size(); ++i) {
        const SpectralVectorField& u = ensemble[i];
        require_same_grid(u.grid, grid, "check_operator_identities");
        const SpectralVectorField grad = gradient(potentials[i % potentials.size()]);
        const SpectralVectorField mixed = u + grad;

        const SpectralVectorField pw = leray_project(mixed);
        idempotence = std::max(idempotence, relative_difference(leray_project(pw), pw));
        div_after_projection = std::max(div_after_projection, divergence_defect(pw));
        const double gscale = max_abs_coeff(grad);
        if (gscale > 0.0)
            gradient_annihilation = std::max(gradient_annihilation, max_abs_coeff(leray_project(grad)) / gscale);

        for (std::size_t l = 0; l < lambdas.size(); ++l)
            resolvent_identity = std::max(
                resolvent_identity, relative_difference(apply_symbol(apply_symbol(mixed, inverse[l]), shifted[l]), mixed));

        for (const auto& [s, t, st] : heat)
            semigroup_law = std::max(semigroup_law,
                                     relative_difference(apply_symbol(apply_symbol(u, t), s), apply_symbol(u, st)));

        if (!is_mean_zero(u))
            throw std::invalid_argument("check_operator_identities: ensemble fields must be mean-zero");
        for (const auto& [a, b, ab] : frac)
            power_composition = std::max(power_composition,
                                         relative_difference(apply_symbol(apply_symbol(u, b), a), apply_symbol(u, ab)));
    }

    report.require_at_most("projection_idempotence", idempotence, tol);
    report.require_at_most("divergence_after_projection", div_after_projection, tol);
    report.require_at_most("gradient_annihilation", gradient_annihilation, tol);
    report.require_at_most("resolvent_identity", resolvent_identity, tol);
    report.require_at_most("semigroup_law", semigroup_law, tol);
    report.require_at_most("power_composition", power_composition, tol);
    report.measure("ensemble_size", static_cast<double>(ensemble.size()));
    return report;
}

CheckReport check_resolvent_divfree(const std::vector<double>& lambdas,
                                    const std::vector<SpectralVectorField>& ensemble,
                                    const std::vector<SpectralScalarField>& potentials, double tol)
{
    CheckReport report;
    report.name = "resolvent_divergence";
    double forward = 0.0;
    double backward = 0.0;
    for (double lambda : lambdas) {
        for (const auto& u : ensemble) {
            forward = std::max(forward, divergence_defect(resolvent(lambda, u)));
            backward = std::max(backward, divergence_defect(shifted_operator(lambda, u)));
        }
    }
    report.require_at_most("max_div_resolvent_image", forward, tol);
    report.require_at_most("max_div_shifted_image", backward, tol);

    if (!potentials.empty()) {
        // Gradients map to gradients: divergence stays, projection still annihilates.
        double min_div = std::numeric_limits<double>::infinity();
        double max_solenoidal_part = 0.0;
        for (double lambda : lambdas) {
            for (const auto& h : potentials) {
                const SpectralVectorField image = resolvent(lambda, gradient(h));
                const double scale = max_abs_coeff(image);
                if (scale == 0.0)
                    continue;
                min_div = std::min(min_div, divergence_defect(image));
                max_solenoidal_part = std::max(max_solenoidal_part, max_abs_coeff(leray_project(image)) / scale);
            }
        }
        report.measure("min_div_gradient_image", min_div);
        report.require_at_most("max_solenoidal_part_gradient_image", max_solenoidal_part, tol);
        if (!(min_div > 0.1)) {
            report.passed = false;
            report.detail += "gradient image lost its divergence";
        }
    }
    return report;
}

CheckReport check_semigroup(const std::vector<SpectralVectorField>& ensemble, const std::vector<double>& times,
                            double nu, double tol)
{
    CheckReport report;
    report.name = "heat_semigroup";
    double identity = 0.0;
    double law = 0.0;
    double invariance = 0.0;
    int violations = 0;
    double worst_growth = -std::numeric_limits<double>::infinity();

    for (const auto& u : ensemble) {
        identity = std::max(identity, relative_difference(heat_semigroup(0.0, nu, heat_semigroup(0.0, nu, u)), u));
        const std::array<double, 2> norms0{lp_norm(u, 2.0), lp_norm(u, 4.0)};
        for (double s : times) {
            const SpectralVectorField us = heat_semigroup(s, nu, u);
            invariance = std::max(invariance, divergence_defect(us));
            const std::array<double, 2> norms{lp_norm(us, 2.0), lp_norm(us, 4.0)};
            for (std::size_t q = 0; q < 2; ++q) {
                const double growth = norms0[q] > 0.0 ? norms[q] / norms0[q] - 1.0 : norms[q];
                worst_growth = std::max(worst_growth, growth);
                if (norms[q] > norms0[q] * (1.0 + tol))
                    ++violations;
            }
            for (double t : times)
                law = std::max(law, relative_difference(heat_semigroup(s, nu, heat_semigroup(t, nu, u)),
                                                        heat_semigroup(s + t, nu, u)));
        }
    }
    report.require_at_most("identity_at_zero", identity, tol);
    report.require_at_most("semigroup_law", law, tol);
    report.require_at_most("divergence_invariance", invariance, tol);
    report.require_at_most("contraction_violations", violations, 0.0);
    report.measure("max_relative_norm_change", worst_growth);
    return report;
}

CheckReport check_truncation_divergence(const std::vector<SpectralVectorField>& ensemble, double tol)
{
    CheckReport report;
    report.name = "truncation_divergence";
    double worst = 0.0;
    for (const auto& u : ensemble) {
        for (int m = 0; m <= u.grid.n_modes() / 2; ++m)
            worst = std::max(worst, max_modulus(divergence(truncate(u, m))) / max_abs_coeff(u));
        worst = std::max(worst, divergence_defect(dealias(u)));
    }
    report.require_at_most("max_divergence_after_truncation", worst, tol);
    return report;
}

CheckReport check_gradient_norm_identity(const std::vector<SpectralVectorField>& ensemble, double tol)
{
    CheckReport report;
    report.name = "gradient_norm_identity";
    double worst = 0.0;
    double lo4 = std::numeric_limits<double>::infinity();
    double hi4 = 0.0;
    double diag_lo = std::numeric_limits<double>::infinity();
    double diag_hi = 0.0;
    for (const auto& u : ensemble) {
        const double frac2 = frac_norm(u, FracNormParams(0.5, 2.0));
        if (frac2 == 0.0)
            continue;
        const double grad2 = gradient_norm(u, 2.0, GradientVariant::full);
        worst = std::max(worst, std::abs(grad2 - frac2) / frac2);
        const double r4 = gradient_norm(u, 4.0, GradientVariant::full) / frac_norm(u, FracNormParams(0.5, 4.0));
        lo4 = std::min(lo4, r4);
        hi4 = std::max(hi4, r4);
        const double rd = gradient_norm(u, 2.0, GradientVariant::diagonal) / frac2;
        diag_lo = std::min(diag_lo, rd);
        diag_hi = std::max(diag_hi, rd);
    }
    report.require_at_most("max_relative_gap_p2", worst, tol);
    report.measure("ratio_p4_min", lo4);
    report.measure("ratio_p4_max", hi4);
    report.measure("diagonal_ratio_p2_min", diag_lo);
    report.measure("diagonal_ratio_p2_max", diag_hi);
    return report;
}

CheckReport check_energy_orthogonality(const std::vector<SpectralVectorField>& ensemble, double tol)
{
    CheckReport report;
    report.name = "energy_orthogonality";
    double worst = 0.0;
    for (const auto& u : ensemble) {
        const double n = l2_norm_parseval(u);
        if (n == 0.0)
            continue;
        worst = std::max(worst, std::abs(l2_inner(advect(u, u, true), u)) / (n * n * n));
    }
    report.require_at_most("max_relative_inner_product", worst, tol);
    return report;
}

double check_gradient_orthogonality(const SpectralVectorField& w, int n_test, std::uint64_t seed, double spectrum_decay)
{
    const double wn = l2_norm_parseval(w);
    if (wn == 0.0)
        return 0.0;
    double worst = 0.0;
    auto probe = [&](const SpectralVectorField& g) {
        const double gn = l2_norm_parseval(g);
        if (gn > 0.0)
            worst = std::max(worst, std::abs(l2_inner(w, g)) / (wn * gn));
    };

    // The potential of w's own gradient part, h* = Laplacian^-1 div w, attains
    // the supremum ||(I - P) w|| / ||w||.
    const Eigen::ArrayXd& kdsq = w.grid.kd_squared();
    const Eigen::ArrayXd inv = (kdsq > 0.0).select(-kdsq.inverse(), 0.0);
    probe(gradient(SpectralScalarField(w.grid, divergence(w) * inv)));

    for (int i = 0; i < n_test; ++i)
        probe(gradient(random_scalar_field(w.grid, seed + static_cast<std::uint64_t>(i), spectrum_decay, 1.0)));
    return worst;
}

DiagonalDependence check_diagonal_dependence(const SpectralVectorField& u)
{
    const int d = u.dim();
    const PhysicalArray jac = jacobian(u);
    double offdiag = 0.0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (i != j)
                offdiag = std::max(offdiag, jac.col(i * d + j).abs().maxCoeff());
    const double scale = inverse_transform(u).values.abs().maxCoeff();
    return {offdiag <= 1e-10 * scale, offdiag};
}

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::bounded:
        return "bounded";
    case Verdict::growing:
        return "growing";
    case Verdict::inconclusive:
        return "inconclusive";
    }
    return "inconclusive";
}

double bilinear_ratio(const SpectralVectorField& u, const SpectralVectorField& v, const ExponentTriple& exponents,
                      double p, bool dealiased)
{
    const double nu_ = lp_norm(frac_power(exponents.theta, u), p);
    const double nv = lp_norm(frac_power(exponents.omega, v), p);
    if (nu_ == 0.0 || nv == 0.0)
        throw std::invalid_argument("bilinear_ratio: zero-norm field");
    return lp_norm(advect(u, v, dealiased), p) / (nu_ * nv);
}

Verdict growth_verdict(double first, double last, double max_growth)
{
    if (!std::isfinite(first) || !std::isfinite(last) || !(first > 0.0))
        return Verdict::inconclusive;
    return (last - first) / first < max_growth ? Verdict::bounded : Verdict::growing;
}

namespace {

void validate_estimate(const EstimateSpec& spec)
{
    if (spec.exponents.delta != 0.0)
        throw std::invalid_argument("estimate: only delta = 0 is supported");
    if (!(spec.exponents.theta > 0.0 && spec.exponents.theta <= 1.0) ||
        !(spec.exponents.omega > 0.0 && spec.exponents.omega <= 1.0))
        throw std::invalid_argument("estimate: theta and omega must lie in (0, 1]");
    if (spec.resolutions.empty())
        throw std::invalid_argument("estimate: no resolutions");
    if (spec.ensemble.size < 1)
        throw std::invalid_argument("estimate: empty ensemble");
}

void finish(EstimateReport& report)
{
    double fitted = 0.0;
    for (const auto& [n, r] : report.per_resolution)
        fitted = std::max(fitted, r);
    report.fitted_constant = fitted;
    report.max_ratio = report.per_resolution.back().second;
    report.verdict = report.per_resolution.size() < 2
                         ? Verdict::inconclusive
                         : growth_verdict(report.per_resolution.front().second, report.per_resolution.back().second);
}

} // namespace

EstimateReport estimate_bilinear_constant(const EstimateSpec& spec)
{
    validate_estimate(spec);
    EstimateReport report;
    report.name = "bilinear_estimate";
    report.ensemble_size = spec.ensemble.size;
    report.exponents = spec.exponents;

    for (int n : spec.resolutions) {
        const TorusGrid grid = make_grid(spec.dim, n, spec.period);
        double worst = 0.0;
        for (int i = 0; i < spec.ensemble.size; ++i) {
            const auto s = spec.ensemble.seed + 2 * static_cast<std::uint64_t>(i);
            const SpectralVectorField u =
                random_divfree_field(grid, s, spec.ensemble.spectrum_decay, spec.ensemble.amplitude);
            const SpectralVectorField v =
                random_divfree_field(grid, s + 1, spec.ensemble.spectrum_decay, spec.ensemble.amplitude);
            worst = std::max(worst, bilinear_ratio(u, v, spec.exponents, spec.p, spec.dealias));
        }
        report.per_resolution.emplace_back(n, worst);
    }
    finish(report);
    return report;
}

std::pair<EstimateReport, EstimateReport> estimate_norm_equivalence(const EstimateSpec& spec, double gamma)
{
    if (!(gamma > 0.0 && gamma <= 1.0))
        throw std::invalid_argument("estimate_norm_equivalence: gamma must lie in (0, 1]");
    EstimateReport up;
    up.name = "norm_ratio_gamma_over_half";
    EstimateReport down;
    down.name = "norm_ratio_half_over_gamma";
    for (EstimateReport* r : {&up, &down}) {
        r->ensemble_size = spec.ensemble.size;
        r->exponents = {0.0, gamma, 0.5};
    }
    for (int n : spec.resolutions) {
        const TorusGrid grid = make_grid(spec.dim, n, spec.period);
        double hi = 0.0;
        double lo = 0.0;
        for (const auto& u : make_ensemble(grid, spec.ensemble)) {
            const double g = lp_norm(frac_power(gamma, u), spec.p);
            const double h = lp_norm(frac_power(0.5, u), spec.p);
            if (g == 0.0 || h == 0.0)
                continue;
            hi = std::max(hi, g / h);
            lo = std::max(lo, h / g);
        }
        up.per_resolution.emplace_back(n, hi);
        down.per_resolution.emplace_back(n, lo);
    }
    finish(up);
    finish(down);
    return {up, down};
}

HoelderFit estimate_hoelder(const Trajectory& traj, double alpha, double p, double min_lag)
{
    const std::size_t n = traj.size();
    if (n < 10)
        throw std::invalid_argument("estimate_hoelder: needs at least 10 snapshots");
    double min_spacing = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dt = std::abs(traj.times[j] - traj.times[i]);
            if (dt == 0.0)
                throw std::invalid_argument("estimate_hoelder: coincident snapshot times");
            min_spacing = std::min(min_spacing, dt);
        }
    if (min_lag <= 0.0)
        min_lag = 2.0 * min_spacing;

    std::vector<SpectralVectorField> lifted;
    lifted.reserve(n);
    for (const auto& u : traj.fields)
        lifted.push_back(alpha == 0.0 ? u : frac_power(alpha, u));

    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dt = std::abs(traj.times[j] - traj.times[i]);
            if (dt < min_lag * (1.0 - 1e-9))
                continue;
            const double d = norm_for(lifted[j] - lifted[i], p);
            if (!(d > 0.0))
                continue;
            xs.push_back(std::log(dt));
            ys.push_back(std::log(d));
        }
    }
    if (xs.size() < 2)
        throw std::domain_error("estimate_hoelder: degenerate trajectory (no distinct snapshot pairs)");

    const auto m = static_cast<double>(xs.size());
    const Eigen::Map<const Eigen::ArrayXd> x(xs.data(), static_cast<Eigen::Index>(xs.size()));
    const Eigen::Map<const Eigen::ArrayXd> y(ys.data(), static_cast<Eigen::Index>(ys.size()));
    const double xm = x.mean();
    const double ym = y.mean();
    const double sxx = (x - xm).square().sum();
    const double syy = (y - ym).square().sum();
    const double sxy = ((x - xm) * (y - ym)).sum();
    if (sxx == 0.0)
        throw std::domain_error("estimate_hoelder: all sampled lags are equal");

    HoelderFit fit;
    fit.beta = sxy / sxx;
    fit.C = std::exp(ym - fit.beta * xm);
    fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    fit.sample_pairs = static_cast<int>(m);
    return fit;
}

AssumptionFReport check_assumption_F(const Trajectory& a, const Trajectory& b, double beta, double alpha, double p,
                                     bool dealiased)
{
    if (a.size() != b.size())
        throw std::invalid_argument("check_assumption_F: trajectories need the same time grid");
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::abs(a.times[i] - b.times[i]) > 1e-12 * std::max(1.0, std::abs(a.times[i])))
            throw std::invalid_argument("check_assumption_F: trajectories need the same time grid");

    std::vector<SpectralVectorField> fa;
    std::vector<SpectralVectorField> fb;
    for (std::size_t i = 0; i < a.size(); ++i) {
        fa.push_back(nonlinear_F(a.fields[i], dealiased));
        fb.push_back(nonlinear_F(b.fields[i], dealiased));
    }

    AssumptionFReport report;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            const double dt = std::abs(a.times[i] - b.times[j]);
            const double state = x_norm(a.fields[i] - b.fields[j], alpha, p);
            const double denom = std::pow(dt, beta) + state;
            if (!(denom > 0.0)) {
                ++report.skipped;
                continue;
            }
            const double num = norm_for(fa[i] - fb[j], p);
            report.max_ratio = std::max(report.max_ratio, num / denom);
            ++report.pairs;
        }
    }
    return report;
}

TrendReport existence_time_trend(const std::vector<double>& amplitudes, const SpectralVectorField& base,
                                 const SolverConfig& config)
{
    if (amplitudes.empty())
        throw std::invalid_argument("existence_time_trend: no amplitudes");
    for (std::size_t i = 1; i < amplitudes.size(); ++i)
        if (!(amplitudes[i] > amplitudes[i - 1]))
            throw std::invalid_argument("existence_time_trend: amplitudes must increase");

    TrendReport report;
    report.nonincreasing = true;
    for (double amp : amplitudes) {
        const AdaptiveWindowReport w = adaptive_window(amp * base, config);
        if (!report.amplitude_T_star.empty() && w.T_star > report.amplitude_T_star.back().second)
            report.nonincreasing = false;
        report.amplitude_T_star.emplace_back(amp, w.T_star);
    }
    return report;
}

std::vector<CheckReport> run_verification_suite(const VerifySuiteConfig& config)
{
    const TorusGrid grid = make_grid(config.dim, config.n_modes, config.period);
    const auto ensemble = make_ensemble(grid, config.ensemble);
    EnsembleSpec potential_spec = config.ensemble;
    potential_spec.seed += 1000003;
    const auto potentials = make_scalar_ensemble(grid, potential_spec);

    std::vector<CheckReport> reports;
    reports.push_back(check_operator_identities(ensemble, potentials, config.identity_tol));
    reports.push_back(check_resolvent_divfree({1.0, 10.0, 100.0}, ensemble, potentials, config.identity_tol));
    reports.push_back(check_semigroup(ensemble, {0.01, 0.1, 1.0}, 1.0, config.identity_tol));
    reports.push_back(check_truncation_divergence(ensemble, config.identity_tol));
    reports.push_back(check_gradient_norm_identity(ensemble, config.gradient_norm_tol));
    reports.push_back(check_energy_orthogonality(ensemble, config.orthogonality_tol));

    {
        CheckReport r;
        r.name = "projected_gradient_orthogonality";
        double worst = 0.0;
        for (std::size_t i = 0; i < ensemble.size(); ++i) {
            const SpectralVectorField w = leray_project(ensemble[i] + gradient(potentials[i]));
            worst = std::max(worst, check_gradient_orthogonality(w, config.n_test, config.ensemble.seed + 77));
        }
        r.require_at_most("max_normalized_inner_product", worst, config.identity_tol);
        reports.push_back(r);
    }
    {
        // Measurement only: generic advection leaves the solenoidal subspace.
        CheckReport r;
        r.name = "advection_gradient_orthogonality";
        r.asserted = false;
        double lo = std::numeric_limits<double>::infinity();
        double hi = 0.0;
        for (std::size_t i = 0; i + 1 < ensemble.size(); i += 2) {
            const double m = check_gradient_orthogonality(advect(ensemble[i], ensemble[i + 1]), config.n_test,
                                                          config.ensemble.seed + 77);
            lo = std::min(lo, m);
            hi = std::max(hi, m);
        }
        r.measure("min_normalized_inner_product", lo);
        r.measure("max_normalized_inner_product", hi);
        reports.push_back(r);
    }
    {
        CheckReport r;
        r.name = "diagonal_dependence";
        int nonzero_diagonal = 0;
        double min_offdiag = std::numeric_limits<double>::infinity();
        for (const auto& u : ensemble) {
            const DiagonalDependence dd = check_diagonal_dependence(u);
            min_offdiag = std::min(min_offdiag, dd.max_offdiag);
            if (dd.is_diagonal && max_abs_coeff(u) > 0.0)
                ++nonzero_diagonal;
        }
        // (f(x1), g(x2), h(x3)) is diagonal; its solenoidal part must vanish.
        const SpectralVectorField diag = forward_transform(sample(grid, [](const std::array<double, 3>& x, int i) {
            return std::sin(x[static_cast<std::size_t>(i)]) + 0.5 * std::cos(2.0 * x[static_cast<std::size_t>(i)]);
        }));
        const double survivor = max_abs_coeff(leray_project(remove_mean(diag))) / max_abs_coeff(diag);
        r.require_at_most("nonzero_diagonal_members", nonzero_diagonal, 0.0);
        r.measure("min_max_offdiag", min_offdiag);
        r.require_at_most("solenoidal_part_of_diagonal_field", survivor, config.identity_tol);
        reports.push_back(r);
    }
    {
        CheckReport r;
        r.name = "taylor_green_residual";
        const TorusGrid tg = make_grid(2, std::max(16, config.n_modes), config.period);
        double worst = 0.0;
        for (double t : {0.0, 0.25, 0.5, 1.0})
            worst = std::max(worst, taylor_green_residual(tg, 1.0, t));
        r.require_at_most("max_relative_residual", worst, config.oracle_tol);
        reports.push_back(r);
    }
    return reports;
}

} // namespace nsmild
