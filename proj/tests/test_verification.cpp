#include "nsmild/operators.hpp"
#include "nsmild/spectral.hpp"
#include "nsmild/taylor_green.hpp"
#include "nsmild/transform.hpp"
#include "nsmild/verification.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace nsmild;

namespace {

constexpr double pi = std::numbers::pi;

EnsembleSpec small_ensemble(int size = 10)
{
    EnsembleSpec e;
    e.size = size;
    e.seed = 3;
    e.spectrum_decay = 3.0;
    return e;
}

SpectralVectorField mode_field(const TorusGrid& g, int component, std::array<int, 3> k)
{
    // sin(k.x) e_component
    SpectralVectorField u(g);
    u.coeffs(g.flat_index(k), component) = Complex(0.0, -0.5);
    u.coeffs(g.flat_index({-k[0], -k[1], -k[2]}), component) = Complex(0.0, 0.5);
    u.divergence_free = true;
    return u;
}

SpectralScalarField cos_x1(const TorusGrid& g)
{
    SpectralScalarField h(g);
    h.coeffs(g.flat_index({1, 0, 0})) = 0.5;
    h.coeffs(g.flat_index({-1, 0, 0})) = 0.5;
    return h;
}

} // namespace

TEST_CASE("check reports")
{
    CheckReport r;
    r.require_at_most("a", 1e-13, 1e-12);
    CHECK(r.passed);
    r.require_at_most("b", 1.0, 1e-12);
    CHECK_FALSE(r.passed);
    CHECK(r.get("b") == 1.0);
    CHECK_THROWS(r.get("missing"));
}

TEST_CASE("operator identity checks pass on an ensemble")
{
    const TorusGrid g = make_grid(3, 16);
    const auto ens = make_ensemble(g, small_ensemble());
    const auto pots = make_scalar_ensemble(g, small_ensemble());
    CHECK(ens.size() == 10);
    const CheckReport ids = check_operator_identities(ens, pots);
    CHECK(ids.passed);
    CHECK(check_resolvent_divfree({1.0, 10.0, 100.0}, ens, pots).passed);
    CHECK(check_semigroup(ens, {0.01, 0.1, 1.0}).passed);
    CHECK(check_truncation_divergence(ens).passed);
    CHECK(check_gradient_norm_identity(ens).passed);
    CHECK(check_energy_orthogonality(ens).passed);

    // A deliberately impossible tolerance fails and names itself.
    const CheckReport broken = check_operator_identities(ens, pots, 1e-20);
    CHECK_FALSE(broken.passed);
    CHECK_FALSE(broken.name.empty());
}

TEST_CASE("resolvent check on single fields")
{
    const TorusGrid g = make_grid(3, 16);
    const SpectralVectorField s = mode_field(g, 0, {0, 1, 0});
    const CheckReport r = check_resolvent_divfree({1.0}, {s});
    CHECK(r.passed);
    CHECK(r.get("max_div_resolvent_image") == 0.0);
    const CheckReport grad = check_resolvent_divfree({1.0}, {s}, {cos_x1(g)});
    CHECK(grad.passed);
    CHECK(grad.get("min_div_gradient_image") > 0.1);
}

TEST_CASE("semigroup check on a single mode")
{
    const TorusGrid g = make_grid(3, 16);
    const SpectralVectorField s = mode_field(g, 0, {0, 1, 0});
    const CheckReport r = check_semigroup({s}, {0.0, 0.5});
    CHECK(r.passed);
    CHECK(lp_norm(heat_semigroup(0.5, 1.0, s), 2.0) < lp_norm(s, 2.0));
}

TEST_CASE("bilinear ratio closed form")
{
    const TorusGrid g = make_grid(3, 16);
    const SpectralVectorField u = mode_field(g, 0, {0, 1, 0});
    const SpectralVectorField v = mode_field(g, 1, {1, 0, 0});
    // ||sin x2 cos x1||_2 = 2 pi^(3/2) / sqrt 2; both denominators are 2 pi^(3/2).
    const double expected = std::sqrt(2.0) * std::pow(pi, 1.5) / (4.0 * pi * pi * pi);
    CHECK(bilinear_ratio(u, v, {}, 2.0) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(expected == doctest::Approx(0.0635).epsilon(1e-3));
    CHECK(bilinear_ratio(u, u, {}, 2.0) < 1e-15);
    CHECK_THROWS_AS(bilinear_ratio(SpectralVectorField::zero(g), v, {}, 2.0), std::invalid_argument);
}

TEST_CASE("bilinear estimate verdicts")
{
    CHECK(growth_verdict(1.0, 1.05) == Verdict::bounded);
    CHECK(growth_verdict(1.0, 1.5) == Verdict::growing);
    EstimateSpec spec;
    spec.ensemble = small_ensemble(5);
    spec.resolutions = {8, 16};
    const EstimateReport r = estimate_bilinear_constant(spec);
    CHECK(r.per_resolution.size() == 2);
    CHECK(r.max_ratio > 0.0);
    spec.exponents.delta = 0.5;
    CHECK_THROWS_AS(estimate_bilinear_constant(spec), std::invalid_argument);
}

TEST_CASE("gradient orthogonality probe")
{
    const TorusGrid g = make_grid(3, 16);
    const SpectralVectorField w = leray_project(random_divfree_field(g, 1, 2.0, 1.0) +
                                                gradient(random_scalar_field(g, 2, 2.0, 1.0)));
    CHECK(check_gradient_orthogonality(w, 10) <= 1e-12);
    const SpectralVectorField grad = gradient(cos_x1(g));
    CHECK(check_gradient_orthogonality(grad, 10) == doctest::Approx(1.0).epsilon(1e-12));
    const auto ens = make_ensemble(g, small_ensemble(2));
    CHECK(check_gradient_orthogonality(advect(ens[0], ens[1]), 10) > 1e-10);
}

TEST_CASE("diagonal dependence")
{
    const TorusGrid g = make_grid(3, 16);
    SpectralVectorField c(g);
    c.coeffs.row(0) << 1.0, 0.0, 0.0;
    const DiagonalDependence dc = check_diagonal_dependence(c);
    CHECK(dc.is_diagonal);
    CHECK(dc.max_offdiag == 0.0);
    CHECK_FALSE(check_diagonal_dependence(mode_field(g, 0, {0, 1, 0})).is_diagonal);
    for (const auto& u : make_ensemble(g, small_ensemble()))
        CHECK_FALSE(check_diagonal_dependence(u).is_diagonal);
}

TEST_CASE("Hoelder fits")
{
    const TorusGrid g = make_grid(3, 8);
    const SpectralVectorField s = mode_field(g, 0, {0, 1, 0});
    SolverConfig cfg;
    Trajectory heat;
    for (int j = 0; j <= 20; ++j) {
        const double t = 0.01 * j;
        heat.push(t, heat_semigroup(t, 1.0, s), cfg);
    }
    const HoelderFit fit = estimate_hoelder(heat, 0.5);
    CHECK(fit.beta == doctest::Approx(1.0).epsilon(0.05));
    CHECK(fit.sample_pairs > 0);

    const TorusGrid g16 = make_grid(3, 16);
    SolverConfig ns;
    ns.dt = 1e-3;
    const Trajectory flow = march(random_divfree_field(g16, 5, 4.0, 1.0), ns, 0.1);
    const HoelderFit nsfit = estimate_hoelder(flow, 0.5);
    CHECK(nsfit.beta > 0.0);
    CHECK(nsfit.beta <= 1.05);
    CHECK(nsfit.r_squared >= 0.9);

    Trajectory flat;
    for (int j = 0; j < 12; ++j)
        flat.push(0.1 * j, s, cfg);
    CHECK_THROWS_AS(estimate_hoelder(flat, 0.5), std::domain_error);

    Trajectory few;
    for (int j = 0; j < 5; ++j)
        few.push(0.1 * j, s, cfg);
    CHECK_THROWS_AS(estimate_hoelder(few, 0.5), std::invalid_argument);
}

TEST_CASE("assumption F probe")
{
    const TorusGrid g = make_grid(3, 16);
    SpectralVectorField u0 = random_divfree_field(g, 4, 3.0, 1.0);
    SolverConfig cfg;
    cfg.dt = 1e-2;
    const Trajectory a = march(u0, cfg, 0.1);
    const AssumptionFReport same = check_assumption_F(a, a, 0.5);
    CHECK(std::isfinite(same.max_ratio));
    CHECK(same.pairs > 0);
    const Trajectory b = march(2.0 * u0, cfg, 0.1);
    const AssumptionFReport scaled = check_assumption_F(a, b, 0.5);
    CHECK(std::isfinite(scaled.max_ratio));
    CHECK(scaled.max_ratio > 0.0);
}

TEST_CASE("existence time trend")
{
    const TorusGrid g = make_grid(3, 16);
    SolverConfig cfg;
    cfg.window_T = 0.1;
    cfg.n_nodes = 11;
    SpectralVectorField base = random_divfree_field(g, 6, 3.0, 1.0);
    base.coeffs /= frac_norm(base, FracNormParams(0.5, 2.0));
    const TrendReport r = existence_time_trend({0.1, 1.0, 10.0}, base, cfg);
    REQUIRE(r.amplitude_T_star.size() == 3);
    CHECK(r.nonincreasing);

    const TrendReport zero = existence_time_trend({0.0}, base, cfg);
    CHECK(zero.amplitude_T_star[0].second == cfg.window_T);

    const TorusGrid g2 = make_grid(2, 16);
    const TrendReport tg = existence_time_trend({0.1, 1.0, 10.0}, taylor_green(g2, 1.0, 0.0), cfg);
    for (const auto& [a, T] : tg.amplitude_T_star)
        CHECK(T == cfg.window_T);
    CHECK_THROWS_AS(existence_time_trend({1.0, 0.5}, base, cfg), std::invalid_argument);
}

TEST_CASE("verification suite on a small grid")
{
    VerifySuiteConfig cfg;
    cfg.n_modes = 8;
    cfg.ensemble = small_ensemble(4);
    cfg.n_test = 4;
    const auto reports = run_verification_suite(cfg);
    CHECK(reports.size() > 5);
    for (const auto& r : reports) {
        INFO(r.name);
        CHECK(r.passed);
    }
}
