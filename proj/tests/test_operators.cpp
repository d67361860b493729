#include "nsmild/operators.hpp"
#include "nsmild/spectral.hpp"
#include "nsmild/taylor_green.hpp"
#include "nsmild/transform.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace nsmild;

namespace {

constexpr double pi = std::numbers::pi;

SpectralVectorField sin_x2(const TorusGrid& g)
{
    return forward_transform(sample(g, [](const std::array<double, 3>& x, int i) { return i == 0 ? std::sin(x[1]) : 0.0; }));
}

SpectralVectorField sin_x1_in_2(const TorusGrid& g)
{
    return forward_transform(sample(g, [](const std::array<double, 3>& x, int i) { return i == 1 ? std::sin(x[0]) : 0.0; }));
}

double rel(const SpectralVectorField& a, const SpectralVectorField& b)
{
    const double scale = std::max(max_abs_coeff(b), 1e-300);
    return (a.coeffs - b.coeffs).abs().maxCoeff() / scale;
}

} // namespace

TEST_CASE("Leray projection")
{
    const TorusGrid g = make_grid(3, 16);
    const SpectralVectorField grad_cos = forward_transform(
        sample(g, [](const std::array<double, 3>& x, int i) { return i == 0 ? -std::sin(x[0]) : 0.0; }));
    CHECK(max_abs_coeff(leray_project(grad_cos)) < 1e-15);

    const SpectralVectorField s = sin_x2(g);
    CHECK(rel(leray_project(s), s) < 1e-15);

    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const SpectralVectorField r = random_divfree_field(g, seed, 2.0, 1.0);
        const SpectralScalarField h = random_scalar_field(g, seed, 2.0, 1.0);
        const SpectralVectorField w = r + gradient(h);
        const SpectralVectorField pw = leray_project(w);
        CHECK(rel(leray_project(pw), pw) < 1e-12);
        CHECK(rel(pw, r) < 1e-12);
        CHECK(divergence_defect(pw) < 1e-12);
        CHECK(max_abs_coeff(leray_project(gradient(h))) <= 1e-12 * max_abs_coeff(gradient(h)));
    }
}

TEST_CASE("Laplacian and resolvent on an eigenmode")
{
    const TorusGrid g = make_grid(3, 16);
    const SpectralVectorField s = sin_x2(g);
    CHECK(rel(laplacian(s), -1.0 * s) < 1e-13);
    CHECK(rel(resolvent(3.0, s), 0.25 * s) < 1e-15);
    CHECK_THROWS_AS(resolvent(0.0, s), std::invalid_argument);
    CHECK_THROWS_AS(resolvent(-1.0, s), std::invalid_argument);

    for (double lambda : {1.0, 10.0, 100.0}) {
        const SpectralVectorField r = random_divfree_field(g, 5, 2.0, 1.0);
        CHECK(divergence(resolvent(lambda, r)).abs().maxCoeff() <= 1e-12 * max_abs_coeff(r));
        CHECK(rel(shifted_operator(lambda, resolvent(lambda, r)), r) < 1e-12);
    }
}

TEST_CASE("heat semigroup")
{
    const TorusGrid g = make_grid(3, 16);
    const SpectralVectorField s = sin_x2(g);
    CHECK(rel(heat_semigroup(1.0, 1.0, s), std::exp(-1.0) * s) < 1e-15);
    CHECK(rel(heat_semigroup(0.0, 1.0, s), s) == 0.0);
    CHECK_THROWS_AS(heat_semigroup(-0.1, 1.0, s), std::invalid_argument);

    const SpectralVectorField r = random_divfree_field(g, 8, 2.0, 1.0);
    for (double a : {0.1, 0.3})
        for (double b : {0.1, 0.3}) {
            const auto lhs = heat_semigroup(a, 1.0, heat_semigroup(b, 1.0, r));
            CHECK(rel(lhs, heat_semigroup(a + b, 1.0, r)) < 1e-12);
        }
}

TEST_CASE("fractional powers")
{
    const TorusGrid g = make_grid(3, 16);
    SpectralVectorField two(g);
    two.coeffs(g.flat_index({0, 2, 0}), 0) = Complex(0.0, -0.5);
    two.coeffs(g.flat_index({0, -2, 0}), 0) = Complex(0.0, 0.5);
    CHECK(rel(frac_power(0.5, two), 2.0 * two) < 1e-15);

    const SpectralVectorField r = random_divfree_field(g, 4, 2.0, 1.0);
    CHECK(rel(frac_power(1.0, r), -1.0 * laplacian(r)) < 1e-12);
    CHECK(rel(frac_power(0.0, r), r) < 1e-15);
    CHECK(rel(frac_power(-0.5, frac_power(0.5, r)), r) < 1e-12);
    CHECK(rel(frac_power(0.25, frac_power(0.5, r)), frac_power(0.75, r)) < 1e-12);

    SpectralVectorField withmean = r;
    withmean.coeffs(0, 0) = 1.0;
    CHECK_THROWS_AS(frac_power(0.5, withmean), std::invalid_argument);
    CHECK_THROWS_AS(frac_power(1.5, r), std::invalid_argument);
}

TEST_CASE("phi1")
{
    CHECK(phi1(0.0) == 1.0);
    CHECK(phi1(-1.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-15));
    CHECK(std::abs(phi1_series(-1e-4) - phi1_direct(-1e-4)) < 1e-12);
    CHECK(std::abs(phi1(-1e-7) - (1.0 - 0.5e-7 + 1e-14 / 6.0)) < 1e-15);

    const TorusGrid g = make_grid(3, 8);
    const Eigen::ArrayXd sym = phi1_symbol(g, 1.0, 1.0);
    CHECK(sym(0) == 1.0);
    CHECK(sym(g.flat_index({1, 0, 0})) == doctest::Approx(0.6321205588285577).epsilon(1e-14));
}

TEST_CASE("advection")
{
    const TorusGrid g = make_grid(3, 16);
    const SpectralVectorField u = sin_x2(g);
    const SpectralVectorField v = sin_x1_in_2(g);
    const SpectralVectorField expected = forward_transform(sample(
        g, [](const std::array<double, 3>& x, int i) { return i == 1 ? std::sin(x[1]) * std::cos(x[0]) : 0.0; }));
    CHECK(rel(advect(u, v), expected) < 1e-14);

    SpectralVectorField c(g);
    c.coeffs.row(0) << 1.0, 2.0, 3.0;
    CHECK(max_abs_coeff(advect(u, c)) < 1e-15);

    // Taylor-Green: (u.grad)u = 1/2 (sin 2x, sin 2y).
    const TorusGrid g2 = make_grid(2, 32);
    const SpectralVectorField tg = taylor_green(g2, 1.0, 0.0);
    const SpectralVectorField conv = forward_transform(
        sample(g2, [](const std::array<double, 3>& x, int i) { return 0.5 * std::sin(2.0 * x[i]); }));
    CHECK(rel(advect(tg, tg), conv) < 1e-14);
}

TEST_CASE("nonlinear term")
{
    const TorusGrid g2 = make_grid(2, 32);
    const SpectralVectorField tg = taylor_green(g2, 1.0, 0.0);
    CHECK(max_abs_coeff(nonlinear_F(tg)) < 1e-12);
    CHECK(max_abs_coeff(nonlinear_F(SpectralVectorField::zero(g2))) == 0.0);

    const TorusGrid g = make_grid(3, 16);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const SpectralVectorField r = random_divfree_field(g, seed, 2.0, 1.0);
        const SpectralVectorField f = nonlinear_F(r);
        CHECK(divergence(f).abs().maxCoeff() <= 1e-12 * max_abs_coeff(f));
        CHECK(f.divergence_free);
        CHECK(hermitian_defect(f) < 1e-12);
    }
    const SpectralVectorField grad = gradient(random_scalar_field(g, 1, 2.0, 1.0));
    CHECK_THROWS_AS(nonlinear_F(grad), std::invalid_argument);
}

TEST_CASE("L_p and fractional norms of a single mode")
{
    const TorusGrid g = make_grid(3, 16);
    const SpectralVectorField u = sin_x2(g);
    const double expected = 2.0 * std::pow(pi, 1.5);
    CHECK(lp_norm(u, 2.0) == doctest::Approx(expected).epsilon(1e-13));
    CHECK(l2_norm_parseval(u) == doctest::Approx(expected).epsilon(1e-13));
    CHECK(frac_norm(u, FracNormParams(0.5, 2.0)) == doctest::Approx(expected).epsilon(1e-13));
    CHECK(lp_norm(inverse_transform(u), 2.0) == doctest::Approx(expected).epsilon(1e-13));

    // ||sin||_4^4 over the box = (2 pi)^2 * 3 pi / 4.
    const double l4 = std::pow(4.0 * pi * pi * 3.0 * pi / 4.0, 0.25);
    CHECK(lp_norm(u, 4.0) == doctest::Approx(l4).epsilon(1e-13));

    const SpectralVectorField z = SpectralVectorField::zero(g);
    for (double p : {2.0, 3.0, 4.0})
        for (double a : {0.0, 0.5, 1.0}) {
            CHECK(lp_norm(z, p) == 0.0);
            CHECK(frac_norm(z, FracNormParams(a, p)) == 0.0);
        }
    CHECK_THROWS_AS(FracNormParams(0.5, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(FracNormParams(1.5, 2.0), std::invalid_argument);
}

TEST_CASE("gradient norms")
{
    const TorusGrid g = make_grid(3, 16);
    const SpectralVectorField u = sin_x2(g);
    CHECK(gradient_norm(u, 2.0, GradientVariant::full) == doctest::Approx(2.0 * std::pow(pi, 1.5)).epsilon(1e-13));
    CHECK(gradient_norm(u, 2.0, GradientVariant::diagonal) < 1e-14);
    const SpectralVectorField z = SpectralVectorField::zero(g);
    CHECK(gradient_norm(z, 2.0, GradientVariant::full) == 0.0);
    CHECK(gradient_norm(z, 2.0, GradientVariant::diagonal) == 0.0);

    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const SpectralVectorField r = random_divfree_field(g, seed, 3.0, 1.0);
        const double lhs = gradient_norm(r, 2.0, GradientVariant::full);
        const double rhs = frac_norm(r, FracNormParams(0.5, 2.0));
        CHECK(std::abs(lhs - rhs) <= 1e-10 * rhs);
    }
}

TEST_CASE("Jacobian layout")
{
    const TorusGrid g = make_grid(3, 16);
    const PhysicalArray J = jacobian(sin_x2(g));
    const Eigen::ArrayXd x1 = collocation_coordinate(g, 1);
    // d u_0 / d x_1 = cos x_1 sits in column 0 * 3 + 1.
    CHECK((J.col(1) - x1.cos()).abs().maxCoeff() < 1e-13);
    CHECK(J.col(0).abs().maxCoeff() < 1e-13);
    CHECK(J.col(3).abs().maxCoeff() < 1e-13);
}
