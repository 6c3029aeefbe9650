#include "cusplab/cusp_fit.hpp"
#include "cusplab/errors.hpp"
#include "cusplab/reduced_model.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

using namespace cusplab;
constexpr double pi = std::numbers::pi;

namespace {

std::vector<double> log_samples(double z1, double z2, int n)
{
    std::vector<double> z;
    for (int i = 0; i < n; ++i)
        z.push_back(z1 * std::pow(z2 / z1, i / (n - 1.0)));
    return z;
}

} // namespace

TEST_CASE("cross-section mean of a linear field is exact")
{
    const Mesh m = make_mesh(make_domain(CuspGeometry{}, 0.05), 0.1);
    Vector u(m.node_count());
    for (std::size_t i = 0; i < m.node_count(); ++i)
        u[i] = 2.0 * m.nodes[i].x + 3.0 * m.nodes[i].y + 1.0;
    for (double z : {0.051, 0.2, 0.77, 1.4})
        CHECK(cross_section_mean(m, u, z) == doctest::Approx(2.0 * z + 1.0).epsilon(1e-12));
    CHECK(std::isnan(cross_section_mean(m, u, 0.01)));
}

TEST_CASE("fit recovers a real standing wave")
{
    CuspGeometry g;
    const double lam = 0.8, t = tau0(lam, g);
    const double alpha = 0.7, beta = -1.9;
    const auto z = log_samples(0.001, 0.5, 60);
    std::vector<std::complex<double>> v;
    for (double x : z)
        v.push_back(std::pow(x, -0.5) * (alpha * std::cos(t * std::log(x)) + beta * std::sin(t * std::log(x))));
    const auto f = fit_profile(z, v, lam, g, {0.001, 0.5});
    CHECK(f.alpha.real() == doctest::Approx(alpha).epsilon(1e-10));
    CHECK(f.beta.real() == doctest::Approx(beta).epsilon(1e-10));
    CHECK(f.residual < 1e-12);
    CHECK(std::abs(f.b_plus) == doctest::Approx(std::abs(f.b_minus)).epsilon(1e-12));
    REQUIRE(f.theta_hat.has_value());
    CHECK(*f.theta_hat == doctest::Approx(wrap_phase(-2.0 * std::atan2(beta, alpha))).epsilon(1e-10));
    CHECK_FALSE(f.low_confidence);
    const auto narrow = fit_profile(log_samples(0.1, 0.2, 30), std::vector<std::complex<double>>(30, 1.0), lam, g,
                                    {0.1, 0.2});
    CHECK(narrow.low_confidence);
}

TEST_CASE("a one-sided wave has no phase")
{
    CuspGeometry g;
    const double lam = 1.3, t = tau0(lam, g);
    const auto z = log_samples(0.02, 0.5, 50);
    std::vector<std::complex<double>> v;
    for (double x : z)
        v.push_back(std::pow(x, -0.5) * std::exp(std::complex<double>(0, t * std::log(x))));
    const auto f = fit_profile(z, v, lam, g, {0.02, 0.5});
    CHECK(std::abs(f.b_minus) < 1e-10 * std::abs(f.b_plus));
    CHECK_FALSE(f.theta_hat.has_value());
    // b₊ is the amplitude in front of w₊ = w₀ z^{τ₊}
    CHECK(std::abs(f.b_plus * normalization_w0(lam, g, W0Variant::Squared) - 1.0) < 1e-10);
}

TEST_CASE("crossing phase inverts the blinking sequence")
{
    CuspGeometry g;
    const double lam = 0.9;
    for (double theta : {0.1, 2.0, 6.0}) {
        const auto eps = blinking_epsilons(lam, theta, 1, 2, g);
        for (double e : eps)
            CHECK(estimate_theta_from_crossing(e, lam, g) == doctest::Approx(theta).epsilon(1e-10));
    }
    CHECK_THROWS_AS(estimate_theta_from_crossing(0.0, lam, g), InvalidArgument);
}

TEST_CASE("reduced scattering phase equals the closed-form reduced phase")
{
    CuspGeometry g;
    for (double d : {1.0, 1.7}) {
        const double lam = 0.7;
        const auto r = reduced_scattering_phase(lam, 1e-3, d, {3e-3, 0.5 * d}, g);
        const double ref = reduced_model_phase(lam, d, g);
        const double diff = std::abs(std::remainder(r.theta - ref, 2 * pi));
        CHECK(diff < 1e-6);
        CHECK(std::abs(r.s) == doctest::Approx(1.0).epsilon(1e-8));
        CHECK(r.parallelism < 1e-6);
    }
}

TEST_CASE("FEM scattering is unimodular and consistent on a coarse mesh")
{
    CuspGeometry g;
    MeshOptions mo;
    mo.h = 0.08;
    const auto r = scattering_phase(1.0, 0.01, {0.015, 0.3}, g, mo);
    CHECK(std::abs(r.s) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.parallelism < 1e-6);
    CHECK(r.theta_spread < 1e-6);
    CHECK(r.theta >= 0.0);
    CHECK(r.theta < 2 * pi);
    CHECK(r.fits.front().residual < 0.05);
}
