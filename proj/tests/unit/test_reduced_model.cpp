#include "cusplab/asymptotics.hpp"
#include "cusplab/errors.hpp"
#include "cusplab/reduced_model.hpp"

#include <doctest.h>

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

using namespace cusplab;

namespace {

using State = std::array<double, 2>;

// Integrates w_s = e^{−ms} p, p_s = −Λ e^{ms} w over [ln ε, ln d], m = 2n − 3,
// and returns w(ln d). Dirichlet start (w, p) = (0, 1), Neumann (1, 0).
double shoot(double Lambda, double eps, double d, int n, bool neumann_left)
{
    namespace ode = boost::numeric::odeint;
    const double m = 2.0 * n - 3.0;
    State y = neumann_left ? State{1.0, 0.0} : State{0.0, 1.0};
    auto rhs = [&](const State& x, State& dx, double s) {
        dx[0] = std::exp(-m * s) * x[1];
        dx[1] = -Lambda * std::exp(m * s) * x[0];
    };
    ode::integrate_adaptive(ode::make_controlled<ode::runge_kutta_dopri5<State>>(1e-13, 1e-13), rhs, y,
                            std::log(eps), std::log(d), 1e-4);
    return y[0];
}

// First `count` roots of the shooting function by scanning and bisection.
std::vector<double> shooting_eigenvalues(double eps, double d, int n, bool neumann_left, int count)
{
    std::vector<double> roots;
    const double c2 = (n - 1.5) * (n - 1.5);
    double lo = 1e-9, flo = shoot(lo, eps, d, n, neumann_left);
    for (double hi = 0.01; roots.size() < static_cast<std::size_t>(count); hi += 0.01) {
        const double fhi = shoot(hi, eps, d, n, neumann_left);
        if ((flo < 0) != (fhi < 0)) {
            double a = lo, b = hi, fa = flo;
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (a + b), fm = shoot(mid, eps, d, n, neumann_left);
                if ((fm < 0) == (fa < 0)) {
                    a = mid;
                    fa = fm;
                } else {
                    b = mid;
                }
            }
            roots.push_back(0.5 * (a + b));
        }
        lo = hi;
        flo = fhi;
    }
    (void)c2;
    return roots;
}

} // namespace

TEST_CASE("closed form matches an ODE shooting oracle")
{
    CuspGeometry g;
    for (double eps : {0.1, 0.01}) {
        const auto s = reduced_eigenvalues_closed_form(eps, 1.0, g, 4);
        const auto ref = shooting_eigenvalues(eps, 1.0, 2, false, 4);
        for (int k = 0; k < 4; ++k)
            CHECK(s.Lambda_values[k] == doctest::Approx(ref[k]).epsilon(1e-8));
    }
    CuspGeometry g3;
    g3.n = 3;
    const auto s3 = reduced_eigenvalues_closed_form(0.05, 2.0, g3, 3);
    const auto ref3 = shooting_eigenvalues(0.05, 2.0, 3, false, 3);
    for (int k = 0; k < 3; ++k)
        CHECK(s3.Lambda_values[k] == doctest::Approx(ref3[k]).epsilon(1e-8));
}

TEST_CASE("finite differences converge to the closed form")
{
    CuspGeometry g;
    const auto exact = reduced_eigenvalues_closed_form(1e-2, 1.0, g, 5);
    const auto fd = reduced_eigenvalues_fd(1e-2, 1.0, g, 10000, 5);
    for (int k = 0; k < 5; ++k) {
        CHECK(fd.Lambda_values[k] == doctest::Approx(exact.Lambda_values[k]).epsilon(1e-6));
        CHECK(fd.lambda_values[k] == doctest::Approx(exact.lambda_values[k]).epsilon(1e-6));
    }
    CHECK_FALSE(fd.coarse);
    CHECK(fd.refinement_change > 0.0);
    CHECK_THROWS_AS(reduced_eigenvalues_fd(1e-2, 1.0, g, 100, 5), InvalidArgument);
}

TEST_CASE("Neumann end against shooting")
{
    CuspGeometry g;
    const auto fd = reduced_eigenvalues_fd(1e-2, 1.0, g, 20000, 3, ReducedEnd::Neumann);
    const auto ref = shooting_eigenvalues(1e-2, 1.0, 2, true, 3);
    for (int k = 0; k < 3; ++k)
        CHECK(fd.Lambda_values[k] == doctest::Approx(ref[k]).epsilon(1e-6));
}

TEST_CASE("crossings reproduce the prescribed eigenvalue")
{
    CuspGeometry g;
    const double lam = 0.8;
    const auto eps = reduced_crossings(lam, 1.0, g, 3);
    for (int k = 0; k < 3; ++k) {
        const auto s = reduced_eigenvalues_closed_form(eps[k], 1.0, g, k + 1);
        CHECK(s.lambda_values[k] == doctest::Approx(lam).epsilon(1e-12));
    }
    for (int k = 0; k + 1 < 3; ++k)
        CHECK(std::log(eps[k]) - std::log(eps[k + 1]) == doctest::Approx(std::numbers::pi / tau0(lam, g)).epsilon(1e-12));

    // Neumann-end crossings: the shooting oracle finds λ there
    const auto en = reduced_crossings(lam, 1.0, g, 2, ReducedEnd::Neumann);
    for (double e : en) {
        const auto ref = shooting_eigenvalues(e, 1.0, 2, true, 6);
        double best = 1e9;
        for (double L : ref)
            best = std::min(best, std::abs(L - spectral_Lambda(lam, g)));
        CHECK(best < 1e-7);
    }
}

TEST_CASE("Euler exponents solve the indicial equation")
{
    CuspGeometry g;
    for (double lam : {0.1, 0.25, 0.9}) {
        const auto [tp, tm] = euler_exponents(lam, g);
        const double L = spectral_Lambda(lam, g);
        for (auto t : {tp, tm})
            CHECK(std::abs(t * t + t * (2.0 * g.n - 3.0) + L) < 1e-12);
    }
}

TEST_CASE("reduced phase is the crossing phase of a Dirichlet end at d")
{
    CuspGeometry g;
    for (double d : {1.0, 2.0}) {
        const double lam = 0.7;
        const double theta = reduced_model_phase(lam, d, g);
        const auto eps = reduced_crossings(lam, d, g, 1);
        const double w = wrap_phase(-2.0 * tau0(lam, g) * std::log(eps[0]) - std::numbers::pi - theta);
        CHECK(std::min(w, 2.0 * std::numbers::pi - w) < 1e-10);
    }
}

TEST_CASE("csv layout")
{
    CuspGeometry g;
    std::ostringstream s;
    write_reduced_csv(s, {reduced_eigenvalues_closed_form(0.5 / 4, 1.0, g, 1)});
    CHECK(s.str().rfind("epsilon,k,Lambda,lambda\n0.125,1,", 0) == 0);
}
