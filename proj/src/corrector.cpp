#include "cusplab/corrector.hpp"

#include "cusplab/errors.hpp"
#include "cusplab/reduced_model.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <string>

namespace cusplab {

namespace {

constexpr double pi = std::numbers::pi;

template <class F>
double integrate(F f, double lo, double hi)
{
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, lo, hi, 15, 1e-13);
}

// Integrand with about `periods` oscillations: a fixed 61-point Kronrod
// rule on every half period. Adaptive refinement stalls on the rounding
// floor when a coefficient vanishes, so it is not used here.
template <class F>
double integrate_oscillatory(F f, double lo, double hi, int periods)
{
    const int pieces = std::max(2, 2 * periods);
    double s = 0.0;
    for (int i = 0; i < pieces; ++i)
        s += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
            f, lo + (hi - lo) * i / pieces, lo + (hi - lo) * (i + 1) / pieces, 0);
    return s;
}

} // namespace

CorrectorSolution solve_W0(double lambda, const CuspGeometry& geom, Root branch, double w0)
{
    if (geom.n != 2)
        throw InvalidArgument("the closed-form corrector is implemented for n = 2 only");
    const auto [tp, tm] = euler_exponents(lambda, geom);
    CorrectorSolution s;
    s.lambda = lambda;
    s.a = geom.a;
    s.tau = branch == Root::Plus ? tp : tm;
    s.w0 = w0;
    const double a = geom.a;
    s.F = s.tau * (s.tau - 1.0) * w0;
    s.G = w0 * (lambda + 2.0 * a * s.tau);
    s.compatibility_residual = std::abs(2.0 * a * s.F + 2.0 * s.G);
    const double scale = std::max(1.0, std::abs(w0) * (lambda + std::norm(s.tau) * a + 1.0));
    if (s.compatibility_residual > 1e-9 * scale)
        throw NumericalError("corrector Neumann data incompatible: residual " +
                             std::to_string(s.compatibility_residual));
    s.c2 = -0.5 * s.F;
    s.c0 = -s.c2 * a * a / 3.0;
    s.mean = s.c2 * a * a / 3.0 + s.c0;
    return s;
}

double BoundaryLayerSolution::operator()(double x, double z) const
{
    double sum = 0.0;
    for (const auto& m : modes)
        sum += m.amplitude * std::cos(m.frequency * (x + a)) * std::exp(-m.frequency * z);
    return sum;
}

std::array<double, 2> BoundaryLayerSolution::gradient(double x, double z) const
{
    std::array<double, 2> g{0.0, 0.0};
    for (const auto& m : modes) {
        const double e = m.amplitude * std::exp(-m.frequency * z) * m.frequency;
        g[0] -= e * std::sin(m.frequency * (x + a));
        g[1] -= e * std::cos(m.frequency * (x + a));
    }
    return g;
}

std::array<double, 3> BoundaryLayerSolution::hessian(double x, double z) const
{
    std::array<double, 3> h{0.0, 0.0, 0.0};
    for (const auto& m : modes) {
        const double e = m.amplitude * std::exp(-m.frequency * z) * m.frequency * m.frequency;
        const double c = std::cos(m.frequency * (x + a));
        h[0] -= e * c;
        h[1] += e * std::sin(m.frequency * (x + a));
        h[2] += e * c;
    }
    return h;
}

double BoundaryLayerSolution::cross_section_mean(double z) const
{
    return integrate([&](double x) { return (*this)(x, z); }, -a, a) / (2.0 * a);
}

double BoundaryLayerSolution::remainder_bound(double z) const
{
    if (!(z > 0.0))
        throw InvalidArgument("remainder bound needs a positive depth");
    const int next = modes.empty() ? 1 : modes.back().k + 1;
    const double q = std::exp(-decay_rate * z);
    return coefficient_bound * std::pow(q, next) / (1.0 - q);
}

BoundaryLayerSolution solve_boundary_layer(const std::function<double(double)>& data, double a, int n_modes, double T)
{
    if (!(a > 0.0) || n_modes < 1 || !(T > 0.0))
        throw InvalidArgument("boundary layer needs a > 0, n_modes >= 1 and T > 0");
    BoundaryLayerSolution y;
    y.a = a;
    y.truncation_length = T;
    y.decay_rate = pi / (2.0 * a);
    y.mean_flux = integrate(data, -a, a) / (2.0 * a);
    const double l1 = integrate([&](double x) { return std::abs(data(x)); }, -a, a);
    const double l2 = std::sqrt(integrate([&](double x) { return data(x) * data(x); }, -a, a) / (2.0 * a));
    if (std::abs(y.mean_flux) > 1e-10 * std::max(l2, 1e-300))
        throw InvalidArgument("boundary-layer data must have zero mean over the cross-section (mean " +
                              std::to_string(y.mean_flux) + "); a constant mode does not decay");
    y.coefficient_bound = l1 / a;
    for (int k = 1; k <= n_modes; ++k) {
        const double f = k * pi / (2.0 * a);
        const double c =
            integrate_oscillatory([&](double x) { return data(x) * std::cos(f * (x + a)); }, -a, a, (k + 1) / 2) / a;
        y.modes.push_back({k, f, c});
    }
    return y;
}

double weighted_h2_integral(const BoundaryLayerSolution& y, double T)
{
    const double b = y.decay_rate;
    auto slice = [&](double z) {
        return integrate(
            [&](double x) {
                const auto g = y.gradient(x, z);
                const auto h = y.hessian(x, z);
                return h[0] * h[0] + 2.0 * h[1] * h[1] + h[2] * h[2] + g[0] * g[0] + g[1] * g[1];
            },
            -y.a, y.a);
    };
    return integrate([&](double z) { return std::exp(2.0 * b * z) * slice(z); }, 0.0, T);
}

void write_layer_modes_csv(std::ostream& out, const BoundaryLayerSolution& y)
{
    out << "k,frequency,amplitude\n";
    char buf[96];
    for (const auto& m : y.modes) {
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g\n", m.k, m.frequency, m.amplitude);
        out << buf;
    }
}

void write_layer_grid_csv(std::ostream& out, const BoundaryLayerSolution& y, int nx, int nz)
{
    if (nx < 1 || nz < 1)
        throw InvalidArgument("layer grid needs nx, nz >= 1");
    out << "xi_lateral,xi_normal,value\n";
    char buf[128];
    for (int j = 0; j <= nz; ++j)
        for (int i = 0; i <= nx; ++i) {
            const double x = -y.a + 2.0 * y.a * i / nx;
            const double z = y.truncation_length * j / nz;
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", x, z, y(x, z));
            out << buf;
        }
}

} // namespace cusplab
