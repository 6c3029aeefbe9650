#include "cusplab/asymptotics.hpp"

#include "cusplab/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace cusplab {

namespace {

constexpr double pi = std::numbers::pi;

double shift(const CuspGeometry& geom) { return geom.n - 1.5; }

} // namespace

double spectral_Lambda(double lambda, const CuspGeometry& geom)
{
    return lambda * geom.omega_boundary_measure() / geom.omega_measure();
}

double threshold(const CuspGeometry& geom)
{
    return shift(geom) * shift(geom) * geom.omega_measure() / geom.omega_boundary_measure();
}

double tau0(double lambda, const CuspGeometry& geom)
{
    const double t2 = spectral_Lambda(lambda, geom) - shift(geom) * shift(geom);
    if (!(t2 > 0.0))
        throw DomainError("tau0 needs lambda above the threshold " + std::to_string(threshold(geom)) + ", got " +
                          std::to_string(lambda));
    return std::sqrt(t2);
}

double wrap_phase(double theta)
{
    double t = std::fmod(theta, 2.0 * pi);
    if (t < 0.0)
        t += 2.0 * pi;
    if (t >= 2.0 * pi)
        t = 0.0;
    return t;
}

std::vector<double> blinking_epsilons(double lambda, double theta, int k_first, int k_last, const CuspGeometry& geom)
{
    if (!(theta >= 0.0 && theta < 2.0 * pi))
        throw InvalidArgument("theta must lie in [0, 2pi)");
    const double t = tau0(lambda, geom);
    std::vector<double> out;
    for (int k = k_first; k <= k_last; ++k)
        out.push_back(std::exp(-(theta + (2 * k + 1) * pi) / (2.0 * t)));
    return out;
}

std::vector<double> blinking_epsilons_as_printed(double lambda, double theta, int k_first, int k_last,
                                                 const CuspGeometry& geom)
{
    const double t = tau0(lambda, geom);
    std::vector<double> out;
    for (int k = k_first; k <= k_last; ++k)
        out.push_back(std::exp(-2.0 * ((2 * k + 1) * pi + theta) / t));
    return out;
}

double gliding_speed(double lambda, double epsilon, const CuspGeometry& geom)
{
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw InvalidArgument("gliding speed needs 0 < epsilon < 1");
    const double ld = threshold(geom);
    if (lambda < ld)
        throw DomainError("gliding speed is defined for lambda >= lambda_dagger");
    return 2.0 * (lambda - ld) / (epsilon * std::abs(std::log(epsilon)));
}

std::complex<double> threshold_phase(double epsilon)
{
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw InvalidArgument("threshold phase needs 0 < epsilon < 1");
    const std::complex<double> l(0.0, std::log(epsilon));
    return -(1.0 - l) / (1.0 + l);
}

double normalization_w0(double lambda, const CuspGeometry& geom, W0Variant variant)
{
    const double ld = threshold(geom);
    if (lambda < ld)
        throw DomainError("normalization_w0 needs lambda >= lambda_dagger");
    const double base = 1.0 / std::sqrt(2.0 * geom.omega_measure());
    if (lambda == ld)
        return base;
    const double L = spectral_Lambda(lambda, geom);
    const double arg = variant == W0Variant::AsPrinted ? L - geom.n + 1.5 : L - shift(geom) * shift(geom);
    if (!(arg > 0.0))
        throw DomainError("normalization_w0: Lambda - n + 3/2 = " + std::to_string(arg) +
                          " is not positive; use the squared variant");
    return base * std::pow(arg, -0.25);
}

double neumann_phase(double lambda, const CuspGeometry& geom)
{
    return -2.0 * std::atan2(tau0(lambda, geom), shift(geom));
}

} // namespace cusplab
