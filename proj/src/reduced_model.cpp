#include "cusplab/reduced_model.hpp"

#include "cusplab/asymptotics.hpp"
#include "cusplab/eigensolve.hpp"
#include "cusplab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

namespace cusplab {

namespace {

constexpr double pi = std::numbers::pi;

void check_interval(double epsilon, double d)
{
    if (!(d > 0.0 && epsilon > 0.0 && epsilon < d))
        throw InvalidArgument("reduced model needs 0 < epsilon < d");
}

std::vector<double> fd_Lambda(double epsilon, double d, int n_dim, int points, int count, ReducedEnd left,
                              ReducedEnd right)
{
    const double s0 = std::log(epsilon);
    const double ds = (std::log(d) - s0) / (points - 1);
    const double p = 2.0 * n_dim - 3.0;
    auto q = [&](double j) { return std::exp(p * (s0 + j * ds)); };

    const int first = left == ReducedEnd::Dirichlet ? 1 : 0;
    const int last = right == ReducedEnd::Dirichlet ? points - 2 : points - 1;
    const int m = last - first + 1;
    if (count > m)
        throw InvalidArgument("more reduced eigenvalues requested than grid unknowns");

    Vector diag(m), off(std::max(0, m - 1)), weight(m);
    for (int j = first; j <= last; ++j) {
        const int r = j - first;
        double k = 0.0;
        if (j > 0)
            k += q(j - 0.5) / ds;
        if (j < points - 1)
            k += q(j + 0.5) / ds;
        diag[r] = k;
        const bool half = j == 0 || j == points - 1;
        weight[r] = q(j) * (half ? 0.5 * ds : ds);
        if (j < last)
            off[r] = -q(j + 0.5) / ds;
    }
    // symmetric form W^{-1/2} K W^{-1/2}
    const Vector root = weight.cwiseSqrt();
    for (int r = 0; r < m; ++r) {
        diag[r] /= weight[r];
        if (r + 1 < m)
            off[r] /= root[r] * root[r + 1];
    }
    return tridiagonal_eigenvalues(diag, off, count);
}

} // namespace

std::pair<std::complex<double>, std::complex<double>> euler_exponents(double lambda, const CuspGeometry& geom)
{
    if (lambda < 0.0)
        throw InvalidArgument("euler_exponents needs lambda >= 0");
    const double c = geom.n - 1.5;
    const std::complex<double> root = std::sqrt(std::complex<double>(c * c - spectral_Lambda(lambda, geom), 0.0));
    return {-c + root, -c - root};
}

ReducedSpectrum reduced_eigenvalues_closed_form(double epsilon, double d, const CuspGeometry& geom, int count)
{
    check_interval(epsilon, d);
    if (count < 1)
        throw InvalidArgument("count must be positive");
    ReducedSpectrum out;
    out.epsilon = epsilon;
    out.d = d;
    const double c = geom.n - 1.5;
    const double len = std::log(d / epsilon);
    const double back = geom.omega_measure() / geom.omega_boundary_measure();
    for (int k = 1; k <= count; ++k) {
        const double L = c * c + std::pow(k * pi / len, 2);
        out.Lambda_values.push_back(L);
        out.lambda_values.push_back(L * back);
    }
    return out;
}

ReducedSpectrum reduced_eigenvalues_fd(double epsilon, double d, const CuspGeometry& geom, int grid_points, int count,
                                       ReducedEnd left, ReducedEnd right)
{
    check_interval(epsilon, d);
    if (grid_points < 200)
        throw InvalidArgument("reduced FD model needs at least 200 grid points");
    if (count < 1)
        throw InvalidArgument("count must be positive");
    ReducedSpectrum out;
    out.epsilon = epsilon;
    out.d = d;
    out.left = left;
    out.right = right;
    out.Lambda_values = fd_Lambda(epsilon, d, geom.n, grid_points, count, left, right);
    const auto coarse = fd_Lambda(epsilon, d, geom.n, (grid_points + 1) / 2, count, left, right);
    const double back = geom.omega_measure() / geom.omega_boundary_measure();
    for (int k = 0; k < count; ++k) {
        const double L = out.Lambda_values[static_cast<std::size_t>(k)];
        out.lambda_values.push_back(L * back);
        const double scale = std::max(std::abs(L), 1e-300);
        out.refinement_change =
            std::max(out.refinement_change, std::abs(L - coarse[static_cast<std::size_t>(k)]) / scale);
    }
    out.coarse = out.refinement_change > 1e-4;
    return out;
}

std::vector<double> reduced_crossings(double lambda, double d, const CuspGeometry& geom, int count, ReducedEnd left)
{
    const double t = tau0(lambda, geom);
    const double offset = left == ReducedEnd::Neumann ? -neumann_phase(lambda, geom) / (2.0 * t) : 0.0;
    std::vector<double> out;
    for (int k = 1; k <= count; ++k)
        out.push_back(d * std::exp(-k * pi / t + offset));
    return out;
}

double reduced_model_phase(double lambda, double d, const CuspGeometry& geom)
{
    return wrap_phase(pi - 2.0 * tau0(lambda, geom) * std::log(d));
}

void write_reduced_csv(std::ostream& out, const std::vector<ReducedSpectrum>& spectra)
{
    out << "epsilon,k,Lambda,lambda\n";
    char buf[128];
    for (const auto& s : spectra)
        for (std::size_t k = 0; k < s.Lambda_values.size(); ++k) {
            std::snprintf(buf, sizeof buf, "%.17g,%zu,%.17g,%.17g\n", s.epsilon, k + 1, s.Lambda_values[k],
                          s.lambda_values[k]);
            out << buf;
        }
}

} // namespace cusplab
