#pragma once

#include "cusplab/geometry.hpp"

#include <complex>
#include <iosfwd>
#include <utility>
#include <vector>

namespace cusplab {

enum class ReducedEnd { Dirichlet, Neumann };

/// Eigenvalues of the Euler-type model −(z^{2(n−1)} w')' = Λ z^{2(n−2)} w
/// on (ε, d), the cusp averaged over its cross-sections.
struct ReducedSpectrum {
    double epsilon = 0.0;
    double d = 1.0;
    std::vector<double> Lambda_values; ///< ascending
    std::vector<double> lambda_values; ///< λ = Λ |ω|/|∂ω|
    ReducedEnd left = ReducedEnd::Dirichlet;  ///< at z = ε
    ReducedEnd right = ReducedEnd::Dirichlet; ///< at z = d
    /// FD only: largest relative change against the grid with half the points.
    double refinement_change = 0.0;
    bool coarse = false; ///< refinement_change > 1e-4
};

/// τ± = −(n − 3/2) ± sqrt((n − 3/2)² − Λ), the exponents of z^τ solutions.
std::pair<std::complex<double>, std::complex<double>> euler_exponents(double lambda, const CuspGeometry& geom);

/// Dirichlet at both ends: Λ_k = (n − 3/2)² + (kπ/ln(d/ε))², k = 1..count.
ReducedSpectrum reduced_eigenvalues_closed_form(double epsilon, double d, const CuspGeometry& geom, int count);

/// Conservative three-point scheme on a grid uniform in s = ln z, where the
/// equation reads −(e^{(2n−3)s} w_s)_s = Λ e^{(2n−3)s} w. Neumann ends use a
/// half cell. `grid_points` counts both end nodes and must be ≥ 200.
ReducedSpectrum reduced_eigenvalues_fd(double epsilon, double d, const CuspGeometry& geom, int grid_points, int count,
                                       ReducedEnd left = ReducedEnd::Dirichlet,
                                       ReducedEnd right = ReducedEnd::Dirichlet);

/// Exact ε at which λ is the k-th Dirichlet–Dirichlet eigenvalue, k = 1..count:
/// τ₀ ln(d/ε) = kπ. A Neumann end at z = ε shifts ln ε by −ϑ/(2τ₀).
std::vector<double> reduced_crossings(double lambda, double d, const CuspGeometry& geom, int count,
                                      ReducedEnd left = ReducedEnd::Dirichlet);

/// The phase Θ of the reduced model with a Dirichlet end at z = d,
/// π − 2τ₀ ln d wrapped to [0, 2π).
double reduced_model_phase(double lambda, double d, const CuspGeometry& geom);

/// "epsilon,k,Lambda,lambda" rows.
void write_reduced_csv(std::ostream& out, const std::vector<ReducedSpectrum>& spectra);

} // namespace cusplab
