#pragma once

#include "cusplab/geometry.hpp"

#include <array>
#include <complex>
#include <functional>
#include <iosfwd>
#include <vector>

namespace cusplab {

enum class Root { Plus, Minus };

/// Cross-section corrector for the wave w = w₀ z^τ in the planar cusp:
/// −W₀'' = F on (−a, a), ±W₀'(±a) = G(±a), mean zero, with
/// F = τ(τ−1) w₀ and G = w₀ (λ + 2aτ). W₀(η) = c2 η² + c0.
struct CorrectorSolution {
    double lambda = 0.0;
    double a = 1.0;
    std::complex<double> tau;
    double w0 = 1.0;
    std::complex<double> F;
    std::complex<double> G; ///< same value at both ends
    std::complex<double> c2;
    std::complex<double> c0;
    std::complex<double> mean;   ///< (1/2a)∫W₀, zero up to rounding
    double compatibility_residual = 0.0; ///< |∫F + G(a) + G(−a)|

    std::complex<double> operator()(double eta) const { return c2 * eta * eta + c0; }
    std::complex<double> derivative(double eta) const { return 2.0 * c2 * eta; }
};

/// n = 2 only. `w0` is the amplitude in front of z^τ; τ is taken from
/// euler_exponents. Throws NumericalError if the Neumann data are not
/// compatible to 1e-9.
CorrectorSolution solve_W0(double lambda, const CuspGeometry& geom, Root branch, double w0 = 1.0);

struct LayerMode {
    int k = 0;
    double frequency = 0.0; ///< kπ/(2a), also the decay rate of the mode
    double amplitude = 0.0;
};

/// Y(ξ′, ξ) = Σ c_k cos(kπ(ξ′+a)/(2a)) e^{−kπξ/(2a)} on the half strip
/// (−a, a) × (0, ∞): harmonic, Neumann on the lateral walls.
struct BoundaryLayerSolution {
    double a = 1.0;
    std::vector<LayerMode> modes;
    double decay_rate = 0.0;   ///< π/(2a)
    double truncation_length = 0.0;
    double mean_flux = 0.0;    ///< mean of the data, the k = 0 coefficient
    double coefficient_bound = 0.0; ///< (1/a)∫|data|, bounds every |c_k|

    double operator()(double xi_lateral, double xi_normal) const;
    /// (∂ξ′, ∂ξ)
    std::array<double, 2> gradient(double xi_lateral, double xi_normal) const;
    /// (∂ξ′ξ′, ∂ξ′ξ, ∂ξξ)
    std::array<double, 3> hessian(double xi_lateral, double xi_normal) const;
    /// Cross-sectional mean at depth ξ by quadrature.
    double cross_section_mean(double xi_normal) const;
    /// Bound for the modes beyond the retained ones at depth ξ > 0.
    double remainder_bound(double xi_normal) const;
};

/// Cosine coefficients of `data` by adaptive Gauss–Kronrod quadrature.
/// Data with a nonzero mean are rejected: the constant mode would not decay.
BoundaryLayerSolution solve_boundary_layer(const std::function<double(double)>& data, double a, int n_modes,
                                           double T);

/// ∫₀ᵀ∫_ω e^{2βξ}(|∇²Y|² + |∇Y|²) by nested quadrature, β = decay_rate.
double weighted_h2_integral(const BoundaryLayerSolution& y, double T);

/// "k,frequency,amplitude"
void write_layer_modes_csv(std::ostream& out, const BoundaryLayerSolution& y);
/// "xi_lateral,xi_normal,value" on an (nx+1)×(nz+1) grid of ω × [0, T].
void write_layer_grid_csv(std::ostream& out, const BoundaryLayerSolution& y, int nx, int nz);

} // namespace cusplab
