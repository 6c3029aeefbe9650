#pragma once

#include "cusplab/assembly.hpp"
#include "cusplab/asymptotics.hpp"
#include "cusplab/geometry.hpp"

#include <complex>
#include <optional>
#include <vector>

namespace cusplab {

struct FitWindow {
    double z1 = 0.0;
    double z2 = 0.0;
};

/// Cusp profile w(z) ≈ z^{−(n−3/2)} (α cos(τ₀ ln z) + β sin(τ₀ ln z))
/// = b₊ w₊ + b₋ w₋, fitted to cross-sectional means.
struct WaveFit {
    double lambda = 0.0;
    double epsilon = 0.0;
    FitWindow window;
    double tau0 = 0.0;
    std::complex<double> alpha, beta;
    std::complex<double> b_plus, b_minus; ///< (α ∓ iβ)/2, divided by w₀ (squared variant)
    std::optional<double> theta_hat;      ///< arg(b₊/b₋) in [0, 2π) when both amplitudes clear the misfit
    double residual = 0.0;                ///< ‖v − fit‖/‖v‖ with v = z^{n−3/2} ŵ
    int samples = 0;
    bool low_confidence = false;          ///< τ₀ ln(z₂/z₁) < π
    double profile_amplitude = 1.0;       ///< max |ŵ| / max |u|; below 1e-8 there is no wave to fit
};

/// Mean of the P1 field over the cross-section x = z: exact line integral
/// divided by the intersected length. NaN when the line misses the mesh.
double cross_section_mean(const Mesh& mesh, const Vector& nodal, double z);

/// Least-squares fit of sampled means. `means` may be complex; real and
/// imaginary parts are fitted with the same real basis.
WaveFit fit_profile(const std::vector<double>& z, const std::vector<std::complex<double>>& means, double lambda,
                    const CuspGeometry& geom, FitWindow window);

/// Samples `samples` log-spaced cross-sections inside the window.
WaveFit fit_cusp_wave(const Mesh& mesh, const Vector& nodal, double lambda, const CuspGeometry& geom,
                      FitWindow window, int samples = 40);
/// Complex field given by its real and imaginary nodal parts.
WaveFit fit_cusp_wave(const Mesh& mesh, const Vector& real, const Vector& imag, double lambda,
                      const CuspGeometry& geom, FitWindow window, int samples = 40);

/// Θ = (−2τ₀(λ♭) ln ε* − π) mod 2π.
double estimate_theta_from_crossing(double epsilon_star, double lambda_flat, const CuspGeometry& geom);

struct ScatteringResult {
    double lambda = 0.0;
    double theta = 0.0;
    std::complex<double> s;      ///< b₊/b₋ of the primary solve
    double delta = 0.0;          ///< truncation actually used
    double parallelism = 0.0;    ///< |sin| of the angle between the two fitted (α, β)
    double theta_spread = 0.0;   ///< |Θ₁ − Θ₂| on the circle
    std::vector<WaveFit> fits;
};

/// Solves the blunted problem at fixed λ twice, with two different data on
/// the end z = δ (FEM: constant and quadratic Dirichlet data), fits both
/// cusp profiles and returns Θ = arg s. For real λ the body admits a single
/// real profile up to scale, so the two fits must be parallel; their
/// disagreement is reported, not hidden. δ is shrunk by 3% (at most five
/// times) while λ lies within 1e-3 relative of a Dirichlet-end eigenvalue.
ScatteringResult scattering_phase(double lambda, double delta, FitWindow window, const CuspGeometry& geom,
                                  const MeshOptions& mesh_options, int samples = 40);

/// The same matching on the reduced model on (δ, d) with a Dirichlet end at
/// d: one solve with Dirichlet data, one with Neumann data at δ.
ScatteringResult reduced_scattering_phase(double lambda, double delta, double d, FitWindow window,
                                          const CuspGeometry& geom, int grid_points = 100000, int samples = 200);

} // namespace cusplab
