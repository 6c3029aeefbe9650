#pragma once

#include "cusplab/geometry.hpp"

#include <complex>
#include <vector>

namespace cusplab {

/// Λ = (|∂ω|/|ω|) λ.
double spectral_Lambda(double lambda, const CuspGeometry& geom);
/// λ† = (n − 3/2)² |ω|/|∂ω|, the cut-off of the continuous spectrum.
double threshold(const CuspGeometry& geom);
/// τ₀(λ) = sqrt(Λ − (n − 3/2)²); DomainError for λ ≤ λ†.
double tau0(double lambda, const CuspGeometry& geom);

/// Reduces an angle to [0, 2π). Every phase that leaves this library goes
/// through here.
double wrap_phase(double theta);

/// ε_k = exp(−(θ + (2k+1)π)/(2τ₀)) for k = k_first..k_last, the solutions
/// of −2τ₀ ln ε = θ + π (mod 2π). Strictly decreasing in k.
std::vector<double> blinking_epsilons(double lambda, double theta, int k_first, int k_last, const CuspGeometry& geom);

/// The sequence as literally printed next to the crossing relation,
/// exp(−2((2k+1)π + θ)/τ₀). Its prefactor disagrees with the relation it is
/// derived from; reports show it only to flag the discrepancy.
std::vector<double> blinking_epsilons_as_printed(double lambda, double theta, int k_first, int k_last,
                                                 const CuspGeometry& geom);

/// Leading term 2(λ − λ†)/(ε |ln ε|) of the descent speed dλ/dε of a
/// gliding eigenvalue. Needs λ ≥ λ† and 0 < ε < 1.
double gliding_speed(double lambda, double epsilon, const CuspGeometry& geom);

/// e^{iΘ(λ†)} = −(1 − i ln ε)/(1 + i ln ε).
std::complex<double> threshold_phase(double epsilon);

enum class W0Variant {
    AsPrinted, ///< (2|ω|)^{−1/2} (Λ − n + 3/2)^{−1/4}
    Squared,   ///< (2|ω|)^{−1/2} (Λ − (n − 3/2)²)^{−1/4} = (2|ω|)^{−1/2} τ₀^{−1/2}
};

/// Normalization factor of the cusp waves w± = w₀ z^{τ±}; (2|ω|)^{−1/2}
/// exactly at λ = λ†. The printed variant is only defined for Λ > n − 3/2.
double normalization_w0(double lambda, const CuspGeometry& geom, W0Variant variant = W0Variant::AsPrinted);

/// ϑ with e^{iϑ} = ((n − 3/2) − iτ₀)/((n − 3/2) + iτ₀): the phase shift a
/// Neumann end adds to the crossing relation. Lies in (−π, 0).
double neumann_phase(double lambda, const CuspGeometry& geom);

} // namespace cusplab
