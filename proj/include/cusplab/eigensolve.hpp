#pragma once

#include "cusplab/assembly.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace cusplab {

/// Leading eigenpairs of A w = λ M_Γ w for one blunting parameter.
struct Spectrum {
    double epsilon = 0.0;
    std::vector<double> eigenvalues; ///< ascending
    std::vector<double> residuals;   ///< ‖A w − λ M_Γ w‖ / ‖(A + M_Γ) w‖
    Eigen::MatrixXd eigenvectors;    ///< nodal, one column per eigenvalue, M_Γ-orthonormal
    std::string mesh_id;
    EndCondition end_condition = EndCondition::Dirichlet;
    bool odd_sector = false;

    /// μ = (1 + λ)⁻¹, the eigenvalues of the operator S^ε.
    std::vector<double> mu_values() const;
};

/// Dirichlet-to-Neumann reduction: the free nodes split into the support
/// of M_Γ (boundary block) and the rest; the Schur complement of the
/// interior block is formed from a sparse LDLᵀ of A_ii, and the dense
/// boundary pencil is reduced to a standard symmetric problem by the
/// Cholesky factor of M_bb. Interior values follow from harmonic extension.
Spectrum steklov_spectrum(const AssembledSystem& sys, std::size_t count);

/// Number of unknowns in the boundary block, i.e. the number of finite
/// eigenvalues of the pencil.
std::size_t boundary_unknowns(const AssembledSystem& sys);

struct NearEigenvalueCheck {
    double delta = 0.0;                ///< ‖S U − M U‖_ε with ‖U‖_ε = 1
    std::optional<double> matched_mu;  ///< nearest point of the spectrum of S
    bool hypothesis_holds = false;     ///< δ < M; otherwise nothing is concluded
    bool contained = false;            ///< |M − μ_p| ≤ δ
    std::optional<bool> lambda_bound;  ///< |1 + λ_p − 1/M| ≤ 2δ/M², checked when δ/M ≤ ½
};

/// Quasimode test for S^ε. The spectrum of S consists of the μ_p of all
/// finite eigenvalues plus μ = 0 whenever interior unknowns exist.
NearEigenvalueCheck near_eigenvalue_check(const AssembledSystem& sys, const Vector& U, double M);

/// Same check against a precomputed full μ-spectrum (ascending).
NearEigenvalueCheck near_eigenvalue_check(const SteklovOperator& op, const std::vector<double>& mu_spectrum,
                                          const Vector& U, double M);

/// Lowest `count` eigenvalues of the symmetric tridiagonal matrix with
/// diagonal `diag` and off-diagonal `off`, ascending (Sturm bisection).
std::vector<double> tridiagonal_eigenvalues(const Vector& diag, const Vector& off, int count);

/// All points of the spectrum of S^ε, ascending, including 0 when present.
std::vector<double> full_mu_spectrum(const AssembledSystem& sys);

/// +1 for an even eigenvector, −1 for odd, 0 when neither within `tol`
/// relative; `mirror` is Mesh::mirror_map().
int parity(const Eigen::VectorXd& nodal, const std::vector<int>& mirror, double tol = 1e-3);

} // namespace cusplab
