#pragma once

#include "cusplab/geometry.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <array>
#include <iosfwd>
#include <memory>
#include <vector>

namespace cusplab {

using SparseMatrix = Eigen::SparseMatrix<double>;
using Vector = Eigen::VectorXd;

/// Exact P1 stiffness of one triangle.
std::array<std::array<double, 3>, 3> element_stiffness(const Point& p, const Point& q, const Point& r);
/// Exact P1 mass of a straight boundary edge of the given length.
std::array<std::array<double, 2>, 2> edge_mass(double length);

/// ∫∇u·∇v over the whole mesh, indexed by node.
SparseMatrix assemble_stiffness(const Mesh& mesh);
/// ∫uv over the edges carrying `tag`, indexed by node.
SparseMatrix assemble_edge_mass(const Mesh& mesh, BoundaryTag tag);

/// P1 discretization of the Steklov problem in the blunted domain with the
/// chosen end condition. All matrices are restricted to the free nodes.
struct AssembledSystem {
    SparseMatrix stiffness;     ///< A
    SparseMatrix boundary_mass; ///< M_Γ; includes the end mass for a Steklov end
    SparseMatrix end_mass;      ///< L² mass of the artificial end (empty when its nodes are constrained)
    std::vector<int> constrained;  ///< sorted node indices eliminated from the system
    std::vector<int> free_to_node; ///< equation -> node
    std::vector<int> node_to_free; ///< node -> equation, -1 when constrained
    std::vector<int> mirror;       ///< odd sector only: reflection y ↦ −y of every node
    EndCondition end_condition = EndCondition::Dirichlet;
    bool odd_sector = false;
    double epsilon = 0.0;

    std::size_t free_count() const { return free_to_node.size(); }
    std::size_t node_count() const { return node_to_free.size(); }
    /// Free-vector to nodal vector with zeros on constrained nodes; in the
    /// odd sector the lower half is filled by odd reflection.
    Vector expand(const Vector& free) const;
    Vector restrict_to_free(const Vector& nodal) const;
};

/// Dirichlet end constrains the ArtificialEnd nodes; Neumann leaves them
/// free without end mass; Steklov adds the end mass to M_Γ. The odd sector
/// keeps only the upper half y > 0 with a Dirichlet condition on the
/// symmetry plane, so each odd mode appears once.
AssembledSystem assemble(const Mesh& mesh, EndCondition end_condition, bool odd_sector = false);

/// The discrete operator S^ε of ⟨S u, v⟩_ε = (u, v)_{∂Ω^ε} on the space with
/// inner product ⟨u, v⟩_ε = uᵀ(A + M_Γ)v. Holds one sparse factorization.
class SteklovOperator {
public:
    explicit SteklovOperator(const AssembledSystem& sys);

    double inner(const Vector& u, const Vector& v) const;
    double norm(const Vector& u) const;
    /// w solving (A + M_Γ) w = M_Γ u.
    Vector apply(const Vector& u) const;

    const AssembledSystem& system() const { return *sys_; }

private:
    const AssembledSystem* sys_;
    SparseMatrix energy_;
    Eigen::SimplicialLDLT<SparseMatrix> factor_;
};

double discrete_inner_product(const AssembledSystem& sys, const Vector& u, const Vector& v);
Vector apply_S(const AssembledSystem& sys, const Vector& u);

/// Solves K u = 0 on the nodes of `matrix` except `fixed`, where u takes
/// `values`. Returns the nodal solution. Works for indefinite K.
Vector solve_with_dirichlet(const SparseMatrix& matrix, const std::vector<int>& fixed, const Vector& values);

/// Coordinate dump "row col value", 0-based, row-major sorted, 17 digits.
void write_matrix_coo(std::ostream& out, const SparseMatrix& m);

/// max |M_ij − M_ji|
double asymmetry(const SparseMatrix& m);

} // namespace cusplab
