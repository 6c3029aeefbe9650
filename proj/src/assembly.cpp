#include "cusplab/assembly.hpp"

#include "cusplab/errors.hpp"

#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace cusplab {

std::array<std::array<double, 3>, 3> element_stiffness(const Point& p, const Point& q, const Point& r)
{
    const std::array<Point, 3> v{p, q, r};
    std::array<double, 3> b{}, c{};
    for (int i = 0; i < 3; ++i) {
        const Point& s = v[(i + 1) % 3];
        const Point& t = v[(i + 2) % 3];
        b[i] = s.y - t.y;
        c[i] = t.x - s.x;
    }
    const double area = 0.5 * ((q.x - p.x) * (r.y - p.y) - (r.x - p.x) * (q.y - p.y));
    std::array<std::array<double, 3>, 3> k{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            k[i][j] = (b[i] * b[j] + c[i] * c[j]) / (4.0 * area);
    return k;
}

std::array<std::array<double, 2>, 2> edge_mass(double length)
{
    return {{{length / 3.0, length / 6.0}, {length / 6.0, length / 3.0}}};
}

SparseMatrix assemble_stiffness(const Mesh& mesh)
{
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(9 * mesh.triangles.size());
    for (const auto& t : mesh.triangles) {
        const auto k = element_stiffness(mesh.nodes[t[0]], mesh.nodes[t[1]], mesh.nodes[t[2]]);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                trips.emplace_back(t[i], t[j], k[i][j]);
    }
    const auto n = static_cast<Eigen::Index>(mesh.nodes.size());
    SparseMatrix a(n, n);
    a.setFromTriplets(trips.begin(), trips.end());
    return a;
}

SparseMatrix assemble_edge_mass(const Mesh& mesh, BoundaryTag tag)
{
    std::vector<Eigen::Triplet<double>> trips;
    for (const auto& e : mesh.edges) {
        if (e.tag != tag)
            continue;
        const Point& p = mesh.nodes[e.a];
        const Point& q = mesh.nodes[e.b];
        const auto m = edge_mass(std::hypot(q.x - p.x, q.y - p.y));
        const std::array<int, 2> ids{e.a, e.b};
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                trips.emplace_back(ids[i], ids[j], m[i][j]);
    }
    const auto n = static_cast<Eigen::Index>(mesh.nodes.size());
    SparseMatrix m(n, n);
    m.setFromTriplets(trips.begin(), trips.end());
    return m;
}

namespace {

SparseMatrix restrict_matrix(const SparseMatrix& full, const std::vector<int>& node_to_free, Eigen::Index n_free)
{
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(static_cast<std::size_t>(full.nonZeros()));
    for (Eigen::Index col = 0; col < full.outerSize(); ++col)
        for (SparseMatrix::InnerIterator it(full, col); it; ++it) {
            const int r = node_to_free[static_cast<std::size_t>(it.row())];
            const int c = node_to_free[static_cast<std::size_t>(it.col())];
            if (r >= 0 && c >= 0)
                trips.emplace_back(r, c, it.value());
        }
    SparseMatrix out(n_free, n_free);
    out.setFromTriplets(trips.begin(), trips.end());
    return out;
}

} // namespace

Vector AssembledSystem::expand(const Vector& free) const
{
    if (static_cast<std::size_t>(free.size()) != free_count())
        throw InvalidArgument("free vector has wrong dimension");
    Vector full = Vector::Zero(static_cast<Eigen::Index>(node_count()));
    for (std::size_t k = 0; k < free_to_node.size(); ++k)
        full[free_to_node[k]] = free[static_cast<Eigen::Index>(k)];
    if (odd_sector)
        for (int c : constrained)
            if (mirror[c] != c && node_to_free[mirror[c]] >= 0)
                full[c] = -full[mirror[c]];
    return full;
}

Vector AssembledSystem::restrict_to_free(const Vector& nodal) const
{
    if (static_cast<std::size_t>(nodal.size()) != node_count())
        throw InvalidArgument("nodal vector has wrong dimension");
    Vector free(static_cast<Eigen::Index>(free_count()));
    for (std::size_t k = 0; k < free_to_node.size(); ++k)
        free[static_cast<Eigen::Index>(k)] = nodal[free_to_node[k]];
    return free;
}

AssembledSystem assemble(const Mesh& mesh, EndCondition end_condition, bool odd_sector)
{
    AssembledSystem sys;
    sys.end_condition = end_condition;
    sys.odd_sector = odd_sector;
    sys.epsilon = mesh.epsilon;

    std::vector<int> constrained;
    if (end_condition == EndCondition::Dirichlet)
        constrained = mesh.tagged_nodes(BoundaryTag::ArtificialEnd);
    if (odd_sector) {
        const auto axis = mesh.tagged_nodes(BoundaryTag::SymmetryPlane);
        if (!mesh.mirror_symmetric || axis.empty())
            throw InvalidArgument("odd sector requires a mirror-symmetric mesh with a tagged symmetry plane");
        sys.mirror = mesh.mirror_map(); // throws when the node set is not symmetric
        constrained.insert(constrained.end(), axis.begin(), axis.end());
        for (std::size_t k = 0; k < mesh.nodes.size(); ++k)
            if (mesh.nodes[k].y < 0.0)
                constrained.push_back(static_cast<int>(k));
    }
    std::sort(constrained.begin(), constrained.end());
    constrained.erase(std::unique(constrained.begin(), constrained.end()), constrained.end());
    sys.constrained = constrained;

    sys.node_to_free.assign(mesh.nodes.size(), -1);
    std::size_t next = 0;
    for (std::size_t k = 0; k < mesh.nodes.size(); ++k) {
        if (std::binary_search(constrained.begin(), constrained.end(), static_cast<int>(k)))
            continue;
        sys.node_to_free[k] = static_cast<int>(next++);
        sys.free_to_node.push_back(static_cast<int>(k));
    }
    const auto n_free = static_cast<Eigen::Index>(next);

    sys.stiffness = restrict_matrix(assemble_stiffness(mesh), sys.node_to_free, n_free);
    SparseMatrix steklov = assemble_edge_mass(mesh, BoundaryTag::Steklov);
    if (end_condition != EndCondition::Dirichlet) {
        SparseMatrix end = assemble_edge_mass(mesh, BoundaryTag::ArtificialEnd);
        if (end_condition == EndCondition::Steklov)
            steklov += end;
        sys.end_mass = restrict_matrix(end, sys.node_to_free, n_free);
    }
    sys.boundary_mass = restrict_matrix(steklov, sys.node_to_free, n_free);
    return sys;
}

SteklovOperator::SteklovOperator(const AssembledSystem& sys)
    : sys_(&sys), energy_(sys.stiffness + sys.boundary_mass)
{
    factor_.compute(energy_);
    if (factor_.info() != Eigen::Success)
        throw NumericalError("factorization of A + M_Gamma failed");
}

double SteklovOperator::inner(const Vector& u, const Vector& v) const
{
    if (u.size() != energy_.rows() || v.size() != energy_.rows())
        throw InvalidArgument("dimension mismatch in discrete inner product");
    return u.dot(energy_ * v);
}

double SteklovOperator::norm(const Vector& u) const { return std::sqrt(std::max(0.0, inner(u, u))); }

Vector SteklovOperator::apply(const Vector& u) const
{
    if (u.size() != energy_.rows())
        throw InvalidArgument("dimension mismatch in apply_S");
    Vector w = factor_.solve(sys_->boundary_mass * u);
    if (factor_.info() != Eigen::Success)
        throw NumericalError("solve with A + M_Gamma failed");
    return w;
}

double discrete_inner_product(const AssembledSystem& sys, const Vector& u, const Vector& v)
{
    const auto n = static_cast<Eigen::Index>(sys.free_count());
    if (u.size() != n || v.size() != n)
        throw InvalidArgument("dimension mismatch in discrete inner product");
    return u.dot(sys.stiffness * v) + u.dot(sys.boundary_mass * v);
}

Vector apply_S(const AssembledSystem& sys, const Vector& u) { return SteklovOperator(sys).apply(u); }

Vector solve_with_dirichlet(const SparseMatrix& matrix, const std::vector<int>& fixed, const Vector& values)
{
    const auto n = matrix.rows();
    if (static_cast<std::size_t>(values.size()) != fixed.size())
        throw InvalidArgument("Dirichlet values do not match the fixed node list");
    std::vector<int> map(static_cast<std::size_t>(n), 0);
    Vector full = Vector::Zero(n);
    for (std::size_t k = 0; k < fixed.size(); ++k) {
        map[static_cast<std::size_t>(fixed[k])] = -1;
        full[fixed[k]] = values[static_cast<Eigen::Index>(k)];
    }
    int next = 0;
    for (auto& m : map)
        if (m == 0)
            m = next++;
        else
            m = -1;
    std::vector<Eigen::Triplet<double>> trips;
    Vector rhs = Vector::Zero(next);
    for (Eigen::Index col = 0; col < matrix.outerSize(); ++col)
        for (SparseMatrix::InnerIterator it(matrix, col); it; ++it) {
            const int r = map[static_cast<std::size_t>(it.row())];
            const int c = map[static_cast<std::size_t>(it.col())];
            if (r < 0)
                continue;
            if (c >= 0)
                trips.emplace_back(r, c, it.value());
            else
                rhs[r] -= it.value() * full[it.col()];
        }
    SparseMatrix k(next, next);
    k.setFromTriplets(trips.begin(), trips.end());
    k.makeCompressed();
    Eigen::SparseLU<SparseMatrix> lu;
    lu.compute(k);
    if (lu.info() != Eigen::Success)
        throw NumericalError("sparse LU factorization failed in Dirichlet solve");
    const Vector x = lu.solve(rhs);
    for (Eigen::Index i = 0; i < n; ++i)
        if (map[static_cast<std::size_t>(i)] >= 0)
            full[i] = x[map[static_cast<std::size_t>(i)]];
    return full;
}

void write_matrix_coo(std::ostream& out, const SparseMatrix& m)
{
    const Eigen::SparseMatrix<double, Eigen::RowMajor> rm = m;
    char buf[64];
    for (Eigen::Index r = 0; r < rm.outerSize(); ++r)
        for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(rm, r); it; ++it) {
            std::snprintf(buf, sizeof buf, " %.17g\n", it.value());
            out << it.row() << ' ' << it.col() << buf;
        }
}

double asymmetry(const SparseMatrix& m)
{
    const SparseMatrix t = m.transpose();
    const SparseMatrix diff = m - t;
    double worst = 0.0;
    for (Eigen::Index col = 0; col < diff.outerSize(); ++col)
        for (SparseMatrix::InnerIterator it(diff, col); it; ++it)
            worst = std::max(worst, std::abs(it.value()));
    return worst;
}

} // namespace cusplab
