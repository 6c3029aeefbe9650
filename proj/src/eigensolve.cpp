#include "cusplab/eigensolve.hpp"

#include "cusplab/errors.hpp"


#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

namespace cusplab {

namespace {

using Eigen::Index;
using Eigen::MatrixXd;

/// The boundary pencil in standard form C = R⁻¹ S R⁻ᵀ with M_bb = R Rᵀ.
struct ReducedPencil {
    std::vector<int> boundary; // free indices in the support of M_Γ
    std::vector<int> interior;
    MatrixXd standard;         // C
    Eigen::LLT<MatrixXd> mass; // M_bb = R Rᵀ
    SparseMatrix aib;          // A_ib
    std::unique_ptr<Eigen::SimplicialLDLT<SparseMatrix>> interior_factor; // A_ii
};

std::vector<int> support_of(const SparseMatrix& m)
{
    std::vector<char> hit(static_cast<std::size_t>(m.rows()), 0);
    for (Index col = 0; col < m.outerSize(); ++col)
        for (SparseMatrix::InnerIterator it(m, col); it; ++it)
            if (it.row() == it.col() && it.value() > 0.0)
                hit[static_cast<std::size_t>(it.row())] = 1;
    std::vector<int> out;
    for (std::size_t k = 0; k < hit.size(); ++k)
        if (hit[k])
            out.push_back(static_cast<int>(k));
    return out;
}

SparseMatrix submatrix(const SparseMatrix& m, const std::vector<int>& rows, const std::vector<int>& cols)
{
    std::vector<int> rmap(static_cast<std::size_t>(m.rows()), -1), cmap(static_cast<std::size_t>(m.cols()), -1);
    for (std::size_t k = 0; k < rows.size(); ++k)
        rmap[static_cast<std::size_t>(rows[k])] = static_cast<int>(k);
    for (std::size_t k = 0; k < cols.size(); ++k)
        cmap[static_cast<std::size_t>(cols[k])] = static_cast<int>(k);
    std::vector<Eigen::Triplet<double>> trips;
    for (Index col = 0; col < m.outerSize(); ++col) {
        const int c = cmap[static_cast<std::size_t>(col)];
        if (c < 0)
            continue;
        for (SparseMatrix::InnerIterator it(m, col); it; ++it) {
            const int r = rmap[static_cast<std::size_t>(it.row())];
            if (r >= 0)
                trips.emplace_back(r, c, it.value());
        }
    }
    SparseMatrix out(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
    out.setFromTriplets(trips.begin(), trips.end());
    return out;
}

ReducedPencil reduce(const AssembledSystem& sys)
{
    ReducedPencil p;
    const auto n = static_cast<int>(sys.free_count());
    p.boundary = support_of(sys.boundary_mass);
    {
        std::vector<char> is_b(static_cast<std::size_t>(n), 0);
        for (int b : p.boundary)
            is_b[static_cast<std::size_t>(b)] = 1;
        for (int k = 0; k < n; ++k)
            if (!is_b[static_cast<std::size_t>(k)])
                p.interior.push_back(k);
    }
    const auto nb = static_cast<Index>(p.boundary.size());
    const auto ni = static_cast<Index>(p.interior.size());
    if (nb == 0)
        throw NumericalError("the system has no Steklov boundary unknowns");

    const MatrixXd mbb = MatrixXd(submatrix(sys.boundary_mass, p.boundary, p.boundary));
    p.mass.compute(mbb);
    if (p.mass.info() != Eigen::Success)
        throw NumericalError("boundary mass block is not positive definite");

    if (ni == 0) {
        // plain reduction: C = R⁻¹ A_bb R⁻ᵀ
        const MatrixXd abb = MatrixXd(submatrix(sys.stiffness, p.boundary, p.boundary));
        MatrixXd k = p.mass.matrixL().solve(abb);
        p.standard = p.mass.matrixL().solve(k.transpose());
        return p;
    }

    // Schur complement S = A_bb − A_bi A_ii⁻¹ A_ib, a block of columns at a time.
    const SparseMatrix aii = submatrix(sys.stiffness, p.interior, p.interior);
    p.aib = submatrix(sys.stiffness, p.interior, p.boundary);
    const SparseMatrix abi = p.aib.transpose();
    p.interior_factor = std::make_unique<Eigen::SimplicialLDLT<SparseMatrix>>(aii);
    if (p.interior_factor->info() != Eigen::Success)
        throw NumericalError("factorization of the interior stiffness block failed (broken mesh or constraints?)");
    if (!(p.interior_factor->vectorD().minCoeff() > 0.0))
        throw NumericalError("interior stiffness block is not positive definite");

    MatrixXd schur = MatrixXd(submatrix(sys.stiffness, p.boundary, p.boundary));
    constexpr Index block = 64;
    for (Index c0 = 0; c0 < nb; c0 += block) {
        const Index width = std::min(block, nb - c0);
        const MatrixXd rhs = MatrixXd(p.aib.middleCols(c0, width));
        const MatrixXd x = p.interior_factor->solve(rhs);
        schur.middleCols(c0, width) -= abi * x;
    }
    schur = 0.5 * (schur + schur.transpose()).eval();

    MatrixXd k = p.mass.matrixL().solve(schur);
    p.standard = p.mass.matrixL().solve(k.transpose());
    return p;
}

/// Gaussian elimination with partial pivoting for T − shift·I, T symmetric
/// tridiagonal, stored so that repeated solves are cheap.
class ShiftedTridiagonal {
public:
    ShiftedTridiagonal(const Vector& diag, const Vector& off, double shift, double tiny)
        : d_(diag.array() - shift), dl_(off), du_(off), du2_(Vector::Zero(std::max<Index>(0, off.size() - 1))),
          swap_(static_cast<std::size_t>(off.size()), false)
    {
        const Index n = d_.size();
        for (Index i = 0; i + 1 < n; ++i) {
            if (std::abs(d_[i]) >= std::abs(dl_[i])) {
                if (d_[i] == 0.0)
                    d_[i] = tiny;
                const double fact = dl_[i] / d_[i];
                dl_[i] = fact;
                d_[i + 1] -= fact * du_[i];
            } else {
                const double fact = d_[i] / dl_[i];
                d_[i] = dl_[i];
                dl_[i] = fact;
                const double temp = du_[i];
                du_[i] = d_[i + 1];
                d_[i + 1] = temp - fact * d_[i + 1];
                if (i + 2 < n) {
                    du2_[i] = du_[i + 1];
                    du_[i + 1] = -fact * du_[i + 1];
                }
                swap_[static_cast<std::size_t>(i)] = true;
            }
        }
        if (d_[n - 1] == 0.0)
            d_[n - 1] = tiny;
    }

    void solve(Vector& b) const
    {
        const Index n = d_.size();
        for (Index i = 0; i + 1 < n; ++i) {
            if (swap_[static_cast<std::size_t>(i)]) {
                const double temp = b[i] - dl_[i] * b[i + 1];
                b[i] = b[i + 1];
                b[i + 1] = temp;
            } else {
                b[i + 1] -= dl_[i] * b[i];
            }
        }
        b[n - 1] /= d_[n - 1];
        if (n > 1)
            b[n - 2] = (b[n - 2] - du_[n - 2] * b[n - 1]) / d_[n - 2];
        for (Index i = n - 3; i >= 0; --i)
            b[i] = (b[i] - du_[i] * b[i + 1] - du2_[i] * b[i + 2]) / d_[i];
    }

private:
    Vector d_, dl_, du_, du2_;
    std::vector<bool> swap_;
};

/// Number of eigenvalues of the tridiagonal matrix below x (Sturm count).
Index count_below(const Vector& diag, const Vector& off, double x, double pivmin)
{
    Index count = 0;
    double q = diag[0] - x;
    if (std::abs(q) < pivmin)
        q = -pivmin;
    if (q < 0.0)
        ++count;
    for (Index i = 1; i < diag.size(); ++i) {
        q = diag[i] - x - off[i - 1] * off[i - 1] / q;
        if (std::abs(q) < pivmin)
            q = -pivmin;
        if (q < 0.0)
            ++count;
    }
    return count;
}

double gershgorin_scale(const Vector& diag, const Vector& off, double& lo, double& hi)
{
    const Index n = diag.size();
    lo = std::numeric_limits<double>::infinity();
    hi = -lo;
    for (Index i = 0; i < n; ++i) {
        const double r = (i > 0 ? std::abs(off[i - 1]) : 0.0) + (i + 1 < n ? std::abs(off[i]) : 0.0);
        lo = std::min(lo, diag[i] - r);
        hi = std::max(hi, diag[i] + r);
    }
    return std::max(std::abs(lo), std::abs(hi));
}

/// Lowest `count` eigenpairs of a dense symmetric matrix: Householder
/// tridiagonalization, Sturm bisection for the eigenvalues, inverse
/// iteration (reorthogonalized within clusters) for the vectors.
void lowest_eigenpairs(const MatrixXd& c, int count, Vector& values, MatrixXd& vectors)
{
    const Index n = c.rows();
    Eigen::Tridiagonalization<MatrixXd> tri(c);
    const Vector diag = tri.diagonal();
    const Vector off = tri.subDiagonal();
    const auto ev = tridiagonal_eigenvalues(diag, off, count);
    values = Eigen::Map<const Vector>(ev.data(), count);
    double lo = 0.0, hi = 0.0;
    const double scale = gershgorin_scale(diag, off, lo, hi);
    const double ulp = std::numeric_limits<double>::epsilon();

    const double cluster = 1e-3 * scale;
    const double tiny = ulp * scale;
    MatrixXd y(n, count);
    for (int k = 0; k < count; ++k) {
        const ShiftedTridiagonal lu(diag, off, values[k], tiny);
        Vector v(n);
        for (Index i = 0; i < n; ++i)
            v[i] = 1.0 + 0.5 * std::sin(0.7 * static_cast<double>(i + 1) * (k + 1) + 0.3);
        int first = k;
        while (first > 0 && values[k] - values[first - 1] < cluster)
            --first;
        for (int it = 0; it < 4; ++it) {
            v.normalize();
            lu.solve(v);
            for (int j = first; j < k; ++j)
                v -= y.col(j).dot(v) * y.col(j);
        }
        y.col(k) = v.normalized();
    }
    vectors = tri.matrixQ() * y;
}

void normalize_sign(Eigen::Ref<Vector> v)
{
    Index best = 0;
    double mag = -1.0;
    for (Index k = 0; k < v.size(); ++k)
        if (std::abs(v[k]) > mag) {
            mag = std::abs(v[k]);
            best = k;
        }
    if (v[best] < 0.0)
        v = -v;
}

} // namespace

std::vector<double> Spectrum::mu_values() const
{
    std::vector<double> mu;
    for (double l : eigenvalues)
        mu.push_back(1.0 / (1.0 + l));
    return mu;
}

std::vector<double> tridiagonal_eigenvalues(const Vector& diag, const Vector& off, int count)
{
    const Index n = diag.size();
    if (n == 0 || off.size() != std::max<Index>(0, n - 1))
        throw InvalidArgument("tridiagonal matrix has inconsistent dimensions");
    if (count < 0 || count > n)
        throw InvalidArgument("requested more eigenvalues than the matrix dimension");
    double lo = 0.0, hi = 0.0;
    const double scale = gershgorin_scale(diag, off, lo, hi);
    const double ulp = std::numeric_limits<double>::epsilon();
    const double pivmin = std::numeric_limits<double>::min() * std::max(1.0, off.size() ? off.cwiseAbs2().maxCoeff() : 1.0);
    lo -= 2.0 * ulp * scale + pivmin;
    hi += 2.0 * ulp * scale + pivmin;

    std::vector<double> values(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        double a = k > 0 ? values[static_cast<std::size_t>(k - 1)] - 4.0 * ulp * scale : lo;
        double b = hi;
        while (b - a > 2.0 * ulp * (std::abs(a) + std::abs(b)) + pivmin) {
            const double mid = 0.5 * (a + b);
            if (mid <= a || mid >= b)
                break;
            if (count_below(diag, off, mid, pivmin) > k)
                b = mid;
            else
                a = mid;
        }
        values[static_cast<std::size_t>(k)] = 0.5 * (a + b);
    }
    return values;
}

std::size_t boundary_unknowns(const AssembledSystem& sys) { return support_of(sys.boundary_mass).size(); }

Spectrum steklov_spectrum(const AssembledSystem& sys, std::size_t count)
{
    if (count == 0)
        throw InvalidArgument("eigenvalue count must be positive");
    ReducedPencil p = reduce(sys);
    const auto nb = static_cast<Index>(p.boundary.size());
    if (static_cast<Index>(count) > nb)
        throw InvalidArgument("requested " + std::to_string(count) + " eigenvalues but only " +
                              std::to_string(nb) + " boundary unknowns exist");
    Vector values;
    MatrixXd z;
    lowest_eigenpairs(p.standard.selfadjointView<Eigen::Lower>(), static_cast<int>(count), values, z);
    const MatrixXd wb = p.mass.matrixU().solve(z); // M_bb-orthonormal boundary traces

    const auto n = static_cast<Index>(sys.free_count());
    MatrixXd w = MatrixXd::Zero(n, static_cast<Index>(count));
    for (Index q = 0; q < nb; ++q)
        w.row(p.boundary[static_cast<std::size_t>(q)]) = wb.row(q);
    if (!p.interior.empty()) {
        const MatrixXd rhs = -(p.aib * wb);
        const MatrixXd wi = p.interior_factor->solve(rhs);
        for (std::size_t q = 0; q < p.interior.size(); ++q)
            w.row(p.interior[q]) = wi.row(static_cast<Index>(q));
    }

    Spectrum s;
    s.epsilon = sys.epsilon;
    s.end_condition = sys.end_condition;
    s.odd_sector = sys.odd_sector;
    s.eigenvectors.resize(static_cast<Index>(sys.node_count()), static_cast<Index>(count));
    const SparseMatrix energy = sys.stiffness + sys.boundary_mass;
    for (Index k = 0; k < static_cast<Index>(count); ++k) {
        Vector col = w.col(k);
        Vector nodal = sys.expand(col);
        if (sys.odd_sector)
            nodal /= std::sqrt(2.0); // unit M_Γ-norm over both halves
        normalize_sign(nodal);
        col = sys.restrict_to_free(nodal);
        const double lambda = values[k];
        const Vector r = sys.stiffness * col - lambda * (sys.boundary_mass * col);
        const double denom = (energy * col).norm();
        s.eigenvalues.push_back(lambda);
        s.residuals.push_back(denom > 0.0 ? r.norm() / denom : 0.0);
        s.eigenvectors.col(k) = nodal;
    }
    return s;
}

std::vector<double> full_mu_spectrum(const AssembledSystem& sys)
{
    ReducedPencil p = reduce(sys);
    const Eigen::SelfAdjointEigenSolver<MatrixXd> solver(p.standard, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw NumericalError("dense symmetric eigensolver did not converge");
    const Vector& values = solver.eigenvalues();
    std::vector<double> mu;
    if (!p.interior.empty())
        mu.push_back(0.0);
    for (Index k = values.size() - 1; k >= 0; --k)
        mu.push_back(1.0 / (1.0 + std::max(values[k], 0.0)));
    return mu;
}

NearEigenvalueCheck near_eigenvalue_check(const SteklovOperator& op, const std::vector<double>& mu_spectrum,
                                          const Vector& U, double M)
{
    if (!(M > 0.0 && M < 1.0))
        throw InvalidArgument("M must lie in (0, 1)");
    const double norm = op.norm(U);
    if (!(norm > 0.0))
        throw InvalidArgument("quasimode U has zero norm");
    const Vector u = U / norm;
    const Vector defect = op.apply(u) - M * u;

    NearEigenvalueCheck out;
    out.delta = op.norm(defect);
    out.hypothesis_holds = out.delta < M;
    if (mu_spectrum.empty())
        return out;
    auto it = std::lower_bound(mu_spectrum.begin(), mu_spectrum.end(), M);
    double best = std::numeric_limits<double>::infinity();
    if (it != mu_spectrum.end())
        best = *it;
    if (it != mu_spectrum.begin() && std::abs(*(it - 1) - M) < std::abs(best - M))
        best = *(it - 1);
    out.matched_mu = best;
    // tolerance for rounding in δ and μ_p
    const double slack = 1e-10 * (1.0 + out.delta);
    out.contained = std::abs(M - best) <= out.delta + slack;
    if (out.hypothesis_holds && out.delta / M <= 0.5 && best > 0.0) {
        const double lambda_p = 1.0 / best - 1.0;
        out.lambda_bound = std::abs(1.0 + lambda_p - 1.0 / M) <= 2.0 * out.delta / (M * M) + slack / (M * M);
    }
    return out;
}

NearEigenvalueCheck near_eigenvalue_check(const AssembledSystem& sys, const Vector& U, double M)
{
    const SteklovOperator op(sys);
    return near_eigenvalue_check(op, full_mu_spectrum(sys), U, M);
}

int parity(const Eigen::VectorXd& nodal, const std::vector<int>& mirror, double tol)
{
    if (static_cast<std::size_t>(nodal.size()) != mirror.size())
        throw InvalidArgument("mirror map does not match vector size");
    Vector reflected(nodal.size());
    for (Index k = 0; k < nodal.size(); ++k)
        reflected[k] = nodal[mirror[static_cast<std::size_t>(k)]];
    const double scale = nodal.norm();
    if (scale == 0.0)
        return 0;
    if ((nodal - reflected).norm() <= tol * scale)
        return 1;
    if ((nodal + reflected).norm() <= tol * scale)
        return -1;
    return 0;
}

} // namespace cusplab
