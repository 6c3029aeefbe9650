#include "cusplab/eigensolve.hpp"

#include <doctest.h>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>

using namespace cusplab;

namespace {

// Brute force: the dense pencil M_Γ v = ν (A + M_Γ) v has ν = 1/(1 + λ) on
// the finite spectrum and ν = 0 on the interior unknowns.
std::vector<double> dense_lambdas(const AssembledSystem& sys)
{
    const Eigen::MatrixXd A(sys.stiffness), M(sys.boundary_mass);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(M, A + M, Eigen::EigenvaluesOnly);
    std::vector<double> out;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        if (es.eigenvalues()[i] > 1e-12)
            out.push_back(1.0 / es.eigenvalues()[i] - 1.0);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_CASE("spectrum matches the dense pencil for every end condition")
{
    const Mesh mesh = make_mesh(make_domain(CuspGeometry{}, 0.1), 0.15);
    for (auto end : {EndCondition::Dirichlet, EndCondition::Neumann, EndCondition::Steklov}) {
        for (bool odd : {false, true}) {
            const auto sys = assemble(mesh, end, odd);
            const auto ref = dense_lambdas(sys);
            const Spectrum s = steklov_spectrum(sys, 10);
            REQUIRE(s.eigenvalues.size() == 10);
            CHECK(ref.size() == boundary_unknowns(sys));
            for (std::size_t k = 0; k < 10; ++k) {
                CHECK(s.eigenvalues[k] == doctest::Approx(ref[k]).epsilon(1e-9).scale(1.0));
                CHECK(s.residuals[k] < 1e-9);
            }
        }
    }
}

TEST_CASE("eigenvectors are M-orthonormal and satisfy the pencil")
{
    const Mesh mesh = make_mesh(make_domain(CuspGeometry{}, 0.05), 0.1);
    const auto sys = assemble(mesh, EndCondition::Dirichlet);
    const Spectrum s = steklov_spectrum(sys, 8);
    Eigen::MatrixXd W(sys.free_count(), 8);
    for (int k = 0; k < 8; ++k)
        W.col(k) = sys.restrict_to_free(s.eigenvectors.col(k));
    const Eigen::MatrixXd G = W.transpose() * (sys.boundary_mass * W);
    CHECK((G - Eigen::MatrixXd::Identity(8, 8)).cwiseAbs().maxCoeff() < 1e-9);
    for (int k = 0; k < 8; ++k) {
        const Vector r = sys.stiffness * W.col(k) - s.eigenvalues[k] * (sys.boundary_mass * W.col(k));
        CHECK(r.norm() < 1e-8 * (1.0 + s.eigenvalues[k]));
    }
}

TEST_CASE("unit disk against separation of variables")
{
    const Mesh mesh = make_disk_mesh(1.0, 0.1);
    const auto sys = assemble(mesh, EndCondition::Steklov);
    const Spectrum s = steklov_spectrum(sys, 7);
    const double expected[7] = {0, 1, 1, 2, 2, 3, 3};
    CHECK(std::abs(s.eigenvalues[0]) < 1e-9);
    for (int k = 1; k < 7; ++k)
        CHECK(s.eigenvalues[k] == doctest::Approx(expected[k]).epsilon(0.03));
}

TEST_CASE("parity of eigenvectors on the symmetric domain")
{
    const Mesh mesh = make_mesh(make_domain(CuspGeometry{}, 0.05), 0.1);
    const auto mirror = mesh.mirror_map();
    const auto full = steklov_spectrum(assemble(mesh, EndCondition::Dirichlet), 10);
    const auto odd = steklov_spectrum(assemble(mesh, EndCondition::Dirichlet, true), 3);
    for (int k = 0; k < 10; ++k)
        CHECK(std::abs(parity(full.eigenvectors.col(k), mirror)) == 1);
    // every odd-sector eigenvalue is an odd eigenvalue of the full problem
    for (double l : odd.eigenvalues) {
        bool found = false;
        for (int k = 0; k < 10; ++k)
            if (std::abs(full.eigenvalues[k] - l) < 1e-8 * (1 + l)) {
                found = true;
                CHECK(parity(full.eigenvectors.col(k), mirror) == -1);
            }
        CHECK(found);
    }
    // odd modes are simple and extend to unit-norm odd vectors
    for (int k = 1; k < 3; ++k)
        CHECK(odd.eigenvalues[k] - odd.eigenvalues[k - 1] > 1e-3);
    const auto sys = assemble(mesh, EndCondition::Dirichlet);
    for (int k = 0; k < 3; ++k) {
        CHECK(parity(odd.eigenvectors.col(k), mirror) == -1);
        const Vector v = sys.restrict_to_free(odd.eigenvectors.col(k));
        CHECK(v.dot(sys.boundary_mass * v) == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("tridiagonal bisection matches a dense solver")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const int n = 60;
    Vector diag(n), off(n - 1);
    for (int i = 0; i < n; ++i)
        diag[i] = u(rng);
    for (int i = 0; i < n - 1; ++i)
        off[i] = u(rng);
    off[20] = 0.0; // split matrix
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(n, n);
    T.diagonal() = diag;
    T.diagonal(1) = off;
    T.diagonal(-1) = off;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    const auto ev = tridiagonal_eigenvalues(diag, off, 15);
    REQUIRE(ev.size() == 15);
    for (int k = 0; k < 15; ++k)
        CHECK(ev[k] == doctest::Approx(es.eigenvalues()[k]).epsilon(1e-12).scale(1.0));
}

TEST_CASE("near-eigenvalue check against the full spectrum")
{
    const Mesh mesh = make_mesh(make_domain(CuspGeometry{}, 0.1), 0.15);
    const auto sys = assemble(mesh, EndCondition::Dirichlet);
    const auto mu = full_mu_spectrum(sys);
    const Spectrum s = steklov_spectrum(sys, 3);
    CHECK(mu.front() == 0.0);

    // an exact eigenvector is its own quasimode
    const Vector w = sys.restrict_to_free(s.eigenvectors.col(2));
    const double m = 1.0 / (1.0 + s.eigenvalues[2]);
    const auto exact = near_eigenvalue_check(sys, w, m);
    CHECK(exact.delta < 1e-9);
    CHECK(exact.hypothesis_holds);
    CHECK(exact.contained);
    REQUIRE(exact.lambda_bound.has_value());
    CHECK(*exact.lambda_bound);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int t = 0; t < 20; ++t) {
        Vector U(sys.free_count());
        for (auto& x : U)
            x = u(rng);
        U += 30.0 * w;
        const double M = m * (1.0 + 0.05 * u(rng));
        const auto r = near_eigenvalue_check(sys, U, M);
        if (r.hypothesis_holds) {
            double dist = 1e300;
            for (double v : mu)
                dist = std::min(dist, std::abs(v - M));
            CHECK(dist <= r.delta * (1 + 1e-12));
            CHECK(r.contained);
        }
    }
}
