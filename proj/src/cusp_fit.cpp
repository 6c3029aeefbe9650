#include "cusplab/cusp_fit.hpp"

#include "cusplab/eigensolve.hpp"
#include "cusplab/errors.hpp"

#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace cusplab {

namespace {

constexpr double pi = std::numbers::pi;

std::vector<double> log_samples(FitWindow w, int samples)
{
    std::vector<double> z;
    const double l1 = std::log(w.z1), l2 = std::log(w.z2);
    for (int j = 0; j < samples; ++j)
        z.push_back(std::exp(l1 + (l2 - l1) * (j + 0.5) / samples));
    return z;
}

void check_window(FitWindow w, int samples)
{
    if (!(w.z1 > 0.0 && w.z2 > w.z1))
        throw InvalidArgument("fit window needs 0 < z1 < z2");
    if (samples < 20)
        throw InvalidArgument("fit needs at least 20 cross-sections");
}

double circle_distance(double a, double b)
{
    const double d = wrap_phase(a - b);
    return std::min(d, 2.0 * pi - d);
}

double theta_of(const WaveFit& f)
{
    // real profiles: b₊/b₋ = (α − iβ)/(α + iβ)
    return wrap_phase(-2.0 * std::atan2(f.beta.real(), f.alpha.real()));
}

double sine_between(const WaveFit& a, const WaveFit& b)
{
    const double x1 = a.alpha.real(), y1 = a.beta.real(), x2 = b.alpha.real(), y2 = b.beta.real();
    const double n = std::hypot(x1, y1) * std::hypot(x2, y2);
    return n > 0.0 ? std::abs(x1 * y2 - x2 * y1) / n : 1.0;
}

} // namespace

double cross_section_mean(const Mesh& mesh, const Vector& nodal, double z)
{
    if (static_cast<std::size_t>(nodal.size()) != mesh.nodes.size())
        throw InvalidArgument("nodal vector does not match the mesh");
    double integral = 0.0, length = 0.0;
    for (const auto& t : mesh.triangles) {
        double ys[2], us[2];
        int hits = 0;
        for (int e = 0; e < 3 && hits < 2; ++e) {
            const int i = t[e], j = t[(e + 1) % 3];
            const Point& p = mesh.nodes[static_cast<std::size_t>(i)];
            const Point& q = mesh.nodes[static_cast<std::size_t>(j)];
            if ((p.x <= z) == (q.x <= z))
                continue;
            const double s = (z - p.x) / (q.x - p.x);
            ys[hits] = p.y + s * (q.y - p.y);
            us[hits] = nodal[i] + s * (nodal[j] - nodal[i]);
            ++hits;
        }
        if (hits == 2) {
            const double len = std::abs(ys[1] - ys[0]);
            integral += 0.5 * len * (us[0] + us[1]);
            length += len;
        }
    }
    return length > 0.0 ? integral / length : std::numeric_limits<double>::quiet_NaN();
}

WaveFit fit_profile(const std::vector<double>& z, const std::vector<std::complex<double>>& means, double lambda,
                    const CuspGeometry& geom, FitWindow window)
{
    if (z.size() != means.size())
        throw InvalidArgument("sample positions and means differ in length");
    if (z.size() < 20)
        throw InvalidArgument("fit needs at least 20 usable cross-sections, got " + std::to_string(z.size()));
    WaveFit f;
    f.lambda = lambda;
    f.window = window;
    f.tau0 = tau0(lambda, geom);
    f.samples = static_cast<int>(z.size());
    f.low_confidence = f.tau0 * std::log(window.z2 / window.z1) < pi;
    const double c = geom.n - 1.5;

    const auto m = static_cast<Eigen::Index>(z.size());
    Eigen::MatrixXd basis(m, 2);
    Eigen::MatrixXd rhs(m, 2);
    for (Eigen::Index j = 0; j < m; ++j) {
        const double zj = z[static_cast<std::size_t>(j)];
        basis(j, 0) = std::cos(f.tau0 * std::log(zj));
        basis(j, 1) = std::sin(f.tau0 * std::log(zj));
        const double env = std::pow(zj, c);
        rhs(j, 0) = env * means[static_cast<std::size_t>(j)].real();
        rhs(j, 1) = env * means[static_cast<std::size_t>(j)].imag();
    }
    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(basis);
    const Eigen::MatrixXd coef = qr.solve(rhs);
    f.alpha = {coef(0, 0), coef(0, 1)};
    f.beta = {coef(1, 0), coef(1, 1)};
    const double norm = rhs.norm();
    f.residual = norm > 0.0 ? (basis * coef - rhs).norm() / norm : 0.0;

    const std::complex<double> i(0.0, 1.0);
    const double w0 = normalization_w0(lambda, geom, W0Variant::Squared);
    f.b_plus = (f.alpha - i * f.beta) / (2.0 * w0);
    f.b_minus = (f.alpha + i * f.beta) / (2.0 * w0);
    const double rms = norm / std::sqrt(static_cast<double>(m)) / w0;
    const double floor = 10.0 * f.residual * rms;
    if (std::abs(f.b_plus) > floor && std::abs(f.b_minus) > floor)
        f.theta_hat = wrap_phase(std::arg(f.b_plus / f.b_minus));
    return f;
}

WaveFit fit_cusp_wave(const Mesh& mesh, const Vector& real, const Vector& imag, double lambda,
                      const CuspGeometry& geom, FitWindow window, int samples)
{
    check_window(window, samples);
    std::vector<double> zs;
    std::vector<std::complex<double>> means;
    for (double z : log_samples(window, samples)) {
        const double re = cross_section_mean(mesh, real, z);
        const double im = imag.size() ? cross_section_mean(mesh, imag, z) : 0.0;
        if (std::isnan(re) || std::isnan(im))
            continue;
        zs.push_back(z);
        means.emplace_back(re, im);
    }
    WaveFit f = fit_profile(zs, means, lambda, geom, window);
    f.epsilon = mesh.epsilon;
    double field = real.cwiseAbs().maxCoeff();
    if (imag.size())
        field = std::max(field, imag.cwiseAbs().maxCoeff());
    double peak = 0.0;
    for (const auto& m : means)
        peak = std::max(peak, std::abs(m));
    f.profile_amplitude = field > 0.0 ? peak / field : 0.0;
    if (f.profile_amplitude < 1e-8)
        f.theta_hat.reset(); // no cusp wave, e.g. an odd trapped mode
    return f;
}

WaveFit fit_cusp_wave(const Mesh& mesh, const Vector& nodal, double lambda, const CuspGeometry& geom,
                      FitWindow window, int samples)
{
    return fit_cusp_wave(mesh, nodal, Vector(), lambda, geom, window, samples);
}

double estimate_theta_from_crossing(double epsilon_star, double lambda_flat, const CuspGeometry& geom)
{
    if (!(epsilon_star > 0.0))
        throw InvalidArgument("crossing epsilon must be positive");
    return wrap_phase(-2.0 * tau0(lambda_flat, geom) * std::log(epsilon_star) - pi);
}

ScatteringResult scattering_phase(double lambda, double delta, FitWindow window, const CuspGeometry& geom,
                                  const MeshOptions& mesh_options, int samples)
{
    tau0(lambda, geom); // domain check
    check_window(window, samples);
    if (!(window.z1 > delta && window.z2 < geom.d))
        throw InvalidArgument("scattering window must lie inside (delta, d)");

    ScatteringResult r;
    r.lambda = lambda;
    for (int attempt = 0;; ++attempt) {
        const Domain dom = make_domain(geom, delta);
        const Mesh mesh = make_mesh(dom, mesh_options);
        const AssembledSystem sys = assemble(mesh, EndCondition::Dirichlet);
        const auto spec = steklov_spectrum(sys, std::min<std::size_t>(boundary_unknowns(sys), 40));
        bool resonant = false;
        for (double l : spec.eigenvalues)
            resonant = resonant || std::abs(l - lambda) <= 1e-3 * lambda;
        if (resonant && attempt < 5) {
            delta *= 0.97;
            continue;
        }
        if (resonant)
            throw NumericalError("scattering solve stays resonant after shifting delta");

        const SparseMatrix k = assemble_stiffness(mesh) - lambda * assemble_edge_mass(mesh, BoundaryTag::Steklov);
        const auto end = mesh.tagged_nodes(BoundaryTag::ArtificialEnd);
        const double half = geom.a * delta * delta;
        Vector g1(static_cast<Eigen::Index>(end.size())), g2(static_cast<Eigen::Index>(end.size()));
        for (std::size_t q = 0; q < end.size(); ++q) {
            const double y = mesh.nodes[static_cast<std::size_t>(end[q])].y / half;
            g1[static_cast<Eigen::Index>(q)] = 1.0;
            g2[static_cast<Eigen::Index>(q)] = y * y;
        }
        r.delta = delta;
        for (const Vector* g : {&g1, &g2}) {
            const Vector u = solve_with_dirichlet(k, end, *g);
            r.fits.push_back(fit_cusp_wave(mesh, u, lambda, geom, window, samples));
        }
        break;
    }
    const double t1 = theta_of(r.fits[0]), t2 = theta_of(r.fits[1]);
    r.theta = t1;
    r.s = r.fits[0].b_plus / r.fits[0].b_minus;
    r.parallelism = sine_between(r.fits[0], r.fits[1]);
    r.theta_spread = circle_distance(t1, t2);
    return r;
}

ScatteringResult reduced_scattering_phase(double lambda, double delta, double d, FitWindow window,
                                          const CuspGeometry& geom, int grid_points, int samples)
{
    tau0(lambda, geom);
    check_window(window, samples);
    if (!(delta > 0.0 && window.z1 > delta && window.z2 < d))
        throw InvalidArgument("reduced scattering window must lie inside (delta, d)");
    if (grid_points < 200)
        throw InvalidArgument("reduced scattering needs at least 200 grid points");
    const double L = spectral_Lambda(lambda, geom);
    const double p = 2.0 * geom.n - 3.0;
    const double s0 = std::log(delta);
    const int N = grid_points;
    const double ds = (std::log(d) - s0) / (N - 1);
    auto q = [&](double j) { return std::exp(p * (s0 + j * ds)); };

    ScatteringResult r;
    r.lambda = lambda;
    r.delta = delta;
    for (int kind = 0; kind < 2; ++kind) {
        // unknowns w_0..w_{N−2}; w_{N−1} = 0
        std::vector<Eigen::Triplet<double>> trips;
        Vector rhs = Vector::Zero(N - 1);
        for (int j = 0; j < N - 1; ++j) {
            if (j == 0) {
                if (kind == 0) {
                    trips.emplace_back(0, 0, 1.0);
                    rhs[0] = 1.0;
                } else {
                    // half cell: q½(w0 − w1)/ds − Λ q0 ds/2 w0 = −q0 w_s(δ), w_s(δ) = 1
                    trips.emplace_back(0, 0, q(0.5) / ds - L * q(0) * 0.5 * ds);
                    trips.emplace_back(0, 1, -q(0.5) / ds);
                    rhs[0] = -q(0);
                }
                continue;
            }
            trips.emplace_back(j, j, (q(j - 0.5) + q(j + 0.5)) / ds - L * q(j) * ds);
            trips.emplace_back(j, j - 1, -q(j - 0.5) / ds);
            if (j + 1 < N - 1)
                trips.emplace_back(j, j + 1, -q(j + 0.5) / ds);
        }
        SparseMatrix m(N - 1, N - 1);
        m.setFromTriplets(trips.begin(), trips.end());
        Eigen::SparseLU<SparseMatrix> lu(m);
        if (lu.info() != Eigen::Success)
            throw NumericalError("reduced scattering solve failed (resonant delta?)");
        const Vector w = lu.solve(rhs);

        std::vector<double> zs;
        std::vector<std::complex<double>> means;
        for (double z : log_samples(window, samples)) {
            // linear interpolation in s
            const double x = (std::log(z) - s0) / ds;
            const auto j = static_cast<int>(std::floor(x));
            const double t = x - j;
            const double a = w[j];
            const double b = j + 1 < N - 1 ? w[j + 1] : 0.0;
            zs.push_back(z);
            means.emplace_back(a + t * (b - a), 0.0);
        }
        WaveFit f = fit_profile(zs, means, lambda, geom, window);
        f.epsilon = delta;
        r.fits.push_back(f);
    }
    const double t1 = theta_of(r.fits[0]), t2 = theta_of(r.fits[1]);
    r.theta = t1;
    r.s = r.fits[0].b_plus / r.fits[0].b_minus;
    r.parallelism = sine_between(r.fits[0], r.fits[1]);
    r.theta_spread = circle_distance(t1, t2);
    return r;
}

} // namespace cusplab
