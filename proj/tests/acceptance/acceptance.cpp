// One line per acceptance criterion. `--criterion N` runs a single check,
// `--prepare` only fills the shared sweep cache.
#include "cusplab/asymptotics.hpp"
#include "cusplab/corrector.hpp"
#include "cusplab/cusp_fit.hpp"
#include "cusplab/eigensolve.hpp"
#include "cusplab/reduced_model.hpp"
#include "cusplab/sweep.hpp"

#include <CLI11.hpp>
#include <Eigen/Dense>

#include <algorithm>
#include <numeric>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace cusplab;
namespace fs = std::filesystem;
constexpr double pi = std::numbers::pi;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double median(std::vector<double> v)
{
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double circular_distance(double a, double b) { return std::abs(std::remainder(a - b, 2 * pi)); }

// The canonical sweep: a = d = 1, half-disk body, ε ∈ [1e-3, 1e-1], 30 per decade, h = 0.02.
struct SharedSweep {
    CuspGeometry geom;
    SweepResult sweep;
    std::vector<Branch> branches;
};

const double sweep_h = 0.02;

SweepResult run_sweep(const fs::path& cache, int* reused = nullptr)
{
    CuspGeometry g;
    SweepSettings s;
    s.eps_min = 1e-3;
    s.eps_max = 1e-1;
    s.per_decade = 30;
    s.count = 16;
    s.mesh.h = sweep_h;
    s.jobs = 0;
    return sweep_epsilon(g, s, cache / "points", [&](const std::string& m) {
        if (reused && m.rfind("reused", 0) == 0)
            ++*reused;
    });
}

// Wall time of the last sweep that computed points, written by --prepare.
std::optional<double> recorded_sweep_seconds(const fs::path& cache)
{
    try {
        return std::stod(read_file(cache / "sweep_seconds.txt"));
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

const SharedSweep& shared(const fs::path& cache)
{
    static std::optional<SharedSweep> s;
    if (!s) {
        s.emplace();
        s->sweep = run_sweep(cache);
        s->geom = s->sweep.geom;
        s->branches = track_branches(s->sweep);
    }
    return *s;
}

// ---------------------------------------------------------------- 1

Outcome disk_benchmark(const fs::path&)
{
    const Mesh mesh = make_disk_mesh(1.0, 0.05);
    const Spectrum s = steklov_spectrum(assemble(mesh, EndCondition::Steklov), 7);
    const double expected[7] = {0, 1, 1, 2, 2, 3, 3};
    double worst = 0.0;
    bool ok = std::abs(s.eigenvalues[0]) < 1e-8;
    for (int k = 1; k < 7; ++k)
        worst = std::max(worst, std::abs(s.eigenvalues[k] - expected[k]) / expected[k]);
    ok = ok && worst <= 0.01;
    std::string list;
    for (double v : s.eigenvalues)
        list += fmt("%.5f ", v);
    return {ok, fmt("eigenvalues %s| worst relative error %.2e (limit 1e-2), |lambda_1| %.1e", list.c_str(), worst,
                    std::abs(s.eigenvalues[0]))};
}

// ---------------------------------------------------------------- 2

Outcome reduced_exactness(const fs::path&)
{
    CuspGeometry g;
    double worst = 0.0;
    for (double eps : {1e-1, 1e-2, 1e-3}) {
        const auto exact = reduced_eigenvalues_closed_form(eps, 1.0, g, 5);
        const auto fd = reduced_eigenvalues_fd(eps, 1.0, g, 10000, 5);
        for (int k = 0; k < 5; ++k)
            worst = std::max(worst, std::abs(fd.Lambda_values[k] - exact.Lambda_values[k]) / exact.Lambda_values[k]);
    }
    double period = 0.0;
    for (double lf : {0.5, 1.0, 2.5}) {
        const auto c = reduced_crossings(lf, 1.0, g, 8);
        const double p = pi / tau0(lf, g);
        for (std::size_t k = 0; k + 1 < c.size(); ++k)
            period = std::max(period, std::abs(std::log(c[k]) - std::log(c[k + 1]) - p) / p);
    }
    return {worst <= 1e-6 && period <= 1e-10,
            fmt("FD vs closed form %.2e (limit 1e-6); crossing period error %.2e (limit 1e-10)", worst, period)};
}

// ---------------------------------------------------------------- 3

Outcome blinking(const fs::path& cache)
{
    const auto& s = shared(cache);
    const double lf = 2.0 * threshold(s.geom);
    const auto c = detect_crossings(s.sweep, s.branches, lf);
    int run = 0, best = 0;
    std::string gaps;
    for (double gap : c.log_gaps) {
        gaps += fmt("%.3f ", gap);
        run = std::abs(gap - c.predicted_gap) <= 0.15 * c.predicted_gap ? run + 1 : 0;
        best = std::max(best, run);
    }
    const auto sec = recorded_sweep_seconds(cache);
    const bool fast = sec && *sec < 1800.0;
    return {best >= 3 && fast,
            fmt("lambda_flat %.3f: %zu crossings, gaps [%s] vs %.4f; longest run of matching gaps %d "
                "(need 3; the window spans ln 100 = %.2f); sweep time %s",
                lf, c.crossings.size(), gaps.c_str(), c.predicted_gap, best, std::log(100.0),
                sec ? fmt("%.0f s (limit 1800 s)", *sec).c_str() : "not recorded")};
}

// ---------------------------------------------------------------- 4

Outcome gliding(const fs::path& cache)
{
    const auto& s = shared(cache);
    const double ld = threshold(s.geom);
    std::vector<std::vector<GlidingRow>> per_branch;
    for (const auto& b : s.branches) {
        if (b.label != BranchLabel::Gliding)
            continue;
        std::vector<GlidingRow> rows;
        for (const auto& r : gliding_report({b}, s.geom))
            if (r.lambda >= 1.5 * ld && r.lambda <= 4.0 * ld)
                rows.push_back(r);
        if (rows.size() >= 5)
            per_branch.push_back(rows);
    }
    bool ok = !per_branch.empty();
    int trends = 0;
    std::string detail;
    for (const auto& rows : per_branch) {
        std::vector<double> all, first, second;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            all.push_back(rows[i].ratio);
            (i < rows.size() / 2 ? first : second).push_back(rows[i].ratio);
        }
        const double m = median(all), m1 = median(first), m2 = median(second);
        const bool in_range = m >= 0.5 && m <= 2.0;
        const bool toward = std::abs(m2 - 1.0) < std::abs(m1 - 1.0);
        ok = ok && in_range && toward;
        ++trends;
        double lo = 1e300, hi = -1e300;
        for (double r : all)
            lo = std::min(lo, r), hi = std::max(hi, r);
        detail += fmt("branch %d: %zu pts, median %.3f, halves %.3f -> %.3f, pointwise [%.3f, %.3f]; ",
                      rows.front().branch_id, rows.size(), m, m1, m2, lo, hi);
    }
    return {ok && trends > 0, detail.empty() ? std::string("no gliding branch in the window") : detail};
}

// ---------------------------------------------------------------- 5

Outcome stable(const fs::path& cache)
{
    const auto& s = shared(cache);
    MeshOptions mo;
    mo.h = sweep_h;
    const auto modes = trapped_modes(s.geom, mo, 1e-2, 6);
    // sweep point at ε = 1e-2
    std::size_t idx = 0;
    for (std::size_t i = 0; i < s.sweep.points.size(); ++i)
        if (std::abs(std::log(s.sweep.points[i].epsilon / 1e-2)) < std::abs(std::log(s.sweep.points[idx].epsilon / 1e-2)))
            idx = i;
    const auto& pt = s.sweep.points[idx];
    bool ok = !modes.empty();
    double worst_change = 0.0, worst_match = 0.0;
    int swept = 0;
    for (const auto& m : modes) {
        worst_change = std::max(worst_change, m.relative_change);
        double match = 1e300;
        for (std::size_t k = 0; k < pt.eigenvalues.size(); ++k)
            if (pt.parities[k] == -1)
                match = std::min(match, std::abs(pt.eigenvalues[k] - m.lambda) / m.lambda);
        worst_match = std::max(worst_match, match);
        const auto c = detect_crossings(s.sweep, s.branches, m.lambda, 1);
        swept += !c.crossings.empty();
    }
    ok = ok && worst_change <= 1e-4 && worst_match <= 1e-4 && swept == static_cast<int>(modes.size());
    std::string list;
    for (const auto& m : modes)
        list += fmt("%.5f ", m.lambda);
    return {ok, fmt("trapped %s| change eps 1e-2 -> 5e-3 %.1e (limit 1e-4); match in full spectrum at eps %.4g "
                    "%.1e; even branches crossing %d of %zu",
                    list.c_str(), worst_change, pt.epsilon, worst_match, swept, modes.size())};
}

// ---------------------------------------------------------------- 6

Outcome unimodularity(const fs::path&)
{
    CuspGeometry g;
    const double eps = 1e-2;
    const Mesh mesh = make_mesh(make_domain(g, eps), 0.05);
    const Spectrum s = steklov_spectrum(assemble(mesh, EndCondition::Dirichlet), 30);
    int used = 0;
    double worst = 0.0;
    for (std::size_t k = 0; k < s.eigenvalues.size(); ++k) {
        const double l = s.eigenvalues[k];
        if (!(l > 1.2 * threshold(g)))
            continue;
        const auto f = fit_cusp_wave(mesh, s.eigenvectors.col(static_cast<Eigen::Index>(k)), l, g, {1.5 * eps, 0.3});
        if (!(f.residual < 0.05) || f.profile_amplitude < 1e-8)
            continue;
        ++used;
        const double p = std::abs(f.b_plus), m = std::abs(f.b_minus);
        worst = std::max(worst, std::abs(p - m) / (p + m));
    }
    return {used >= 10 && worst <= 0.05,
            fmt("%d eigenpairs with lambda > 1.2 lambda_dagger and residual < 0.05 (need 10); worst imbalance %.2e "
                "(limit 0.05)",
                used, worst)};
}

// ---------------------------------------------------------------- 7

Outcome phase_cross_validation(const fs::path& cache)
{
    const auto& s = shared(cache);
    const double lf = 10.0 * threshold(s.geom);
    const auto c = detect_crossings(s.sweep, s.branches, lf);
    if (c.crossings.size() < 2)
        return {false, fmt("lambda_flat %.3f: only %zu crossings detected", lf, c.crossings.size())};
    const double theta_cross = estimate_theta_from_crossing(c.crossings.front(), lf, s.geom);
    MeshOptions mo;
    mo.h = sweep_h;
    const auto sc = scattering_phase(lf, 0.01, {0.015, 0.3}, s.geom, mo);
    const double agree = circular_distance(theta_cross, sc.theta);

    // seeded with either phase, predict crossing j+1 from the sequence index nearest crossing j
    double worst = 0.0;
    for (double theta : {theta_cross, sc.theta}) {
        const auto seq = blinking_epsilons(lf, theta, -5, 20, s.geom);
        for (std::size_t j = 0; j + 1 < c.crossings.size(); ++j) {
            std::size_t near = 0;
            for (std::size_t i = 0; i < seq.size(); ++i)
                if (std::abs(std::log(seq[i] / c.crossings[j])) < std::abs(std::log(seq[near] / c.crossings[j])))
                    near = i;
            const double pred = std::log(seq[near + 1]), obs = std::log(c.crossings[j + 1]);
            worst = std::max(worst, std::abs(pred - obs) / std::abs(obs));
        }
    }
    return {agree <= 0.2 && worst <= 0.15,
            fmt("lambda_flat %.3f: theta from crossing %.4f, from scattering %.4f (|s| = %.12f), difference %.4f "
                "(limit 0.2); next-crossing error %.2e of |ln eps| (limit 0.15) over %zu crossings",
                lf, theta_cross, sc.theta, std::abs(sc.s), agree, worst, c.crossings.size())};
}

// ---------------------------------------------------------------- 8

Outcome near_eigenvalue(const fs::path&)
{
    CuspGeometry g;
    const Mesh mesh = make_mesh(make_domain(g, 0.1), 0.1);
    const auto sys = assemble(mesh, EndCondition::Dirichlet);
    // brute force: spectrum of S = (A + M)⁻¹M and the energy norm, dense
    const Eigen::MatrixXd A(sys.stiffness), M(sys.boundary_mass);
    const Eigen::MatrixXd E = A + M;
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(M, E);
    const Eigen::VectorXd nu = es.eigenvalues();
    const Eigen::MatrixXd V = es.eigenvectors();
    const Eigen::LLT<Eigen::MatrixXd> llt(E);

    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> normal(0.0, 1.0);
    const Eigen::Index n = nu.size();
    int violations = 0, tested = 0, library_mismatch = 0;
    for (int t = 0; t < 100; ++t) {
        Vector U(n);
        for (auto& x : U)
            x = normal(rng);
        double Mval;
        if (t % 2 == 0) {
            // perturbed eigenvector of S among the larger points of the spectrum
            const Eigen::Index p = n - 1 - static_cast<Eigen::Index>(unit(rng) * 40);
            U = V.col(p).normalized() + std::pow(10.0, -4.0 * unit(rng)) * U.normalized();
            Mval = nu[p] * (1.0 + 0.02 * normal(rng));
        } else {
            Mval = unit(rng);
        }
        const Vector SU = llt.solve(M * U);
        const Vector r = SU - Mval * U;
        const double delta = std::sqrt(r.dot(E * r)) / std::sqrt(U.dot(E * U));
        const auto lib = near_eigenvalue_check(sys, U, Mval);
        library_mismatch += std::abs(lib.delta - delta) > 1e-8 * (1.0 + delta);
        if (!(delta < Mval))
            continue;
        ++tested;
        double dist = std::abs(Mval); // μ = 0 belongs to the spectrum when interior unknowns exist
        for (Eigen::Index i = 0; i < n; ++i)
            dist = std::min(dist, std::abs(nu[i] - Mval));
        violations += dist > delta * (1.0 + 1e-10);
        violations += !lib.contained;
    }
    return {violations == 0 && tested > 0 && library_mismatch == 0,
            fmt("100 pairs, %d with delta < M, %d violations, %d library/brute-force delta mismatches", tested,
                violations, library_mismatch)};
}

// ---------------------------------------------------------------- 9

Outcome trace_inequality(const fs::path&)
{
    CuspGeometry g;
    std::mt19937_64 rng(77);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> maxima;
    for (double eps : {1e-1, 1e-2, 1e-3}) {
        const Mesh mesh = make_mesh(make_domain(g, eps), 0.05);
        const auto sys = assemble(mesh, EndCondition::Neumann);
        const SparseMatrix E = sys.stiffness + sys.boundary_mass;
        double worst = 0.0;
        for (int t = 0; t < 100; ++t) {
            double c[4][4];
            for (auto& row : c)
                for (auto& x : row)
                    x = normal(rng);
            const double noise = t % 4 == 0 ? 0.1 : 0.0;
            Vector V(sys.free_count());
            for (std::size_t i = 0; i < sys.free_count(); ++i) {
                const Point& p = mesh.nodes[static_cast<std::size_t>(sys.free_to_node[i])];
                double v = 0.0;
                for (int a = 0; a < 4; ++a)
                    for (int b = 0; b < 4; ++b)
                        v += c[a][b] * std::cos(a * pi * p.x / g.z_max()) * std::cos(b * pi * p.y / g.body.radius);
                V[static_cast<Eigen::Index>(i)] = v + noise * normal(rng);
            }
            const double end = std::sqrt(V.dot(sys.end_mass * V));
            const double energy = std::sqrt(V.dot(E * V));
            worst = std::max(worst, end / (std::sqrt(eps) * energy));
        }
        maxima.push_back(worst);
    }
    return {maxima[2] <= 2.0 * maxima[0],
            fmt("max ratio at eps 1e-1, 1e-2, 1e-3: %.4e %.4e %.4e (need last <= 2x first)", maxima[0], maxima[1],
                maxima[2])};
}

// ---------------------------------------------------------------- 10

Outcome boundary_layer(const fs::path&)
{
    CuspGeometry g;
    const double a = g.a, T = 3.0;
    const auto w = solve_W0(0.9, g, Root::Plus);
    double worst = 0.0;
    const int nx = 300, ny = 450;
    const Mesh strip = make_rectangle_mesh(-a, a, 0.0, T, nx, ny);
    const SparseMatrix K = assemble_stiffness(strip);
    const std::vector<std::function<double(double)>> data = {[&](double x) { return w(x).real(); },
                                                             [](double x) { return x; }};
    for (const auto& f : data) {
        const auto y = solve_boundary_layer(f, a, 400, T);
        std::vector<int> fixed;
        std::vector<double> vals;
        for (std::size_t i = 0; i < strip.nodes.size(); ++i) {
            const Point& p = strip.nodes[i];
            if (p.y == 0.0 || p.y == T) {
                fixed.push_back(static_cast<int>(i));
                vals.push_back(p.y == 0.0 ? f(p.x) : y(p.x, T));
            }
        }
        const Vector u = solve_with_dirichlet(K, fixed, Eigen::Map<Vector>(vals.data(), static_cast<Eigen::Index>(vals.size())));
        for (std::size_t i = 0; i < strip.nodes.size(); ++i)
            if (strip.nodes[i].y >= 0.1 * a)
                worst = std::max(worst, std::abs(u[static_cast<Eigen::Index>(i)] - y(strip.nodes[i].x, strip.nodes[i].y)));
    }
    // decay of the cross-sectional L² norm for data with a k = 1 component
    const auto y = solve_boundary_layer([](double x) { return x; }, a, 400, 8.0);
    std::vector<double> xs, ls;
    for (int j = 0; j <= 30; ++j) {
        const double z = a * (1.0 + 3.0 * j / 30.0);
        double s = 0.0;
        for (int i = 0; i <= 200; ++i) {
            const double v = y(-a + 2.0 * a * i / 200, z);
            s += (i == 0 || i == 200 ? 0.5 : 1.0) * v * v;
        }
        xs.push_back(z);
        ls.push_back(0.5 * std::log(s * 2.0 * a / 200));
    }
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
    const double my = std::accumulate(ls.begin(), ls.end(), 0.0) / ls.size();
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ls[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    const double rate = -sxy / sxx, expected = pi / (2.0 * a);
    const double rel = std::abs(rate - expected) / expected;
    return {worst <= 1e-4 && rel <= 0.02,
            fmt("series vs strip FEM max nodal difference %.2e (limit 1e-4, %dx%d cells, depth >= 0.1a); decay rate "
                "%.5f vs pi/(2a) = %.5f, relative %.2e (limit 0.02)",
                worst, nx, ny, rate, expected, rel)};
}

// ---------------------------------------------------------------- 11

Outcome threshold_behaviour(const fs::path& cache)
{
    const auto& s = shared(cache);
    const double ld = threshold(s.geom);
    const double decades = std::log10(s.sweep.points.front().epsilon / s.sweep.points.back().epsilon);
    const auto near = detect_crossings(s.sweep, s.branches, 1.1 * ld);
    const auto far = detect_crossings(s.sweep, s.branches, 4.0 * ld);
    const double rn = near.crossings.size() / decades, rf = far.crossings.size() / decades;
    return {rn < rf, fmt("crossings per decade: %.2f at 1.1 lambda_dagger (period %.2f), %.2f at 4 lambda_dagger "
                         "(period %.2f)",
                         rn, near.predicted_gap, rf, far.predicted_gap)};
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"acceptance checks"};
    int only = 0;
    bool prepare = false;
    std::string cache = "acceptance_cache";
    app.add_option("--criterion", only, "run a single criterion (1-11)")->check(CLI::Range(1, 11));
    app.add_flag("--prepare", prepare, "compute or refresh the shared sweep cache only");
    app.add_option("--cache", cache, "directory of the shared sweep cache");
    CLI11_PARSE(app, argc, argv);

    if (prepare) {
        const auto t0 = std::chrono::steady_clock::now();
        int reused = 0;
        const auto r = run_sweep(cache, &reused);
        const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (reused == 0)
            write_file_atomic(fs::path(cache) / "sweep_seconds.txt", format_double(sec) + "\n");
        std::cout << "sweep: " << r.points.size() << " points, " << reused << " reused, " << r.failures()
                  << " failures, " << sec << " s\n";
        return r.failures() == 0 ? 0 : 1;
    }

    const std::vector<std::pair<const char*, Outcome (*)(const fs::path&)>> checks = {
        {"disk Steklov benchmark", disk_benchmark},
        {"reduced-model exactness", reduced_exactness},
        {"blinking at 2 lambda_dagger", blinking},
        {"gliding speed", gliding},
        {"stable eigenvalues", stable},
        {"unimodularity", unimodularity},
        {"phase cross-validation", phase_cross_validation},
        {"near-eigenvalue lemma", near_eigenvalue},
        {"trace inequality", trace_inequality},
        {"boundary layer", boundary_layer},
        {"threshold behaviour", threshold_behaviour},
    };
    const double limits[11] = {30, 5, 1800, 1800, 1800, 1800, 1800, 1800, 1800, 1800, 1800};
    bool all = true;
    for (std::size_t i = 0; i < checks.size(); ++i) {
        if (only && static_cast<int>(i) + 1 != only)
            continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = checks[i].second(cache);
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (sec > limits[i]) {
            o.pass = false;
            o.detail += fmt("; runtime %.1f s over %.0f s", sec, limits[i]);
        }
        all = all && o.pass;
        std::cout << "criterion " << i + 1 << " (" << checks[i].first << "): " << (o.pass ? "PASS" : "FAIL") << " ["
                  << fmt("%.1f s", sec) << "] " << o.detail << std::endl;
    }
    return all ? 0 : 1;
}
