#include "cusplab/sweep.hpp"

#include "cusplab/asymptotics.hpp"
#include "cusplab/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <numbers>
#include <ostream>
#include <thread>
#include <tuple>

namespace cusplab {

namespace {

constexpr double pi = std::numbers::pi;

Json geometry_json(const CuspGeometry& g)
{
    Json j;
    j["n"] = g.n;
    j["a"] = g.a;
    j["d"] = g.d;
    j["body"] = {{"kind", g.body.kind == BodyKind::HalfDisk ? "half_disk" : "stadium"},
                 {"radius", g.body.radius},
                 {"join_smoothness", g.body.join_smoothness}};
    j["end_condition"] = to_string(g.end_condition);
    j["mirror_symmetric"] = g.mirror_symmetric;
    j["hash"] = g.hash();
    return j;
}

CuspGeometry geometry_from_json(const Json& j)
{
    CuspGeometry g;
    g.n = j.at("n").get<int>();
    g.a = j.at("a").get<double>();
    g.d = j.at("d").get<double>();
    const auto& b = j.at("body");
    g.body.kind = b.at("kind").get<std::string>() == "stadium" ? BodyKind::Stadium : BodyKind::HalfDisk;
    g.body.radius = b.at("radius").get<double>();
    g.body.join_smoothness = b.at("join_smoothness").get<int>();
    g.end_condition = end_condition_from_string(j.at("end_condition").get<std::string>());
    g.mirror_symmetric = j.at("mirror_symmetric").get<bool>();
    return g;
}

Json settings_json(const SweepSettings& s)
{
    Json j;
    j["eps_min"] = s.eps_min;
    j["eps_max"] = s.eps_max;
    j["per_decade"] = s.per_decade;
    j["count"] = s.count;
    j["h"] = s.mesh.h;
    j["grading"] = s.mesh.grading;
    j["max_aspect"] = s.mesh.max_aspect;
    j["min_angle_degrees"] = s.mesh.min_angle_degrees;
    j["odd_sector"] = s.odd_sector;
    return j;
}

SweepSettings settings_from_json(const Json& j)
{
    SweepSettings s;
    s.eps_min = j.at("eps_min").get<double>();
    s.eps_max = j.at("eps_max").get<double>();
    s.per_decade = j.at("per_decade").get<int>();
    s.count = j.at("count").get<int>();
    s.mesh.h = j.at("h").get<double>();
    s.mesh.grading = j.at("grading").get<double>();
    s.mesh.max_aspect = j.at("max_aspect").get<double>();
    s.mesh.min_angle_degrees = j.at("min_angle_degrees").get<double>();
    s.odd_sector = j.at("odd_sector").get<bool>();
    return s;
}

Json point_json(const SweepPoint& p)
{
    Json j;
    j["epsilon"] = p.epsilon;
    j["eigenvalues"] = p.eigenvalues;
    j["residuals"] = p.residuals;
    j["parities"] = p.parities;
    j["mesh_id"] = p.mesh_id;
    j["error"] = p.error;
    return j;
}

SweepPoint point_from_json(const Json& j)
{
    SweepPoint p;
    p.epsilon = j.at("epsilon").get<double>();
    p.eigenvalues = j.at("eigenvalues").get<std::vector<double>>();
    p.residuals = j.at("residuals").get<std::vector<double>>();
    p.parities = j.at("parities").get<std::vector<int>>();
    p.mesh_id = j.at("mesh_id").get<std::string>();
    p.error = j.at("error").get<std::string>();
    return p;
}

std::string signature(const CuspGeometry& geom, const SweepSettings& s, double epsilon)
{
    Json j;
    j["geometry"] = geometry_json(geom);
    j["settings"] = settings_json(s);
    j["epsilon"] = epsilon;
    return dump_json(j);
}

/// f'(x1) from three points with unequal spacing.
double centered(double x0, double x1, double x2, double f0, double f1, double f2)
{
    const double h1 = x1 - x0, h2 = x2 - x1;
    return -f0 * h2 / (h1 * (h1 + h2)) + f1 * (h2 - h1) / (h1 * h2) + f2 * h1 / (h2 * (h1 + h2));
}

void fill_slopes(Branch& b)
{
    auto& p = b.points;
    const std::size_t m = p.size();
    if (m < 2)
        return;
    // points are ordered by decreasing ε; work with increasing ε
    for (std::size_t k = 0; k < m; ++k) {
        if (k == 0)
            p[k].slope = (p[0].lambda - p[1].lambda) / (p[0].epsilon - p[1].epsilon);
        else if (k + 1 == m)
            p[k].slope = (p[k - 1].lambda - p[k].lambda) / (p[k - 1].epsilon - p[k].epsilon);
        else
            p[k].slope = centered(p[k + 1].epsilon, p[k].epsilon, p[k - 1].epsilon, p[k + 1].lambda, p[k].lambda,
                                  p[k - 1].lambda);
    }
}

BranchLabel classify(const Branch& b, const CuspGeometry& geom)
{
    const auto& p = b.points;
    if (p.size() >= 2 && p.front().epsilon / p.back().epsilon >= 10.0 * (1.0 - 1e-12)) {
        double lo = p[0].lambda, hi = p[0].lambda;
        for (const auto& q : p) {
            lo = std::min(lo, q.lambda);
            hi = std::max(hi, q.lambda);
        }
        if (hi - lo <= 1e-3 * std::abs(0.5 * (hi + lo)))
            return BranchLabel::Stable;
    }
    const double ld = threshold(geom);
    int run = 0, best = 0;
    for (const auto& q : p) {
        bool ok = false;
        if (q.lambda > ld && q.epsilon < 1.0) {
            const double r = q.slope / gliding_speed(q.lambda, q.epsilon, geom);
            ok = r >= 0.3 && r <= 3.0;
        }
        run = ok ? run + 1 : 0;
        best = std::max(best, run);
    }
    return best >= 5 ? BranchLabel::Gliding : BranchLabel::Unclassified;
}

double lagrange(const std::vector<double>& x, const std::vector<double>& f, double t)
{
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double w = 1.0;
        for (std::size_t j = 0; j < x.size(); ++j)
            if (j != i)
                w *= (t - x[j]) / (x[i] - x[j]);
        sum += w * f[i];
    }
    return sum;
}

/// Root of λ(s) = target between branch points k and k+1, s = ln ε.
double crossing_log_epsilon(const Branch& b, std::size_t k, double target)
{
    const auto& p = b.points;
    const double s0 = std::log(p[k].epsilon), s1 = std::log(p[k + 1].epsilon);
    const double f0 = p[k].lambda - target, f1 = p[k + 1].lambda - target;
    const double linear = s0 + (s1 - s0) * f0 / (f0 - f1);

    const std::size_t first = k >= 1 ? k - 1 : k;
    const std::size_t last = std::min(p.size() - 1, k + 2);
    if (last - first < 3)
        return linear;
    std::vector<double> xs, fs;
    for (std::size_t i = first; i <= last; ++i) {
        xs.push_back(std::log(p[i].epsilon));
        fs.push_back(p[i].lambda - target);
    }
    // the cubic must be monotone on the bracket
    constexpr int probes = 32;
    double prev = lagrange(xs, fs, s0);
    const bool rising = f1 > f0;
    for (int i = 1; i <= probes; ++i) {
        const double v = lagrange(xs, fs, s0 + (s1 - s0) * i / probes);
        if (rising ? v < prev : v > prev)
            return linear;
        prev = v;
    }
    double lo = s0, hi = s1;
    double flo = f0;
    for (int it = 0; it < 200 && std::abs(hi - lo) > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = lagrange(xs, fs, mid);
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

std::vector<double> SweepResult::epsilons() const
{
    std::vector<double> out;
    for (const auto& p : points)
        out.push_back(p.epsilon);
    return out;
}

std::size_t SweepResult::failures() const
{
    return static_cast<std::size_t>(std::count_if(points.begin(), points.end(), [](const SweepPoint& p) {
        return !p.error.empty();
    }));
}

std::vector<double> sweep_grid(double eps_min, double eps_max, int per_decade)
{
    if (!(eps_min > 0.0 && eps_max >= eps_min) || per_decade < 1)
        throw InvalidArgument("sweep grid needs 0 < eps_min <= eps_max and per_decade >= 1");
    const double span = per_decade * std::log10(eps_max / eps_min);
    const auto n = static_cast<int>(std::floor(span + 1e-9));
    std::vector<double> out;
    for (int i = 0; i <= n; ++i)
        out.push_back(eps_max * std::pow(10.0, -static_cast<double>(i) / per_decade));
    if (std::abs(span - n) < 1e-9)
        out.back() = eps_min;
    return out;
}

SweepPoint solve_point(const CuspGeometry& geom, double epsilon, int count, const MeshOptions& mesh_options,
                       bool odd_sector)
{
    SweepPoint p;
    p.epsilon = epsilon;
    try {
        const Domain dom = make_domain(geom, epsilon);
        const Mesh mesh = make_mesh(dom, mesh_options);
        char buf[160];
        std::snprintf(buf, sizeof buf, "h=%.17g grading=%.17g nodes=%zu triangles=%zu", mesh_options.h,
                      mesh_options.grading, mesh.nodes.size(), mesh.triangles.size());
        p.mesh_id = buf;
        const AssembledSystem sys = assemble(mesh, geom.end_condition, odd_sector);
        const Spectrum s = steklov_spectrum(sys, static_cast<std::size_t>(count));
        p.eigenvalues = s.eigenvalues;
        p.residuals = s.residuals;
        std::vector<int> mirror;
        if (mesh.mirror_symmetric && !odd_sector)
            mirror = mesh.mirror_map();
        for (std::size_t k = 0; k < s.eigenvalues.size(); ++k) {
            int par = odd_sector ? -1 : 0;
            if (!mirror.empty())
                par = parity(s.eigenvectors.col(static_cast<Eigen::Index>(k)), mirror);
            p.parities.push_back(par);
            if (!(s.residuals[k] <= 1e-8))
                p.error = "residual " + format_double(s.residuals[k]) + " of eigenpair " + std::to_string(k + 1) +
                          " exceeds 1e-8";
        }
    } catch (const NumericalError& e) {
        p.error = e.what();
    }
    return p;
}

SweepResult sweep_epsilon(const CuspGeometry& geom, const SweepSettings& settings,
                          const std::optional<std::filesystem::path>& cache_dir,
                          const std::function<void(const std::string&)>& log)
{
    geom.validate();
    if (settings.eps_min < 1e-3 * geom.d * (1.0 - 1e-12))
        throw InvalidArgument("eps_min = " + format_double(settings.eps_min) + " is below 1e-3*d: the end width " +
                              format_double(2.0 * geom.a * settings.eps_min * settings.eps_min) +
                              " is not resolved at feasible mesh sizes");
    if (!(settings.eps_max < geom.d / 4.0))
        throw InvalidArgument("eps_max must be below d/4");
    if (settings.per_decade < 20)
        throw InvalidArgument("crossing interpolation needs at least 20 points per decade");
    if (settings.count < 1)
        throw InvalidArgument("count must be positive");

    SweepResult r;
    r.geom = geom;
    r.settings = settings;
    const auto grid = sweep_grid(settings.eps_min, settings.eps_max, settings.per_decade);
    r.points.resize(grid.size());
    if (cache_dir)
        std::filesystem::create_directories(*cache_dir);

    std::mutex log_mutex;
    auto say = [&](const std::string& msg) {
        if (log) {
            std::lock_guard<std::mutex> lock(log_mutex);
            log(msg);
        }
    };
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < grid.size(); i = next++) {
            const std::string sig = signature(geom, settings, grid[i]);
            std::filesystem::path file;
            if (cache_dir) {
                char name[32];
                std::snprintf(name, sizeof name, "point_%04zu.json", i);
                file = *cache_dir / name;
                if (std::filesystem::exists(file)) {
                    try {
                        const Json j = read_json_file(file);
                        if (j.at("signature").get<std::string>() == sig) {
                            r.points[i] = point_from_json(j.at("point"));
                            say("reused " + file.string());
                            continue;
                        }
                    } catch (const std::exception&) {
                        // stale or partial file: recompute
                    }
                }
            }
            r.points[i] = solve_point(geom, grid[i], settings.count, settings.mesh, settings.odd_sector);
            if (cache_dir) {
                Json j;
                j["signature"] = sig;
                j["point"] = point_json(r.points[i]);
                write_file_atomic(file, dump_json(j));
            }
            say("eps " + format_double(grid[i]) + (r.points[i].error.empty() ? " ok" : " failed: " + r.points[i].error));
        }
    };
    const int jobs = settings.jobs > 0 ? settings.jobs : std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
    std::vector<std::thread> pool;
    for (int t = 1; t < jobs; ++t)
        pool.emplace_back(worker);
    worker();
    for (auto& t : pool)
        t.join();

    if (10 * r.failures() > r.points.size())
        throw NumericalError(std::to_string(r.failures()) + " of " + std::to_string(r.points.size()) +
                             " solves failed; first: " +
                             std::find_if(r.points.begin(), r.points.end(), [](const SweepPoint& p) {
                                 return !p.error.empty();
                             })->error);
    return r;
}

SweepResult sweep_from_function(const CuspGeometry& geom, const std::vector<double>& epsilons,
                                const std::function<std::vector<double>(double)>& spectrum)
{
    SweepResult r;
    r.geom = geom;
    for (std::size_t i = 0; i < epsilons.size(); ++i) {
        if (i > 0 && !(epsilons[i] < epsilons[i - 1]))
            throw InvalidArgument("sweep epsilons must be strictly decreasing");
        SweepPoint p;
        p.epsilon = epsilons[i];
        p.eigenvalues = spectrum(epsilons[i]);
        std::sort(p.eigenvalues.begin(), p.eigenvalues.end());
        p.residuals.assign(p.eigenvalues.size(), 0.0);
        p.parities.assign(p.eigenvalues.size(), 0);
        p.mesh_id = "function";
        r.points.push_back(p);
    }
    if (!epsilons.empty()) {
        r.settings.eps_max = epsilons.front();
        r.settings.eps_min = epsilons.back();
    }
    return r;
}

Json sweep_to_json(const SweepResult& sweep)
{
    Json j;
    j["geometry"] = geometry_json(sweep.geom);
    j["settings"] = settings_json(sweep.settings);
    Json pts = Json::array();
    for (const auto& p : sweep.points)
        pts.push_back(point_json(p));
    j["points"] = pts;
    return j;
}

SweepResult sweep_from_json(const Json& j)
{
    SweepResult r;
    try {
        r.geom = geometry_from_json(j.at("geometry"));
        r.settings = settings_from_json(j.at("settings"));
        for (const auto& p : j.at("points"))
            r.points.push_back(point_from_json(p));
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("malformed sweep document: ") + e.what());
    }
    return r;
}

std::string to_string(BranchLabel label)
{
    switch (label) {
    case BranchLabel::Gliding:
        return "gliding";
    case BranchLabel::Stable:
        return "stable";
    default:
        return "unclassified";
    }
}

std::vector<Branch> track_branches(const SweepResult& sweep, const TrackingOptions& options)
{
    std::vector<Branch> branches;
    std::vector<int> active;
    auto start = [&](int i, int level, int par, bool split) {
        Branch b;
        b.id = static_cast<int>(branches.size());
        b.parity = par;
        b.split_from_ambiguity = split;
        b.points.push_back({sweep.points[static_cast<std::size_t>(i)].epsilon,
                            sweep.points[static_cast<std::size_t>(i)].eigenvalues[static_cast<std::size_t>(level)], i,
                            level, 0.0});
        branches.push_back(b);
        return b.id;
    };

    int prev_step = -1;
    for (int i = 0; i < static_cast<int>(sweep.points.size()); ++i) {
        const auto& pt = sweep.points[static_cast<std::size_t>(i)];
        if (!pt.error.empty())
            continue;
        if (prev_step >= 0) {
            const double ratio = sweep.points[static_cast<std::size_t>(prev_step)].epsilon / pt.epsilon;
            if (ratio > std::pow(10.0, 1.0 / 20.0) * (1.0 + 1e-12))
                throw InvalidArgument("consecutive epsilon ratio exceeds 10^(1/20); branch tracking needs a denser grid");
        }
        const auto n = pt.eigenvalues.size();
        auto par_of = [&](std::size_t k) { return k < pt.parities.size() ? pt.parities[k] : 0; };
        std::vector<char> taken(n, 0);
        std::vector<int> still;

        if (prev_step >= 0) {
            const double s = std::log(pt.epsilon);
            struct Pair {
                double cost;
                int branch;
                int level;
            };
            std::vector<Pair> pairs;
            std::vector<int> ambiguous;
            std::vector<char> contested(n, 0);
            for (int b : active) {
                const auto& pts = branches[static_cast<std::size_t>(b)].points;
                double pred = pts.back().lambda;
                if (pts.size() >= 2) {
                    const auto& p1 = pts[pts.size() - 2];
                    const auto& p2 = pts.back();
                    pred += (p2.lambda - p1.lambda) / (std::log(p2.epsilon) - std::log(p1.epsilon)) *
                            (s - std::log(p2.epsilon));
                }
                double c1 = INFINITY, c2 = INFINITY;
                std::size_t k1 = n, k2 = n;
                for (std::size_t k = 0; k < n; ++k) {
                    if (par_of(k) != branches[static_cast<std::size_t>(b)].parity)
                        continue;
                    const double c = std::abs(pt.eigenvalues[k] - pred);
                    if (c < c1) {
                        c2 = c1;
                        k2 = k1;
                        c1 = c;
                        k1 = k;
                    } else if (c < c2) {
                        c2 = c;
                        k2 = k;
                    }
                    if (c <= options.max_jump * std::max(std::abs(pred), 1e-12))
                        pairs.push_back({c, b, static_cast<int>(k)});
                }
                const double floor = 1e-9 * std::max(1.0, std::abs(pred));
                if (std::isfinite(c2) && c2 > floor && c2 - c1 < options.ambiguity * c2) {
                    ambiguous.push_back(b);
                    branches[static_cast<std::size_t>(b)].split_from_ambiguity = true;
                    contested[k1] = contested[k2] = 1;
                }
            }
            std::sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) {
                return std::tie(x.cost, x.branch, x.level) < std::tie(y.cost, y.branch, y.level);
            });
            std::vector<char> done(branches.size(), 0);
            for (int b : ambiguous)
                done[static_cast<std::size_t>(b)] = 1; // ends here, flagged below
            for (const auto& q : pairs) {
                if (done[static_cast<std::size_t>(q.branch)] || taken[static_cast<std::size_t>(q.level)])
                    continue;
                done[static_cast<std::size_t>(q.branch)] = 1;
                taken[static_cast<std::size_t>(q.level)] = 1;
                branches[static_cast<std::size_t>(q.branch)].points.push_back(
                    {pt.epsilon, pt.eigenvalues[static_cast<std::size_t>(q.level)], i, q.level, 0.0});
                still.push_back(q.branch);
            }
            for (std::size_t k = 0; k < n; ++k)
                if (!taken[k])
                    still.push_back(start(i, static_cast<int>(k), par_of(k), contested[k] != 0));
        } else {
            for (std::size_t k = 0; k < n; ++k)
                still.push_back(start(i, static_cast<int>(k), par_of(k), false));
        }
        std::sort(still.begin(), still.end());
        active = still;
        prev_step = i;
    }
    for (auto& b : branches) {
        fill_slopes(b);
        b.label = classify(b, sweep.geom);
    }
    return branches;
}

CrossingSet detect_crossings(const SweepResult& sweep, const std::vector<Branch>& branches, double lambda_flat,
                             std::optional<int> parity)
{
    CrossingSet c;
    c.lambda_flat = lambda_flat;
    c.predicted_gap = pi / tau0(lambda_flat, sweep.geom);
    std::vector<std::pair<double, int>> found;
    for (const auto& b : branches) {
        if (parity && b.parity != *parity)
            continue;
        for (std::size_t k = 0; k + 1 < b.points.size(); ++k) {
            const bool above0 = b.points[k].lambda > lambda_flat;
            const bool above1 = b.points[k + 1].lambda > lambda_flat;
            if (above0 == above1)
                continue;
            found.emplace_back(std::exp(crossing_log_epsilon(b, k, lambda_flat)), b.id);
        }
    }
    std::sort(found.begin(), found.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
    for (const auto& [e, id] : found) {
        c.crossings.push_back(e);
        c.branch_ids.push_back(id);
    }
    for (std::size_t k = 0; k + 1 < c.crossings.size(); ++k)
        c.log_gaps.push_back(std::log(c.crossings[k]) - std::log(c.crossings[k + 1]));
    return c;
}

std::vector<GlidingRow> gliding_report(const std::vector<Branch>& branches, const CuspGeometry& geom)
{
    std::vector<GlidingRow> rows;
    const double ld = threshold(geom);
    for (const auto& b : branches) {
        if (b.label != BranchLabel::Gliding)
            continue;
        for (const auto& p : b.points) {
            if (!(p.lambda > ld) || !(p.epsilon < 1.0))
                continue;
            GlidingRow r;
            r.branch_id = b.id;
            r.epsilon = p.epsilon;
            r.lambda = p.lambda;
            r.observed = p.slope;
            r.predicted = gliding_speed(p.lambda, p.epsilon, geom);
            r.ratio = r.observed / r.predicted;
            rows.push_back(r);
        }
    }
    return rows;
}

std::vector<TrappedMode> trapped_modes(const CuspGeometry& geom, const MeshOptions& mesh, double epsilon, int count)
{
    if (!geom.mirror_symmetric)
        throw InvalidArgument("trapped modes are computed for mirror-symmetric geometry only");
    auto solve = [&](double eps) {
        const Mesh m = make_mesh(make_domain(geom, eps), mesh);
        return steklov_spectrum(assemble(m, EndCondition::Dirichlet, true), static_cast<std::size_t>(count));
    };
    const Spectrum s1 = solve(epsilon);
    const Spectrum s2 = solve(0.5 * epsilon);
    std::vector<TrappedMode> out;
    for (int p = 0; p < count; ++p) {
        TrappedMode t;
        t.lambda = s1.eigenvalues[static_cast<std::size_t>(p)];
        t.lambda_half = s2.eigenvalues[static_cast<std::size_t>(p)];
        t.relative_change = std::abs(t.lambda - t.lambda_half) / std::abs(t.lambda);
        out.push_back(t);
    }
    return out;
}

std::vector<StableRow> stable_report(const CuspGeometry& geom, double lambda_tr, const std::vector<double>& eps_list,
                                     const MeshOptions& mesh, int count)
{
    std::vector<StableRow> rows;
    for (double eps : eps_list) {
        const SweepPoint p = solve_point(geom, eps, count, mesh, false);
        if (!p.error.empty())
            throw NumericalError("stable report solve failed at eps " + format_double(eps) + ": " + p.error);
        StableRow r;
        r.epsilon = eps;
        std::size_t best = 0;
        for (std::size_t k = 1; k < p.eigenvalues.size(); ++k)
            if (std::abs(p.eigenvalues[k] - lambda_tr) < std::abs(p.eigenvalues[best] - lambda_tr))
                best = k;
        r.nearest = p.eigenvalues[best];
        r.parity = p.parities[best];
        r.gap = std::abs(r.nearest - lambda_tr);
        r.spectral_gap = INFINITY;
        if (best > 0)
            r.spectral_gap = std::min(r.spectral_gap, r.nearest - p.eigenvalues[best - 1]);
        if (best + 1 < p.eigenvalues.size())
            r.spectral_gap = std::min(r.spectral_gap, p.eigenvalues[best + 1] - r.nearest);
        r.flagged = r.gap > 0.5 * r.spectral_gap;
        if (!rows.empty() && rows.back().gap > 0.0 && r.gap > 0.0)
            r.beta_obs = std::log(r.gap / rows.back().gap) / std::log(eps / rows.back().epsilon);
        rows.push_back(r);
    }
    return rows;
}

void write_branch_csv(std::ostream& out, const std::vector<Branch>& branches)
{
    out << "epsilon,lambda,branch_id,parity,slope,label\n";
    for (const auto& b : branches)
        for (const auto& p : b.points)
            out << format_double(p.epsilon) << ',' << format_double(p.lambda) << ',' << b.id << ',' << b.parity << ','
                << format_double(p.slope) << ',' << to_string(b.label) << '\n';
}

void write_gliding_csv(std::ostream& out, const std::vector<GlidingRow>& rows)
{
    out << "branch_id,epsilon,lambda,observed,predicted,ratio\n";
    for (const auto& r : rows)
        out << r.branch_id << ',' << format_double(r.epsilon) << ',' << format_double(r.lambda) << ','
            << format_double(r.observed) << ',' << format_double(r.predicted) << ',' << format_double(r.ratio) << '\n';
}

void write_sweep_svg(std::ostream& out, const SweepResult& sweep, const std::vector<Branch>& branches,
                     double lambda_flat, const std::vector<double>& predicted_crossings)
{
    constexpr double W = 800.0, H = 500.0, M = 50.0;
    double smin = INFINITY, smax = -INFINITY, lmax = 0.0;
    for (const auto& p : sweep.points) {
        smin = std::min(smin, std::log(p.epsilon));
        smax = std::max(smax, std::log(p.epsilon));
        for (double l : p.eigenvalues)
            lmax = std::max(lmax, l);
    }
    if (!(smax > smin)) {
        smin -= 1.0;
        smax += 1.0;
    }
    if (!(lmax > 0.0))
        lmax = 1.0;
    auto X = [&](double s) { return format_double(M + (W - 2 * M) * (s - smin) / (smax - smin)); };
    auto Y = [&](double l) { return format_double(H - M - (H - 2 * M) * l / lmax); };
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"500\" viewBox=\"0 0 800 500\">\n";
    out << "<rect width=\"800\" height=\"500\" fill=\"white\"/>\n";
    out << "<text x=\"400\" y=\"490\" text-anchor=\"middle\" font-size=\"14\">ln epsilon</text>\n";
    out << "<text x=\"14\" y=\"250\" font-size=\"14\" transform=\"rotate(-90 14 250)\">lambda</text>\n";
    for (double e : predicted_crossings) {
        const double s = std::log(e);
        if (s < smin || s > smax)
            continue;
        out << "<line x1=\"" << X(s) << "\" y1=\"" << Y(0) << "\" x2=\"" << X(s) << "\" y2=\"" << Y(lmax)
            << "\" stroke=\"gray\" stroke-dasharray=\"4 4\"/>\n";
    }
    if (lambda_flat > 0.0 && lambda_flat < lmax)
        out << "<line x1=\"" << X(smin) << "\" y1=\"" << Y(lambda_flat) << "\" x2=\"" << X(smax) << "\" y2=\""
            << Y(lambda_flat) << "\" stroke=\"green\" stroke-dasharray=\"2 2\"/>\n";
    for (const auto& b : branches) {
        const char* colour = b.parity > 0 ? "steelblue" : b.parity < 0 ? "firebrick" : "black";
        out << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t k = 0; k < b.points.size(); ++k)
            out << (k ? " " : "") << X(std::log(b.points[k].epsilon)) << ',' << Y(b.points[k].lambda);
        out << "\"/>\n";
    }
    out << "</svg>\n";
}

} // namespace cusplab
