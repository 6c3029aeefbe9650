#include "cusplab/cli.hpp"

#include "cusplab/asymptotics.hpp"
#include "cusplab/corrector.hpp"
#include "cusplab/cusp_fit.hpp"
#include "cusplab/eigensolve.hpp"
#include "cusplab/errors.hpp"
#include "cusplab/reduced_model.hpp"
#include "cusplab/sweep.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

namespace cusplab {

namespace {

constexpr double pi = std::numbers::pi;

template <class T>
void opt_to_json(Json& j, const char* key, const std::optional<T>& v)
{
    if (v)
        j[key] = *v;
    else
        j[key] = nullptr;
}

template <class T>
void read_key(const Json& j, const char* key, T& target)
{
    target = j.get<T>();
    (void)key;
}

template <class T>
void read_key(const Json& j, const char* key, std::optional<T>& target)
{
    (void)key;
    if (j.is_null())
        target.reset();
    else
        target = j.get<T>();
}

double lambda_flat_of(const RunConfig& c) { return c.lambda_flat ? *c.lambda_flat : 2.0 * threshold(c.geom); }

std::filesystem::path out_dir(const RunConfig& c)
{
    std::filesystem::path p(c.out);
    std::error_code ec;
    std::filesystem::create_directories(p, ec);
    if (ec)
        throw IoError("cannot create output directory " + p.string() + ": " + ec.message());
    return p;
}

void write_text(const std::filesystem::path& path, const std::string& text) { write_file_atomic(path, text); }

MeshOptions mesh_options(const RunConfig& c)
{
    if (!(c.h > 0.0))
        throw InvalidArgument("mesh size h must be positive");
    if (!(c.grading >= 0.0))
        throw InvalidArgument("grading must be non-negative");
    MeshOptions m;
    m.h = c.h;
    m.grading = c.grading;
    return m;
}

SweepSettings sweep_settings(const RunConfig& c)
{
    SweepSettings s;
    s.eps_min = c.eps_min;
    s.eps_max = c.eps_max;
    s.per_decade = c.per_decade;
    s.count = c.count;
    s.mesh = mesh_options(c);
    s.odd_sector = c.odd_sector;
    s.jobs = c.jobs;
    return s;
}

// ---------------------------------------------------------------- predict

int cmd_predict(const RunConfig& c, std::ostream& out)
{
    const auto& g = c.geom;
    Json j;
    j["geometry_hash"] = g.hash();
    j["n"] = g.n;
    j["a"] = g.a;
    j["d"] = g.d;
    j["omega_measure"] = g.omega_measure();
    j["omega_boundary_measure"] = g.omega_boundary_measure();
    j["lambda_dagger"] = threshold(g);
    j["w0_at_threshold"] = normalization_w0(threshold(g), g);
    const double lf = lambda_flat_of(c);
    j["lambda_flat"] = lf;
    if (lf > threshold(g)) {
        const double t = tau0(lf, g);
        j["tau0"] = t;
        j["Lambda"] = spectral_Lambda(lf, g);
        j["period_log_epsilon"] = pi / t;
        j["neumann_phase"] = neumann_phase(lf, g);
        try {
            j["w0"] = normalization_w0(lf, g, W0Variant::AsPrinted);
        } catch (const DomainError&) {
            j["w0"] = nullptr;
        }
        j["w0_squared_variant"] = normalization_w0(lf, g, W0Variant::Squared);
        const bool seeded = c.theta.has_value();
        const double theta = seeded ? wrap_phase(*c.theta) : reduced_model_phase(lf, g.d, g);
        j["theta"] = theta;
        j["theta_source"] = seeded ? "user" : "reduced model with a Dirichlet end at z = d (body-dependent in general)";
        j["epsilon_sequence"] = blinking_epsilons(lf, theta, 0, 9, g);
        j["epsilon_sequence_as_printed"] = blinking_epsilons_as_printed(lf, theta, 0, 9, g);
        j["epsilon_sequence_note"] =
            "the printed prefactor 2/tau0 disagrees with the crossing relation, which gives 1/(2 tau0); "
            "epsilon_sequence uses the crossing relation";
    }
    if (c.eps > 0.0 && c.eps < 1.0) {
        const auto p = threshold_phase(c.eps);
        j["epsilon"] = c.eps;
        j["threshold_phase"] = {p.real(), p.imag()};
        if (lf >= threshold(g))
            j["gliding_speed"] = gliding_speed(lf, c.eps, g);
    }
    out << dump_json(j);
    return 0;
}

// ---------------------------------------------------------------- solve

int cmd_solve(const RunConfig& c, std::ostream& out)
{
    const auto dir = out_dir(c);
    const Domain dom = make_domain(c.geom, c.eps);
    const Mesh mesh = make_mesh(dom, mesh_options(c));
    validate_mesh(mesh);
    {
        std::ostringstream ms;
        write_mesh(ms, mesh);
        write_text(dir / "mesh.txt", ms.str());
    }
    const AssembledSystem sys = assemble(mesh, c.geom.end_condition, c.odd_sector);
    const Spectrum s = steklov_spectrum(sys, static_cast<std::size_t>(c.count));
    std::vector<int> parities;
    if (mesh.mirror_symmetric && !c.odd_sector) {
        const auto mirror = mesh.mirror_map();
        for (Eigen::Index k = 0; k < s.eigenvectors.cols(); ++k)
            parities.push_back(parity(s.eigenvectors.col(k), mirror));
    }
    Json j;
    j["epsilon"] = s.epsilon;
    j["end_condition"] = to_string(c.geom.end_condition);
    j["odd_sector"] = c.odd_sector;
    j["eigenvalues"] = s.eigenvalues;
    j["residuals"] = s.residuals;
    j["parities"] = parities;
    j["mesh_file"] = "mesh.txt";
    j["nodes"] = mesh.nodes.size();
    j["geometry_hash"] = c.geom.hash();
    const std::string text = dump_json(j);
    write_text(dir / "spectrum.json", text);
    out << text;
    return 0;
}

// ---------------------------------------------------------------- reports

void write_reports(const std::filesystem::path& dir, const SweepResult& sweep, const RunConfig& c)
{
    const auto branches = track_branches(sweep);
    const double ld = threshold(sweep.geom);
    const double lf = lambda_flat_of(c);
    {
        std::ostringstream s;
        write_branch_csv(s, branches);
        write_text(dir / "branches.csv", s.str());
    }
    const auto rows = gliding_report(branches, sweep.geom);
    {
        std::ostringstream s;
        write_gliding_csv(s, rows);
        write_text(dir / "gliding.csv", s.str());
    }
    Json rep;
    rep["geometry_hash"] = sweep.geom.hash();
    rep["lambda_dagger"] = ld;
    rep["lambda_flat"] = lf;
    rep["points"] = sweep.points.size();
    rep["failures"] = sweep.failures();
    std::vector<double> predicted;
    if (lf > ld) {
        const auto cross = detect_crossings(sweep, branches, lf);
        Json cj;
        cj["crossings"] = cross.crossings;
        cj["branch_ids"] = cross.branch_ids;
        cj["log_gaps"] = cross.log_gaps;
        cj["predicted_gap"] = cross.predicted_gap;
        if (!cross.crossings.empty()) {
            const double theta = estimate_theta_from_crossing(cross.crossings.front(), lf, sweep.geom);
            cj["theta_from_first_crossing"] = theta;
            // every ε_k inside the swept range
            const double t = tau0(lf, sweep.geom);
            const double lo = std::log(sweep.points.back().epsilon), hi = std::log(sweep.points.front().epsilon);
            const int k_first = static_cast<int>(std::ceil((-2.0 * t * hi - theta) / (2.0 * pi) - 0.5));
            const int k_last = static_cast<int>(std::floor((-2.0 * t * lo - theta) / (2.0 * pi) - 0.5));
            if (k_last >= k_first)
                predicted = blinking_epsilons(lf, theta, k_first, k_last, sweep.geom);
            cj["predicted_crossings"] = predicted;
            cj["note"] = "theta depends on the body shape; compare only within one geometry hash";
        }
        rep["crossings"] = cj;
    }
    Json bl = Json::array();
    for (const auto& b : branches) {
        Json bj;
        bj["id"] = b.id;
        bj["parity"] = b.parity;
        bj["label"] = to_string(b.label);
        bj["points"] = b.points.size();
        bj["epsilon_range"] = {b.points.front().epsilon, b.points.back().epsilon};
        bj["lambda_range"] = {b.points.front().lambda, b.points.back().lambda};
        bj["split_from_ambiguity"] = b.split_from_ambiguity;
        bl.push_back(bj);
    }
    rep["branches"] = bl;
    write_text(dir / "report.json", dump_json(rep));
    std::ostringstream svg;
    write_sweep_svg(svg, sweep, branches, lf, predicted);
    write_text(dir / "sweep.svg", svg.str());
}

int cmd_sweep(const RunConfig& c, std::ostream& out, std::ostream& err)
{
    const auto dir = out_dir(c);
    const SweepResult r =
        sweep_epsilon(c.geom, sweep_settings(c), dir / "points", [&](const std::string& m) { err << m << '\n'; });
    const std::string text = dump_json(sweep_to_json(r));
    write_text(dir / "sweep.json", text);
    write_reports(dir, sweep_from_json(parse_json(text)), c);
    out << "wrote " << (dir / "sweep.json").string() << '\n';
    return 0;
}

int cmd_report(const RunConfig& c, std::ostream& out)
{
    const std::filesystem::path dir(c.out);
    const SweepResult r = sweep_from_json(read_json_file(dir / "sweep.json"));
    RunConfig rc = c;
    rc.geom = r.geom;
    write_reports(dir, r, rc);
    out << "wrote reports to " << dir.string() << '\n';
    return 0;
}

// ---------------------------------------------------------------- reduced

Json reduced_json(const ReducedSpectrum& s)
{
    Json j;
    j["Lambda"] = s.Lambda_values;
    j["lambda"] = s.lambda_values;
    return j;
}

int cmd_reduced(const RunConfig& c, std::ostream& out, bool range)
{
    const auto dir = out_dir(c);
    std::vector<double> eps = range ? sweep_grid(c.eps_min, c.eps_max, c.per_decade) : std::vector<double>{c.eps};
    std::vector<ReducedSpectrum> closed, fd;
    const ReducedEnd left = c.geom.end_condition == EndCondition::Neumann ? ReducedEnd::Neumann : ReducedEnd::Dirichlet;
    if (c.geom.end_condition == EndCondition::Steklov)
        throw InvalidArgument("the reduced model supports Dirichlet and Neumann ends only");
    Json arr = Json::array();
    for (double e : eps) {
        Json j;
        j["epsilon"] = e;
        j["d"] = c.geom.d;
        j["end_condition"] = to_string(c.geom.end_condition);
        if (left == ReducedEnd::Dirichlet) {
            closed.push_back(reduced_eigenvalues_closed_form(e, c.geom.d, c.geom, c.count));
            j["closed_form"] = reduced_json(closed.back());
        }
        fd.push_back(reduced_eigenvalues_fd(e, c.geom.d, c.geom, c.grid_points, c.count, left));
        Json f = reduced_json(fd.back());
        f["grid_points"] = c.grid_points;
        f["refinement_change"] = fd.back().refinement_change;
        f["coarse"] = fd.back().coarse;
        j["finite_difference"] = f;
        arr.push_back(j);
    }
    std::ostringstream csv;
    write_reduced_csv(csv, left == ReducedEnd::Dirichlet ? closed : fd);
    write_text(dir / "reduced.csv", csv.str());
    std::ostringstream fcsv;
    write_reduced_csv(fcsv, fd);
    write_text(dir / "reduced_fd.csv", fcsv.str());
    const std::string text = dump_json(range ? arr : arr.front());
    write_text(dir / "reduced.json", text);
    out << text;
    return 0;
}

// ---------------------------------------------------------------- layer

int cmd_layer(const RunConfig& c, std::ostream& out)
{
    const auto dir = out_dir(c);
    const double lf = lambda_flat_of(c);
    const double a = c.geom.a;
    const CorrectorSolution w = solve_W0(lf, c.geom, Root::Plus);
    const double T = c.strip_length ? *c.strip_length : 8.0 * a;
    const auto data = [&](double eta) { return w(eta).real(); };
    const BoundaryLayerSolution y = solve_boundary_layer(data, a, c.modes, T);
    std::ostringstream modes, grid;
    write_layer_modes_csv(modes, y);
    write_layer_grid_csv(grid, y, 20, 80);
    write_text(dir / "layer_modes.csv", modes.str());
    write_text(dir / "layer_grid.csv", grid.str());
    Json j;
    j["lambda"] = lf;
    j["tau"] = {w.tau.real(), w.tau.imag()};
    j["W0_c2"] = {w.c2.real(), w.c2.imag()};
    j["W0_c0"] = {w.c0.real(), w.c0.imag()};
    j["W0_mean_abs"] = std::abs(w.mean);
    j["compatibility_residual"] = w.compatibility_residual;
    j["decay_rate"] = y.decay_rate;
    j["mean_flux"] = y.mean_flux;
    j["modes"] = y.modes.size();
    j["strip_length"] = T;
    j["remainder_bound_at_T"] = y.remainder_bound(T);
    const std::string text = dump_json(j);
    write_text(dir / "layer.json", text);
    out << text;
    return 0;
}

// ---------------------------------------------------------------- scatter

int cmd_scatter(const RunConfig& c, std::ostream& out)
{
    const auto dir = out_dir(c);
    if (c.lambda_points < 1 || (c.lambda_points > 1 && !(c.lambda_max >= c.lambda_min)))
        throw InvalidArgument("scatter needs lambda_points >= 1 and, for a curve, lambda_min <= lambda_max");
    const double delta = c.delta ? *c.delta : c.eps;
    const FitWindow w{c.z1 ? *c.z1 : 1.5 * delta, c.z2 ? *c.z2 : 0.3 * c.geom.d};
    std::ostringstream csv;
    csv << "lambda,theta,abs_s,parallelism,theta_spread,delta,residual\n";
    Json arr = Json::array();
    for (int i = 0; i < c.lambda_points; ++i) {
        const double lam = c.lambda_points == 1
                               ? c.lambda_min
                               : c.lambda_min + (c.lambda_max - c.lambda_min) * i / (c.lambda_points - 1);
        const ScatteringResult r = scattering_phase(lam, delta, w, c.geom, mesh_options(c));
        csv << format_double(lam) << ',' << format_double(r.theta) << ',' << format_double(std::abs(r.s)) << ','
            << format_double(r.parallelism) << ',' << format_double(r.theta_spread) << ',' << format_double(r.delta)
            << ',' << format_double(r.fits.front().residual) << '\n';
        Json j;
        j["lambda"] = lam;
        j["theta"] = r.theta;
        j["abs_s"] = std::abs(r.s);
        j["parallelism"] = r.parallelism;
        j["delta"] = r.delta;
        j["residual"] = r.fits.front().residual;
        arr.push_back(j);
    }
    write_text(dir / "scatter.csv", csv.str());
    Json doc;
    doc["geometry_hash"] = c.geom.hash();
    doc["window"] = {w.z1, w.z2};
    doc["curve"] = arr;
    const std::string text = dump_json(doc);
    write_text(dir / "scatter.json", text);
    out << text;
    return 0;
}

} // namespace

Json config_to_json(const RunConfig& c)
{
    Json j;
    j["n"] = c.geom.n;
    j["a"] = c.geom.a;
    j["d"] = c.geom.d;
    j["body"] = c.geom.body.kind == BodyKind::HalfDisk ? "half_disk" : "stadium";
    j["body_radius"] = c.geom.body.radius;
    j["join_smoothness"] = c.geom.body.join_smoothness;
    j["mirror_symmetric"] = c.geom.mirror_symmetric;
    j["end"] = to_string(c.geom.end_condition);
    j["h"] = c.h;
    j["grading"] = c.grading;
    j["eps"] = c.eps;
    j["eps_min"] = c.eps_min;
    j["eps_max"] = c.eps_max;
    j["per_decade"] = c.per_decade;
    j["count"] = c.count;
    j["odd_sector"] = c.odd_sector;
    opt_to_json(j, "lambda_flat", c.lambda_flat);
    opt_to_json(j, "theta", c.theta);
    j["out"] = c.out;
    j["jobs"] = c.jobs;
    j["seed"] = c.seed;
    j["grid_points"] = c.grid_points;
    j["modes"] = c.modes;
    opt_to_json(j, "strip_length", c.strip_length);
    j["lambda_min"] = c.lambda_min;
    j["lambda_max"] = c.lambda_max;
    j["lambda_points"] = c.lambda_points;
    opt_to_json(j, "delta", c.delta);
    opt_to_json(j, "z1", c.z1);
    opt_to_json(j, "z2", c.z2);
    return j;
}

RunConfig config_from_json(const Json& j, RunConfig c)
{
    if (!j.is_object())
        throw InvalidArgument("configuration must be a JSON object");
    std::string body, end;
    const std::map<std::string, std::function<void(const Json&)>> setters = {
        {"n", [&](const Json& v) { read_key(v, "n", c.geom.n); }},
        {"a", [&](const Json& v) { read_key(v, "a", c.geom.a); }},
        {"d", [&](const Json& v) { read_key(v, "d", c.geom.d); }},
        {"body",
         [&](const Json& v) {
             const auto s = v.get<std::string>();
             if (s != "half_disk" && s != "stadium")
                 throw InvalidArgument("body must be half_disk or stadium");
             c.geom.body.kind = s == "stadium" ? BodyKind::Stadium : BodyKind::HalfDisk;
         }},
        {"body_radius", [&](const Json& v) { read_key(v, "body_radius", c.geom.body.radius); }},
        {"join_smoothness", [&](const Json& v) { read_key(v, "join_smoothness", c.geom.body.join_smoothness); }},
        {"mirror_symmetric", [&](const Json& v) { read_key(v, "mirror_symmetric", c.geom.mirror_symmetric); }},
        {"end", [&](const Json& v) { c.geom.end_condition = end_condition_from_string(v.get<std::string>()); }},
        {"h", [&](const Json& v) { read_key(v, "h", c.h); }},
        {"grading", [&](const Json& v) { read_key(v, "grading", c.grading); }},
        {"eps", [&](const Json& v) { read_key(v, "eps", c.eps); }},
        {"eps_min", [&](const Json& v) { read_key(v, "eps_min", c.eps_min); }},
        {"eps_max", [&](const Json& v) { read_key(v, "eps_max", c.eps_max); }},
        {"per_decade", [&](const Json& v) { read_key(v, "per_decade", c.per_decade); }},
        {"count", [&](const Json& v) { read_key(v, "count", c.count); }},
        {"odd_sector", [&](const Json& v) { read_key(v, "odd_sector", c.odd_sector); }},
        {"lambda_flat", [&](const Json& v) { read_key(v, "lambda_flat", c.lambda_flat); }},
        {"theta", [&](const Json& v) { read_key(v, "theta", c.theta); }},
        {"out", [&](const Json& v) { read_key(v, "out", c.out); }},
        {"jobs", [&](const Json& v) { read_key(v, "jobs", c.jobs); }},
        {"seed", [&](const Json& v) { read_key(v, "seed", c.seed); }},
        {"grid_points", [&](const Json& v) { read_key(v, "grid_points", c.grid_points); }},
        {"modes", [&](const Json& v) { read_key(v, "modes", c.modes); }},
        {"strip_length", [&](const Json& v) { read_key(v, "strip_length", c.strip_length); }},
        {"lambda_min", [&](const Json& v) { read_key(v, "lambda_min", c.lambda_min); }},
        {"lambda_max", [&](const Json& v) { read_key(v, "lambda_max", c.lambda_max); }},
        {"lambda_points", [&](const Json& v) { read_key(v, "lambda_points", c.lambda_points); }},
        {"delta", [&](const Json& v) { read_key(v, "delta", c.delta); }},
        {"z1", [&](const Json& v) { read_key(v, "z1", c.z1); }},
        {"z2", [&](const Json& v) { read_key(v, "z2", c.z2); }},
    };
    for (auto it = j.begin(); it != j.end(); ++it) {
        const auto s = setters.find(it.key());
        if (s == setters.end())
            throw InvalidArgument("unknown configuration key '" + it.key() + "'");
        try {
            s->second(it.value());
        } catch (const nlohmann::json::exception& e) {
            throw InvalidArgument("bad value for configuration key '" + it.key() + "': " + e.what());
        }
    }
    return c;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"cusplab: Steklov spectra of a blunted cusp"};
    app.set_help_flag("--help", "print this help");
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_file;
    app.add_option("--config", config_file, "JSON configuration file; flags override its keys");

    RunConfig f; // flag values; only options actually given are applied
    std::string end;
    std::map<std::string, CLI::Option*> given;
    given["a"] = app.add_option("--a", f.geom.a, "cusp half-width coefficient");
    given["d"] = app.add_option("--d", f.geom.d, "cusp length");
    given["n"] = app.add_option("--n", f.geom.n, "spatial dimension (meshing needs 2)");
    given["eps"] = app.add_option("--eps", f.eps, "blunting parameter");
    given["eps_min"] = app.add_option("--eps-min", f.eps_min);
    given["eps_max"] = app.add_option("--eps-max", f.eps_max);
    given["per_decade"] = app.add_option("--per-decade", f.per_decade);
    given["h"] = app.add_option("--h", f.h, "target edge length");
    given["grading"] = app.add_option("--grading", f.grading);
    given["count"] = app.add_option("--count", f.count, "number of eigenvalues");
    given["end"] = app.add_option("--end", end)->check(CLI::IsMember({"dirichlet", "neumann", "steklov"}));
    given["odd_sector"] = app.add_flag("--odd-sector", f.odd_sector, "Dirichlet condition on the symmetry plane");
    double lambda_flat = 0.0, theta = 0.0, strip = 0.0, delta = 0.0, z1 = 0.0, z2 = 0.0;
    given["lambda_flat"] = app.add_option("--lambda-flat", lambda_flat);
    given["theta"] = app.add_option("--theta", theta, "phase seed for predict");
    given["out"] = app.add_option("--out", f.out, "output directory (CUSPLAB_OUT overrides)");
    given["jobs"] = app.add_option("--jobs", f.jobs, "parallel solves (0: all CPUs)");
    given["seed"] = app.add_option("--seed", f.seed);
    given["grid_points"] = app.add_option("--grid-points", f.grid_points);
    given["modes"] = app.add_option("--modes", f.modes);
    given["strip_length"] = app.add_option("--strip-length", strip);
    given["lambda_min"] = app.add_option("--lambda-min", f.lambda_min);
    given["lambda_max"] = app.add_option("--lambda-max", f.lambda_max);
    given["lambda_points"] = app.add_option("--lambda-points", f.lambda_points);
    given["delta"] = app.add_option("--delta", delta);
    given["z1"] = app.add_option("--z1", z1);
    given["z2"] = app.add_option("--z2", z2);

    auto* predict = app.add_subcommand("predict", "closed-form asymptotics as JSON");
    auto* solve = app.add_subcommand("solve", "spectrum at one epsilon");
    auto* sweep = app.add_subcommand("sweep", "spectra over an epsilon grid plus reports");
    auto* reduced = app.add_subcommand("reduced", "reduced Euler model tables");
    auto* layer = app.add_subcommand("layer", "corrector and boundary-layer tables");
    auto* scatter = app.add_subcommand("scatter", "scattering phase curve");
    auto* report = app.add_subcommand("report", "regenerate reports from a persisted sweep");
    bool reduced_range = false;
    reduced->add_flag("--range", reduced_range, "tabulate eps_min..eps_max instead of --eps");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n' << app.help();
        return 1;
    }

    auto numerical = [&](const std::string& msg) {
        Json j;
        j["error"] = "numerical";
        j["message"] = msg;
        err << dump_json(j);
        return 2;
    };
    try {
        RunConfig c;
        if (!config_file.empty())
            c = config_from_json(read_json_file(config_file), c);
        auto set = [&](const char* key) { return given.at(key)->count() > 0; };
        if (set("a"))
            c.geom.a = f.geom.a;
        if (set("d"))
            c.geom.d = f.geom.d;
        if (set("n"))
            c.geom.n = f.geom.n;
        if (set("eps"))
            c.eps = f.eps;
        if (set("eps_min"))
            c.eps_min = f.eps_min;
        if (set("eps_max"))
            c.eps_max = f.eps_max;
        if (set("per_decade"))
            c.per_decade = f.per_decade;
        if (set("h"))
            c.h = f.h;
        if (set("grading"))
            c.grading = f.grading;
        if (set("count"))
            c.count = f.count;
        if (set("end"))
            c.geom.end_condition = end_condition_from_string(end);
        if (set("odd_sector"))
            c.odd_sector = f.odd_sector;
        if (set("lambda_flat"))
            c.lambda_flat = lambda_flat;
        if (set("theta"))
            c.theta = theta;
        if (set("out"))
            c.out = f.out;
        if (set("jobs"))
            c.jobs = f.jobs;
        if (set("seed"))
            c.seed = f.seed;
        if (set("grid_points"))
            c.grid_points = f.grid_points;
        if (set("modes"))
            c.modes = f.modes;
        if (set("strip_length"))
            c.strip_length = strip;
        if (set("lambda_min"))
            c.lambda_min = f.lambda_min;
        if (set("lambda_max"))
            c.lambda_max = f.lambda_max;
        if (set("lambda_points"))
            c.lambda_points = f.lambda_points;
        if (set("delta"))
            c.delta = delta;
        if (set("z1"))
            c.z1 = z1;
        if (set("z2"))
            c.z2 = z2;
        if (const char* env = std::getenv("CUSPLAB_OUT"); env && *env)
            c.out = env;
        c.geom.body.radius = std::max(c.geom.body.radius, 1.5 * c.geom.a * c.geom.d * c.geom.d);
        c.geom.validate();

        if (*predict)
            return cmd_predict(c, out);
        if (*solve)
            return cmd_solve(c, out);
        if (*sweep)
            return cmd_sweep(c, out, err);
        if (*reduced)
            return cmd_reduced(c, out, reduced_range);
        if (*layer)
            return cmd_layer(c, out);
        if (*scatter)
            return cmd_scatter(c, out);
        if (*report)
            return cmd_report(c, out);
        return 1;
    } catch (const InvalidArgument& e) {
        err << "usage error: " << e.what() << '\n';
        return 1;
    } catch (const NumericalError& e) {
        return numerical(e.what());
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << '\n';
        return 3;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "i/o error: " << e.what() << '\n';
        return 3;
    }
}

} // namespace cusplab
