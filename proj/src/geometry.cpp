#include "cusplab/geometry.hpp"

#include "cusplab/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace cusplab {

namespace {

constexpr double pi = std::numbers::pi;

std::string format17(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double signed_area(const Point& p, const Point& q, const Point& r)
{
    return 0.5 * ((q.x - p.x) * (r.y - p.y) - (r.x - p.x) * (q.y - p.y));
}

double triangle_min_angle(const Point& p, const Point& q, const Point& r)
{
    auto angle = [](const Point& apex, const Point& u, const Point& v) {
        const double ux = u.x - apex.x, uy = u.y - apex.y;
        const double vx = v.x - apex.x, vy = v.y - apex.y;
        return std::atan2(std::abs(ux * vy - uy * vx), ux * vx + uy * vy);
    };
    return std::min({angle(p, q, r), angle(q, r, p), angle(r, p, q)}) * 180.0 / pi;
}

/// Triangulates the strip between two chains of nodes whose relative
/// positions along the strip are given by increasing parameters in [0, 1].
void zip_chains(const std::vector<int>& lower, const std::vector<double>& lower_t,
                const std::vector<int>& upper, const std::vector<double>& upper_t,
                const std::vector<Point>& nodes, std::vector<std::array<int, 3>>& out)
{
    std::size_t i = 0, j = 0;
    const std::size_t p = lower.size() - 1, q = upper.size() - 1;
    auto emit = [&](int u, int v, int w) {
        if (signed_area(nodes[u], nodes[v], nodes[w]) < 0.0)
            std::swap(v, w);
        out.push_back({u, v, w});
    };
    auto dist2 = [&](int u, int v) {
        const double dx = nodes[u].x - nodes[v].x, dy = nodes[u].y - nodes[v].y;
        return dx * dx + dy * dy;
    };
    while (i < p || j < q) {
        bool advance_lower;
        if (i == p)
            advance_lower = false;
        else if (j == q)
            advance_lower = true;
        else if (std::abs(lower_t[i + 1] - upper_t[j + 1]) < 1e-12)
            advance_lower = dist2(lower[i + 1], upper[j]) <= dist2(lower[i], upper[j + 1]);
        else
            advance_lower = lower_t[i + 1] < upper_t[j + 1];
        if (advance_lower) {
            emit(lower[i], lower[i + 1], upper[j]);
            ++i;
        } else {
            emit(lower[i], upper[j + 1], upper[j]);
            ++j;
        }
    }
}

std::vector<double> uniform_params(std::size_t intervals)
{
    std::vector<double> t(intervals + 1);
    for (std::size_t k = 0; k <= intervals; ++k)
        t[k] = static_cast<double>(k) / static_cast<double>(intervals);
    return t;
}

/// Upper half of a mesh plus the bookkeeping needed to mirror it.
struct HalfMesh {
    std::vector<Point> nodes;
    std::vector<std::array<int, 3>> triangles;
    std::vector<BoundaryEdge> boundary; // Steklov / ArtificialEnd edges
    std::vector<std::array<int, 2>> axis; // edges on y = 0
};

Mesh mirror_half(const HalfMesh& half, bool tag_symmetry)
{
    Mesh mesh;
    mesh.nodes = half.nodes;
    std::vector<int> image(half.nodes.size());
    for (std::size_t k = 0; k < half.nodes.size(); ++k) {
        if (half.nodes[k].y == 0.0) {
            image[k] = static_cast<int>(k);
        } else {
            image[k] = static_cast<int>(mesh.nodes.size());
            mesh.nodes.push_back({half.nodes[k].x, -half.nodes[k].y});
        }
    }
    mesh.triangles = half.triangles;
    for (const auto& t : half.triangles)
        mesh.triangles.push_back({image[t[0]], image[t[2]], image[t[1]]});
    mesh.edges = half.boundary;
    for (const auto& e : half.boundary)
        mesh.edges.push_back({image[e.b], image[e.a], e.tag});
    if (tag_symmetry)
        for (const auto& e : half.axis)
            mesh.edges.push_back({e[0], e[1], BoundaryTag::SymmetryPlane});
    mesh.mirror_symmetric = tag_symmetry;
    return mesh;
}

std::uint64_t fnv1a(const std::string& s)
{
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace

std::string to_string(EndCondition c)
{
    switch (c) {
    case EndCondition::Dirichlet: return "dirichlet";
    case EndCondition::Neumann: return "neumann";
    case EndCondition::Steklov: return "steklov";
    }
    return "?";
}

EndCondition end_condition_from_string(const std::string& s)
{
    if (s == "dirichlet") return EndCondition::Dirichlet;
    if (s == "neumann") return EndCondition::Neumann;
    if (s == "steklov") return EndCondition::Steklov;
    throw InvalidArgument("unknown end condition '" + s + "' (expected dirichlet, neumann or steklov)");
}

char tag_letter(BoundaryTag t)
{
    switch (t) {
    case BoundaryTag::Steklov: return 'S';
    case BoundaryTag::ArtificialEnd: return 'E';
    case BoundaryTag::SymmetryPlane: return 'Y';
    }
    return '?';
}

BoundaryTag tag_from_letter(char c)
{
    switch (c) {
    case 'S': return BoundaryTag::Steklov;
    case 'E': return BoundaryTag::ArtificialEnd;
    case 'Y': return BoundaryTag::SymmetryPlane;
    default: throw IoError(std::string("unknown boundary tag '") + c + "'");
    }
}

// ---------------------------------------------------------------------------
// CuspGeometry

double CuspGeometry::omega_measure() const
{
    // volume of the (n-1)-ball of radius a
    const double k = n - 1;
    return std::pow(pi, k / 2.0) / std::tgamma(k / 2.0 + 1.0) * std::pow(a, k);
}

double CuspGeometry::omega_boundary_measure() const
{
    // area of the (n-2)-sphere of radius a; equals 2 for the interval
    const double k = n - 1;
    return 2.0 * std::pow(pi, k / 2.0) / std::tgamma(k / 2.0) * std::pow(a, k - 1.0);
}

double CuspGeometry::blend_length() const
{
    const double k = body.join_smoothness;
    return (body.radius - a * d * d) / (2.0 * a * d * (1.0 - 1.0 / k));
}

double CuspGeometry::blend_end() const { return d + blend_length(); }

double CuspGeometry::disk_center() const
{
    return blend_end() + (body.kind == BodyKind::Stadium ? body.radius : 0.0);
}

double CuspGeometry::z_max() const { return disk_center() + body.radius; }

double CuspGeometry::half_width(double z) const
{
    if (z <= d)
        return a * z * z;
    const double L = blend_length();
    const int k = body.join_smoothness;
    const double R = body.radius;
    if (z <= d + L) {
        const double s = z - d;
        const double c = 2.0 * a * d / (k * std::pow(L, k - 1));
        return a * d * d + 2.0 * a * d * s - c * std::pow(s, k);
    }
    const double zc = disk_center();
    if (z <= zc)
        return R;
    const double u = std::min(z - zc, R);
    return std::sqrt(std::max(0.0, R * R - u * u));
}

double CuspGeometry::half_width_slope(double z) const
{
    if (z <= d)
        return 2.0 * a * z;
    const double L = blend_length();
    const int k = body.join_smoothness;
    if (z <= d + L) {
        const double s = z - d;
        const double c = 2.0 * a * d / (k * std::pow(L, k - 1));
        return 2.0 * a * d - c * k * std::pow(s, k - 1);
    }
    const double zc = disk_center();
    if (z <= zc)
        return 0.0;
    const double u = z - zc;
    return -u / std::sqrt(std::max(1e-300, body.radius * body.radius - u * u));
}

void CuspGeometry::validate() const
{
    if (n < 2)
        throw InvalidArgument("spatial dimension n must be >= 2");
    if (!(a > 0.0) || !(d > 0.0))
        throw InvalidArgument("cusp parameters a and d must be positive");
    if (body.join_smoothness < 2)
        throw InvalidArgument("join_smoothness must be >= 2");
    if (!(body.radius > a * d * d))
        throw InvalidArgument("body radius " + format17(body.radius) +
                              " must exceed the cusp opening a*d^2 = " + format17(a * d * d));
}

std::string CuspGeometry::hash() const
{
    std::ostringstream s;
    s << "n=" << n << ";a=" << format17(a) << ";d=" << format17(d)
      << ";body=" << (body.kind == BodyKind::HalfDisk ? "halfdisk" : "stadium")
      << ";R=" << format17(body.radius) << ";k=" << body.join_smoothness
      << ";sym=" << mirror_symmetric;
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(s.str())));
    return buf;
}

// ---------------------------------------------------------------------------
// Domain

double Domain::area() const
{
    using boost::math::quadrature::gauss_kronrod;
    double twice = 0.0;
    for (const auto& seg : segments) {
        auto integrand = [&](double t) {
            const Point p = seg.point(t);
            const Point v = seg.tangent(t);
            return p.x * v.y - p.y * v.x;
        };
        twice += gauss_kronrod<double, 31>::integrate(integrand, seg.t_begin, seg.t_end, 15, 1e-13);
    }
    return 0.5 * twice;
}

Domain make_domain(const CuspGeometry& geom, double epsilon)
{
    geom.validate();
    if (!(epsilon > 0.0) || !(epsilon < geom.d / 4.0))
        throw InvalidArgument("epsilon " + format17(epsilon) + " outside (0, d/4) with d = " + format17(geom.d));

    Domain dom;
    dom.geom = geom;
    dom.epsilon = epsilon;
    const CuspGeometry g = geom;
    const double R = g.body.radius;
    const double zb = g.blend_end();
    const double zc = g.disk_center();
    const double eps = epsilon;

    auto add = [&](std::string name, BoundaryTag tag, double t0, double t1, auto point, auto tangent) {
        dom.segments.push_back({std::move(name), tag, t0, t1, point, tangent});
    };
    // counterclockwise: lower side left to right, arc, upper side right to left, end downwards
    add("lower_cusp", BoundaryTag::Steklov, eps, g.d,
        [g](double t) { return Point{t, -g.half_width(t)}; },
        [g](double t) { return Point{1.0, -g.half_width_slope(t)}; });
    add("lower_blend", BoundaryTag::Steklov, g.d, zb,
        [g](double t) { return Point{t, -g.half_width(t)}; },
        [g](double t) { return Point{1.0, -g.half_width_slope(t)}; });
    if (g.body.kind == BodyKind::Stadium)
        add("lower_flat", BoundaryTag::Steklov, zb, zc,
            [R](double t) { return Point{t, -R}; }, [](double) { return Point{1.0, 0.0}; });
    add("arc", BoundaryTag::Steklov, -pi / 2.0, pi / 2.0,
        [R, zc](double t) { return Point{zc + R * std::cos(t), R * std::sin(t)}; },
        [R](double t) { return Point{-R * std::sin(t), R * std::cos(t)}; });
    if (g.body.kind == BodyKind::Stadium)
        add("upper_flat", BoundaryTag::Steklov, 0.0, zc - zb,
            [R, zc](double t) { return Point{zc - t, R}; }, [](double) { return Point{-1.0, 0.0}; });
    add("upper_blend", BoundaryTag::Steklov, 0.0, zb - g.d,
        [g, zb](double t) { return Point{zb - t, g.half_width(zb - t)}; },
        [g, zb](double t) { return Point{-1.0, -g.half_width_slope(zb - t)}; });
    add("upper_cusp", BoundaryTag::Steklov, 0.0, g.d - eps,
        [g](double t) { return Point{g.d - t, g.half_width(g.d - t)}; },
        [g](double t) { return Point{-1.0, -g.half_width_slope(g.d - t)}; });
    const double w = g.a * eps * eps;
    add("end", BoundaryTag::ArtificialEnd, 0.0, 1.0,
        [eps, w](double t) { return Point{eps, w - 2.0 * w * t}; },
        [w](double) { return Point{0.0, -2.0 * w}; });
    return dom;
}

// ---------------------------------------------------------------------------
// Mesh queries

double Mesh::area() const
{
    double s = 0.0;
    for (const auto& t : triangles)
        s += signed_area(nodes[t[0]], nodes[t[1]], nodes[t[2]]);
    return s;
}

double Mesh::min_angle_degrees() const
{
    double m = 180.0;
    for (const auto& t : triangles)
        m = std::min(m, triangle_min_angle(nodes[t[0]], nodes[t[1]], nodes[t[2]]));
    return m;
}

std::size_t Mesh::edge_count(BoundaryTag tag) const
{
    return static_cast<std::size_t>(
        std::count_if(edges.begin(), edges.end(), [tag](const BoundaryEdge& e) { return e.tag == tag; }));
}

std::vector<int> Mesh::tagged_nodes(BoundaryTag tag) const
{
    std::vector<int> out;
    for (const auto& e : edges)
        if (e.tag == tag) {
            out.push_back(e.a);
            out.push_back(e.b);
        }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<int> Mesh::mirror_map() const
{
    std::map<std::pair<double, double>, int> where;
    for (std::size_t k = 0; k < nodes.size(); ++k)
        where[{nodes[k].x, nodes[k].y}] = static_cast<int>(k);
    std::vector<int> image(nodes.size());
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        const double my = nodes[k].y == 0.0 ? 0.0 : -nodes[k].y;
        auto it = where.find({nodes[k].x, my});
        if (it == where.end())
            throw InvalidArgument("mesh node set is not invariant under y -> -y");
        image[k] = it->second;
    }
    return image;
}

void validate_mesh(const Mesh& mesh, double min_angle_degrees)
{
    const int n = static_cast<int>(mesh.nodes.size());
    std::map<std::pair<int, int>, int> uses;
    for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
        const auto& tri = mesh.triangles[t];
        for (int v : tri)
            if (v < 0 || v >= n)
                throw NumericalError("triangle " + std::to_string(t) + " references a missing node");
        if (!(signed_area(mesh.nodes[tri[0]], mesh.nodes[tri[1]], mesh.nodes[tri[2]]) > 0.0))
            throw NumericalError("triangle " + std::to_string(t) + " is not positively oriented");
        for (int k = 0; k < 3; ++k) {
            int u = tri[k], v = tri[(k + 1) % 3];
            ++uses[{std::min(u, v), std::max(u, v)}];
        }
    }
    std::set<std::pair<int, int>> open;
    for (const auto& [edge, count] : uses) {
        if (count > 2)
            throw NumericalError("non-conforming edge shared by more than two triangles");
        if (count == 1)
            open.insert(edge);
    }
    std::set<std::pair<int, int>> tagged;
    for (const auto& e : mesh.edges) {
        const std::pair<int, int> key{std::min(e.a, e.b), std::max(e.a, e.b)};
        if (!tagged.insert(key).second)
            throw NumericalError("boundary edge tagged twice");
        auto it = uses.find(key);
        if (it == uses.end())
            throw NumericalError("tagged edge is not a mesh edge");
        const bool on_boundary = it->second == 1;
        if (on_boundary == (e.tag == BoundaryTag::SymmetryPlane))
            throw NumericalError(std::string("edge tagged ") + tag_letter(e.tag) +
                                 (on_boundary ? " lies on the boundary" : " is interior"));
        if (on_boundary)
            open.erase(key);
    }
    if (!open.empty())
        throw NumericalError(std::to_string(open.size()) + " boundary edges carry no tag");
    const double angle = mesh.min_angle_degrees();
    if (angle < min_angle_degrees)
        throw NumericalError("minimum angle " + format17(angle) + " deg below " + format17(min_angle_degrees));
}

int elements_across(const Mesh& mesh, double z)
{
    int count = 0;
    for (const auto& t : mesh.triangles) {
        const double lo = std::min({mesh.nodes[t[0]].x, mesh.nodes[t[1]].x, mesh.nodes[t[2]].x});
        const double hi = std::max({mesh.nodes[t[0]].x, mesh.nodes[t[1]].x, mesh.nodes[t[2]].x});
        if (lo < z && z < hi)
            ++count;
    }
    return count;
}

// ---------------------------------------------------------------------------
// Mesh generation

Mesh make_mesh(const Domain& domain, const MeshOptions& opt)
{
    if (!(opt.h > 0.0))
        throw InvalidArgument("target edge length h must be positive");
    if (!(opt.grading >= 0.0))
        throw InvalidArgument("grading must be >= 0");
    if (!(opt.max_aspect > 0.0))
        throw InvalidArgument("max_aspect must be positive");
    const CuspGeometry& g = domain.geom;
    if (g.n != 2)
        throw InvalidArgument("meshing supports n = 2 only");
    const double eps = domain.epsilon;
    const double h = opt.h;

    auto target = [&](double z) {
        return z < g.d ? h * std::min(1.0, std::pow(z / g.d, opt.grading)) : h;
    };
    auto cells = [&](double z) {
        return std::max(2, static_cast<int>(std::ceil(g.half_width(z) / target(z) - 1e-9)));
    };
    auto step = [&](double z) { return std::min(target(z), opt.max_aspect * g.half_width(z) / cells(z)); };

    // Column lines, generated from the body towards the tip so that every
    // line above the last two is independent of epsilon.
    const double z_end = g.disk_center();
    std::vector<double> lines{z_end};
    constexpr double node_budget = 4e6;
    double nodes = 0.0;
    for (;;) {
        nodes += g.half_width(lines.back()) / target(lines.back()) + 2.0;
        if (nodes > node_budget)
            throw InvalidArgument("mesh would exceed " + format17(node_budget) + " nodes (h = " + format17(h) +
                                  ", grading = " + format17(opt.grading) + ", epsilon = " + format17(eps) + ")");
        const double next = lines.back() - step(lines.back());
        if (next <= eps)
            break;
        lines.push_back(next);
    }
    const double gap = lines.back() - eps;
    if (lines.size() > 1 && gap < 0.5 * step(lines.back())) {
        lines.pop_back();
        lines.push_back(0.5 * (lines.back() + eps));
    }
    lines.push_back(eps);
    std::reverse(lines.begin(), lines.end());

    HalfMesh half;
    std::vector<std::vector<int>> line_nodes(lines.size());
    std::vector<std::vector<double>> line_params(lines.size());
    for (std::size_t j = 0; j < lines.size(); ++j) {
        const double z = lines[j];
        const double f = g.half_width(z);
        const int n = cells(z);
        line_params[j] = uniform_params(static_cast<std::size_t>(n));
        for (int k = 0; k <= n; ++k) {
            line_nodes[j].push_back(static_cast<int>(half.nodes.size()));
            half.nodes.push_back({z, k == n ? f : f * k / n});
        }
    }
    for (std::size_t j = 0; j + 1 < lines.size(); ++j) {
        zip_chains(line_nodes[j], line_params[j], line_nodes[j + 1], line_params[j + 1], half.nodes,
                   half.triangles);
        half.boundary.push_back({line_nodes[j + 1].back(), line_nodes[j].back(), BoundaryTag::Steklov});
        half.axis.push_back({line_nodes[j][0], line_nodes[j + 1][0]});
    }
    for (std::size_t k = 0; k + 1 < line_nodes[0].size(); ++k) {
        // downward along the end, matching the counterclockwise boundary orientation
        half.boundary.push_back({line_nodes[0][k + 1], line_nodes[0][k], BoundaryTag::ArtificialEnd});
    }

    // Quarter disk in polar rings around (z_end, 0); its ray at θ = π/2
    // reuses the nodes of the last column line.
    const double R = g.body.radius;
    const std::vector<int>& seam = line_nodes.back();
    const int rings = static_cast<int>(seam.size()) - 1;
    std::vector<int> prev{seam[0]};
    std::vector<double> prev_t{0.0};
    for (int i = 1; i <= rings; ++i) {
        const double r = R * i / rings;
        const int m = std::max(1, static_cast<int>(std::lround(pi / 2.0 * i)));
        std::vector<int> ring;
        for (int l = 0; l < m; ++l) {
            const double theta = pi / 2.0 * l / m;
            ring.push_back(static_cast<int>(half.nodes.size()));
            half.nodes.push_back({z_end + r * std::cos(theta), l == 0 ? 0.0 : r * std::sin(theta)});
        }
        ring.push_back(seam[static_cast<std::size_t>(i)]);
        const std::vector<double> ring_t = uniform_params(static_cast<std::size_t>(m));
        zip_chains(prev, prev_t, ring, ring_t, half.nodes, half.triangles);
        half.axis.push_back({prev[0], ring[0]});
        if (i == rings)
            for (int l = 0; l < m; ++l)
                half.boundary.push_back({ring[l], ring[l + 1], BoundaryTag::Steklov});
        prev = std::move(ring);
        prev_t = ring_t;
    }

    Mesh mesh = mirror_half(half, g.mirror_symmetric);
    mesh.epsilon = eps;
    const double angle = mesh.min_angle_degrees();
    if (angle < opt.min_angle_degrees)
        throw NumericalError("mesh minimum angle " + format17(angle) + " deg below " +
                             format17(opt.min_angle_degrees) + " deg (h = " + format17(h) +
                             ", epsilon = " + format17(eps) + ")");
    return mesh;
}

Mesh make_disk_mesh(double radius, double h)
{
    if (!(radius > 0.0) || !(h > 0.0))
        throw InvalidArgument("disk radius and h must be positive");
    const int rings = std::max(1, static_cast<int>(std::ceil(radius / h - 1e-9)));
    HalfMesh half;
    half.nodes.push_back({0.0, 0.0});
    std::vector<int> prev{0};
    std::vector<double> prev_t{0.0};
    for (int i = 1; i <= rings; ++i) {
        const double r = radius * i / rings;
        const int m = std::max(2, static_cast<int>(std::lround(pi * i)));
        std::vector<int> ring;
        for (int l = 0; l <= m; ++l) {
            const double theta = pi * l / m;
            ring.push_back(static_cast<int>(half.nodes.size()));
            const bool on_axis = l == 0 || l == m;
            half.nodes.push_back({l == m ? -r : r * std::cos(theta), on_axis ? 0.0 : r * std::sin(theta)});
        }
        const std::vector<double> ring_t = uniform_params(static_cast<std::size_t>(m));
        if (prev.size() == 1) {
            // center fan
            for (int l = 0; l < m; ++l)
                half.triangles.push_back({prev[0], ring[l], ring[l + 1]});
        } else {
            zip_chains(prev, prev_t, ring, ring_t, half.nodes, half.triangles);
        }
        half.axis.push_back({prev.front(), ring.front()});
        half.axis.push_back({ring.back(), prev.back()});
        if (i == rings)
            for (int l = 0; l < m; ++l)
                half.boundary.push_back({ring[l], ring[l + 1], BoundaryTag::Steklov});
        prev = std::move(ring);
        prev_t = ring_t;
    }
    return mirror_half(half, true);
}

Mesh make_rectangle_mesh(double x0, double x1, double y0, double y1, int nx, int ny)
{
    if (nx < 1 || ny < 1 || !(x1 > x0) || !(y1 > y0))
        throw InvalidArgument("invalid rectangle mesh parameters");
    Mesh mesh;
    auto id = [nx](int i, int j) { return j * (nx + 1) + i; };
    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i)
            mesh.nodes.push_back({x0 + (x1 - x0) * i / nx, y0 + (y1 - y0) * j / ny});
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            mesh.triangles.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
            mesh.triangles.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
        }
    for (int i = 0; i < nx; ++i)
        mesh.edges.push_back({id(i, 0), id(i + 1, 0), BoundaryTag::Steklov});
    for (int j = 0; j < ny; ++j)
        mesh.edges.push_back({id(nx, j), id(nx, j + 1), BoundaryTag::Steklov});
    for (int i = nx; i > 0; --i)
        mesh.edges.push_back({id(i, ny), id(i - 1, ny), BoundaryTag::Steklov});
    for (int j = ny; j > 0; --j)
        mesh.edges.push_back({id(0, j), id(0, j - 1), BoundaryTag::Steklov});
    return mesh;
}

} // namespace cusplab
