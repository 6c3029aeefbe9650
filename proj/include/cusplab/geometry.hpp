#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace cusplab {

enum class EndCondition { Dirichlet, Neumann, Steklov };
enum class BodyKind { HalfDisk, Stadium };

std::string to_string(EndCondition c);
EndCondition end_condition_from_string(const std::string& s);

/// Body attached to the cusp at z = d. The upper boundary leaves the cusp
/// arc y = a z² with a concave polynomial blend of degree `join_smoothness`
/// that reaches height `radius` with zero slope; a half disk of that radius
/// (preceded by a flat segment of the same length for a stadium) closes the
/// domain. Requires radius > a d².
struct BodySpec {
    BodyKind kind = BodyKind::HalfDisk;
    double radius = 1.5;
    int join_smoothness = 2;
};

/// Cusp Π^d = {(y, z) : |y| < a z², 0 < z < d} joined to a body. The
/// cross-section is the interval ω = (−a, a) for n = 2; for n ≥ 3 the
/// closed-form quantities treat ω as the ball of radius a in R^{n−1}.
struct CuspGeometry {
    int n = 2;
    double a = 1.0;
    double d = 1.0;
    BodySpec body;
    EndCondition end_condition = EndCondition::Dirichlet;
    bool mirror_symmetric = true;

    /// |ω|, the (n−1)-measure of the cross-section.
    double omega_measure() const;
    /// |∂ω|, the (n−2)-measure of its boundary (2 for the interval).
    double omega_boundary_measure() const;

    double blend_length() const;
    /// Axial coordinate where the blend meets the body (flat part or disk).
    double blend_end() const;
    /// Center of the closing half disk.
    double disk_center() const;
    /// Rightmost point of the domain.
    double z_max() const;
    /// Upper boundary y = f(z) for z in [0, z_max].
    double half_width(double z) const;
    double half_width_slope(double z) const;

    void validate() const;
    /// Stable textual hash of all parameters, carried by reports next to Θ values.
    std::string hash() const;
};

struct Point {
    double x = 0.0; ///< axial coordinate z for cusp domains
    double y = 0.0;
};

enum class BoundaryTag { Steklov, ArtificialEnd, SymmetryPlane };
char tag_letter(BoundaryTag t);
BoundaryTag tag_from_letter(char c);

/// One tagged piece of the parametric boundary, traversed counterclockwise
/// for t from t_begin to t_end.
struct BoundarySegment {
    std::string name;
    BoundaryTag tag = BoundaryTag::Steklov;
    double t_begin = 0.0;
    double t_end = 1.0;
    std::function<Point(double)> point;
    std::function<Point(double)> tangent;
};

/// Blunted domain Ω^ε = Ω ∖ Π^ε as an ordered closed chain of segments.
struct Domain {
    CuspGeometry geom;
    double epsilon = 0.0;
    std::vector<BoundarySegment> segments;

    /// Area via adaptive Gauss–Kronrod integration of ½∮(x dy − y dx).
    double area() const;
    double end_length() const { return 2.0 * geom.a * epsilon * epsilon; }
};

Domain make_domain(const CuspGeometry& geom, double epsilon);

struct BoundaryEdge {
    int a = 0;
    int b = 0;
    BoundaryTag tag = BoundaryTag::Steklov;
};

/// Conforming P1 triangulation. SymmetryPlane edges are interior edges on
/// y = 0 listed so the odd sector can constrain them.
struct Mesh {
    std::vector<Point> nodes;
    std::vector<std::array<int, 3>> triangles;
    std::vector<BoundaryEdge> edges;
    double epsilon = 0.0;
    bool mirror_symmetric = false;

    std::size_t node_count() const { return nodes.size(); }
    double area() const;
    double min_angle_degrees() const;
    std::size_t edge_count(BoundaryTag tag) const;
    /// Sorted unique node indices touching edges with `tag`.
    std::vector<int> tagged_nodes(BoundaryTag tag) const;
    /// For mirror-symmetric meshes: node index of the reflection y ↦ −y.
    std::vector<int> mirror_map() const;
};

struct MeshOptions {
    double h = 0.05;
    double grading = 1.0;
    /// Largest column length over cell height inside the cusp neck.
    double max_aspect = 3.0;
    double min_angle_degrees = 15.0;
};

Mesh make_mesh(const Domain& domain, const MeshOptions& options);
inline Mesh make_mesh(const Domain& domain, double h, double grading = 1.0)
{
    return make_mesh(domain, MeshOptions{h, grading});
}

/// Unit-independent disk mesh centered at the origin, whole boundary Steklov.
Mesh make_disk_mesh(double radius, double h);

/// Structured rectangle [x0,x1]×[y0,y1] split into nx×ny cells, each cut
/// into two triangles; all boundary edges tagged Steklov.
Mesh make_rectangle_mesh(double x0, double x1, double y0, double y1, int nx, int ny);

/// Structural checks: orientation, conformity, tag coverage, minimum angle.
/// Throws NumericalError describing the first failure.
void validate_mesh(const Mesh& mesh, double min_angle_degrees = 15.0);

/// Number of triangles whose interior the vertical line x = z crosses,
/// used to certify resolution of the cusp neck.
int elements_across(const Mesh& mesh, double z);

void write_mesh(std::ostream& out, const Mesh& mesh);
Mesh read_mesh(std::istream& in);

} // namespace cusplab
