#include "cusplab/errors.hpp"
#include "cusplab/geometry.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace cusplab {

// "<N> nodes <T> triangles <B> edges", then N lines "x y", T lines "i j k",
// B lines "i j tag". Coordinates carry 17 significant digits.
void write_mesh(std::ostream& out, const Mesh& mesh)
{
    out << mesh.nodes.size() << " nodes " << mesh.triangles.size() << " triangles " << mesh.edges.size()
        << " edges\n";
    char buf[96];
    for (const auto& p : mesh.nodes) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g\n", p.x, p.y);
        out << buf;
    }
    for (const auto& t : mesh.triangles)
        out << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
    for (const auto& e : mesh.edges)
        out << e.a << ' ' << e.b << ' ' << tag_letter(e.tag) << '\n';
}

Mesh read_mesh(std::istream& in)
{
    std::string header;
    if (!std::getline(in, header))
        throw IoError("empty mesh file");
    std::istringstream hs(header);
    std::size_t n = 0, t = 0, b = 0;
    std::string w1, w2, w3;
    if (!(hs >> n >> w1 >> t >> w2 >> b >> w3) || w1 != "nodes" || w2 != "triangles" || w3 != "edges")
        throw IoError("malformed mesh header: '" + header + "'");
    Mesh mesh;
    mesh.nodes.resize(n);
    for (auto& p : mesh.nodes)
        if (!(in >> p.x >> p.y))
            throw IoError("truncated node section");
    mesh.triangles.resize(t);
    for (auto& tri : mesh.triangles)
        if (!(in >> tri[0] >> tri[1] >> tri[2]))
            throw IoError("truncated triangle section");
    mesh.edges.resize(b);
    for (auto& e : mesh.edges) {
        char tag = 0;
        if (!(in >> e.a >> e.b >> tag))
            throw IoError("truncated edge section");
        e.tag = tag_from_letter(tag);
        if (e.tag == BoundaryTag::SymmetryPlane)
            mesh.mirror_symmetric = true;
    }
    for (const auto& e : mesh.edges)
        if (e.tag == BoundaryTag::ArtificialEnd) {
            mesh.epsilon = mesh.nodes[static_cast<std::size_t>(e.a)].x;
            break;
        }
    return mesh;
}

} // namespace cusplab
