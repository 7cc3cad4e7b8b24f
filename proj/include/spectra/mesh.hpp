#pragma once

#include "spectra/geometry.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace spectra {

enum class MeshMode {
    annular,  ///< Ω(t) = D \ B_t, obstacle removed
    full,     ///< all of D, obstacle kept as a marked region
};

enum class EdgeMarker { interior, outer_boundary, obstacle_boundary };
enum class Region { annulus, obstacle };

struct MeshParams {
    double target_h = 0.02;            ///< longest admissible edge of the base mesh
    int boundary_samples_outer = 0;    ///< 0 selects max(256, ⌈2π r_max / h⌉)
    int boundary_samples_inner = 0;
    int refinement_levels = 0;         ///< nested uniform subdivisions after meshing

    /// Throws ValidationError when the parameters are unusable for order n.
    void validate(int order) const;
    int outer_samples(const RadialProfile& outer) const;
    int inner_samples(const RadialProfile& inner) const;
};

/// Closed polyline sampled at θ_j = 2πj/m on a polar curve.
struct Polyline {
    std::vector<Vec2> points;
    std::vector<double> theta;
};

Polyline discretize_boundary(const PolarCurve& curve, int m);

/// Closed boundary cycle of a mesh, counterclockwise, with the exact curve
/// parameter of each vertex.
struct BoundaryLoop {
    std::vector<int> vertices;
    std::vector<double> theta;  ///< increasing, in [0, 2π)
};

struct MeshEdge {
    int a = 0;
    int b = 0;
    EdgeMarker marker = EdgeMarker::interior;
};

struct PlanarMesh {
    PlanarMesh(MeshMode mesh_mode, PolarCurve outer, PolarCurve obstacle)
        : mode(mesh_mode), outer_curve(std::move(outer)), obstacle_curve(std::move(obstacle)) {}

    MeshMode mode;
    PolarCurve outer_curve;
    PolarCurve obstacle_curve;
    int level = 0;

    std::vector<Vec2> vertices;
    std::vector<std::array<int, 3>> triangles;  ///< counterclockwise
    std::vector<Region> regions;
    std::vector<MeshEdge> edges;
    BoundaryLoop outer;
    BoundaryLoop obstacle;

    std::size_t num_vertices() const { return vertices.size(); }
    std::size_t num_triangles() const { return triangles.size(); }

    double triangle_area(std::size_t t) const;
    double area() const;
    double region_area(Region region) const;
    double max_edge_length() const;
    double min_angle_degrees() const;

    /// Throws MeshError when an invariant (orientation, closed boundary cycles,
    /// obstacle interior empty in annular mode) does not hold.
    void check_invariants() const;
};

/// Base mesh (refinement level 0): constrained Delaunay triangulation of the
/// boundary polylines plus hexagonal interior seeds, refined until every
/// triangle has minimum angle ≥ 25° and longest edge ≤ target_h.
PlanarMesh triangulate_base(const Configuration& config, const MeshParams& params, MeshMode mode);

/// Four-way split of every triangle; new boundary vertices are placed on the
/// analytic curve at the mean parameter of the split edge.
PlanarMesh refine_uniform(const PlanarMesh& mesh);

/// Base mesh followed by params.refinement_levels uniform refinements.
PlanarMesh triangulate(const Configuration& config, const MeshParams& params, MeshMode mode);

/// Levels 0..params.refinement_levels of the same nested hierarchy.
std::vector<PlanarMesh> triangulate_hierarchy(const Configuration& config, const MeshParams& params,
                                              MeshMode mode);

/// Same connectivity moved onto Ω(t + delta): the obstacle and everything
/// within its largest radius turn rigidly by delta, the outer boundary stays,
/// and the rotation angle blends smoothly to zero across the gap.
PlanarMesh rotate_obstacle(const PlanarMesh& mesh, double delta);

/// $Vertices / $Triangles / $Edges text dump for debugging.
std::string export_text(const PlanarMesh& mesh);

/// Bucket grid for point location and P1 interpolation.
class TriangleLocator {
public:
    explicit TriangleLocator(const PlanarMesh& mesh);

    struct Hit {
        int triangle = -1;
        std::array<double, 3> barycentric{};
    };

    std::optional<Hit> locate(const Vec2& p) const;
    /// Value of the P1 interpolant of nodal values at p, if p is inside the mesh.
    std::optional<double> interpolate(const Eigen::VectorXd& nodal, const Vec2& p) const;

private:
    const PlanarMesh* mesh_;
    Vec2 lo_;
    double cell_ = 1.0;
    int nx_ = 1;
    int ny_ = 1;
    std::vector<std::vector<int>> buckets_;
};

}  // namespace spectra
