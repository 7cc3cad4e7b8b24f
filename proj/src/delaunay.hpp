#pragma once

#include "spectra/geometry.hpp"

#include <array>
#include <optional>
#include <vector>

namespace spectra::detail {

double orient(const Vec2& a, const Vec2& b, const Vec2& c);
/// Positive when d lies inside the circumcircle of the counterclockwise triangle abc.
double incircle(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d);
Vec2 circumcenter(const Vec2& a, const Vec2& b, const Vec2& c);

/// Incremental constrained Delaunay triangulation.
///
/// Points are inserted one at a time into an enclosing super triangle and
/// legalized by Lawson flips; edges flagged as constrained are never flipped.
/// Edge i of a triangle is the edge opposite vertex i.
class Triangulation {
public:
    struct Triangle {
        std::array<int, 3> v{};
        std::array<int, 3> nbr{-1, -1, -1};
        std::array<bool, 3> constrained{false, false, false};
    };

    struct EdgeRef {
        int tri = -1;
        int edge = -1;  ///< local index of the opposite vertex
    };

    /// Super triangle comfortably enclosing the box [lo, hi].
    Triangulation(const Vec2& lo, const Vec2& hi);

    static constexpr int kSuperVertices = 3;

    /// Inserts p and returns its vertex index, or the index of an existing
    /// vertex that coincides with p.
    int insert(const Vec2& p);

    /// Whether the last insert() created a new vertex.
    bool last_insert_was_new() const { return last_new_; }

    std::optional<EdgeRef> find_edge(int a, int b) const;
    void set_constrained(int a, int b, bool value);
    bool is_constrained(int a, int b) const;

    /// Vertex opposite the directed edge a→b (the apex of the triangle left of it).
    std::optional<int> apex_left(int a, int b) const;

    const std::vector<Vec2>& points() const { return points_; }
    const std::vector<Triangle>& triangles() const { return tris_; }
    bool is_super(int v) const { return v < kSuperVertices; }
    bool touches_super(int t) const;

private:
    struct Location {
        int tri = -1;
        int on_edge = -1;
        int vertex = -1;
    };

    Location locate(const Vec2& p) const;
    Location classify(int t, const Vec2& p) const;
    void split_triangle(int t, int p);
    void split_edge(int t, int e, int p);
    void legalize(std::vector<EdgeRef>& stack);
    bool flip(int t, int e);
    void replace_neighbor(int t, int old_nbr, int new_nbr);
    void touch(int t);

    std::vector<Vec2> points_;
    std::vector<Triangle> tris_;
    std::vector<int> vertex_tri_;
    mutable int last_tri_ = 0;
    bool last_new_ = false;
};

}  // namespace spectra::detail
