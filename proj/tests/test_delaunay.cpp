#include "delaunay.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace spectra::detail {
namespace {

TEST(Predicates, OrientAndIncircle) {
    const Vec2 a(0, 0), b(1, 0), c(0, 1);
    EXPECT_GT(orient(a, b, c), 0.0);
    EXPECT_LT(orient(a, c, b), 0.0);
    EXPECT_GT(incircle(a, b, c, Vec2(0.4, 0.4)), 0.0);
    EXPECT_LT(incircle(a, b, c, Vec2(2.0, 2.0)), 0.0);
    // Cocircular points are treated as neutral.
    EXPECT_EQ(incircle(a, b, c, Vec2(1.0, 1.0)), 0.0);
    const Vec2 cc = circumcenter(a, b, c);
    EXPECT_NEAR(cc.x(), 0.5, 1e-15);
    EXPECT_NEAR(cc.y(), 0.5, 1e-15);
}

void expect_delaunay(const Triangulation& tri) {
    const auto& pts = tri.points();
    for (const auto& t : tri.triangles()) {
        EXPECT_GT(orient(pts[t.v[0]], pts[t.v[1]], pts[t.v[2]]), 0.0);
        for (int e = 0; e < 3; ++e) {
            const int n = t.nbr[e];
            if (n < 0 || t.constrained[e]) {
                continue;
            }
            const auto& other = tri.triangles()[n];
            for (int k = 0; k < 3; ++k) {
                const int v = other.v[k];
                if (v != t.v[0] && v != t.v[1] && v != t.v[2]) {
                    EXPECT_LE(incircle(pts[t.v[0]], pts[t.v[1]], pts[t.v[2]], pts[v]), 0.0);
                }
            }
        }
    }
}

TEST(Triangulation, GridIsDelaunayAndConsistent) {
    Triangulation tri(Vec2(0, 0), Vec2(1, 1));
    for (int i = 0; i <= 6; ++i) {
        for (int j = 0; j <= 6; ++j) {
            tri.insert(Vec2(i / 6.0 + 0.01 * ((i * 7 + j * 3) % 5), j / 6.0 + 0.013 * ((i * 2 + j) % 3)));
        }
    }
    expect_delaunay(tri);
    // Neighbor links are symmetric.
    const auto& tris = tri.triangles();
    for (std::size_t t = 0; t < tris.size(); ++t) {
        for (int e = 0; e < 3; ++e) {
            const int n = tris[t].nbr[e];
            if (n >= 0) {
                const auto& nb = tris[n].nbr;
                EXPECT_TRUE(nb[0] == static_cast<int>(t) || nb[1] == static_cast<int>(t) ||
                            nb[2] == static_cast<int>(t));
            }
        }
    }
}

TEST(Triangulation, DuplicateInsertReturnsExistingVertex) {
    Triangulation tri(Vec2(0, 0), Vec2(1, 1));
    const int a = tri.insert(Vec2(0.3, 0.4));
    EXPECT_TRUE(tri.last_insert_was_new());
    const int b = tri.insert(Vec2(0.3, 0.4));
    EXPECT_FALSE(tri.last_insert_was_new());
    EXPECT_EQ(a, b);
    EXPECT_TRUE(tri.is_super(0));
    EXPECT_FALSE(tri.is_super(a));
}

TEST(Triangulation, ConstrainedEdgeSurvivesInsertion) {
    Triangulation tri(Vec2(0, 0), Vec2(1, 1));
    const int a = tri.insert(Vec2(0.0, 0.5));
    const int b = tri.insert(Vec2(1.0, 0.5));
    ASSERT_TRUE(tri.find_edge(a, b).has_value());
    tri.set_constrained(a, b, true);
    EXPECT_TRUE(tri.is_constrained(a, b));
    EXPECT_TRUE(tri.is_constrained(b, a));
    // Unconstrained, these points would make Delaunay flip ab away.
    for (const Vec2& p : {Vec2(0.5, 0.52), Vec2(0.5, 0.3), Vec2(0.5, 0.49), Vec2(0.4, 0.51)}) {
        tri.insert(p);
    }
    ASSERT_TRUE(tri.find_edge(a, b).has_value());
    EXPECT_TRUE(tri.is_constrained(a, b));
    EXPECT_TRUE(tri.apex_left(a, b).has_value());
    EXPECT_TRUE(tri.apex_left(b, a).has_value());
}

}  // namespace
}  // namespace spectra::detail
