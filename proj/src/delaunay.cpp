#include "delaunay.hpp"

#include "spectra/errors.hpp"

#include <cmath>

namespace spectra::detail {

namespace {

constexpr double kOnEdgeTolerance = 1e-12;
constexpr double kDuplicateTolerance = 1e-12;
constexpr double kIncircleTolerance = 1e-12;

int next(int i) { return (i + 1) % 3; }
int prev(int i) { return (i + 2) % 3; }

}  // namespace

double orient(const Vec2& a, const Vec2& b, const Vec2& c) {
    return (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
}

double incircle(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
    const double adx = a.x() - d.x(), ady = a.y() - d.y();
    const double bdx = b.x() - d.x(), bdy = b.y() - d.y();
    const double cdx = c.x() - d.x(), cdy = c.y() - d.y();
    const double alift = adx * adx + ady * ady;
    const double blift = bdx * bdx + bdy * bdy;
    const double clift = cdx * cdx + cdy * cdy;
    const double t1 = alift * (bdx * cdy - bdy * cdx);
    const double t2 = blift * (cdx * ady - cdy * adx);
    const double t3 = clift * (adx * bdy - ady * bdx);
    const double det = t1 + t2 + t3;
    const double permanent = alift * (std::fabs(bdx * cdy) + std::fabs(bdy * cdx)) +
                             blift * (std::fabs(cdx * ady) + std::fabs(cdy * adx)) +
                             clift * (std::fabs(adx * bdy) + std::fabs(ady * bdx));
    // Near-cocircular quadruples are treated as "not inside" so that flips cannot cycle.
    if (std::fabs(det) <= kIncircleTolerance * permanent) {
        return 0.0;
    }
    return det;
}

Vec2 circumcenter(const Vec2& a, const Vec2& b, const Vec2& c) {
    const Vec2 ab = b - a;
    const Vec2 ac = c - a;
    const double d = 2.0 * (ab.x() * ac.y() - ab.y() * ac.x());
    const double ab2 = ab.squaredNorm();
    const double ac2 = ac.squaredNorm();
    return a + Vec2((ac.y() * ab2 - ab.y() * ac2) / d, (ab.x() * ac2 - ac.x() * ab2) / d);
}

Triangulation::Triangulation(const Vec2& lo, const Vec2& hi) {
    const Vec2 center = 0.5 * (lo + hi);
    const double extent = std::max((hi - lo).maxCoeff(), 1e-6);
    const double radius = 20.0 * extent;
    for (int k = 0; k < 3; ++k) {
        const double angle = kPi / 2.0 + k * kTwoPi / 3.0;
        points_.push_back(center + radius * Vec2(std::cos(angle), std::sin(angle)));
    }
    Triangle t;
    t.v = {0, 1, 2};
    tris_.push_back(t);
    vertex_tri_ = {0, 0, 0};
}

bool Triangulation::touches_super(int t) const {
    const auto& v = tris_[t].v;
    return is_super(v[0]) || is_super(v[1]) || is_super(v[2]);
}

void Triangulation::touch(int t) {
    for (int v : tris_[t].v) {
        vertex_tri_[v] = t;
    }
}

void Triangulation::replace_neighbor(int t, int old_nbr, int new_nbr) {
    if (t < 0) {
        return;
    }
    for (int i = 0; i < 3; ++i) {
        if (tris_[t].nbr[i] == old_nbr) {
            tris_[t].nbr[i] = new_nbr;
            return;
        }
    }
    throw MeshError("triangulation adjacency is inconsistent");
}

Triangulation::Location Triangulation::classify(int t, const Vec2& p) const {
    const auto& tri = tris_[t];
    Location loc;
    loc.tri = t;
    for (int i = 0; i < 3; ++i) {
        if ((points_[tri.v[i]] - p).norm() <= kDuplicateTolerance) {
            loc.vertex = tri.v[i];
            return loc;
        }
    }
    for (int i = 0; i < 3; ++i) {
        const Vec2& a = points_[tri.v[next(i)]];
        const Vec2& b = points_[tri.v[prev(i)]];
        const double o = orient(a, b, p);
        if (std::fabs(o) <= kOnEdgeTolerance * (b - a).squaredNorm()) {
            loc.on_edge = i;
            return loc;
        }
    }
    return loc;
}

Triangulation::Location Triangulation::locate(const Vec2& p) const {
    int t = (last_tri_ >= 0 && last_tri_ < static_cast<int>(tris_.size())) ? last_tri_ : 0;
    const std::size_t limit = 3 * tris_.size() + 16;
    for (std::size_t step = 0; step < limit; ++step) {
        const auto& tri = tris_[t];
        bool moved = false;
        for (int k = 0; k < 3; ++k) {
            const int i = static_cast<int>((k + step) % 3);
            const Vec2& a = points_[tri.v[next(i)]];
            const Vec2& b = points_[tri.v[prev(i)]];
            if (orient(a, b, p) < 0.0) {
                if (tri.nbr[i] < 0) {
                    throw MeshError("point lies outside the enclosing triangle");
                }
                t = tri.nbr[i];
                moved = true;
                break;
            }
        }
        if (!moved) {
            last_tri_ = t;
            return classify(t, p);
        }
    }
    // Visibility walks can cycle in constrained triangulations; fall back to a scan.
    for (int s = 0; s < static_cast<int>(tris_.size()); ++s) {
        const auto& tri = tris_[s];
        bool inside = true;
        for (int i = 0; i < 3 && inside; ++i) {
            const Vec2& a = points_[tri.v[next(i)]];
            const Vec2& b = points_[tri.v[prev(i)]];
            inside = orient(a, b, p) >= -kOnEdgeTolerance * (b - a).squaredNorm();
        }
        if (inside) {
            last_tri_ = s;
            return classify(s, p);
        }
    }
    throw MeshError("point location failed");
}

int Triangulation::insert(const Vec2& p) {
    const Location loc = locate(p);
    if (loc.vertex >= 0) {
        last_new_ = false;
        return loc.vertex;
    }
    last_new_ = true;
    const int id = static_cast<int>(points_.size());
    points_.push_back(p);
    vertex_tri_.push_back(loc.tri);
    if (loc.on_edge >= 0) {
        split_edge(loc.tri, loc.on_edge, id);
    } else {
        split_triangle(loc.tri, id);
    }
    return id;
}

void Triangulation::split_triangle(int t, int p) {
    const Triangle old = tris_[t];
    const int a = old.v[0], b = old.v[1], c = old.v[2];
    const int na = old.nbr[0], nb = old.nbr[1], nc = old.nbr[2];
    const int t0 = t;
    const int t1 = static_cast<int>(tris_.size());
    const int t2 = t1 + 1;
    tris_.resize(tris_.size() + 2);

    tris_[t0].v = {p, b, c};
    tris_[t0].nbr = {na, t1, t2};
    tris_[t0].constrained = {old.constrained[0], false, false};

    tris_[t1].v = {p, c, a};
    tris_[t1].nbr = {nb, t2, t0};
    tris_[t1].constrained = {old.constrained[1], false, false};

    tris_[t2].v = {p, a, b};
    tris_[t2].nbr = {nc, t0, t1};
    tris_[t2].constrained = {old.constrained[2], false, false};

    replace_neighbor(nb, t, t1);
    replace_neighbor(nc, t, t2);
    touch(t0);
    touch(t1);
    touch(t2);

    std::vector<EdgeRef> stack{{t0, 0}, {t1, 0}, {t2, 0}};
    legalize(stack);
}

void Triangulation::split_edge(int t, int e, int p) {
    const Triangle tt = tris_[t];
    const int u = tt.nbr[e];
    if (u < 0) {
        throw MeshError("cannot split an edge of the enclosing triangle");
    }
    const Triangle uu = tris_[u];
    int j = -1;
    for (int i = 0; i < 3; ++i) {
        if (uu.nbr[i] == t) {
            j = i;
        }
    }
    if (j < 0) {
        throw MeshError("triangulation adjacency is inconsistent");
    }
    const int c = tt.v[e], a = tt.v[next(e)], b = tt.v[prev(e)];
    const int d = uu.v[j];
    const int tA = tt.nbr[next(e)], tB = tt.nbr[prev(e)];
    const bool cA = tt.constrained[next(e)], cB = tt.constrained[prev(e)];
    const int uA = uu.nbr[prev(j)], uB = uu.nbr[next(j)];
    const bool cuA = uu.constrained[prev(j)], cuB = uu.constrained[next(j)];
    const bool split_constrained = tt.constrained[e];

    const int t0 = t, u0 = u;
    const int t1 = static_cast<int>(tris_.size());
    const int u1 = t1 + 1;
    tris_.resize(tris_.size() + 2);

    tris_[t0].v = {p, b, c};
    tris_[t0].nbr = {tA, t1, u0};
    tris_[t0].constrained = {cA, false, split_constrained};

    tris_[t1].v = {p, c, a};
    tris_[t1].nbr = {tB, u1, t0};
    tris_[t1].constrained = {cB, split_constrained, false};

    tris_[u0].v = {p, d, b};
    tris_[u0].nbr = {uA, t0, u1};
    tris_[u0].constrained = {cuA, split_constrained, false};

    tris_[u1].v = {p, a, d};
    tris_[u1].nbr = {uB, u0, t1};
    tris_[u1].constrained = {cuB, false, split_constrained};

    replace_neighbor(tB, t, t1);
    replace_neighbor(uB, u, u1);
    touch(t0);
    touch(t1);
    touch(u0);
    touch(u1);

    std::vector<EdgeRef> stack{{t0, 0}, {t1, 0}, {u0, 0}, {u1, 0}};
    legalize(stack);
}

bool Triangulation::flip(int t, int k) {
    const Triangle tt = tris_[t];
    const int u = tt.nbr[k];
    const Triangle uu = tris_[u];
    int j = -1;
    for (int i = 0; i < 3; ++i) {
        if (uu.nbr[i] == t) {
            j = i;
        }
    }
    if (j < 0) {
        throw MeshError("triangulation adjacency is inconsistent");
    }
    const int p = tt.v[k], a = tt.v[next(k)], b = tt.v[prev(k)];
    const int q = uu.v[j];
    if (orient(points_[p], points_[a], points_[q]) <= 0.0 ||
        orient(points_[p], points_[q], points_[b]) <= 0.0) {
        return false;
    }
    const int A1 = tt.nbr[next(k)], A2 = tt.nbr[prev(k)];
    const bool cA1 = tt.constrained[next(k)], cA2 = tt.constrained[prev(k)];
    const int B1 = uu.nbr[next(j)], B2 = uu.nbr[prev(j)];
    const bool cB1 = uu.constrained[next(j)], cB2 = uu.constrained[prev(j)];

    tris_[t].v = {p, a, q};
    tris_[t].nbr = {B1, u, A2};
    tris_[t].constrained = {cB1, false, cA2};

    tris_[u].v = {p, q, b};
    tris_[u].nbr = {B2, A1, t};
    tris_[u].constrained = {cB2, cA1, false};

    replace_neighbor(B1, u, t);
    replace_neighbor(A1, t, u);
    touch(t);
    touch(u);
    return true;
}

void Triangulation::legalize(std::vector<EdgeRef>& stack) {
    while (!stack.empty()) {
        const auto [t, k] = stack.back();
        stack.pop_back();
        const Triangle& tt = tris_[t];
        const int u = tt.nbr[k];
        if (u < 0 || tt.constrained[k]) {
            continue;
        }
        const Triangle& uu = tris_[u];
        int q = -1;
        for (int i = 0; i < 3; ++i) {
            if (uu.nbr[i] == t) {
                q = uu.v[i];
            }
        }
        if (incircle(points_[tt.v[0]], points_[tt.v[1]], points_[tt.v[2]], points_[q]) > 0.0) {
            // After the flip the inserted point sits at local index 0 of both triangles.
            if (flip(t, k)) {
                stack.push_back({t, 0});
                stack.push_back({u, 0});
            }
        }
    }
}

std::optional<Triangulation::EdgeRef> Triangulation::find_edge(int a, int b) const {
    const int start = vertex_tri_[a];
    auto check = [&](int t) -> std::optional<EdgeRef> {
        const auto& tri = tris_[t];
        for (int i = 0; i < 3; ++i) {
            if (tri.v[i] != a) {
                continue;
            }
            if (tri.v[next(i)] == b) {
                return EdgeRef{t, prev(i)};
            }
            if (tri.v[prev(i)] == b) {
                const int n = tri.nbr[next(i)];
                if (n >= 0) {
                    for (int m = 0; m < 3; ++m) {
                        if (tris_[n].nbr[m] == t) {
                            return EdgeRef{n, m};
                        }
                    }
                }
                return EdgeRef{t, next(i)};
            }
        }
        return std::nullopt;
    };
    auto local = [&](int t) {
        for (int i = 0; i < 3; ++i) {
            if (tris_[t].v[i] == a) {
                return i;
            }
        }
        throw MeshError("vertex-to-triangle map is stale");
    };

    int t = start;
    do {
        if (auto hit = check(t)) {
            return hit;
        }
        t = tris_[t].nbr[next(local(t))];
    } while (t >= 0 && t != start);
    if (t < 0) {
        t = tris_[start].nbr[prev(local(start))];
        while (t >= 0) {
            if (auto hit = check(t)) {
                return hit;
            }
            t = tris_[t].nbr[prev(local(t))];
        }
    }
    return std::nullopt;
}

void Triangulation::set_constrained(int a, int b, bool value) {
    const auto ref = find_edge(a, b);
    if (!ref) {
        throw MeshError("cannot constrain a missing edge");
    }
    tris_[ref->tri].constrained[ref->edge] = value;
    const int n = tris_[ref->tri].nbr[ref->edge];
    if (n >= 0) {
        for (int m = 0; m < 3; ++m) {
            if (tris_[n].nbr[m] == ref->tri) {
                tris_[n].constrained[m] = value;
            }
        }
    }
}

bool Triangulation::is_constrained(int a, int b) const {
    const auto ref = find_edge(a, b);
    return ref && tris_[ref->tri].constrained[ref->edge];
}

std::optional<int> Triangulation::apex_left(int a, int b) const {
    const auto ref = find_edge(a, b);
    if (!ref) {
        return std::nullopt;
    }
    const auto& tri = tris_[ref->tri];
    const int e = ref->edge;
    if (tri.v[next(e)] == a && tri.v[prev(e)] == b) {
        return tri.v[e];
    }
    return std::nullopt;
}

}  // namespace spectra::detail
