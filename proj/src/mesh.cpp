#include "spectra/mesh.hpp"

#include "delaunay.hpp"
#include "spectra/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

namespace spectra {

namespace {

using detail::Triangulation;

constexpr double kMinAngleDegrees = 25.0;
constexpr double kSeedClearance = 0.5;  // interior seeds keep this many target_h from the boundary
constexpr int kEncroachWindow = 3;

std::uint64_t edge_key(int a, int b) {
    const auto lo = static_cast<std::uint64_t>(std::min(a, b));
    const auto hi = static_cast<std::uint64_t>(std::max(a, b));
    return (hi << 32) | lo;
}

double polar_angle(const Vec2& p) { return wrap_angle(std::atan2(p.y(), p.x())); }

double min_angle_of(const Vec2& a, const Vec2& b, const Vec2& c) {
    const double la = (b - c).norm();
    const double lb = (c - a).norm();
    const double lc = (a - b).norm();
    // Smallest angle is opposite the shortest side.
    const double area2 = std::fabs(detail::orient(a, b, c));
    const double shortest = std::min({la, lb, lc});
    double s1 = 0.0, s2 = 0.0;
    if (shortest == la) {
        s1 = lb;
        s2 = lc;
    } else if (shortest == lb) {
        s1 = la;
        s2 = lc;
    } else {
        s1 = la;
        s2 = lb;
    }
    const double sine = area2 / (s1 * s2);
    return std::asin(std::clamp(sine, 0.0, 1.0));
}

bool encroaches(const Vec2& a, const Vec2& b, const Vec2& c) { return (a - c).dot(b - c) < 0.0; }

/// Constrained Delaunay mesher for the region between two star-shaped polar loops.
class Mesher {
public:
    Mesher(const Configuration& config, const MeshParams& params, MeshMode mode)
        : mode_(mode),
          h_(params.target_h),
          outer_curve_(config.outer_curve()),
          obstacle_curve_(config.obstacle_curve()),
          tri_(Vec2::Constant(-config.pair.outer.sampled_max()),
               Vec2::Constant(config.pair.outer.sampled_max())) {
        loops_[0].curve = &outer_curve_;
        loops_[1].curve = &obstacle_curve_;
        loops_[0].marker = EdgeMarker::outer_boundary;
        loops_[1].marker = EdgeMarker::obstacle_boundary;
        loops_[0].samples = params.outer_samples(config.pair.outer);
        loops_[1].samples = params.inner_samples(config.pair.inner);
        vertex_loop_.assign(Triangulation::kSuperVertices, -1);
    }

    PlanarMesh run() {
        for (int l = 0; l < 2; ++l) {
            insert_loop(l);
        }
        for (int l = 0; l < 2; ++l) {
            constrain_loop(l);
        }
        insert_seeds();
        insertion_cap_ = 30 * tri_.points().size() + 20000;
        split_encroached_segments();
        refine();
        return extract();
    }

private:
    enum class Place { outside, annulus, obstacle };

    struct Loop {
        const PolarCurve* curve = nullptr;
        EdgeMarker marker = EdgeMarker::interior;
        int samples = 0;
        std::vector<int> verts;
        std::vector<double> theta;

        int size() const { return static_cast<int>(verts.size()); }
        double theta_end(int j) const {
            return j + 1 < size() ? theta[j + 1] : theta[0] + kTwoPi;
        }
        int segment_at(double angle) const {
            const auto it = std::upper_bound(theta.begin(), theta.end(), angle);
            const int j = static_cast<int>(it - theta.begin()) - 1;
            return j < 0 ? size() - 1 : j;
        }
        int position(int v) const {
            const auto it = std::find(verts.begin(), verts.end(), v);
            if (it == verts.end()) {
                throw MeshError("vertex is not on the boundary loop");
            }
            return static_cast<int>(it - verts.begin());
        }
    };

    const Vec2& pt(int v) const { return tri_.points()[v]; }

    int add_vertex(const Vec2& p, int loop) {
        const int id = tri_.insert(p);
        if (!tri_.last_insert_was_new()) {
            return id;
        }
        vertex_loop_.push_back(loop);
        ++insertions_;
        return id;
    }

    void insert_loop(int l) {
        Loop& loop = loops_[l];
        const Polyline line = discretize_boundary(*loop.curve, loop.samples);
        for (std::size_t j = 0; j < line.points.size(); ++j) {
            const int id = add_vertex(line.points[j], l);
            if (!tri_.last_insert_was_new()) {
                throw MeshError("boundary samples coincide");
            }
            loop.verts.push_back(id);
            loop.theta.push_back(line.theta[j]);
        }
    }

    bool inside_loop(const Loop& loop, const Vec2& p) const {
        if (p.squaredNorm() == 0.0) {
            return true;
        }
        const int j = loop.segment_at(polar_angle(p));
        const Vec2& a = pt(loop.verts[j]);
        const Vec2& b = pt(loop.verts[(j + 1) % loop.size()]);
        return detail::orient(a, b, p) > 0.0;
    }

    Place place(const Vec2& p) const {
        if (!inside_loop(loops_[0], p)) {
            return Place::outside;
        }
        return inside_loop(loops_[1], p) ? Place::obstacle : Place::annulus;
    }

    bool is_target(Place place) const {
        return place == Place::annulus || (mode_ == MeshMode::full && place == Place::obstacle);
    }

    // Splits segment j of loop l at the curve point of its mean parameter and
    // returns the new vertex. The two halves are not yet constrained.
    int split_segment(int l, int j) {
        Loop& loop = loops_[l];
        const int a = loop.verts[j];
        const int b = loop.verts[(j + 1) % loop.size()];
        if (tri_.find_edge(a, b)) {
            tri_.set_constrained(a, b, false);
        }
        const double mid = 0.5 * (loop.theta[j] + loop.theta_end(j));
        const int id = add_vertex(loop.curve->point(mid), l);
        if (!tri_.last_insert_was_new()) {
            throw MeshError("boundary split produced a duplicate vertex");
        }
        loop.verts.insert(loop.verts.begin() + j + 1, id);
        loop.theta.insert(loop.theta.begin() + j + 1, wrap_angle(mid));
        if (loop.theta[j + 1] < loop.theta[j]) {
            throw MeshError("boundary parameters lost their order");
        }
        return id;
    }

    // Ensures segments [first, first + count) of loop l are constrained edges,
    // splitting any that are missing.
    void constrain_range(int l, int first, int count) {
        Loop& loop = loops_[l];
        int j = first;
        int remaining = count;
        while (remaining > 0) {
            const int a = loop.verts[j % loop.size()];
            const int b = loop.verts[(j + 1) % loop.size()];
            if (tri_.find_edge(a, b)) {
                tri_.set_constrained(a, b, true);
                ++j;
                --remaining;
            } else {
                split_segment(l, j % loop.size());
                ++remaining;
                check_cap();
            }
        }
    }

    void constrain_loop(int l) { constrain_range(l, 0, loops_[l].size()); }

    void check_cap() const {
        if (insertions_ > insertion_cap_) {
            throw MeshError("mesh refinement did not terminate");
        }
    }

    double clearance(const Loop& loop, const Vec2& p) const {
        const double angle = std::atan2(p.y(), p.x());
        const double rho = loop.curve->radius(angle);
        const double drho = loop.curve->derivative(angle);
        return std::fabs(p.norm() - rho) * rho / std::hypot(rho, drho);
    }

    void insert_seeds() {
        const double extent = loops_[0].curve->profile().sampled_max();
        const double dy = h_ * std::sqrt(3.0) / 2.0;
        const int rows = static_cast<int>(std::ceil(extent / dy));
        const int cols = static_cast<int>(std::ceil(extent / h_)) + 1;
        for (int j = -rows; j <= rows; ++j) {
            const double shift = (j % 2 == 0) ? 0.0 : 0.5 * h_;
            for (int i = -cols; i <= cols; ++i) {
                const Vec2 p(i * h_ + shift, j * dy);
                if (!is_target(place(p))) {
                    continue;
                }
                if (clearance(loops_[0], p) < kSeedClearance * h_ ||
                    clearance(loops_[1], p) < kSeedClearance * h_) {
                    continue;
                }
                add_vertex(p, -1);
            }
        }
    }

    bool segment_encroached(int a, int b) const {
        for (const auto apex : {tri_.apex_left(a, b), tri_.apex_left(b, a)}) {
            if (apex && !tri_.is_super(*apex) && encroaches(pt(a), pt(b), pt(*apex))) {
                return true;
            }
        }
        return false;
    }

    // Splits segment j of loop l and keeps splitting halves while a neighbouring
    // vertex lies inside their diametral circle.
    void split_recursively(int l, int j) {
        std::vector<int> pending{loops_[l].verts[j]};
        while (!pending.empty()) {
            const int start = pending.back();
            pending.pop_back();
            Loop& loop = loops_[l];
            const int pos = loop.position(start);
            split_segment(l, pos);
            constrain_range(l, pos, 2);
            for (int k = 0; k < 2; ++k) {
                const int p = loop.position(start);
                const int idx = (p + k) % loop.size();
                const int a = loop.verts[idx];
                const int b = loop.verts[(idx + 1) % loop.size()];
                if (segment_encroached(a, b)) {
                    pending.push_back(a);
                }
            }
            check_cap();
        }
    }

    void split_encroached_segments() {
        for (int l = 0; l < 2; ++l) {
            for (int j = 0; j < loops_[l].size(); ++j) {
                const Loop& loop = loops_[l];
                const int a = loop.verts[j];
                const int b = loop.verts[(j + 1) % loop.size()];
                if (segment_encroached(a, b)) {
                    split_recursively(l, j);
                }
            }
        }
    }

    bool is_bad(int t) const {
        if (tri_.touches_super(t)) {
            return false;
        }
        const auto& v = tri_.triangles()[t].v;
        const Vec2& a = pt(v[0]);
        const Vec2& b = pt(v[1]);
        const Vec2& c = pt(v[2]);
        if (!is_target(place((a + b + c) / 3.0))) {
            return false;
        }
        if (skip_.count(key3(v))) {
            return false;
        }
        const double longest = std::max({(a - b).norm(), (b - c).norm(), (c - a).norm()});
        if (longest > h_ * (1.0 + 1e-9)) {
            return true;
        }
        return min_angle_of(a, b, c) < kMinAngleDegrees * kPi / 180.0;
    }

    static std::array<int, 3> key3(std::array<int, 3> v) {
        std::sort(v.begin(), v.end());
        return v;
    }

    void process(int t) {
        const auto v = tri_.triangles()[t].v;
        const Vec2 centroid = (pt(v[0]) + pt(v[1]) + pt(v[2])) / 3.0;
        const Vec2 c = detail::circumcenter(pt(v[0]), pt(v[1]), pt(v[2]));

        std::vector<std::pair<int, int>> hits;  // (loop, start vertex)
        const double angle = polar_angle(c);
        for (int l = 0; l < 2; ++l) {
            const Loop& loop = loops_[l];
            const int j0 = loop.segment_at(angle);
            for (int d = -kEncroachWindow; d <= kEncroachWindow; ++d) {
                const int j = ((j0 + d) % loop.size() + loop.size()) % loop.size();
                const int a = loop.verts[j];
                const int b = loop.verts[(j + 1) % loop.size()];
                if (encroaches(pt(a), pt(b), c)) {
                    hits.emplace_back(l, a);
                }
            }
        }
        const Place here = place(centroid);
        const Place there = place(c);
        if (hits.empty() && here != there) {
            const int l = (here == Place::outside || there == Place::outside) ? 0 : 1;
            hits.emplace_back(l, loops_[l].verts[loops_[l].segment_at(angle)]);
        }
        if (!hits.empty()) {
            std::sort(hits.begin(), hits.end());
            hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
            for (const auto& [l, start] : hits) {
                split_recursively(l, loops_[l].position(start));
            }
            return;
        }
        add_vertex(c, -1);
        if (!tri_.last_insert_was_new()) {
            skip_.insert(key3(v));
        }
        check_cap();
    }

    void refine() {
        for (int pass = 0; pass < 1000; ++pass) {
            bool changed = false;
            for (int t = 0; t < static_cast<int>(tri_.triangles().size()); ++t) {
                if (is_bad(t)) {
                    process(t);
                    changed = true;
                }
            }
            if (!changed) {
                return;
            }
        }
        throw MeshError("mesh quality refinement did not converge");
    }

    PlanarMesh extract() const {
        PlanarMesh mesh(mode_, outer_curve_, obstacle_curve_);
        const auto& tris = tri_.triangles();
        std::vector<int> keep;
        std::vector<Region> regions;
        std::vector<char> used(tri_.points().size(), 0);
        for (int t = 0; t < static_cast<int>(tris.size()); ++t) {
            if (tri_.touches_super(t)) {
                continue;
            }
            const auto& v = tris[t].v;
            const Place p = place((pt(v[0]) + pt(v[1]) + pt(v[2])) / 3.0);
            if (!is_target(p)) {
                continue;
            }
            keep.push_back(t);
            regions.push_back(p == Place::obstacle ? Region::obstacle : Region::annulus);
            for (int id : v) {
                used[id] = 1;
            }
        }
        std::vector<int> remap(tri_.points().size(), -1);
        for (std::size_t id = 0; id < used.size(); ++id) {
            if (used[id]) {
                remap[id] = static_cast<int>(mesh.vertices.size());
                mesh.vertices.push_back(pt(static_cast<int>(id)));
            }
        }
        for (int t : keep) {
            const auto& v = tris[t].v;
            mesh.triangles.push_back({remap[v[0]], remap[v[1]], remap[v[2]]});
        }
        mesh.regions = std::move(regions);
        auto copy_loop = [&](const Loop& loop, BoundaryLoop& out) {
            for (int j = 0; j < loop.size(); ++j) {
                const int id = remap[loop.verts[j]];
                if (id < 0) {
                    throw MeshError("boundary vertex is not part of the mesh");
                }
                out.vertices.push_back(id);
                out.theta.push_back(loop.theta[j]);
            }
        };
        copy_loop(loops_[0], mesh.outer);
        copy_loop(loops_[1], mesh.obstacle);
        return mesh;
    }

    MeshMode mode_;
    double h_;
    PolarCurve outer_curve_;
    PolarCurve obstacle_curve_;
    Triangulation tri_;
    std::array<Loop, 2> loops_;
    std::vector<int> vertex_loop_;
    std::set<std::array<int, 3>> skip_;
    std::size_t insertions_ = 0;
    std::size_t insertion_cap_ = 1u << 30;
};

void build_edges(PlanarMesh& mesh) {
    std::unordered_map<std::uint64_t, EdgeMarker> boundary;
    auto mark = [&](const BoundaryLoop& loop, EdgeMarker marker) {
        const std::size_t m = loop.vertices.size();
        for (std::size_t j = 0; j < m; ++j) {
            boundary[edge_key(loop.vertices[j], loop.vertices[(j + 1) % m])] = marker;
        }
    };
    mark(mesh.outer, EdgeMarker::outer_boundary);
    mark(mesh.obstacle, EdgeMarker::obstacle_boundary);

    mesh.edges.clear();
    std::unordered_map<std::uint64_t, int> seen;
    seen.reserve(3 * mesh.triangles.size());
    for (const auto& tri : mesh.triangles) {
        for (int i = 0; i < 3; ++i) {
            const int a = tri[i];
            const int b = tri[(i + 1) % 3];
            const auto key = edge_key(a, b);
            if (seen.emplace(key, static_cast<int>(mesh.edges.size())).second) {
                const auto it = boundary.find(key);
                mesh.edges.push_back(
                    {std::min(a, b), std::max(a, b), it == boundary.end() ? EdgeMarker::interior : it->second});
            }
        }
    }
}

double smoothstep(double x) {
    x = std::clamp(x, 0.0, 1.0);
    return x * x * (3.0 - 2.0 * x);
}

}  // namespace

void MeshParams::validate(int order) const {
    if (!(target_h > 0.0) || !std::isfinite(target_h)) {
        throw ValidationError("mesh target_h must be positive");
    }
    for (int samples : {boundary_samples_outer, boundary_samples_inner}) {
        if (samples != 0 && samples < 16 * order) {
            throw ValidationError("boundary samples must be at least 16·n = " + std::to_string(16 * order));
        }
    }
    if (refinement_levels < 0 || refinement_levels > 5) {
        throw ValidationError("refinement_levels must lie in [0, 5]");
    }
}

namespace {

int default_samples(const RadialProfile& profile, double h) {
    const int by_length = static_cast<int>(std::ceil(kTwoPi * profile.sampled_max() / h));
    return std::max({256, by_length, 16 * profile.order()});
}

}  // namespace

int MeshParams::outer_samples(const RadialProfile& outer) const {
    return boundary_samples_outer > 0 ? boundary_samples_outer : default_samples(outer, target_h);
}

int MeshParams::inner_samples(const RadialProfile& inner) const {
    return boundary_samples_inner > 0 ? boundary_samples_inner : default_samples(inner, target_h);
}

Polyline discretize_boundary(const PolarCurve& curve, int m) {
    if (m < 3) {
        throw ValidationError("a closed polyline needs at least 3 vertices");
    }
    Polyline line;
    line.points.reserve(m);
    line.theta.reserve(m);
    for (int j = 0; j < m; ++j) {
        const double theta = kTwoPi * j / m;
        line.theta.push_back(theta);
        line.points.push_back(curve.point(theta));
    }
    return line;
}

double PlanarMesh::triangle_area(std::size_t t) const {
    const auto& tri = triangles[t];
    return 0.5 * detail::orient(vertices[tri[0]], vertices[tri[1]], vertices[tri[2]]);
}

double PlanarMesh::area() const {
    double sum = 0.0;
    for (std::size_t t = 0; t < triangles.size(); ++t) {
        sum += triangle_area(t);
    }
    return sum;
}

double PlanarMesh::region_area(Region region) const {
    double sum = 0.0;
    for (std::size_t t = 0; t < triangles.size(); ++t) {
        if (regions[t] == region) {
            sum += triangle_area(t);
        }
    }
    return sum;
}

double PlanarMesh::max_edge_length() const {
    double longest = 0.0;
    for (const auto& e : edges) {
        longest = std::max(longest, (vertices[e.a] - vertices[e.b]).norm());
    }
    return longest;
}

double PlanarMesh::min_angle_degrees() const {
    double smallest = 180.0;
    for (const auto& tri : triangles) {
        smallest = std::min(smallest, min_angle_of(vertices[tri[0]], vertices[tri[1]], vertices[tri[2]]) *
                                          180.0 / kPi);
    }
    return smallest;
}

void PlanarMesh::check_invariants() const {
    for (std::size_t t = 0; t < triangles.size(); ++t) {
        if (!(triangle_area(t) > 0.0)) {
            throw MeshError("triangle " + std::to_string(t) + " has non-positive signed area");
        }
    }
    // Each boundary cycle must consist of mesh edges carrying its marker, each
    // used by exactly one triangle (annular) or two (obstacle interface in full mode).
    std::unordered_map<std::uint64_t, int> use;
    for (const auto& tri : triangles) {
        for (int i = 0; i < 3; ++i) {
            ++use[edge_key(tri[i], tri[(i + 1) % 3])];
        }
    }
    auto check_loop = [&](const BoundaryLoop& loop, int expected_use, const char* name) {
        const std::size_t m = loop.vertices.size();
        if (m < 3) {
            throw MeshError(std::string(name) + " boundary cycle is too short");
        }
        for (std::size_t j = 0; j < m; ++j) {
            const auto it = use.find(edge_key(loop.vertices[j], loop.vertices[(j + 1) % m]));
            if (it == use.end() || it->second != expected_use) {
                throw MeshError(std::string(name) + " boundary cycle is broken at position " + std::to_string(j));
            }
        }
    };
    check_loop(outer, 1, "outer");
    check_loop(obstacle, mode == MeshMode::annular ? 1 : 2, "obstacle");
    std::size_t boundary_edges = 0;
    for (const auto& [key, count] : use) {
        if (count == 1) {
            ++boundary_edges;
        }
    }
    const std::size_t expected = outer.vertices.size() + (mode == MeshMode::annular ? obstacle.vertices.size() : 0);
    if (boundary_edges != expected) {
        throw MeshError("mesh has boundary edges outside the two cycles");
    }
    if (mode == MeshMode::annular) {
        for (const auto& p : vertices) {
            const double r = p.norm();
            const double limit = obstacle_curve.radius(std::atan2(p.y(), p.x()));
            if (r < limit * (1.0 - 1e-12)) {
                throw MeshError("annular mesh has a vertex inside the obstacle");
            }
        }
    }
}

PlanarMesh triangulate_base(const Configuration& config, const MeshParams& params, MeshMode mode) {
    params.validate(config.pair.order());
    if (!check_free_rotation(config.pair).ok) {
        throw MeshError("obstacle boundary meets the outer boundary");
    }
    Mesher mesher(config, params, mode);
    PlanarMesh mesh = mesher.run();
    build_edges(mesh);
    mesh.check_invariants();
    return mesh;
}

PlanarMesh refine_uniform(const PlanarMesh& mesh) {
    PlanarMesh out(mesh.mode, mesh.outer_curve, mesh.obstacle_curve);
    out.level = mesh.level + 1;
    out.vertices = mesh.vertices;

    struct Snap {
        const PolarCurve* curve;
        double theta;
    };
    std::unordered_map<std::uint64_t, Snap> snaps;
    auto collect = [&](const BoundaryLoop& loop, const PolarCurve& curve) {
        const std::size_t m = loop.vertices.size();
        for (std::size_t j = 0; j < m; ++j) {
            const double end = j + 1 < m ? loop.theta[j + 1] : loop.theta[0] + kTwoPi;
            snaps[edge_key(loop.vertices[j], loop.vertices[(j + 1) % m])] = {&curve, 0.5 * (loop.theta[j] + end)};
        }
    };
    collect(mesh.outer, mesh.outer_curve);
    collect(mesh.obstacle, mesh.obstacle_curve);

    std::unordered_map<std::uint64_t, int> mids;
    mids.reserve(3 * mesh.triangles.size());
    auto midpoint = [&](int a, int b) {
        const auto key = edge_key(a, b);
        const auto it = mids.find(key);
        if (it != mids.end()) {
            return it->second;
        }
        const int id = static_cast<int>(out.vertices.size());
        const auto snap = snaps.find(key);
        if (snap != snaps.end()) {
            out.vertices.push_back(snap->second.curve->point(snap->second.theta));
        } else {
            out.vertices.push_back(0.5 * (mesh.vertices[a] + mesh.vertices[b]));
        }
        mids.emplace(key, id);
        return id;
    };

    out.triangles.reserve(4 * mesh.triangles.size());
    out.regions.reserve(4 * mesh.triangles.size());
    for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
        const auto [a, b, c] = mesh.triangles[t];
        const int ab = midpoint(a, b);
        const int bc = midpoint(b, c);
        const int ca = midpoint(c, a);
        out.triangles.push_back({a, ab, ca});
        out.triangles.push_back({ab, b, bc});
        out.triangles.push_back({ca, bc, c});
        out.triangles.push_back({ab, bc, ca});
        for (int k = 0; k < 4; ++k) {
            out.regions.push_back(mesh.regions[t]);
        }
    }

    auto refine_loop = [&](const BoundaryLoop& loop, BoundaryLoop& dst) {
        const std::size_t m = loop.vertices.size();
        for (std::size_t j = 0; j < m; ++j) {
            const int a = loop.vertices[j];
            const int b = loop.vertices[(j + 1) % m];
            const double end = j + 1 < m ? loop.theta[j + 1] : loop.theta[0] + kTwoPi;
            dst.vertices.push_back(a);
            dst.theta.push_back(loop.theta[j]);
            dst.vertices.push_back(mids.at(edge_key(a, b)));
            dst.theta.push_back(wrap_angle(0.5 * (loop.theta[j] + end)));
        }
    };
    refine_loop(mesh.outer, out.outer);
    refine_loop(mesh.obstacle, out.obstacle);

    build_edges(out);
    out.check_invariants();
    return out;
}

std::vector<PlanarMesh> triangulate_hierarchy(const Configuration& config, const MeshParams& params,
                                              MeshMode mode) {
    std::vector<PlanarMesh> levels;
    levels.push_back(triangulate_base(config, params, mode));
    for (int l = 0; l < params.refinement_levels; ++l) {
        levels.push_back(refine_uniform(levels.back()));
    }
    return levels;
}

PlanarMesh triangulate(const Configuration& config, const MeshParams& params, MeshMode mode) {
    PlanarMesh mesh = triangulate_base(config, params, mode);
    for (int l = 0; l < params.refinement_levels; ++l) {
        mesh = refine_uniform(mesh);
    }
    return mesh;
}

PlanarMesh rotate_obstacle(const PlanarMesh& mesh, double delta) {
    const double r_in = mesh.obstacle_curve.profile().sampled_max();
    const double r_out = mesh.outer_curve.profile().radius(0.0);
    const double outer_min = std::min(r_out, mesh.outer_curve.profile().sampled_min());
    if (!(r_in < outer_min)) {
        throw MeshError("no annular gap between obstacle and outer boundary");
    }

    PlanarMesh out = mesh;
    out.obstacle_curve = PolarCurve(mesh.obstacle_curve.profile(), mesh.obstacle_curve.rotation() + delta);
    for (auto& p : out.vertices) {
        const double weight = smoothstep((outer_min - p.norm()) / (outer_min - r_in));
        if (weight == 0.0) {
            continue;
        }
        const double angle = weight * delta;
        const double c = std::cos(angle), s = std::sin(angle);
        p = Vec2(c * p.x() - s * p.y(), s * p.x() + c * p.y());
    }

    // Obstacle vertices sit exactly on the rotated curve; keep the loop starting at its smallest parameter.
    const std::size_t m = mesh.obstacle.vertices.size();
    std::vector<std::pair<double, int>> shifted(m);
    for (std::size_t j = 0; j < m; ++j) {
        shifted[j] = {wrap_angle(mesh.obstacle.theta[j] + delta), mesh.obstacle.vertices[j]};
    }
    const auto first = std::min_element(shifted.begin(), shifted.end()) - shifted.begin();
    std::rotate(shifted.begin(), shifted.begin() + first, shifted.end());
    for (std::size_t j = 0; j < m; ++j) {
        out.obstacle.theta[j] = shifted[j].first;
        out.obstacle.vertices[j] = shifted[j].second;
        out.vertices[shifted[j].second] = out.obstacle_curve.point(shifted[j].first);
    }
    out.check_invariants();
    return out;
}

std::string export_text(const PlanarMesh& mesh) {
    std::ostringstream out;
    out.precision(17);
    out << "$Vertices\n" << mesh.vertices.size() << "\n";
    for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
        out << i << ' ' << mesh.vertices[i].x() << ' ' << mesh.vertices[i].y() << "\n";
    }
    out << "$Triangles\n" << mesh.triangles.size() << "\n";
    for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
        const auto& tri = mesh.triangles[t];
        out << t << ' ' << tri[0] << ' ' << tri[1] << ' ' << tri[2] << ' '
            << (mesh.regions[t] == Region::obstacle ? "OBSTACLE" : "ANNULUS") << "\n";
    }
    out << "$Edges\n" << mesh.edges.size() << "\n";
    for (std::size_t e = 0; e < mesh.edges.size(); ++e) {
        const auto& edge = mesh.edges[e];
        const char* marker = edge.marker == EdgeMarker::interior         ? "INTERIOR"
                             : edge.marker == EdgeMarker::outer_boundary ? "OUTER_BOUNDARY"
                                                                         : "OBSTACLE_BOUNDARY";
        out << e << ' ' << edge.a << ' ' << edge.b << ' ' << marker << "\n";
    }
    return out.str();
}

TriangleLocator::TriangleLocator(const PlanarMesh& mesh) : mesh_(&mesh) {
    Vec2 lo = Vec2::Constant(1e300), hi = Vec2::Constant(-1e300);
    for (const auto& p : mesh.vertices) {
        lo = lo.cwiseMin(p);
        hi = hi.cwiseMax(p);
    }
    const double typical = std::sqrt(std::max(mesh.area(), 1e-300) / std::max<std::size_t>(mesh.num_triangles(), 1));
    cell_ = 2.0 * typical;
    lo_ = lo - Vec2::Constant(1e-9);
    nx_ = std::max(1, static_cast<int>(std::ceil((hi.x() - lo_.x()) / cell_)) + 1);
    ny_ = std::max(1, static_cast<int>(std::ceil((hi.y() - lo_.y()) / cell_)) + 1);
    buckets_.assign(static_cast<std::size_t>(nx_) * ny_, {});
    for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
        Vec2 tlo = Vec2::Constant(1e300), thi = Vec2::Constant(-1e300);
        for (int v : mesh.triangles[t]) {
            tlo = tlo.cwiseMin(mesh.vertices[v]);
            thi = thi.cwiseMax(mesh.vertices[v]);
        }
        const int i0 = static_cast<int>((tlo.x() - lo_.x()) / cell_);
        const int i1 = static_cast<int>((thi.x() - lo_.x()) / cell_);
        const int j0 = static_cast<int>((tlo.y() - lo_.y()) / cell_);
        const int j1 = static_cast<int>((thi.y() - lo_.y()) / cell_);
        for (int j = j0; j <= j1; ++j) {
            for (int i = i0; i <= i1; ++i) {
                buckets_[static_cast<std::size_t>(j) * nx_ + i].push_back(static_cast<int>(t));
            }
        }
    }
}

std::optional<TriangleLocator::Hit> TriangleLocator::locate(const Vec2& p) const {
    const int i = static_cast<int>(std::floor((p.x() - lo_.x()) / cell_));
    const int j = static_cast<int>(std::floor((p.y() - lo_.y()) / cell_));
    if (i < 0 || j < 0 || i >= nx_ || j >= ny_) {
        return std::nullopt;
    }
    std::optional<Hit> best;
    double best_score = -1e-10;
    for (int t : buckets_[static_cast<std::size_t>(j) * nx_ + i]) {
        const auto& tri = mesh_->triangles[t];
        const Vec2& a = mesh_->vertices[tri[0]];
        const Vec2& b = mesh_->vertices[tri[1]];
        const Vec2& c = mesh_->vertices[tri[2]];
        const double total = detail::orient(a, b, c);
        const std::array<double, 3> bary{detail::orient(p, b, c) / total, detail::orient(a, p, c) / total,
                                         detail::orient(a, b, p) / total};
        const double score = std::min({bary[0], bary[1], bary[2]});
        if (score >= best_score) {
            best_score = score;
            best = Hit{t, bary};
        }
    }
    return best;
}

std::optional<double> TriangleLocator::interpolate(const Eigen::VectorXd& nodal, const Vec2& p) const {
    const auto hit = locate(p);
    if (!hit) {
        return std::nullopt;
    }
    const auto& tri = mesh_->triangles[hit->triangle];
    return hit->barycentric[0] * nodal[tri[0]] + hit->barycentric[1] * nodal[tri[1]] +
           hit->barycentric[2] * nodal[tri[2]];
}

}  // namespace spectra
