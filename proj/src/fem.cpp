#include "spectra/fem.hpp"

#include "spectra/errors.hpp"

#include <array>

namespace spectra {

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

struct ElementMatrices {
    double area = 0.0;
    std::array<std::array<double, 3>, 3> stiffness{};
    std::array<std::array<double, 3>, 3> mass{};
};

ElementMatrices element(const PlanarMesh& mesh, std::size_t t) {
    const auto& tri = mesh.triangles[t];
    const Vec2& p0 = mesh.vertices[tri[0]];
    const Vec2& p1 = mesh.vertices[tri[1]];
    const Vec2& p2 = mesh.vertices[tri[2]];
    const std::array<double, 3> b{p1.y() - p2.y(), p2.y() - p0.y(), p0.y() - p1.y()};
    const std::array<double, 3> c{p2.x() - p1.x(), p0.x() - p2.x(), p1.x() - p0.x()};

    ElementMatrices e;
    e.area = 0.5 * (c[2] * b[1] - c[1] * b[2]);
    if (!(e.area > 0.0)) {
        throw MeshError("degenerate triangle " + std::to_string(t) + " (signed area " + std::to_string(e.area) +
                        ")");
    }
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            e.stiffness[i][j] = (b[i] * b[j] + c[i] * c[j]) / (4.0 * e.area);
            e.mass[i][j] = e.area / 12.0 * (i == j ? 2.0 : 1.0);
        }
    }
    return e;
}

SparseSymMatrix from_triplets(int n, const Triplets& entries) {
    SparseSymMatrix m(n, n);
    m.setFromTriplets(entries.begin(), entries.end());
    m.makeCompressed();
    return m;
}

SparseSymMatrix restrict_matrix(const SparseSymMatrix& full, const std::vector<int>& free_index, int num_free) {
    Triplets entries;
    entries.reserve(full.nonZeros());
    for (int col = 0; col < full.outerSize(); ++col) {
        const int fc = free_index[col];
        if (fc < 0) {
            continue;
        }
        for (SparseSymMatrix::InnerIterator it(full, col); it; ++it) {
            const int fr = free_index[it.row()];
            if (fr >= 0) {
                entries.emplace_back(fr, fc, it.value());
            }
        }
    }
    return from_triplets(num_free, entries);
}

}  // namespace

Eigen::VectorXd DirichletSystem::restrict_to_free(const Eigen::VectorXd& full) const {
    Eigen::VectorXd free(num_free());
    for (int i = 0; i < num_free(); ++i) {
        free[i] = full[free_dofs[i]];
    }
    return free;
}

Eigen::VectorXd DirichletSystem::extend_from_free(const Eigen::VectorXd& free) const {
    Eigen::VectorXd full = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(free_index.size()));
    for (int i = 0; i < num_free(); ++i) {
        full[free_dofs[i]] = free[i];
    }
    return full;
}

DirichletSystem assemble(const PlanarMesh& mesh) {
    const int n = static_cast<int>(mesh.num_vertices());
    Triplets k_entries, m_entries;
    k_entries.reserve(9 * mesh.num_triangles());
    m_entries.reserve(9 * mesh.num_triangles());
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
        const ElementMatrices e = element(mesh, t);
        const auto& tri = mesh.triangles[t];
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                k_entries.emplace_back(tri[i], tri[j], e.stiffness[i][j]);
                m_entries.emplace_back(tri[i], tri[j], e.mass[i][j]);
            }
        }
    }

    DirichletSystem sys;
    sys.mode = mesh.mode;
    sys.stiffness = from_triplets(n, k_entries);
    sys.mass = from_triplets(n, m_entries);

    std::vector<char> dirichlet(n, 0);
    for (int v : mesh.outer.vertices) {
        dirichlet[v] = 1;
    }
    if (mesh.mode == MeshMode::annular) {
        for (int v : mesh.obstacle.vertices) {
            dirichlet[v] = 1;
        }
    }
    sys.free_index.assign(n, -1);
    for (int v = 0; v < n; ++v) {
        if (dirichlet[v]) {
            sys.boundary_dofs.push_back(v);
        } else {
            sys.free_index[v] = static_cast<int>(sys.free_dofs.size());
            sys.free_dofs.push_back(v);
        }
    }
    sys.stiffness_free = restrict_matrix(sys.stiffness, sys.free_index, sys.num_free());
    sys.mass_free = restrict_matrix(sys.mass, sys.free_index, sys.num_free());
    return sys;
}

PotentialTerm assemble_potential(const PlanarMesh& mesh, const DirichletSystem& system, double alpha) {
    if (mesh.mode != MeshMode::full) {
        throw ValidationError("the obstacle potential needs a full-mode mesh");
    }
    Triplets entries;
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
        if (mesh.regions[t] != Region::obstacle) {
            continue;
        }
        const ElementMatrices e = element(mesh, t);
        const auto& tri = mesh.triangles[t];
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                entries.emplace_back(tri[i], tri[j], e.mass[i][j]);
            }
        }
    }
    PotentialTerm term;
    term.alpha = alpha;
    term.region_mass = from_triplets(static_cast<int>(mesh.num_vertices()), entries);
    term.region_mass_free = restrict_matrix(term.region_mass, system.free_index, system.num_free());
    return term;
}

Eigen::VectorXd assemble_torsion_load(const PlanarMesh& mesh) {
    Eigen::VectorXd load = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(mesh.num_vertices()));
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
        const double third = mesh.triangle_area(t) / 3.0;
        for (int v : mesh.triangles[t]) {
            load[v] += third;
        }
    }
    return load;
}

}  // namespace spectra
