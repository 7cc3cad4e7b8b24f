#pragma once

#include "spectra/mesh.hpp"

#include <Eigen/Sparse>

#include <vector>

namespace spectra {

/// Symmetric matrix kept in full (both triangles) compressed-column storage.
using SparseSymMatrix = Eigen::SparseMatrix<double>;

/// P1 stiffness and mass over all mesh vertices, plus the split into free
/// and Dirichlet vertices. The outer boundary is always Dirichlet; the
/// obstacle boundary is Dirichlet only for annular meshes.
struct DirichletSystem {
    MeshMode mode = MeshMode::annular;
    SparseSymMatrix stiffness;       ///< all vertices
    SparseSymMatrix mass;            ///< all vertices
    SparseSymMatrix stiffness_free;  ///< free rows and columns only
    SparseSymMatrix mass_free;
    std::vector<int> free_index;     ///< vertex → free dof, −1 for Dirichlet vertices
    std::vector<int> free_dofs;      ///< free dof → vertex
    std::vector<int> boundary_dofs;

    int num_free() const { return static_cast<int>(free_dofs.size()); }
    Eigen::VectorXd restrict_to_free(const Eigen::VectorXd& full) const;
    /// Zero on Dirichlet vertices.
    Eigen::VectorXd extend_from_free(const Eigen::VectorXd& free) const;
};

/// α·χ_B discretized as α times the mass matrix of the obstacle triangles.
struct PotentialTerm {
    double alpha = 0.0;
    SparseSymMatrix region_mass;       ///< all vertices
    SparseSymMatrix region_mass_free;
};

/// Throws MeshError for a degenerate triangle.
DirichletSystem assemble(const PlanarMesh& mesh);

/// Throws ValidationError unless the mesh was built in full mode.
PotentialTerm assemble_potential(const PlanarMesh& mesh, const DirichletSystem& system, double alpha);

/// b_i = ∫ φ_i over the mesh, for every vertex (boundary entries included).
Eigen::VectorXd assemble_torsion_load(const PlanarMesh& mesh);

}  // namespace spectra
