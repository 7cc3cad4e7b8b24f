#pragma once

#include "spectra/geometry.hpp"
#include "spectra/mesh.hpp"

namespace spectra::testing {

inline RadialProfile d3_outer() { return RadialProfile(3, {1.0, -0.2}); }
inline RadialProfile d3_inner() { return RadialProfile(3, {0.35, -0.1}); }
inline DomainPair d3_pair() { return DomainPair(d3_outer(), d3_inner()); }
inline DomainPair disk_pair() { return DomainPair(RadialProfile(3, {1.0}), RadialProfile(3, {0.3})); }

inline MeshParams coarse_params(double h = 0.05, int levels = 0) {
    MeshParams p;
    p.target_h = h;
    p.refinement_levels = levels;
    return p;
}

}  // namespace spectra::testing
