#pragma once

#include "spectra/mesh.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace spectra {

/// Parsed and validated run configuration.
struct RunConfig {
    int n = 0;
    std::vector<double> outer_series;
    std::vector<double> inner_series;
    int t_samples = 9;
    MeshParams mesh;
    std::optional<double> alpha;
    bool finite_difference = true;
    double fd_delta = 1e-3;
    double probe_t = 0.0;                ///< symmetry probe, default 3π/(8n)
    std::vector<double> reflection_t;    ///< default π/(4n), π/(2n), 3π/(4n)
    int reflection_samples = 500;

    /// Phase shifts applied to nonincreasing profiles (0 or π/n).
    double outer_phase_shift = 0.0;
    double inner_phase_shift = 0.0;

    /// Profiles after normalization to the nondecreasing convention.
    DomainPair pair() const;
};

/// Throws ValidationError naming the offending field or violated condition.
RunConfig parse_config(std::string_view json_text);

/// Reads and parses a file; an unreadable file is a ValidationError.
RunConfig load_config(const std::string& path);

}  // namespace spectra
