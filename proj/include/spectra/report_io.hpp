#pragma once

#include "spectra/experiments.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace spectra {

/// Columns t, lambda, dlambda_hadamard, dlambda_fd, mesh_h, residual, iterations,
/// 12 significant digits; dlambda_fd is empty when not computed.
std::string sweep_csv(const std::vector<SweepRecord>& records);

/// Same columns for a μ₁ or J sweep; the lambda column holds the swept quantity
/// and the derivative columns stay empty.
std::string quantity_csv(const QuantitySweep& sweep);

/// λ(t) polyline with ON (first sample) and OFF (last sample) markers.
std::string line_plot_svg(const std::string& title, const std::string& y_label, const std::vector<double>& t,
                          const std::vector<double>& values);

nlohmann::ordered_json to_json(const TheoremCheck& check);
nlohmann::ordered_json to_json(const TheoremReport& report);
nlohmann::ordered_json to_json(const SweepRecord& record);
nlohmann::ordered_json to_json(const ReflectionReport& report);

/// Overwrites the file; throws std::runtime_error when it cannot be written.
void write_text_file(const std::string& path, const std::string& text);

/// printf-style %.12g.
std::string format_number(double value);

}  // namespace spectra
