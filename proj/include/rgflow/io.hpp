#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "rgflow/diagnostics.hpp"
#include "rgflow/function_space.hpp"
#include "rgflow/linear_flow.hpp"
#include "rgflow/nonlinear_flow.hpp"
#include "rgflow/rg_engine.hpp"

namespace rgflow::io {

/// Shortest text that reads back to the same double ("{:.17g}").
std::string format_number(double value);

/// Spectra as CSV: a "# {json}" line with the grid, then the columns
/// omega, re_F0, im_F0, re_F1, im_F1, re_F2, im_F2.
void write_spectra_csv(std::ostream& out, const SampledFunction& f);
SampledFunction read_spectra_csv(std::istream& in);

void write_linear_reports_csv(std::ostream& out, const std::vector<LinearStepReport>& rows);
void write_step_records_csv(std::ostream& out, const std::vector<StepRecord>& rows);

/// Columns omega, re_rescaled, im_rescaled, re_model, im_model.
void write_profile_csv(std::ostream& out, const SampledFunction& rescaled, const SampledFunction& model);

nlohmann::json space_json(const SpaceConfig& cfg);
nlohmann::json trajectory_manifest(const Trajectory& traj, const EvolutionConfig& cfg);
nlohmann::json orbit_manifest(const Orbit& orbit, const RGConfig& cfg);
nlohmann::json constants_json(const TheoryConstants& tc);

/// Writes one spectra CSV per time node plus trajectory.json into `dir`.
void export_trajectory(const std::filesystem::path& dir, const Trajectory& traj, const EvolutionConfig& cfg);

/// Definition of every key emitted in manifests and reports.
const nlohmann::json& schema();

void write_text(const std::filesystem::path& path, const std::string& text);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace rgflow::io
