#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "so3kin/differential.hpp"
#include "so3kin/propagator.hpp"

namespace so3kin::io {

inline constexpr std::string_view kProfileHeader = "t,wx,wy,wz";
inline constexpr std::string_view kTrajectoryHeader = "t,r11,r12,r13,r21,r22,r23,r31,r32,r33,ortho_err,det_err";

// 17 significant digits; parses back to the identical double.
std::string format_number(double v);

// Parse error (code Parse) unless the whole token is one finite decimal number.
double parse_number(std::string_view token);

// Exactly `count` comma-separated finite reals. InvalidConfig otherwise.
std::vector<double> parse_literal(std::string_view text, std::size_t count);

RateProfile read_profile(std::istream& in, Interpolation interpolation = Interpolation::Linear,
                         bool degrees = false);
RateProfile read_profile_file(const std::filesystem::path& path,
                              Interpolation interpolation = Interpolation::Linear, bool degrees = false);
void write_profile(std::ostream& out, const RateProfile& profile);

// Metadata travels as leading "# key=value" comment lines.
void write_trajectory(std::ostream& out, const Trajectory& trajectory, const DriftReport& drift);
void write_trajectory_file(const std::filesystem::path& path, const Trajectory& trajectory,
                           const DriftReport& drift);
Trajectory read_trajectory(std::istream& in);
Trajectory read_trajectory_file(const std::filesystem::path& path);

// Nine reals in row-major order, separated by commas and/or whitespace, over any number of lines.
Mat3 read_matrix(std::istream& in);
Mat3 read_matrix_file(const std::filesystem::path& path);

struct StepResidual {
  double step;
  double max_residual;
  double bound;
};

/// Summary emitted by `propagate` and `verify`.
struct RunReport {
  std::string method;
  double dt = 0.0;
  std::size_t steps = 0;
  double max_ortho_err = 0.0;
  double max_det_err = 0.0;
  std::optional<double> max_residual;
  std::optional<double> estimated_order;
  bool truncated_span = false;
  std::vector<StepResidual> residuals;
};

RunReport make_run_report(const Trajectory& trajectory, const DriftReport& drift);

nlohmann::json to_json(const RunReport& report);
RunReport report_from_json(const nlohmann::json& j);
std::string to_text(const RunReport& report);

// Text form: one row per line, entries separated by a single space.
std::string matrix_text(const Mat3& m);
nlohmann::json matrix_json(const Mat3& m);

}  // namespace so3kin::io
