#include "so3kin/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

namespace so3kin::io {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
  throw Error(ErrorCode::Parse, "line " + std::to_string(line_no) + ": " + what);
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "' for reading");
  return in;
}

// Data lines with their 1-based line numbers; comments and blank lines dropped.
struct Line {
  std::size_t number;
  std::string text;
};

std::vector<Line> data_lines(std::istream& in, std::vector<std::string>* comments = nullptr) {
  std::vector<Line> lines;
  std::string raw;
  std::size_t n = 0;
  while (std::getline(in, raw)) {
    ++n;
    const auto t = trim(raw);
    if (t.empty()) continue;
    if (t.front() == '#') {
      if (comments != nullptr) comments->emplace_back(trim(t.substr(1)));
      continue;
    }
    lines.push_back({n, std::string(t)});
  }
  if (in.bad()) throw Error(ErrorCode::Io, "read failure");
  return lines;
}

std::vector<double> parse_row(const Line& line, std::size_t expected) {
  const auto fields = split(line.text, ',');
  if (fields.size() != expected) {
    parse_fail(line.number, "expected " + std::to_string(expected) + " fields, got " + std::to_string(fields.size()));
  }
  std::vector<double> values;
  values.reserve(expected);
  for (const auto f : fields) {
    try {
      values.push_back(parse_number(f));
    } catch (const Error& e) {
      parse_fail(line.number, e.what());
    }
  }
  return values;
}

void expect_header(const std::vector<Line>& lines, std::string_view header) {
  if (lines.empty()) throw Error(ErrorCode::Parse, "missing header '" + std::string(header) + "'");
  std::string compact;
  for (char c : lines.front().text) {
    if (c != ' ' && c != '\t') compact.push_back(c);
  }
  if (compact != header) parse_fail(lines.front().number, "expected header '" + std::string(header) + "'");
}

}  // namespace

std::string format_number(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double parse_number(std::string_view token) {
  token = trim(token);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
  if (token.empty() || res.ec != std::errc() || res.ptr != token.data() + token.size()) {
    throw Error(ErrorCode::Parse, "'" + std::string(token) + "' is not a number");
  }
  if (!std::isfinite(v)) throw Error(ErrorCode::Parse, "'" + std::string(token) + "' is not finite");
  return v;
}

std::vector<double> parse_literal(std::string_view text, std::size_t count) {
  const auto fields = split(text, ',');
  if (fields.size() != count) {
    throw Error(ErrorCode::InvalidConfig, "expected " + std::to_string(count) + " comma-separated values, got " +
                                              std::to_string(fields.size()));
  }
  std::vector<double> values;
  for (const auto f : fields) {
    try {
      values.push_back(parse_number(f));
    } catch (const Error& e) {
      throw Error(ErrorCode::InvalidConfig, e.what());
    }
  }
  return values;
}

RateProfile read_profile(std::istream& in, Interpolation interpolation, bool degrees) {
  const auto lines = data_lines(in);
  expect_header(lines, kProfileHeader);
  const double scale = degrees ? std::numbers::pi / 180.0 : 1.0;
  std::vector<RateSample> samples;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto v = parse_row(lines[k], 4);
    samples.push_back({v[0], {Vec3(v[1], v[2], v[3]) * scale}});
  }
  return RateProfile(std::move(samples), interpolation);
}

RateProfile read_profile_file(const std::filesystem::path& path, Interpolation interpolation, bool degrees) {
  auto in = open_input(path);
  return read_profile(in, interpolation, degrees);
}

void write_profile(std::ostream& out, const RateProfile& profile) {
  out << kProfileHeader << '\n';
  for (const auto& s : profile.samples()) {
    out << format_number(s.t) << ',' << format_number(s.omega.w.x()) << ',' << format_number(s.omega.w.y())
        << ',' << format_number(s.omega.w.z()) << '\n';
  }
}

void write_trajectory(std::ostream& out, const Trajectory& trajectory, const DriftReport& drift) {
  if (drift.per_sample.size() != trajectory.samples.size()) {
    throw Error(ErrorCode::DegenerateInput, "drift report does not match trajectory length");
  }
  const auto& meta = trajectory.metadata;
  out << "# method=" << meta.method << '\n';
  out << "# dt=" << format_number(meta.dt) << '\n';
  out << "# initial=";
  for (int i = 0; i < 9; ++i) out << (i ? "," : "") << format_number(meta.initial.data()[i]);
  out << '\n';
  out << "# truncated_span=" << (meta.truncated_span ? "true" : "false") << '\n';
  out << "# degrees_input=" << (meta.degrees_input ? "true" : "false") << '\n';
  out << kTrajectoryHeader << '\n';
  for (std::size_t k = 0; k < trajectory.samples.size(); ++k) {
    const auto& s = trajectory.samples[k];
    out << format_number(s.t);
    for (int i = 0; i < 9; ++i) out << ',' << format_number(s.r.data()[i]);
    out << ',' << format_number(drift.per_sample[k].ortho_err) << ',' << format_number(drift.per_sample[k].det_err)
        << '\n';
  }
}

void write_trajectory_file(const std::filesystem::path& path, const Trajectory& trajectory,
                           const DriftReport& drift) {
  std::ostringstream buffer;
  write_trajectory(buffer, trajectory, drift);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "' for writing");
  out << buffer.str();
  out.close();
  if (!out) throw Error(ErrorCode::Io, "write to '" + path.string() + "' failed");
}

Trajectory read_trajectory(std::istream& in) {
  std::vector<std::string> comments;
  const auto lines = data_lines(in, &comments);
  expect_header(lines, kTrajectoryHeader);

  Trajectory traj;
  for (const auto& c : comments) {
    const auto eq = c.find('=');
    if (eq == std::string::npos) continue;
    const auto key = trim(std::string_view(c).substr(0, eq));
    const auto value = trim(std::string_view(c).substr(eq + 1));
    try {
      if (key == "method") {
        traj.metadata.method = std::string(value);
      } else if (key == "dt") {
        traj.metadata.dt = parse_number(value);
      } else if (key == "initial") {
        const auto v = parse_literal(value, 9);
        for (int i = 0; i < 9; ++i) traj.metadata.initial.data()[i] = v[static_cast<std::size_t>(i)];
      } else if (key == "truncated_span") {
        traj.metadata.truncated_span = value == "true";
      } else if (key == "degrees_input") {
        traj.metadata.degrees_input = value == "true";
      }
    } catch (const Error& e) {
      throw Error(ErrorCode::Parse, "metadata '" + std::string(key) + "': " + e.what());
    }
  }

  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto v = parse_row(lines[k], 12);
    TrajectorySample s{v[0], Mat3()};
    for (int i = 0; i < 9; ++i) s.r.data()[i] = v[static_cast<std::size_t>(i) + 1];
    if (!traj.samples.empty() && !(s.t > traj.samples.back().t)) {
      throw Error(ErrorCode::InvalidProfile, "line " + std::to_string(lines[k].number) +
                                                 ": trajectory times must be strictly increasing");
    }
    traj.samples.push_back(s);
  }
  if (traj.samples.empty()) throw Error(ErrorCode::Parse, "trajectory has no rows");
  return traj;
}

Trajectory read_trajectory_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_trajectory(in);
}

Mat3 read_matrix(std::istream& in) {
  std::vector<double> values;
  for (const auto& line : data_lines(in)) {
    std::string text = line.text;
    for (char& c : text) {
      if (c == ',' || c == '\t' || c == ';') c = ' ';
    }
    std::istringstream tokens(text);
    std::string tok;
    while (tokens >> tok) {
      try {
        values.push_back(parse_number(tok));
      } catch (const Error& e) {
        parse_fail(line.number, e.what());
      }
    }
  }
  if (values.size() != 9) {
    throw Error(ErrorCode::Parse, "expected 9 matrix entries, got " + std::to_string(values.size()));
  }
  Mat3 m;
  for (int i = 0; i < 9; ++i) m.data()[i] = values[static_cast<std::size_t>(i)];
  return m;
}

Mat3 read_matrix_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_matrix(in);
}

RunReport make_run_report(const Trajectory& trajectory, const DriftReport& drift) {
  RunReport r;
  r.method = trajectory.metadata.method;
  r.dt = trajectory.metadata.dt;
  r.steps = trajectory.samples.empty() ? 0 : trajectory.samples.size() - 1;
  r.max_ortho_err = drift.max_ortho_err;
  r.max_det_err = drift.max_det_err;
  r.truncated_span = trajectory.metadata.truncated_span;
  return r;
}

nlohmann::json to_json(const RunReport& report) {
  nlohmann::json j;
  j["method"] = report.method;
  j["dt"] = report.dt;
  j["steps"] = report.steps;
  j["max_ortho_err"] = report.max_ortho_err;
  j["max_det_err"] = report.max_det_err;
  if (report.max_residual) j["max_residual"] = *report.max_residual;
  j["estimated_order"] = report.estimated_order ? nlohmann::json(*report.estimated_order) : nlohmann::json(nullptr);
  j["truncated_span"] = report.truncated_span;
  if (!report.residuals.empty()) {
    auto& arr = j["residuals"] = nlohmann::json::array();
    for (const auto& r : report.residuals) {
      arr.push_back({{"step", r.step}, {"max_residual", r.max_residual}, {"bound", r.bound}});
    }
  }
  return j;
}

RunReport report_from_json(const nlohmann::json& j) {
  RunReport r;
  r.method = j.at("method").get<std::string>();
  r.dt = j.at("dt").get<double>();
  r.steps = j.at("steps").get<std::size_t>();
  r.max_ortho_err = j.at("max_ortho_err").get<double>();
  r.max_det_err = j.at("max_det_err").get<double>();
  if (j.contains("max_residual")) r.max_residual = j.at("max_residual").get<double>();
  if (!j.at("estimated_order").is_null()) r.estimated_order = j.at("estimated_order").get<double>();
  r.truncated_span = j.at("truncated_span").get<bool>();
  if (j.contains("residuals")) {
    for (const auto& e : j.at("residuals")) {
      r.residuals.push_back({e.at("step").get<double>(), e.at("max_residual").get<double>(), e.at("bound").get<double>()});
    }
  }
  return r;
}

std::string to_text(const RunReport& report) {
  std::ostringstream os;
  os << "method: " << report.method << '\n';
  os << "dt: " << format_number(report.dt) << '\n';
  os << "steps: " << report.steps << '\n';
  os << "max_ortho_err: " << format_number(report.max_ortho_err) << '\n';
  os << "max_det_err: " << format_number(report.max_det_err) << '\n';
  if (report.max_residual) os << "max_residual: " << format_number(*report.max_residual) << '\n';
  os << "estimated_order: " << (report.estimated_order ? format_number(*report.estimated_order) : "null") << '\n';
  os << "truncated_span: " << (report.truncated_span ? "true" : "false") << '\n';
  for (const auto& r : report.residuals) {
    os << "residual h=" << format_number(r.step) << ": " << format_number(r.max_residual)
       << " (bound " << format_number(r.bound) << ")\n";
  }
  return os.str();
}

std::string matrix_text(const Mat3& m) {
  std::ostringstream os;
  // + 0.0 folds negative zero into zero for display.
  for (int r = 0; r < 3; ++r) {
    os << format_number(m(r, 0) + 0.0) << ' ' << format_number(m(r, 1) + 0.0) << ' ' << format_number(m(r, 2) + 0.0)
       << '\n';
  }
  return os.str();
}

nlohmann::json matrix_json(const Mat3& m) {
  auto rows = nlohmann::json::array();
  for (int r = 0; r < 3; ++r) rows.push_back({m(r, 0) + 0.0, m(r, 1) + 0.0, m(r, 2) + 0.0});
  return rows;
}

}  // namespace so3kin::io
