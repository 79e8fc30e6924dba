#include "so3kin/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>

#include "CLI11.hpp"

namespace so3kin::cli {

namespace {

constexpr double kMinOrder = 1.8;

struct GlobalOptions {
  double tol_ortho = 1e-9;
  double tol_det = 1e-9;
  std::string format = "text";

  ToleranceConfig tolerances() const {
    ToleranceConfig tol;
    tol.ortho_tol = tol_ortho;
    tol.det_tol = tol_det;
    tol.check();
    return tol;
  }
  bool json() const { return format == "json"; }
};

struct PropagateOptions {
  std::string input;
  std::string output;
  std::string report;
  std::string initial;
  double dt = 0.0;
  std::string method = "exp";
  std::string interp = "linear";
  bool degrees = false;
};

struct VerifyOptions {
  std::string trajectory;
  std::string profile;
  std::string steps;
  std::string interp = "linear";
};

Interpolation parse_interp(const std::string& name) {
  if (name == "linear") return Interpolation::Linear;
  if (name == "zoh") return Interpolation::ZeroOrderHold;
  throw Error(ErrorCode::InvalidConfig, "--interp must be 'linear' or 'zoh', got '" + name + "'");
}

Vec3 as_vec3(const std::vector<double>& v) { return Vec3(v[0], v[1], v[2]); }

// Checks a user matrix against SO(3), naming both residuals on failure.
RotationMatrix checked_rotation(const Mat3& m, const ToleranceConfig& tol, const std::string& label) {
  try {
    return RotationMatrix::validate(m, tol);
  } catch (const Error& e) {
    throw Error(e.code(), label + ": " + e.what() + " (ortho_err " + io::format_number(orthogonality_error(m)) +
                              ", det_err " + io::format_number(determinant_error(m)) + ")");
  }
}

std::filesystem::path method_output(const std::filesystem::path& base, Method method, bool several) {
  if (!several) return base;
  auto p = base;
  p.replace_filename(base.stem().string() + "." + std::string(method_name(method)) + base.extension().string());
  return p;
}

int cmd_propagate(const GlobalOptions& g, const PropagateOptions& o, std::ostream& out) {
  if (!(o.dt > 0.0) || !std::isfinite(o.dt)) {
    throw Error(ErrorCode::InvalidConfig, "--dt must be a positive number, got " + io::format_number(o.dt));
  }
  if (o.input.empty() || o.output.empty()) throw Error(ErrorCode::InvalidConfig, "--input and --output are required");
  std::vector<Method> methods;
  if (o.method == "all") {
    methods = {Method::Exponential, Method::Euler, Method::EulerRenorm};
  } else {
    methods = {parse_method(o.method)};
  }
  const Interpolation interp = parse_interp(o.interp);
  const ToleranceConfig tol = g.tolerances();

  const RateProfile profile = io::read_profile_file(o.input, interp, o.degrees);
  RotationMatrix r0 = RotationMatrix::identity();
  if (!o.initial.empty()) r0 = checked_rotation(io::read_matrix_file(o.initial), tol, "--initial");

  std::vector<Trajectory> runs = propagate_all(r0, profile, o.dt, methods);
  nlohmann::json reports = nlohmann::json::array();
  std::string text;
  const bool several = runs.size() > 1;
  for (auto& traj : runs) {
    traj.metadata.degrees_input = o.degrees;
    const DriftReport drift = drift_report(traj);
    io::write_trajectory_file(method_output(o.output, parse_method(traj.metadata.method), several), traj, drift);
    const io::RunReport report = io::make_run_report(traj, drift);
    reports.push_back(io::to_json(report));
    text += io::to_text(report);
  }

  std::string rendered;
  if (g.json()) {
    rendered = (several ? reports : reports.front()).dump(2) + "\n";
  } else {
    rendered = text;
  }
  if (o.report.empty()) {
    out << rendered;
  } else {
    std::ofstream rep(o.report, std::ios::trunc);
    if (!rep || !(rep << rendered)) throw Error(ErrorCode::Io, "cannot write report '" + o.report + "'");
  }
  return kSuccess;
}

std::vector<double> parse_steps(const std::string& text) {
  std::vector<double> steps;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto pos = text.find(',', start);
    const auto tok = text.substr(start, pos == std::string::npos ? std::string::npos : pos - start);
    try {
      steps.push_back(io::parse_number(tok));
    } catch (const Error& e) {
      throw Error(ErrorCode::InvalidConfig, std::string("--steps: ") + e.what());
    }
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  for (double s : steps) {
    if (!(s > 0.0)) throw Error(ErrorCode::InvalidConfig, "--steps entries must be positive");
  }
  return steps;
}

int cmd_verify(const GlobalOptions& g, const VerifyOptions& o, std::ostream& out, std::ostream& err) {
  const Interpolation interp = parse_interp(o.interp);
  std::vector<double> steps;
  if (!o.steps.empty()) steps = parse_steps(o.steps);

  const Trajectory traj = io::read_trajectory_file(o.trajectory);
  const RateProfile profile = io::read_profile_file(o.profile, interp, traj.metadata.degrees_input);

  const double first = traj.samples.front().t;
  const double last = traj.samples.back().t;
  const double slack = 1e-12 * std::max({1.0, std::abs(first), std::abs(last)});
  if (first < profile.start() - slack || last > profile.end() + slack) {
    throw Error(ErrorCode::OutOfRange, "time range mismatch: trajectory spans [" + io::format_number(first) + ", " +
                                           io::format_number(last) + "], profile spans [" +
                                           io::format_number(profile.start()) + ", " +
                                           io::format_number(profile.end()) + "]");
  }

  const double h = uniform_step(traj);
  if (steps.empty()) steps = {h, 2.0 * h, 4.0 * h};
  const ResidualReport study = residual_study(traj, profile, steps);
  const DriftReport drift = drift_report(traj);

  io::RunReport report = io::make_run_report(traj, drift);
  report.dt = h;
  report.max_residual = study.max_residual;
  report.estimated_order = study.estimated_order;
  bool within_bounds = true;
  bool exact = true;
  for (std::size_t i = 0; i < study.step_sizes.size(); ++i) {
    const double bound = verify_bound(profile, study.step_sizes[i]);
    report.residuals.push_back({study.step_sizes[i], study.step_max_residuals[i], bound});
    within_bounds = within_bounds && study.step_max_residuals[i] <= bound;
    exact = exact && study.step_max_residuals[i] <= 1e-14;
  }
  const bool order_ok = study.estimated_order ? *study.estimated_order >= kMinOrder : exact;

  out << (g.json() ? to_json(report).dump(2) + "\n" : io::to_text(report));
  if (within_bounds && order_ok) return kSuccess;
  if (!order_ok) {
    err << "verification failed: estimated order "
        << (study.estimated_order ? io::format_number(*study.estimated_order) : std::string("undefined"))
        << " below " << kMinOrder << "\n";
  }
  if (!within_bounds) err << "verification failed: residual exceeds documented bound\n";
  return kValidationFailure;
}

void print_matrix(const GlobalOptions& g, const Mat3& m, std::ostream& out) {
  if (g.json()) {
    out << nlohmann::json{{"matrix", io::matrix_json(m)}}.dump() << "\n";
  } else {
    out << io::matrix_text(m);
  }
}

void print_vector(const GlobalOptions& g, Vec3 v, std::ostream& out) {
  v.array() += 0.0;
  if (g.json()) {
    out << nlohmann::json{{"vector", {v.x(), v.y(), v.z()}}}.dump() << "\n";
  } else {
    out << io::format_number(v.x()) << ' ' << io::format_number(v.y()) << ' ' << io::format_number(v.z()) << '\n';
  }
}

int exit_code_for(ErrorCode code) {
  return (code == ErrorCode::Io || code == ErrorCode::Parse) ? kIoFailure : kValidationFailure;
}

}  // namespace

double verify_bound(const RateProfile& profile, double h) {
  const auto& s = profile.samples();
  double w0 = 0.0;
  double w1 = 0.0;
  double w2 = 0.0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    w0 = std::max(w0, s[k].omega.w.norm());
    if (k >= 1) {
      w1 = std::max(w1, (s[k].omega.w - s[k - 1].omega.w).norm() / (s[k].t - s[k - 1].t));
    }
    if (k >= 2) {
      const Vec3 d1 = (s[k - 1].omega.w - s[k - 2].omega.w) / (s[k - 1].t - s[k - 2].t);
      const Vec3 d2 = (s[k].omega.w - s[k - 1].omega.w) / (s[k].t - s[k - 1].t);
      w2 = std::max(w2, 2.0 * (d2 - d1).norm() / (s[k].t - s[k - 2].t));
    }
  }
  const double truncation = std::numbers::sqrt2 / 6.0 * h * h * (w0 * w0 * w0 + 3.0 * w0 * w1 + w2);
  const double roundoff = 4.0 * std::numeric_limits<double>::epsilon() / h;
  return 10.0 * (truncation + roundoff);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  GlobalOptions g;
  PropagateOptions po;
  VerifyOptions vo;
  std::string literal;
  std::string file_a;
  std::string file_b;
  bool exp_degrees = false;

  CLI::App app{"Rotation kinematics: propagate and verify dR/dt = hat(w) R", "so3kin"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--tol-ortho", g.tol_ortho, "Orthogonality tolerance for input rotations");
  app.add_option("--tol-det", g.tol_det, "Determinant tolerance for input rotations");
  app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"text", "json"}));

  auto* prop = app.add_subcommand("propagate", "Integrate a rate profile into a trajectory");
  prop->add_option("--input,-i", po.input, "Rate profile CSV (t,wx,wy,wz)")->required();
  prop->add_option("--output,-o", po.output, "Trajectory CSV to write")->required();
  prop->add_option("--dt", po.dt, "Integration step in seconds")->required();
  prop->add_option("--method", po.method, "exp | euler | euler-renorm | all");
  prop->add_option("--interp", po.interp, "linear | zoh");
  prop->add_option("--initial", po.initial, "Initial rotation matrix file (default identity)");
  prop->add_option("--report", po.report, "Write the report here instead of stdout");
  prop->add_flag("--degrees", po.degrees, "Profile rates are in deg/s");

  auto* ver = app.add_subcommand("verify", "Finite-difference check of a trajectory against its profile");
  ver->add_option("--trajectory,-t", vo.trajectory, "Trajectory CSV")->required();
  ver->add_option("--profile,-p", vo.profile, "Rate profile CSV")->required();
  ver->add_option("--steps", vo.steps, "Comma-separated step sizes (multiples of the trajectory step)");
  ver->add_option("--interp", vo.interp, "linear | zoh");

  auto* hat_cmd = app.add_subcommand("hat", "Skew matrix of a vector");
  hat_cmd->add_option("vector", literal, "x,y,z")->required();
  auto* vee_cmd = app.add_subcommand("vee", "Vector of a skew matrix");
  vee_cmd->add_option("matrix", literal, "nine comma-separated entries, row-major")->required();
  auto* compose_cmd = app.add_subcommand("compose", "Fixed-frame composition: second * first");
  compose_cmd->add_option("first", file_a, "Matrix file of the first rotation")->required();
  compose_cmd->add_option("second", file_b, "Matrix file of the second rotation")->required();
  auto* exp_cmd = app.add_subcommand("exp", "Rotation matrix of a rotation vector");
  exp_cmd->add_option("vector", literal, "x,y,z (radians)")->required();
  exp_cmd->add_flag("--degrees", exp_degrees, "Rotation vector is in degrees");
  auto* log_cmd = app.add_subcommand("log", "Rotation vector of a rotation matrix");
  log_cmd->add_option("matrix", file_a, "Matrix file")->required();

  std::vector<const char*> argv{"so3kin"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kValidationFailure;
  }

  try {
    if (*prop) return cmd_propagate(g, po, out);
    if (*ver) return cmd_verify(g, vo, out, err);
    if (*hat_cmd) {
      print_matrix(g, hat(as_vec3(io::parse_literal(literal, 3))).matrix(), out);
    } else if (*vee_cmd) {
      const auto v = io::parse_literal(literal, 9);
      Mat3 m;
      for (int i = 0; i < 9; ++i) m.data()[i] = v[static_cast<std::size_t>(i)];
      print_vector(g, vee(SkewMatrix::from_matrix(m, g.tolerances().ortho_tol)), out);
    } else if (*compose_cmd) {
      const ToleranceConfig tol = g.tolerances();
      const RotationMatrix first = checked_rotation(io::read_matrix_file(file_a), tol, "first");
      const RotationMatrix second = checked_rotation(io::read_matrix_file(file_b), tol, "second");
      print_matrix(g, compose_fixed(first, second).matrix(), out);
    } else if (*exp_cmd) {
      Vec3 phi = as_vec3(io::parse_literal(literal, 3));
      if (exp_degrees) phi *= std::numbers::pi / 180.0;
      print_matrix(g, exp_so3({phi}).matrix(), out);
    } else if (*log_cmd) {
      const RotationMatrix r = checked_rotation(io::read_matrix_file(file_a), g.tolerances(), "matrix");
      print_vector(g, log_so3(r).phi, out);
    }
    return kSuccess;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kIoFailure;
  }
}

}  // namespace so3kin::cli
