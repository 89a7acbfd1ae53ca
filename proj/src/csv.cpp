#include "irsdoa/csv.hpp"

#include <cmath>
#include <fstream>

#include <fmt/format.h>

#include "irsdoa/errors.hpp"

namespace irsdoa {

namespace {

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  return fmt::format("{:.17g}", x);
}

std::string angle_list(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ';';
    s += num(v[i]);
  }
  return s;
}

}  // namespace

std::string summary_csv(std::span<const SummaryRow> rows) {
  std::string out = "axis,axis_value,estimator,rmse_deg,rcrb_deg,trials,failures\n";
  for (const SummaryRow& r : rows) {
    out += fmt::format("{},{},{},{},{},{},{}\n", to_string(r.axis), num(r.axis_value),
                       to_string(r.estimator), num(r.rmse_deg), num(r.rcrb_deg), r.trials,
                       r.failures);
  }
  return out;
}

std::string detail_csv(std::span<const TrialRecord> records) {
  std::string out =
      "axis_value,trial,estimator,true_angles_deg,est_angles_deg,sq_err_sum_deg2,solver_iters,"
      "degraded,failed\n";
  for (const TrialRecord& r : records) {
    out += fmt::format("{},{},{},{},{},{},{},{},{}\n", num(r.axis_value), r.trial_index,
                       to_string(r.estimator), angle_list(r.true_angles_deg),
                       angle_list(r.estimated_angles_deg),
                       r.failed ? std::string() : num(r.squared_error_sum),
                       r.solver_iters ? std::to_string(*r.solver_iters) : std::string(),
                       int(r.degraded), int(r.failed));
  }
  return out;
}

std::string matrix_csv(const ComplexMatrix& m) {
  std::string out = "row,col,re,im\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      out += fmt::format("{},{},{},{}\n", i, j, num(m(i, j).real()), num(m(i, j).imag()));
    }
  }
  return out;
}

std::string estimate_csv(const DoaEstimate& e) {
  std::string out = "index,angle_deg,peak_value,method,degraded,solver_iters,converged\n";
  for (std::size_t i = 0; i < e.angles.size(); ++i) {
    out += fmt::format("{},{},{},{},{},{},{}\n", i, num(rad_to_deg(e.angles[i])),
                       num(e.peak_values.at(i)), e.method, int(e.degraded),
                       e.solver_iters ? std::to_string(*e.solver_iters) : std::string(),
                       int(e.converged));
  }
  return out;
}

std::string crb_csv(const CrbReport& report, const SceneConfig& scene) {
  std::string out = "target,angle_deg,crb_rad2,crb_deg2,rcrb_deg,closed_form_rad2\n";
  const double deg2 = std::pow(rad_to_deg(1.0), 2);
  for (std::size_t k = 0; k < report.crb_per_target.size(); ++k) {
    const double c = report.crb_per_target[k];
    out += fmt::format("{},{},{},{},{},{}\n", k, num(rad_to_deg(scene.targets.at(k).angle)), num(c),
                       num(c * deg2), num(rad_to_deg(report.rcrb)),
                       report.closed_form_single ? num(*report.closed_form_single) : std::string());
  }
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
  out << text;
  out.flush();
  if (!out) throw IoError(fmt::format("failed writing '{}'", path.string()));
}

}  // namespace irsdoa
