#pragma once

#include <string>
#include <vector>

#include "splitgap/errors.hpp"

namespace splitgap {

struct ScalingPoint {
  double L = 0.0;
  double log_delta = 0.0;  // must be negative
  double err = 0.0;        // uncertainty of log_delta; 0 means unweighted
};

struct ScalingDataset {
  std::vector<ScalingPoint> points;
  std::string source;
};

class DegenerateFit : public Error {
 public:
  explicit DegenerateFit(const std::string& msg) : Error(msg) {}
};

enum class FitModel { PurePower, PowerWithLog };

/// Fit of -log delta = C L^p (+ b log L).
struct FitReport {
  double C = 0.0;
  double p = 0.0;
  double log_coeff = 0.0;  // b, zero for PurePower
  double residual_rms = 0.0;
  std::vector<double> local_slopes;
  FitModel model = FitModel::PurePower;
  int refinement_iterations = 0;
};

/// Stage 1: linear regression of log(-log delta) on log L gives (p, log C).
/// Stage 2: Gauss-Newton refinement of -log delta = C L^p (+ b log L),
/// weighted by 1/err^2 where err > 0. Deterministic given the data (points
/// are sorted internally, so input order is irrelevant).
FitReport fit_stretched(const ScalingDataset& data, FitModel model);

/// Default model choice: the log-correction term needs >= 5 points.
FitModel default_fit_model(std::size_t n_points);

/// Slopes of log(-log delta) between consecutive L pairs.
std::vector<double> local_slopes(const ScalingDataset& data);

}  // namespace splitgap
