#include "splitgap/fit.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace splitgap {

namespace {

std::vector<ScalingPoint> sorted_valid_points(const ScalingDataset& data,
                                              std::size_t min_points) {
  auto pts = data.points;
  std::sort(pts.begin(), pts.end(),
            [](const ScalingPoint& a, const ScalingPoint& b) { return a.L < b.L; });
  if (pts.size() < min_points)
    throw DegenerateFit("need at least " + std::to_string(min_points) + " points");
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!(pts[i].L > 0.0) || !std::isfinite(pts[i].log_delta) || pts[i].err < 0.0)
      throw DegenerateFit("invalid point at position " + std::to_string(i));
    if (!(pts[i].log_delta < 0.0))
      throw DegenerateFit("log_delta must be negative (delta < 1)");
    if (i > 0 && !(pts[i].L > pts[i - 1].L))
      throw DegenerateFit("L values must be distinct");
  }
  return pts;
}

}  // namespace

FitModel default_fit_model(std::size_t n_points) {
  return n_points >= 5 ? FitModel::PowerWithLog : FitModel::PurePower;
}

std::vector<double> local_slopes(const ScalingDataset& data) {
  const auto pts = sorted_valid_points(data, 2);
  std::vector<double> slopes;
  slopes.reserve(pts.size() - 1);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double y0 = std::log(-pts[i].log_delta);
    const double y1 = std::log(-pts[i + 1].log_delta);
    const double x0 = std::log(pts[i].L);
    const double x1 = std::log(pts[i + 1].L);
    slopes.push_back((y1 - y0) / (x1 - x0));
  }
  return slopes;
}

FitReport fit_stretched(const ScalingDataset& data, FitModel model) {
  const int n_params = model == FitModel::PowerWithLog ? 3 : 2;
  const auto pts = sorted_valid_points(data, std::max<std::size_t>(3, n_params));
  const auto n = static_cast<Eigen::Index>(pts.size());

  // stage 1: straight line through (log L, log(-log delta))
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& pt : pts) {
    const double x = std::log(pt.L);
    const double y = std::log(-pt.log_delta);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double det = n * sxx - sx * sx;
  if (std::abs(det) < 1e-12 * n * sxx) throw DegenerateFit("collinear L values");
  double p = (n * sxy - sx * sy) / det;
  double logC = (sy * sxx - sx * sxy) / det;
  double C = std::exp(logC);
  double b = 0.0;

  // stage 2: Gauss-Newton on r_i = w_i (C L^p + b log L + log delta_i)
  Eigen::VectorXd weights(n);
  for (Eigen::Index i = 0; i < n; ++i)
    weights[i] = pts[i].err > 0.0 ? 1.0 / pts[i].err : 1.0;

  int iterations = 0;
  for (; iterations < 100; ++iterations) {
    Eigen::MatrixXd jac(n, n_params);
    Eigen::VectorXd res(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double lp = std::pow(pts[i].L, p);
      const double lg = std::log(pts[i].L);
      res[i] = weights[i] * (C * lp + b * lg + pts[i].log_delta);
      jac(i, 0) = weights[i] * lp;           // d/dC
      jac(i, 1) = weights[i] * C * lp * lg;  // d/dp
      if (n_params == 3) jac(i, 2) = weights[i] * lg;
    }
    Eigen::VectorXd step =
        jac.colPivHouseholderQr().solve(-res);
    if (!step.allFinite()) throw DegenerateFit("singular normal equations");
    // halve until the residual does not increase (plain damping)
    const double r0 = res.squaredNorm();
    double scale = 1.0;
    double c_new = C, p_new = p, b_new = b;
    for (int h = 0; h < 30; ++h) {
      c_new = C + scale * step[0];
      p_new = p + scale * step[1];
      b_new = n_params == 3 ? b + scale * step[2] : 0.0;
      double r1 = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        const double ri = weights[i] * (c_new * std::pow(pts[i].L, p_new) +
                                        b_new * std::log(pts[i].L) + pts[i].log_delta);
        r1 += ri * ri;
      }
      if (r1 <= r0 * (1.0 + 1e-12)) break;
      scale *= 0.5;
    }
    const double move = std::abs(c_new - C) + std::abs(p_new - p) + std::abs(b_new - b);
    C = c_new;
    p = p_new;
    b = b_new;
    if (move < 1e-12 * (std::abs(C) + std::abs(p) + 1.0)) break;
  }

  FitReport report;
  report.C = C;
  report.p = p;
  report.log_coeff = b;
  report.model = model;
  report.refinement_iterations = iterations;
  double wr2 = 0.0, wsum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double ri = C * std::pow(pts[i].L, p) + b * std::log(pts[i].L) + pts[i].log_delta;
    const double w2 = weights[i] * weights[i];
    wr2 += w2 * ri * ri;
    wsum += w2;
  }
  report.residual_rms = std::sqrt(wr2 / wsum);
  ScalingDataset sorted_data;
  sorted_data.points = pts;
  report.local_slopes = local_slopes(sorted_data);
  return report;
}

}  // namespace splitgap
