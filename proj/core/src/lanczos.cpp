#include "splitgap/lanczos.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "splitgap/errors.hpp"

namespace splitgap {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

void fill_random(std::vector<double>& v, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (auto& x : v) x = dist(rng);
}

// Two classical Gram-Schmidt passes against every stored basis vector.
void orthogonalize(std::vector<double>& w, const std::vector<std::vector<double>>& basis) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& q : basis) {
      const double c = dot(w, q);
      for (std::size_t i = 0; i < w.size(); ++i) w[i] -= c * q[i];
    }
  }
}

struct RitzInfo {
  double value;
  double bottom;  // last component of the Ritz vector in the Krylov basis
};

RitzInfo lowest_ritz(const std::vector<double>& alpha, const std::vector<double>& beta) {
  const int m = static_cast<int>(alpha.size());
  Eigen::VectorXd d(m);
  for (int i = 0; i < m; ++i) d[i] = alpha[i];
  Eigen::VectorXd e(std::max(0, m - 1));
  for (int i = 0; i + 1 < m; ++i) e[i] = beta[i];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(d, e, Eigen::ComputeEigenvectors);
  int idx = 0;
  solver.eigenvalues().minCoeff(&idx);
  return {solver.eigenvalues()[idx], solver.eigenvectors()(m - 1, idx)};
}

}  // namespace

LanczosOutcome lanczos_lowest(
    const std::function<void(std::span<const double>, std::span<double>)>& matvec,
    std::uint64_t dimension, const LanczosOptions& options) {
  const std::uint64_t n = dimension;
  if (n == 0) throw std::invalid_argument("lanczos_lowest: empty space");
  const int check_every = std::max(1, options.check_every);

  std::vector<std::vector<double>> basis;
  std::vector<double> alpha, beta;
  std::vector<double> w(n);

  {
    std::vector<double> v(n);
    fill_random(v, options.rng_seed);
    const double nv = norm(v);
    for (auto& x : v) x /= nv;
    basis.push_back(std::move(v));
  }

  const int max_m = static_cast<int>(std::min<std::uint64_t>(options.max_iterations, n));
  double scale = 0.0;
  int restarts = 0;
  LanczosOutcome last_estimate{0.0, std::numeric_limits<double>::infinity(), 0, false};

  while (static_cast<int>(alpha.size()) < max_m) {
    matvec(basis.back(), w);
    alpha.push_back(dot(w, basis.back()));
    orthogonalize(w, basis);
    const double b = norm(w);
    scale = std::max({scale, std::abs(alpha.back()), b});

    const int m = static_cast<int>(alpha.size());
    const bool breakdown = b < 1e-14 * std::max(1.0, scale);
    const bool exhausted = basis.size() >= n;
    const bool full = m >= max_m;

    if (breakdown || exhausted || full || m % check_every == 0) {
      const RitzInfo ritz = lowest_ritz(alpha, beta);
      const double residual = breakdown ? 0.0 : std::abs(b * ritz.bottom);
      last_estimate = {ritz.value, residual, m, false};
      if (residual < options.tolerance) {
        // A breakdown means an invariant subspace closed. Verify once with a
        // fresh direction before accepting, in case the start vector missed
        // the ground state; the Krylov-exhausted case needs no verification.
        if (!breakdown || exhausted || restarts > 0) {
          last_estimate.converged = true;
          return last_estimate;
        }
      }
    }

    if (exhausted) {
      last_estimate.converged = true;
      return last_estimate;  // T is an exact representation on the full space
    }

    if (breakdown) {
      std::vector<double> fresh(n);
      fill_random(fresh, options.rng_seed + 0x9e3779b97f4a7c15ULL * (m + 1));
      orthogonalize(fresh, basis);
      const double nf = norm(fresh);
      if (nf < 1e-8) {
        last_estimate.converged = true;
        return last_estimate;  // no unexplored direction left
      }
      for (auto& x : fresh) x /= nf;
      beta.push_back(0.0);  // decouples the tridiagonal blocks
      basis.push_back(std::move(fresh));
      ++restarts;
    } else {
      for (auto& x : w) x /= b;
      beta.push_back(b);
      basis.push_back(w);
    }
  }

  throw NotConverged("lanczos_lowest: residual " + std::to_string(last_estimate.residual) +
                         " above tolerance after " + std::to_string(alpha.size()) +
                         " iterations",
                     last_estimate.eigenvalue, last_estimate.residual,
                     static_cast<int>(alpha.size()));
}

}  // namespace splitgap
