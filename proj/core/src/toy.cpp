#include "splitgap/toy.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <map>
#include <numeric>
#include <stdexcept>

#include "splitgap/basis.hpp"
#include "splitgap/errors.hpp"
#include "splitgap/numerics.hpp"

namespace splitgap {

OperatorChoice OperatorChoice::mixed(int p, int q, bool rescale) {
  if (q == 0) throw std::invalid_argument("mixed: gamma denominator must be nonzero");
  if (q < 0) {
    p = -p;
    q = -q;
  }
  const int g = std::gcd(std::abs(p), q);
  if (g > 1) {
    p /= g;
    q /= g;
  }
  if (q % 2 == 0)
    throw std::invalid_argument("mixed: gamma = p/q requires odd q in lowest terms");
  OperatorChoice c;
  c.kind = ToyOperatorKind::Mixed;
  c.gamma_num = p;
  c.gamma_den = q;
  c.rescale = rescale;
  return c;
}

OperatorChoice OperatorChoice::custom_dense(const Eigen::Matrix4d& block) {
  if ((block - block.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("custom operator block must be symmetric");
  // parity conservation: no matrix element between {++, --} and {+-, -+}
  const int even[2] = {0, 3}, odd[2] = {1, 2};
  for (int e : even)
    for (int o : odd)
      if (std::abs(block(e, o)) > 1e-14 || std::abs(block(o, e)) > 1e-14)
        throw std::invalid_argument("custom operator block must commute with parity");
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(block, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().cwiseAbs().maxCoeff() > 1.0 + 1e-12)
    throw std::invalid_argument("custom operator block must have norm <= 1");
  // cat-state expectations <psi_pm|O_j|psi_pm> reduce to the plain sum of the
  // parity-allowed entries; both signs give the same combination
  if (std::abs(block.sum()) > 1e-12)
    throw std::invalid_argument(
        "custom operator block must annihilate the cat-state expectations");
  OperatorChoice c;
  c.kind = ToyOperatorKind::CustomDense;
  c.custom = block;
  return c;
}

std::string OperatorChoice::name() const {
  switch (kind) {
    case ToyOperatorKind::SigmaX: return "sigma-x";
    case ToyOperatorKind::SigmaXX: return "sigma-xx";
    case ToyOperatorKind::Mixed:
      return "mixed(" + std::to_string(gamma_num) + "/" + std::to_string(gamma_den) +
             (rescale ? ",rescaled)" : ")");
    case ToyOperatorKind::CustomDense: return "custom";
  }
  return "unknown";
}

namespace {

// Exact binomials by the multiplicative recurrence; exact in double as long
// as intermediates stay below 2^53 (true for L <= 40).
std::vector<double> binomial_row(int L) {
  std::vector<double> c(L + 1);
  c[0] = 1.0;
  for (int w = 0; w < L; ++w) c[w + 1] = c[w] * (L - w) / (w + 1);
  return c;
}

ToySpectrum spectrum_sigma_x(int L, int sector) {
  if (L > 40) throw TooLarge("toy spectrum (sigma-x): L <= 40");
  const auto binom = binomial_row(L);
  const int want_odd = sector == -1 ? 1 : 0;
  // key |L - 2w|; weights summed over the parity class
  std::map<int, double> counts;
  for (int w = 0; w <= L; ++w) {
    if ((w & 1) != want_odd) continue;
    counts[std::abs(L - 2 * w)] += binom[w];
  }
  ToySpectrum s;
  const double norm = std::ldexp(1.0, -(L - 1));  // 2^-(L-1)
  for (const auto& [key, count] : counts) {
    s.p.push_back(key);
    s.weight.push_back(count * norm);
  }
  return s;
}

// Enumerates x-basis strings; p depends on popcount w and/or wall count m.
ToySpectrum spectrum_enumerated(const OperatorChoice& choice, int L, int sector) {
  if (L > 24) throw TooLarge("toy spectrum (enumerated): L <= 24");
  const int want_odd = sector == -1 ? 1 : 0;
  const std::uint64_t total = std::uint64_t{1} << L;
  const bool mixed = choice.kind == ToyOperatorKind::Mixed;

  // key: |L-2m| for sigma-xx, (L-2w, L-2m) for mixed
  std::map<std::pair<int, int>, std::uint64_t> counts;
  for (std::uint64_t b = 0; b < total; ++b) {
    const int w = std::popcount(b);
    if ((w & 1) != want_odd) continue;
    const int m = std::popcount(b ^ rotl_bits(b, 1, L));
    if (mixed)
      counts[{L - 2 * w, L - 2 * m}] += 1;
    else
      counts[{std::abs(L - 2 * m), 0}] += 1;
  }

  const double gamma = choice.gamma();
  const double scale = choice.rescale ? 1.0 / (1.0 + std::abs(gamma)) : 1.0;
  ToySpectrum s;
  const double norm = std::ldexp(1.0, -(L - 1));
  for (const auto& [key, count] : counts) {
    const double p = mixed ? (key.first + gamma * key.second) * scale
                           : static_cast<double>(key.first);
    s.p.push_back(p);
    s.weight.push_back(static_cast<double>(count) * norm);
  }
  return s;
}

// Dense P on one sector for the custom two-site block.
Eigen::MatrixXd custom_sector_p(const OperatorChoice& choice, int L, int sector) {
  BasisIndexer basis(L, {sector});
  const auto dim = static_cast<Eigen::Index>(basis.dimension());
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const std::uint64_t b = basis.state(i);
    for (int j = 0; j < L; ++j) {
      const int jn = (j + 1) % L;
      const int col = static_cast<int>((b >> j) & 1) | (static_cast<int>((b >> jn) & 1) << 1);
      for (int row = 0; row < 4; ++row) {
        const double v = choice.custom(row, col);
        if (v == 0.0) continue;
        std::uint64_t b2 = b;
        b2 = (b2 & ~(std::uint64_t{1} << j)) | (static_cast<std::uint64_t>(row & 1) << j);
        b2 = (b2 & ~(std::uint64_t{1} << jn)) |
             (static_cast<std::uint64_t>((row >> 1) & 1) << jn);
        p(static_cast<Eigen::Index>(basis.index(b2)), i) += v;
      }
    }
  }
  return p;
}

ToySpectrum spectrum_custom(const OperatorChoice& choice, int L, int sector) {
  if (L > 14) throw DenseTooLarge("toy spectrum (custom): L <= 14");
  const Eigen::MatrixXd p = custom_sector_p(choice, L, sector);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(p);
  const auto dim = p.rows();
  // cat-state in the x basis: uniform amplitudes 2^{-(L-1)/2} over the sector
  Eigen::VectorXd cat = Eigen::VectorXd::Constant(dim, std::pow(2.0, -0.5 * (L - 1)));
  ToySpectrum s;
  for (Eigen::Index i = 0; i < dim; ++i) {
    s.p.push_back(es.eigenvalues()[i]);
    const double a = es.eigenvectors().col(i).dot(cat);
    s.weight.push_back(a * a);
  }
  return s;
}

}  // namespace

ToySpectrum toy_spectrum(const OperatorChoice& choice, int L, int sector) {
  if (sector != 1 && sector != -1)
    throw std::invalid_argument("toy_spectrum: sector must be +1 or -1");
  if (L < 2) throw std::invalid_argument("toy_spectrum: L >= 2");
  switch (choice.kind) {
    case ToyOperatorKind::SigmaX: return spectrum_sigma_x(L, sector);
    case ToyOperatorKind::SigmaXX:
    case ToyOperatorKind::Mixed: return spectrum_enumerated(choice, L, sector);
    case ToyOperatorKind::CustomDense: return spectrum_custom(choice, L, sector);
  }
  throw std::logic_error("unreachable");
}

namespace {

struct SecularFn {
  double L;
  double a_coef;  // lambda / L^alpha
  ToySpectrum spectrum;

  double value(double eta) const {
    // lambda = 0 collapses the resolvent to a scalar: the weights sum to one
    // by normalization, so evaluating 1 - 1/eta directly keeps the two
    // sectors bit-identical and the splitting exactly zero
    if (a_coef == 0.0) return 1.0 - 1.0 / eta;
    double sum = 0.0;
    for (std::size_t i = 0; i < spectrum.p.size(); ++i)
      sum += spectrum.weight[i] / (a_coef * spectrum.p[i] * spectrum.p[i] + L * eta);
    return 1.0 - L * sum;
  }
  double derivative(double eta) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < spectrum.p.size(); ++i) {
      const double d = a_coef * spectrum.p[i] * spectrum.p[i] + L * eta;
      sum += spectrum.weight[i] / (d * d);
    }
    return L * L * sum;
  }
};

SecularFn make_secular(const OperatorChoice& choice, const ModelParams& params, int sector) {
  params.validate();
  return {static_cast<double>(params.L),
          params.lambda / std::pow(static_cast<double>(params.L), params.alpha),
          toy_spectrum(choice, params.L, sector)};
}

double solve_positive_root(const SecularFn& fn) {
  double lo = 1e-6;
  while (fn.value(lo) > 0.0) {
    lo *= 0.1;
    if (lo < 1e-13)
      throw RootNotFound("secular function has no positive zero (f > 0 down to eta = 1e-13)");
  }
  double hi = 10.0;
  while (fn.value(hi) < 0.0) {
    hi *= 2.0;
    if (hi > 1e6) throw RootNotFound("secular function has no zero below eta = 1e6");
  }
  double eta = 0.0;
  {
    double a = lo, b = hi, fa = fn.value(a);
    while (b - a > 1e-14) {
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;
      const double fm = fn.value(mid);
      if (fm == 0.0) {
        a = b = mid;
        break;
      }
      if ((fm < 0.0) == (fa < 0.0)) {
        a = mid;
        fa = fm;
      } else {
        b = mid;
      }
    }
    eta = 0.5 * (a + b);
  }
  for (int i = 0; i < 3; ++i) {  // Newton polish to machine accuracy
    const double step = fn.value(eta) / fn.derivative(eta);
    if (!std::isfinite(step)) break;
    eta -= step;
  }
  return eta;
}

bool kramers_applies(const OperatorChoice& choice, int L) {
  // P -> -P under the antiunitary time reversal only when every O_j is odd
  // or even in s^x uniformly; Mixed breaks it, so no exact odd-L degeneracy.
  return (L % 2 == 1) && (choice.kind == ToyOperatorKind::SigmaX ||
                          choice.kind == ToyOperatorKind::SigmaXX);
}

}  // namespace

double secular_eval(const OperatorChoice& choice, const ModelParams& params, double eta,
                    int sector) {
  if (!(eta > 0.0)) throw std::invalid_argument("secular_eval: eta must be positive");
  return make_secular(choice, params, sector).value(eta);
}

ToyResult solve_splitting_secular(const OperatorChoice& choice, const ModelParams& params) {
  const SecularFn f_plus = make_secular(choice, params, +1);
  const SecularFn f_minus = make_secular(choice, params, -1);

  ToyResult out;
  out.route = ToyRoute::Secular;
  out.eta_plus = solve_positive_root(f_plus);
  out.eta_minus = solve_positive_root(f_minus);
  out.E_plus = -params.L * out.eta_plus;
  out.E_minus = -params.L * out.eta_minus;
  out.delta = out.E_minus - out.E_plus;
  out.kramers_zero = kramers_applies(choice, params.L);

  // linearized estimate -2 L g(eta*) / f'(eta*) at the zero eta* of f = (f+ + f-)/2
  const auto f_mean = [&](double eta) {
    return 0.5 * (f_plus.value(eta) + f_minus.value(eta));
  };
  double lo = std::min(out.eta_plus, out.eta_minus) * 0.5;
  double hi = std::max(out.eta_plus, out.eta_minus) * 2.0 + 1e-12;
  double eta_star = 0.5 * (out.eta_plus + out.eta_minus);
  if (f_mean(lo) < 0.0 && f_mean(hi) > 0.0) {
    double a = lo, b = hi;
    while (b - a > 1e-14) {
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;
      if (f_mean(mid) < 0.0)
        a = mid;
      else
        b = mid;
    }
    eta_star = 0.5 * (a + b);
  }
  const double g_star = 0.5 * (f_plus.value(eta_star) - f_minus.value(eta_star));
  const double fp_star = 0.5 * (f_plus.derivative(eta_star) + f_minus.derivative(eta_star));
  out.delta_linearized = -2.0 * params.L * g_star / fp_star;
  return out;
}

double matrix_element_cos(const OperatorChoice& choice, int L, double t) {
  if (L < 2) throw std::invalid_argument("matrix_element_cos: L >= 2");
  if (choice.rescale) {
    OperatorChoice unscaled = choice;
    unscaled.rescale = false;
    return matrix_element_cos(unscaled, L, t / (1.0 + std::abs(choice.gamma())));
  }
  switch (choice.kind) {
    case ToyOperatorKind::SigmaX: {
      if (L % 2 != 0) return 0.0;  // <down|cos Pt|up> needs an even flip count
      const double sign = (L / 2) % 2 == 0 ? 1.0 : -1.0;
      return sign * std::pow(std::sin(t), L);
    }
    case ToyOperatorKind::SigmaXX: {
      if (L % 4 != 0) return 0.0;  // i^{L/2} is imaginary for L = 2 mod 4
      const double sign = (L / 4) % 2 == 0 ? 1.0 : -1.0;
      return 2.0 * sign * std::pow(std::cos(t) * std::sin(t), L / 2);
    }
    case ToyOperatorKind::Mixed: {
      // Re Tr (T/2)^L with the 2x2 transfer matrix; the symmetric function of
      // the eigenvalues needs no branch tracking.
      using C = std::complex<double>;
      const double gt = choice.gamma() * t;
      const C i(0.0, 1.0);
      Eigen::Matrix2cd trans;
      trans << std::exp(i * t) * std::exp(i * gt), i * std::exp(-i * gt),
          i * std::exp(-i * gt), -std::exp(-i * t) * std::exp(i * gt);
      trans *= 0.5;
      Eigen::Matrix2cd power = Eigen::Matrix2cd::Identity();
      Eigen::Matrix2cd base = trans;
      int n = L;
      while (n > 0) {
        if (n & 1) power = power * base;
        base = base * base;
        n >>= 1;
      }
      return power.trace().real();
    }
    case ToyOperatorKind::CustomDense: {
      // (1/2) [sum_+ w cos(p t) - sum_- w cos(p t)]
      const ToySpectrum plus = toy_spectrum(choice, L, +1);
      const ToySpectrum minus = toy_spectrum(choice, L, -1);
      double s = 0.0;
      for (std::size_t j = 0; j < plus.p.size(); ++j)
        s += plus.weight[j] * std::cos(plus.p[j] * t);
      for (std::size_t j = 0; j < minus.p.size(); ++j)
        s -= minus.weight[j] * std::cos(minus.p[j] * t);
      return 0.5 * s;
    }
  }
  throw std::logic_error("unreachable");
}

double time_domain_delta(const OperatorChoice& choice, const ModelParams& params,
                         const ToyQuadOptions& options) {
  params.validate();
  const double L = params.L;
  const double omega = std::sqrt(std::pow(L, 1.0 + params.alpha) / params.lambda);
  const double horizon = -std::log(options.envelope_cutoff) / omega;
  const double prefactor = 2.0 * std::sqrt(std::pow(L, 3.0 + params.alpha) / params.lambda);

  const auto integrand = [&](double t) {
    return std::exp(-omega * t) * matrix_element_cos(choice, params.L, t);
  };
  const auto run = [&](int panels) {
    return prefactor *
           integrate_panels(integrand, 0.0, horizon, panels, options.nodes_per_panel);
  };
  const int panels = std::max(16, static_cast<int>(std::ceil(horizon / options.panel_width)));
  const double coarse = run(panels);
  const double fine = run(2 * panels);
  if (std::abs(fine - coarse) > options.cauchy_tol * std::abs(fine) + 1e-300)
    throw QuadratureNotConverged("time_domain_delta: refinements differ by " +
                                 std::to_string(std::abs(fine - coarse)));
  return fine;
}

double asymptotic_log_delta_toy(const OperatorChoice& choice, const ModelParams& params) {
  params.validate();
  const double L = params.L;
  const double l_pow = std::pow(L, 0.5 * (1.0 + params.alpha));
  switch (choice.kind) {
    case ToyOperatorKind::SigmaX:
      return -l_pow * M_PI / (2.0 * std::sqrt(params.lambda));
    case ToyOperatorKind::SigmaXX:
      if (params.L % 4 != 0)
        throw std::invalid_argument(
            "asymptotic_log_delta_toy: sigma-xx requires L to be a multiple of 4 "
            "(the splitting vanishes identically otherwise)");
      return -L * std::log(2.0) / 2.0;
    case ToyOperatorKind::Mixed:
      // q scales a common base factor, so ratios between denominators divide out
      return choice.gamma_den * (-l_pow * M_PI / (2.0 * std::sqrt(params.lambda)));
    case ToyOperatorKind::CustomDense:
      throw Unsupported("asymptotic_log_delta_toy: no closed form for custom operators");
  }
  throw std::logic_error("unreachable");
}

ToyResult dense_oracle_toy(const OperatorChoice& choice, const ModelParams& params) {
  params.validate();
  if (params.L > 12) throw TooLarge("dense_oracle_toy: L <= 12");
  const double a_coef = params.lambda / std::pow(static_cast<double>(params.L), params.alpha);

  double energy[2];
  const int sectors[2] = {+1, -1};
  for (int s = 0; s < 2; ++s) {
    BasisIndexer basis(params.L, {sectors[s]});
    const auto dim = static_cast<Eigen::Index>(basis.dimension());
    Eigen::MatrixXd h;
    if (choice.kind == ToyOperatorKind::CustomDense) {
      const Eigen::MatrixXd p = custom_sector_p(choice, params.L, sectors[s]);
      h = a_coef * p * p;
    } else {
      h = Eigen::MatrixXd::Zero(dim, dim);
      const double gamma = choice.gamma();
      const double scale = choice.rescale ? 1.0 / (1.0 + std::abs(gamma)) : 1.0;
      for (Eigen::Index i = 0; i < dim; ++i) {
        const std::uint64_t b = basis.state(i);
        const int w = std::popcount(b);
        const int m = std::popcount(b ^ rotl_bits(b, 1, params.L));
        double p = 0.0;
        switch (choice.kind) {
          case ToyOperatorKind::SigmaX: p = params.L - 2 * w; break;
          case ToyOperatorKind::SigmaXX: p = params.L - 2 * m; break;
          case ToyOperatorKind::Mixed:
            p = ((params.L - 2 * w) + gamma * (params.L - 2 * m)) * scale;
            break;
          default: break;
        }
        h(i, i) = a_coef * p * p;
      }
    }
    const double amp = std::pow(2.0, -0.5 * (params.L - 1));
    for (Eigen::Index r = 0; r < dim; ++r)
      for (Eigen::Index c = 0; c < dim; ++c) h(r, c) -= params.L * amp * amp;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h, Eigen::EigenvaluesOnly);
    energy[s] = solver.eigenvalues().minCoeff();
  }

  ToyResult out;
  out.route = ToyRoute::DenseOracle;
  out.E_plus = energy[0];
  out.E_minus = energy[1];
  out.eta_plus = -energy[0] / params.L;
  out.eta_minus = -energy[1] / params.L;
  out.delta = out.E_minus - out.E_plus;
  out.kramers_zero = kramers_applies(choice, params.L);
  return out;
}

}  // namespace splitgap
