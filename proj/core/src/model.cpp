#include "splitgap/model.hpp"

#include <cmath>
#include <map>
#include <sstream>

namespace splitgap {

std::string to_string(CouplingKind kind) {
  switch (kind) {
    case CouplingKind::AllToAll: return "all-to-all";
    case CouplingKind::PeriodicPowerLaw: return "power-law";
    case CouplingKind::Custom: return "custom";
  }
  return "unknown";
}

CouplingKind coupling_kind_from_string(const std::string& name) {
  if (name == "all-to-all" || name == "alltoall") return CouplingKind::AllToAll;
  if (name == "power-law" || name == "powerlaw") return CouplingKind::PeriodicPowerLaw;
  if (name == "custom") return CouplingKind::Custom;
  throw std::invalid_argument("unknown coupling kind: " + name);
}

double power_law_c_alpha(double alpha) {
  return (1.0 - alpha) / std::pow(2.0, alpha);
}

void ModelParams::validate() const {
  if (L < 2) throw std::invalid_argument("L must be >= 2");
  if (!(lambda >= 0.0))
    throw std::invalid_argument("lambda must be >= 0 (lambda < 0 is the unstable regime)");
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("alpha must lie in (0, 1]");
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive (or infinite)");
  if (coupling == CouplingKind::Custom) {
    if (static_cast<int>(custom_table.size()) != L)
      throw std::invalid_argument("custom coupling table must have exactly L entries");
    for (int r = 0; r < L; ++r) {
      if (!std::isfinite(custom_table[r]) || std::abs(custom_table[r]) > 1.0)
        throw std::invalid_argument("custom coupling table violates |f(r)| <= 1");
    }
    for (int r = 1; r < L; ++r) {
      if (custom_table[r] != custom_table[(L - r) % L])
        throw std::invalid_argument("custom coupling table violates f(r) = f(L-r)");
    }
  } else if (!custom_table.empty()) {
    throw std::invalid_argument("custom_table set but coupling is not Custom");
  }
}

std::string ModelParams::to_key_value() const {
  std::ostringstream os;
  os.precision(17);
  os << "L=" << L << "\n";
  os << "lambda=" << lambda << "\n";
  os << "alpha=" << alpha << "\n";
  os << "coupling=" << to_string(coupling) << "\n";
  if (std::isinf(beta))
    os << "beta=inf\n";
  else
    os << "beta=" << beta << "\n";
  if (coupling == CouplingKind::Custom) {
    os << "table=";
    for (int r = 0; r < L; ++r) os << (r ? "," : "") << custom_table[r];
    os << "\n";
  }
  return os.str();
}

ModelParams ModelParams::from_key_value(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("malformed key-value line: " + line);
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  ModelParams p;
  if (kv.count("L")) p.L = std::stoi(kv["L"]);
  if (kv.count("lambda")) p.lambda = std::stod(kv["lambda"]);
  if (kv.count("alpha")) p.alpha = std::stod(kv["alpha"]);
  if (kv.count("coupling")) p.coupling = coupling_kind_from_string(kv["coupling"]);
  if (kv.count("beta")) {
    p.beta = kv["beta"] == "inf" ? std::numeric_limits<double>::infinity()
                                 : std::stod(kv["beta"]);
  }
  if (kv.count("table")) {
    std::istringstream ts(kv["table"]);
    std::string item;
    while (std::getline(ts, item, ',')) p.custom_table.push_back(std::stod(item));
  }
  p.validate();
  return p;
}

std::vector<double> coupling_table(const ModelParams& params) {
  params.validate();
  std::vector<double> f(params.L);
  switch (params.coupling) {
    case CouplingKind::AllToAll: {
      const double value = 0.25 / std::pow(static_cast<double>(params.L), params.alpha);
      for (int r = 0; r < params.L; ++r) f[r] = value;
      break;
    }
    case CouplingKind::PeriodicPowerLaw: {
      const double c = power_law_c_alpha(params.alpha);
      f[0] = 0.0;
      for (int r = 1; r < params.L; ++r) {
        const int d = std::min(r, params.L - r);
        f[r] = c / std::pow(static_cast<double>(d), params.alpha);
      }
      // enforce exact symmetry: mirror entries share one evaluation
      for (int r = 1; r < params.L - r; ++r) f[params.L - r] = f[r];
      break;
    }
    case CouplingKind::Custom:
      f = params.custom_table;
      break;
  }
  return f;
}

double coupling_sum(const ModelParams& params) {
  const auto f = coupling_table(params);
  double sum = 0.0;
  for (double v : f) sum += v;
  return sum;
}

namespace {

double inverse_mass(const ModelParams& params, const std::vector<double>& f, int k) {
  const double w = 2.0 * M_PI * static_cast<double>(k) / params.L;
  double s = 0.0;
  for (int r = 0; r < params.L; ++r) s += std::cos(w * r) * f[r];
  return 1.0 + 2.0 * params.lambda * s;
}

}  // namespace

double fourier_mass(const ModelParams& params, int k) {
  if (k < 0 || k >= params.L) throw std::invalid_argument("fourier_mass: k out of range");
  const auto f = coupling_table(params);
  const double inv = inverse_mass(params, f, k);
  if (!(inv > 0.0))
    throw NonPositiveMass("1/m_k <= 0 at k=" + std::to_string(k) +
                          " (lambda outside positive-definite window)");
  return 1.0 / inv;
}

std::vector<double> fourier_masses(const ModelParams& params) {
  const auto f = coupling_table(params);
  std::vector<double> m(params.L);
  for (int k = 0; k < params.L; ++k) {
    const double inv = inverse_mass(params, f, k);
    if (!(inv > 0.0))
      throw NonPositiveMass("1/m_k <= 0 at k=" + std::to_string(k) +
                            " (lambda outside positive-definite window)");
    m[k] = 1.0 / inv;
  }
  return m;
}

bool check_positive_definite(const ModelParams& params) {
  const auto f = coupling_table(params);
  for (int k = 0; k < params.L; ++k) {
    if (!(inverse_mass(params, f, k) > 0.0)) return false;
  }
  return true;
}

}  // namespace splitgap
