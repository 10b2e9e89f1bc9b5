#include "splitgap/records.hpp"

#include <cmath>
#include <sstream>

namespace splitgap {

json params_to_json(const ModelParams& params) {
  json j;
  j["L"] = params.L;
  j["lambda"] = params.lambda;
  j["alpha"] = params.alpha;
  j["coupling"] = to_string(params.coupling);
  if (std::isinf(params.beta))
    j["beta"] = "inf";
  else
    j["beta"] = params.beta;
  if (params.coupling == CouplingKind::Custom) j["table"] = params.custom_table;
  return j;
}

ModelParams params_from_json(const json& j) {
  ModelParams p;
  p.L = j.at("L").get<int>();
  p.lambda = j.at("lambda").get<double>();
  p.alpha = j.at("alpha").get<double>();
  p.coupling = coupling_kind_from_string(j.at("coupling").get<std::string>());
  if (j.contains("beta")) {
    if (j["beta"].is_string())
      p.beta = std::numeric_limits<double>::infinity();
    else
      p.beta = j["beta"].get<double>();
  }
  if (j.contains("table")) p.custom_table = j["table"].get<std::vector<double>>();
  p.validate();
  return p;
}

json to_json(const SpectralResult& r) {
  return json{{"E_plus", r.E_plus},
              {"E_minus", r.E_minus},
              {"delta", r.delta},
              {"err_bound", r.err_bound},
              {"residual_plus", r.residual_plus},
              {"residual_minus", r.residual_minus},
              {"iterations_plus", r.iterations_plus},
              {"iterations_minus", r.iterations_minus}};
}

json to_json(const ThermalResult& r) {
  return json{{"s_beta", r.s_beta}, {"deltaF_beta", r.deltaF_beta}, {"zz_corr", r.zz_corr}};
}

json to_json(const ActionBreakdown& a) {
  json j{{"potential_term", a.potential_term},
         {"kinetic_term", a.kinetic_term},
         {"total", a.total}};
  if (std::isfinite(a.error_estimate)) j["error_estimate"] = a.error_estimate;
  return j;
}

json to_json(const HessianModeTable& t) {
  return json{{"beta", t.beta},
              {"L", t.L},
              {"k", t.k},
              {"omega", t.omega},
              {"v_closed", t.v_closed},
              {"v_numeric", t.v_numeric},
              {"h_k", t.h_k},
              {"rel_deviation", t.rel_deviation},
              {"max_rel_deviation", t.max_rel_deviation},
              {"pair_degeneracy_gap", t.pair_degeneracy_gap}};
}

json to_json(const RotorSemiclassics& r) {
  return json{{"m0", r.m0},
              {"action", r.action},
              {"log_det_ratio", r.log_det_ratio},
              {"det_ratio", std::isfinite(r.det_ratio) ? json(r.det_ratio) : json("inf")},
              {"log_delta", r.log_delta},
              {"log_delta_leading", r.log_delta_leading}};
}

json to_json(const AppendixDReport& r) {
  return json{{"beta", r.beta},
              {"n_max", r.n_max},
              {"log_delta_numeric", r.log_delta_numeric},
              {"log_delta_closed", r.log_delta_closed},
              {"delta_numeric", r.delta_numeric},
              {"delta_closed", r.delta_closed},
              {"rel_error", r.rel_error}};
}

json to_json(const ToyResult& r) {
  const char* route = r.route == ToyRoute::Secular
                          ? "secular"
                          : (r.route == ToyRoute::TimeDomain ? "time-domain" : "dense");
  json j{{"eta_plus", r.eta_plus}, {"eta_minus", r.eta_minus}, {"E_plus", r.E_plus},
         {"E_minus", r.E_minus},   {"delta", r.delta},         {"route", route},
         {"kramers_zero", r.kramers_zero}};
  if (r.route == ToyRoute::Secular) j["delta_linearized"] = r.delta_linearized;
  return j;
}

json to_json(const FitReport& r) {
  return json{{"C", r.C},
              {"p", r.p},
              {"log_coeff", r.log_coeff},
              {"residual_rms", r.residual_rms},
              {"local_slopes", r.local_slopes},
              {"model", r.model == FitModel::PurePower ? "pure-power" : "power-with-log"},
              {"refinement_iterations", r.refinement_iterations}};
}

std::string canonical_dump(const json& j) { return j.dump(); }

std::string csv_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    const std::string& f = fields[i];
    if (f.find_first_of(",\"\n") != std::string::npos) {
      out += '"';
      for (char c : f) {
        out += c;
        if (c == '"') out += '"';
      }
      out += '"';
    } else {
      out += f;
    }
  }
  out += '\n';
  return out;
}

}  // namespace splitgap
