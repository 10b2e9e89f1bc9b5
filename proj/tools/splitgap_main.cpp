// splitgap: ground-state splitting laboratory for long-range Ising variants.
//
// Subcommands: ed, toy, rotor, instanton, hessian, fit, sweep, verify.
// Records go to stdout as JSON lines; --csv adds an RFC 4180 table; results
// are cached content-addressed under --cache-dir or $SPLITGAP_CACHE.

#include <CLI11.hpp>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "splitgap/cache.hpp"
#include "splitgap/ed.hpp"
#include "splitgap/errors.hpp"
#include "splitgap/fit.hpp"
#include "splitgap/instanton.hpp"
#include "splitgap/records.hpp"
#include "splitgap/rotor.hpp"
#include "splitgap/toy.hpp"

namespace {

using namespace splitgap;

constexpr const char* kVersion = "splitgap 0.1.0";

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

// ---------------------------------------------------------------------------
// shared option bag: every computational knob a subcommand or sweep can set

struct Args {
  int L = 8;
  double lambda = 0.0;
  double alpha = 0.5;
  std::string coupling = "all-to-all";
  double beta = std::numeric_limits<double>::infinity();
  double g = 0.1;
  std::string choice = "sigma-x";
  std::string gamma = "1/3";
  bool rescale = false;
  std::string route = "all";
  std::string method = "lanczos";
  double tol = 1e-12;
  double grad_tol = 1e-10;
  int max_iter = 500;
  std::uint64_t seed = 0x5eed5eedULL;
  int grid = 8192;
  int nmax = 10000;
  long long series_r = 100000;
  int nodes = 24;
  int modes = 8;
  double tau_star = -1.0;  // < 0 means beta/2
  bool thermal = false;
  bool asymptotic = false;
  bool appendix_d = false;
  int jobs = 1;
};

ModelParams model_from(const Args& a) {
  ModelParams p;
  p.L = a.L;
  p.lambda = a.lambda;
  p.alpha = a.alpha;
  p.coupling = coupling_kind_from_string(a.coupling);
  p.beta = a.beta;
  return p;
}

OperatorChoice choice_from(const Args& a) {
  if (a.choice == "sigma-x") return OperatorChoice::sigma_x();
  if (a.choice == "sigma-xx") return OperatorChoice::sigma_xx();
  if (a.choice == "mixed") {
    int p = 1, q = 3;
    if (std::sscanf(a.gamma.c_str(), "%d/%d", &p, &q) != 2) {
      p = static_cast<int>(std::lround(std::stod(a.gamma)));
      q = 1;
    }
    return OperatorChoice::mixed(p, q, a.rescale);
  }
  throw std::invalid_argument("unknown operator choice: " + a.choice +
                              " (use sigma-x, sigma-xx or mixed)");
}

// arguments relevant to one command, canonicalized for the cache key
json args_json(const std::string& cmd, const Args& a) {
  json j;
  j["cmd"] = cmd;
  j["L"] = a.L;
  j["lambda"] = a.lambda;
  j["alpha"] = a.alpha;
  if (cmd == "ed") {
    j["coupling"] = a.coupling;
    j["method"] = a.method;
    j["tol"] = a.tol;
    j["seed"] = a.seed;
    if (a.thermal) {
      j["thermal"] = true;
      j["beta"] = std::isinf(a.beta) ? json("inf") : json(a.beta);
    }
  } else if (cmd == "toy") {
    j["choice"] = a.choice;
    if (a.choice == "mixed") {
      j["gamma"] = a.gamma;
      j["rescale"] = a.rescale;
    }
    j["route"] = a.route;
  } else if (cmd == "rotor") {
    j["g"] = a.g;
    j["asymptotic"] = a.asymptotic;
    if (a.asymptotic) {
      j["series_r"] = a.series_r;
      j["nodes"] = a.nodes;
    }
    if (a.appendix_d) {
      j["appendix_d"] = true;
      j["beta"] = std::isinf(a.beta) ? json("inf") : json(a.beta);
      j["nmax"] = a.nmax;
    }
  } else if (cmd == "instanton") {
    j["beta"] = std::isinf(a.beta) ? json("inf") : json(a.beta);
    j["grid"] = a.grid;
    j["tau_star"] = a.tau_star;
    j["tol"] = a.grad_tol;
  } else if (cmd == "hessian") {
    j["beta"] = std::isinf(a.beta) ? json("inf") : json(a.beta);
    j["grid"] = a.grid;
    j["modes"] = a.modes;
  }
  return j;
}

// ---------------------------------------------------------------------------
// per-command computations: pure Args -> result json

json compute_ed(const Args& a) {
  const ModelParams params = model_from(a);
  if (a.thermal) return to_json(thermal_observables(params, a.beta));
  EigensolverConfig config;
  config.method =
      a.method == "dense" ? EigensolverMethod::Dense : EigensolverMethod::Lanczos;
  config.tolerance = a.tol;
  config.max_iterations = a.max_iter;
  config.rng_seed = a.seed;
  config.num_threads = a.jobs;
  return to_json(splitting_ed(params, config));
}

json compute_toy(const Args& a) {
  const ModelParams params = model_from(a);
  const OperatorChoice choice = choice_from(a);
  json result;
  result["choice"] = choice.name();
  const bool all = a.route == "all";
  if (all || a.route == "secular") {
    const ToyResult r = solve_splitting_secular(choice, params);
    result["delta_secular"] = r.delta;
    result["eta_plus"] = r.eta_plus;
    result["eta_minus"] = r.eta_minus;
    result["delta"] = r.delta;  // generic column for downstream fits
    result["kramers_zero"] = r.kramers_zero;
    result["delta_linearized"] = r.delta_linearized;
  }
  if (all || a.route == "time-domain") {
    result["delta_timedomain"] = time_domain_delta(choice, params);
    if (!result.contains("delta")) result["delta"] = result["delta_timedomain"];
  }
  if ((all && params.L <= 12) || a.route == "dense") {
    const ToyResult r = dense_oracle_toy(choice, params);
    result["delta_dense"] = r.delta;
    if (!result.contains("delta")) result["delta"] = r.delta;
  }
  if (all || a.route == "asymptotic") {
    try {
      result["asymptotic"] = asymptotic_log_delta_toy(choice, params);
    } catch (const std::exception&) {
      if (!all) throw;  // under --route all a missing closed form is fine
    }
  }
  return result;
}

json compute_rotor(const Args& a) {
  Args fixed = a;
  fixed.coupling = "power-law";
  RotorParams params{model_from(fixed), a.g};
  if (a.appendix_d) return to_json(appendix_d_verify(params, a.beta, a.nmax));
  const RotorSemiclassics r = log_delta_rotor(params);
  json result = to_json(r);
  result["log_delta_full"] = r.log_delta;
  if (a.asymptotic) {
    AsymptoticOptions opts;
    opts.series_truncation = a.series_r;
    opts.quad_nodes = a.nodes;
    result["log_delta_asymptotic"] = log_delta_rotor_asymptotic(params, opts);
  }
  return result;
}

json compute_instanton(const Args& a) {
  const ModelParams params = model_from(a);
  if (std::isinf(a.beta))
    throw std::invalid_argument("instanton: a finite --beta is required");
  const double tau_star = a.tau_star > 0.0 ? a.tau_star : a.beta / 2.0;
  const double closed = 2.0 *
                        std::pow(static_cast<double>(a.L), 0.5 * (1.0 + a.alpha)) *
                        std::sqrt(std::tanh(a.beta) / a.lambda);

  const InstantonProfile analytic = analytic_instanton(params, a.beta, tau_star, a.grid);
  const ActionBreakdown analytic_action = reduced_action(analytic, params, a.beta);

  MinimizeOptions opts;
  opts.grad_tolerance = a.grad_tol;
  const MinimizeOutcome minimized = minimize_reduced_action(params, a.beta, a.grid, opts);

  json result;
  result["action_closed_form"] = closed;
  result["action_analytic"] = analytic_action.total;
  result["action_numeric"] = minimized.action.total;
  result["rel_error"] = std::abs(minimized.action.total - closed) / closed;
  result["grad_norm"] = minimized.grad_norm;
  result["iterations"] = minimized.iterations;
  result["tau_star"] = minimized.profile.tau_star;
  result["width"] = minimized.profile.width;
  result["log_sbeta_prediction"] = predict_log_sbeta(params, a.beta);
  result["log_delta_prediction"] = predict_log_delta_chain(params);
  return result;
}

json compute_hessian(const Args& a) {
  if (std::isinf(a.beta))
    throw std::invalid_argument("hessian: a finite --beta is required");
  const double lambda = a.lambda > 0.0 ? a.lambda : 1.0;
  return to_json(hessian_vd_check(a.L, a.beta, a.grid, a.modes, lambda, a.alpha));
}

json compute(const std::string& cmd, const Args& a) {
  if (cmd == "ed") return compute_ed(a);
  if (cmd == "toy") return compute_toy(a);
  if (cmd == "rotor") return compute_rotor(a);
  if (cmd == "instanton") return compute_instanton(a);
  if (cmd == "hessian") return compute_hessian(a);
  throw std::invalid_argument("sweep: unknown --cmd " + cmd);
}

// ---------------------------------------------------------------------------
// record emission

struct Emitter {
  std::optional<ResultCache> cache;
  std::ostream* out = &std::cout;
  std::ofstream out_file;
  std::ofstream csv_file;
  bool csv_enabled = false;
  bool csv_header_done = false;

  void open(const std::string& out_path, const std::string& csv_path,
            const std::string& cache_dir) {
    if (!out_path.empty()) {
      out_file.open(out_path, std::ios::trunc);
      if (!out_file) throw std::invalid_argument("cannot open --out " + out_path);
      out = &out_file;
    }
    if (!csv_path.empty()) {
      csv_file.open(csv_path, std::ios::trunc);
      if (!csv_file) throw std::invalid_argument("cannot open --csv " + csv_path);
      csv_enabled = true;
    }
    std::string dir = cache_dir;
    if (dir.empty()) {
      if (const char* env = std::getenv("SPLITGAP_CACHE")) dir = env;
    }
    if (!dir.empty()) cache.emplace(dir);
  }

  // runs through the cache when one is configured
  json cached_compute(const std::string& cmd, const Args& a) {
    const json key_json = args_json(cmd, a);
    const std::string key = canonical_dump(key_json);
    bool cached = false;
    std::string payload;
    if (cache) {
      if (auto hit = cache->lookup(key)) {
        payload = *hit;
        cached = true;
      }
    }
    if (!cached) {
      payload = canonical_dump(compute(cmd, a));
      if (cache) cache->store(key, payload);
    }
    json record;
    record["command"] = cmd;
    record["params"] = key_json;
    record["key"] = ResultCache::digest_hex(key);
    record["result"] = json::parse(payload);
    record["cached"] = cached;
    record["timestamp"] = utc_timestamp();
    record["version"] = kVersion;
    return record;
  }

  void emit(const json& record) {
    (*out) << canonical_dump(record) << "\n";
    if (csv_enabled) emit_csv(record);
  }

  void emit_csv(const json& record) {
    const std::string cmd = record.value("command", "");
    const json& params = record["params"];
    const json& result = record["result"];
    if (cmd == "ed" && !params.value("thermal", false)) {
      if (!csv_header_done) {
        csv_file << csv_row({"model", "L", "lambda", "alpha", "coupling", "E_plus",
                             "E_minus", "delta", "err_bound"});
        csv_header_done = true;
      }
      csv_file << csv_row({"ed", std::to_string(params["L"].get<int>()),
                           csv_number(params["lambda"].get<double>()),
                           csv_number(params["alpha"].get<double>()),
                           params["coupling"].get<std::string>(),
                           csv_number(result["E_plus"].get<double>()),
                           csv_number(result["E_minus"].get<double>()),
                           csv_number(result["delta"].get<double>()),
                           csv_number(result["err_bound"].get<double>())});
      return;
    }
    // generic flat table: scalar result fields prefixed by the inputs
    if (!csv_header_done) {
      std::vector<std::string> header{"command", "L", "lambda", "alpha"};
      for (const auto& [k, v] : result.items())
        if (v.is_number() || v.is_boolean()) header.push_back(k);
      csv_file << csv_row(header);
      csv_header_done = true;
    }
    std::vector<std::string> row{cmd, std::to_string(params.value("L", 0)),
                                 csv_number(params.value("lambda", 0.0)),
                                 csv_number(params.value("alpha", 0.0))};
    for (const auto& [k, v] : result.items()) {
      if (v.is_number())
        row.push_back(csv_number(v.get<double>()));
      else if (v.is_boolean())
        row.push_back(v.get<bool>() ? "1" : "0");
    }
    csv_file << csv_row(row);
  }
};

// ---------------------------------------------------------------------------
// sweep

struct AxisSpec {
  std::string name;
  std::vector<double> values;
};

AxisSpec parse_axis(const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos)
    throw std::invalid_argument("--axis expects name=v1,v2,... or name=start:stop:step");
  AxisSpec axis;
  axis.name = spec.substr(0, eq);
  const std::string body = spec.substr(eq + 1);
  if (body.find(':') != std::string::npos) {
    double start = 0.0, stop = 0.0, step = 1.0;
    if (std::sscanf(body.c_str(), "%lf:%lf:%lf", &start, &stop, &step) != 3 ||
        step <= 0.0)
      throw std::invalid_argument("bad axis range: " + spec);
    for (double v = start; v <= stop + 1e-12; v += step) axis.values.push_back(v);
  } else {
    std::istringstream is(body);
    std::string item;
    while (std::getline(is, item, ',')) axis.values.push_back(std::stod(item));
  }
  if (axis.values.empty()) throw std::invalid_argument("empty axis: " + spec);
  return axis;
}

void apply_axis(Args& a, const std::string& name, double value) {
  if (name == "L")
    a.L = static_cast<int>(std::llround(value));
  else if (name == "lambda")
    a.lambda = value;
  else if (name == "alpha")
    a.alpha = value;
  else if (name == "beta")
    a.beta = value;
  else if (name == "g")
    a.g = value;
  else if (name == "grid")
    a.grid = static_cast<int>(std::llround(value));
  else if (name == "nmax")
    a.nmax = static_cast<int>(std::llround(value));
  else if (name == "seed")
    a.seed = static_cast<std::uint64_t>(std::llround(value));
  else
    throw std::invalid_argument("unknown sweep axis: " + name);
}

int run_sweep(Emitter& emitter, const Args& base, const std::string& target,
              const std::vector<std::string>& axis_specs, int jobs, int max_points) {
  std::vector<AxisSpec> axes;
  std::size_t total = 1;
  for (const auto& spec : axis_specs) {
    axes.push_back(parse_axis(spec));
    total *= axes.back().values.size();
  }
  std::cerr << "sweep: " << total << " point(s) over " << axes.size() << " axis(es)\n";
  if (total > static_cast<std::size_t>(max_points))
    throw std::invalid_argument("sweep size " + std::to_string(total) +
                                " exceeds --max-points " + std::to_string(max_points));

  std::vector<Args> points(total, base);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rem = idx;
    for (const auto& axis : axes) {
      apply_axis(points[idx], axis.name, axis.values[rem % axis.values.size()]);
      rem /= axis.values.size();
    }
  }

  std::vector<json> records(total);
  std::vector<std::string> errors(total);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= total) return;
      try {
        records[idx] = emitter.cached_compute(target, points[idx]);
      } catch (const std::exception& e) {
        errors[idx] = e.what();
      }
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  int failures = 0;
  for (std::size_t idx = 0; idx < total; ++idx) {
    if (!errors[idx].empty()) {
      ++failures;
      json err{{"error", "computation"}, {"message", errors[idx]}};
      std::cerr << canonical_dump(err) << "\n";
      continue;
    }
    emitter.emit(records[idx]);
  }
  return failures == 0 ? 0 : 1;
}

// ---------------------------------------------------------------------------
// fit: consumes JSON lines (stdin or --in), emits a FitReport record

int run_fit(Emitter& emitter, const std::string& in_path, const std::string& model_name,
            const std::string& csv_path) {
  std::ifstream in_file;
  std::istream* in = &std::cin;
  if (!in_path.empty()) {
    in_file.open(in_path);
    if (!in_file) throw std::invalid_argument("cannot open --in " + in_path);
    in = &in_file;
  }
  ScalingDataset data;
  data.source = "cli";
  std::string line;
  while (std::getline(*in, line)) {
    if (line.empty()) continue;
    const json record = json::parse(line, nullptr, false);
    if (record.is_discarded()) continue;
    const json& params = record.contains("params") ? record["params"] : record;
    const json& result = record.contains("result") ? record["result"] : record;
    if (!params.contains("L")) continue;
    ScalingPoint point;
    point.L = params["L"].get<double>();
    if (result.contains("log_delta"))
      point.log_delta = result["log_delta"].get<double>();
    else if (result.contains("delta"))
      point.log_delta = std::log(std::abs(result["delta"].get<double>()));
    else
      continue;
    point.err = result.value("err_bound", 0.0);
    data.points.push_back(point);
  }

  FitModel model = default_fit_model(data.points.size());
  if (model_name == "pure") model = FitModel::PurePower;
  if (model_name == "log") model = FitModel::PowerWithLog;
  const FitReport report = fit_stretched(data, model);

  json record;
  record["command"] = "fit";
  record["params"] = json{{"cmd", "fit"},
                          {"model", model == FitModel::PurePower ? "pure" : "log"},
                          {"points", data.points.size()}};
  record["key"] = ResultCache::digest_hex(canonical_dump(record["params"]));
  record["result"] = to_json(report);
  record["cached"] = false;
  record["timestamp"] = utc_timestamp();
  record["version"] = kVersion;
  emitter.emit(record);

  if (!csv_path.empty()) {
    std::ofstream csv(csv_path, std::ios::trunc);
    csv << csv_row({"L", "neg_log_delta", "fit_curve"});
    for (const auto& pt : data.points) {
      const double curve = report.C * std::pow(pt.L, report.p) +
                           report.log_coeff * std::log(pt.L);
      csv << csv_row({csv_number(pt.L), csv_number(-pt.log_delta), csv_number(curve)});
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// verify: the cross-module invariant suite

struct VerifyReporter {
  int failures = 0;
  void check(const std::string& name, bool ok, const std::string& detail) {
    std::cout << (ok ? "ok   " : "FAIL ") << name << ": " << detail << "\n";
    if (!ok) ++failures;
  }
};

void verify_model(VerifyReporter& rep) {
  bool symmetric = true;
  for (int L : {8, 13, 32}) {
    for (auto kind : {CouplingKind::AllToAll, CouplingKind::PeriodicPowerLaw}) {
      ModelParams p;
      p.L = L;
      p.coupling = kind;
      const auto f = coupling_table(p);
      for (int r = 1; r < L; ++r) symmetric = symmetric && f[r] == f[L - r];
    }
  }
  rep.check("model/coupling-symmetry", symmetric, "f(r) == f(L-r) exactly");

  ModelParams p;
  p.L = 12;
  p.lambda = 0.25;
  p.alpha = 0.7;
  p.coupling = CouplingKind::PeriodicPowerLaw;
  const auto f = coupling_table(p);
  const auto m = fourier_masses(p);
  double worst = 0.0;
  for (int r = 0; r < p.L; ++r) {
    double row = 0.0;
    for (int k = 0; k < p.L; ++k) row += std::cos(2.0 * M_PI * k * r / p.L) / m[k];
    row /= p.L;
    const double expected = (r == 0 ? 1.0 : 0.0) + 2.0 * p.lambda * f[r];
    worst = std::max(worst, std::abs(row - expected));
  }
  rep.check("model/circulant-roundtrip", worst < 1e-12,
            "max deviation " + std::to_string(worst));
}

void verify_ed(VerifyReporter& rep) {
  EigensolverConfig dense;
  dense.method = EigensolverMethod::Dense;
  double worst = 0.0;
  for (int L : {4, 6, 8}) {
    for (double lambda : {0.0, 0.3, 1.0}) {
      for (double alpha : {0.3, 0.7}) {
        for (auto kind : {CouplingKind::AllToAll, CouplingKind::PeriodicPowerLaw}) {
          ModelParams p;
          p.L = L;
          p.lambda = lambda;
          p.alpha = alpha;
          p.coupling = kind;
          for (int sign : {+1, -1}) {
            const double lz = sector_ground_energy(p, {sign}, {}).eigenvalue;
            const double dn = sector_ground_energy(p, {sign}, dense).eigenvalue;
            worst = std::max(worst, std::abs(lz - dn));
          }
        }
      }
    }
  }
  rep.check("ed/lanczos-vs-dense", worst < 1e-10,
            "max sector energy deviation " + std::to_string(worst));

  ModelParams p;
  p.L = 8;
  p.lambda = 0.0;
  p.coupling = CouplingKind::AllToAll;
  const double delta = splitting_ed(p, {}).delta;
  rep.check("ed/unperturbed-degeneracy", std::abs(delta) < 1e-12,
            "|delta| = " + std::to_string(std::abs(delta)));
}

void verify_appendix_d(VerifyReporter& rep, double beta, int nmax) {
  for (double lambda : {0.0, 0.2}) {
    for (int L : {2, 4, 8}) {
      RotorParams p;
      p.base.L = L;
      p.base.lambda = lambda;
      p.base.alpha = 0.5;
      p.base.coupling = CouplingKind::PeriodicPowerLaw;
      p.g = 0.1;
      const AppendixDReport r = appendix_d_verify(p, beta, nmax);
      std::ostringstream detail;
      detail << "L=" << L << " lambda=" << lambda << " rel_error=" << r.rel_error;
      rep.check("rotor/appendix-d", r.rel_error < 0.005, detail.str());
    }
  }
}

void verify_kernel(VerifyReporter& rep) {
  const HessianModeTable t = hessian_vd_check(8, 4.0, 1024, 8);
  std::ostringstream detail;
  detail << "max relative deviation " << t.max_rel_deviation << " over 8 modes";
  rep.check("instanton/vd-kernel", t.max_rel_deviation < 0.01, detail.str());
}

void verify_toy(VerifyReporter& rep) {
  const auto sigma_x = OperatorChoice::sigma_x();
  for (int L : {4, 6, 8, 10}) {
    ModelParams p;
    p.L = L;
    p.lambda = 1.0;
    p.alpha = 0.5;
    const double secular = solve_splitting_secular(sigma_x, p).delta;
    const double dense = dense_oracle_toy(sigma_x, p).delta;
    const double rel = std::abs(secular - dense) / std::abs(dense);
    rep.check("toy/secular-vs-dense", rel < 1e-8,
              "L=" + std::to_string(L) + " rel=" + std::to_string(rel));
  }
  ModelParams odd;
  odd.L = 5;
  odd.lambda = 1.0;
  odd.alpha = 0.5;
  rep.check("toy/kramers-zero",
            solve_splitting_secular(sigma_x, odd).delta == 0.0, "L=5 sigma-x");
  ModelParams mod2;
  mod2.L = 6;
  mod2.lambda = 1.0;
  mod2.alpha = 0.5;
  rep.check("toy/xx-mod4-zero",
            solve_splitting_secular(OperatorChoice::sigma_xx(), mod2).delta == 0.0,
            "L=6 sigma-xx");
}

int run_verify(const std::string& suite, double beta, int nmax) {
  VerifyReporter rep;
  const bool all = suite == "all";
  if (all || suite == "model") verify_model(rep);
  if (all || suite == "ed-oracle") verify_ed(rep);
  if (all || suite == "appendix-d")
    verify_appendix_d(rep, std::isinf(beta) ? 50.0 : beta, nmax);
  if (all || suite == "kernel") verify_kernel(rep);
  if (all || suite == "toy-routes") verify_toy(rep);
  std::cout << (rep.failures == 0 ? "verify: all checks passed\n"
                                  : "verify: " + std::to_string(rep.failures) +
                                        " check(s) failed\n");
  return rep.failures == 0 ? 0 : 1;
}

void add_model_flags(CLI::App* cmd, Args& args) {
  cmd->add_option("--L", args.L, "site count");
  cmd->add_option("--lambda", args.lambda, "interaction strength");
  cmd->add_option("--alpha", args.alpha, "power-law exponent in (0, 1]");
  cmd->add_option("--coupling", args.coupling, "all-to-all | power-law | custom");
  cmd->add_option("--beta", args.beta, "inverse temperature (finite where needed)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ground-state splitting laboratory for long-range Ising variants"};
  app.require_subcommand(1);

  Args args;
  std::string out_path, csv_path, cache_dir;
  app.add_option("--out", out_path, "write JSON lines here instead of stdout");
  app.add_option("--csv", csv_path, "also write an RFC 4180 table here");
  app.add_option("--cache-dir", cache_dir,
                 "result cache directory (default: $SPLITGAP_CACHE)");

  auto* ed = app.add_subcommand("ed", "exact diagonalization splitting / thermal");
  add_model_flags(ed, args);
  ed->add_option("--method", args.method, "lanczos | dense");
  ed->add_option("--tol", args.tol, "eigenvalue residual tolerance");
  ed->add_option("--max-iter", args.max_iter, "Lanczos iteration cap");
  ed->add_option("--seed", args.seed, "start-vector seed");
  ed->add_option("--jobs", args.jobs, "threads inside one matvec");
  ed->add_flag("--thermal", args.thermal, "dense thermal observables at --beta");

  auto* toy = app.add_subcommand("toy", "projector toy model");
  add_model_flags(toy, args);
  toy->add_option("--choice", args.choice, "sigma-x | sigma-xx | mixed");
  toy->add_option("--gamma", args.gamma, "mixed weight p/q, q odd");
  toy->add_flag("--rescale", args.rescale, "divide O_j by 1+|gamma|");
  toy->add_option("--route", args.route,
                  "secular | time-domain | dense | asymptotic | all");

  auto* rotor = app.add_subcommand("rotor", "rotor-chain semiclassics");
  add_model_flags(rotor, args);
  rotor->add_option("--g", args.g, "semiclassical parameter");
  rotor->add_flag("--asymptotic", args.asymptotic, "include the large-L three-term value");
  rotor->add_flag("--appendix-d", args.appendix_d,
                  "finite-beta determinant assembly against the closed product");
  rotor->add_option("--nmax", args.nmax, "root count for --appendix-d");
  rotor->add_option("--R", args.series_r, "series truncation for --asymptotic");
  rotor->add_option("--nodes", args.nodes, "quadrature nodes per panel");

  auto* instanton = app.add_subcommand("instanton", "reduced-action minimization");
  add_model_flags(instanton, args);
  instanton->add_option("--grid", args.grid, "uniform intervals on [0, beta]");
  instanton->add_option("--tau-star", args.tau_star, "kink center (default beta/2)");
  instanton->add_option("--tol", args.grad_tol, "gradient sup-norm tolerance");

  auto* hessian = app.add_subcommand("hessian", "fluctuation-kernel spectrum check");
  add_model_flags(hessian, args);
  hessian->add_option("--grid", args.grid, "kernel discretization points");
  hessian->add_option("--modes", args.modes, "modes compared against the closed form");

  auto* fit = app.add_subcommand("fit", "stretched-exponential fit of JSON lines");
  std::string fit_in, fit_model = "auto";
  fit->add_option("--in", fit_in, "JSON-lines input (default: stdin)");
  fit->add_option("--model", fit_model, "auto | pure | log");

  auto* sweep = app.add_subcommand("sweep", "cartesian parameter sweep");
  add_model_flags(sweep, args);
  std::vector<std::string> axis_specs;
  std::string sweep_cmd = "ed";
  int sweep_jobs = 1, max_points = 4096;
  sweep->add_option("--axis", axis_specs, "axis spec name=v1,v2,... or name=a:b:step")
      ->required();
  sweep->add_option("--cmd", sweep_cmd,
                    "target subcommand (ed|toy|rotor|instanton|hessian)");
  sweep->add_option("--jobs", sweep_jobs, "parallel workers");
  sweep->add_option("--max-points", max_points, "hard cap on the product size");
  sweep->add_option("--g", args.g, "semiclassical parameter");
  sweep->add_option("--choice", args.choice, "toy operator choice");
  sweep->add_option("--gamma", args.gamma, "mixed weight p/q");
  sweep->add_option("--route", args.route, "toy route");
  sweep->add_option("--method", args.method, "ed eigensolver");
  sweep->add_option("--tol", args.tol, "solver tolerance");
  sweep->add_option("--seed", args.seed, "rng seed");
  sweep->add_option("--grid", args.grid, "instanton grid");
  sweep->add_option("--nmax", args.nmax, "appendix-d root count");

  auto* verify = app.add_subcommand("verify", "cross-module invariant suite");
  std::string suite = "all";
  verify->add_option("--suite", suite,
                     "all | model | ed-oracle | appendix-d | kernel | toy-routes");
  verify->add_option("--beta", args.beta, "appendix-d inverse temperature");
  verify->add_option("--nmax", args.nmax, "appendix-d root count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    app.exit(e);
    return 2;
  }

  try {
    Emitter emitter;
    emitter.open(out_path, csv_path, cache_dir);
    if (verify->parsed()) return run_verify(suite, args.beta, args.nmax);
    if (fit->parsed()) return run_fit(emitter, fit_in, fit_model, csv_path);
    if (sweep->parsed())
      return run_sweep(emitter, args, sweep_cmd, axis_specs, sweep_jobs, max_points);
    for (const auto* cmd : {ed, toy, rotor, instanton, hessian}) {
      if (cmd->parsed()) {
        emitter.emit(emitter.cached_compute(cmd->get_name(), args));
        return 0;
      }
    }
    std::cerr << "no subcommand\n";
    return 2;
  } catch (const std::exception& e) {
    json err{{"error", "computation"}, {"message", e.what()}};
    std::cerr << canonical_dump(err) << "\n";
    return 1;
  }
}
