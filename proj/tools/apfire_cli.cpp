// Command-line frontend. Talks to the library exclusively through the C API
// in apfire/apfire.h; emits CSV (17 significant digits, exact round-trip)
// or JSON.
//
// Exit codes: 0 success, 1 usage error, 2 solver error (no crossing within
// the horizon), 3 quadrature failure.
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "apfire/apfire.h"

namespace {

int status_exit(apf_status st) {
  switch (st) {
    case APF_OK: return 0;
    case APF_ERR_HORIZON: return 2;
    case APF_ERR_QUADRATURE: return 3;
    default: return 1;
  }
}

int fail(apf_status st) {
  std::cerr << "apfire: " << apf_last_error() << "\n";
  return status_exit(st);
}

std::string render(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

struct SignalHandle {
  apf_signal *ptr = nullptr;
  ~SignalHandle() { apf_signal_free(ptr); }
};

struct ModelHandle {
  apf_model *ptr = nullptr;
  ~ModelHandle() { apf_model_free(ptr); }
};

// --signal accepts inline JSON, @file, or the shorthand const:<value> /
// dyadic:<name>; --preset names a compiled-in example.
bool load_signal(const std::string &signal_spec, const std::string &preset,
                 SignalHandle &out) {
  if (!preset.empty()) {
    out.ptr = apf_signal_preset(preset.c_str());
    return out.ptr != nullptr;
  }
  if (signal_spec.empty()) {
    std::cerr << "apfire: provide --signal or --preset\n";
    return false;
  }
  std::string text = signal_spec;
  if (text[0] == '@') {
    std::ifstream in(text.substr(1));
    if (!in) {
      std::cerr << "apfire: cannot read " << text.substr(1) << "\n";
      return false;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  } else if (text.rfind("const:", 0) == 0) {
    text = "{\"kind\":\"const\",\"value\":" + text.substr(6) + "}";
  } else if (text.rfind("dyadic:", 0) == 0) {
    text = "{\"kind\":\"dyadic\",\"name\":\"" + text.substr(7) + "\"}";
  }
  out.ptr = apf_signal_from_json(text.c_str());
  return out.ptr != nullptr;
}

// Schedule mini-language: linear:a:b:k, geometric:a:ratio:k, pow2tower:n,
// or a plain comma-separated list.
bool parse_schedule(const std::string &spec, std::vector<double> &out) {
  auto split = [](const std::string &s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(item);
    return parts;
  };
  try {
    if (spec.rfind("linear:", 0) == 0) {
      auto parts = split(spec.substr(7), ':');
      if (parts.size() != 3) return false;
      double a = std::stod(parts[0]), b = std::stod(parts[1]);
      int k = std::stoi(parts[2]);
      if (k < 2 || !(b > a)) return false;
      for (int i = 0; i < k; ++i) out.push_back(a + (b - a) * i / (k - 1));
      return true;
    }
    if (spec.rfind("geometric:", 0) == 0) {
      auto parts = split(spec.substr(10), ':');
      if (parts.size() != 3) return false;
      double a = std::stod(parts[0]), ratio = std::stod(parts[1]);
      int k = std::stoi(parts[2]);
      if (k < 1 || !(ratio > 1.0) || !(a > 0)) return false;
      double t = a;
      for (int i = 0; i < k; ++i, t *= ratio) out.push_back(t);
      return true;
    }
    if (spec.rfind("pow2tower:", 0) == 0) {
      int n = std::stoi(spec.substr(10));
      if (n < 1 || n > 5) return false;
      for (int i = 1; i <= n; ++i) {
        double T = std::ldexp(1.0, 1 << i);
        out.push_back(T);
        out.push_back(T + 1.0);
      }
      return true;
    }
    for (const auto &item : split(spec, ',')) out.push_back(std::stod(item));
    return !out.empty();
  } catch (const std::exception &) {
    return false;
  }
}

class OutputSink {
public:
  bool open(const std::string &path) {
    if (path.empty()) return true;
    file_.open(path);
    return file_.is_open();
  }
  std::ostream &stream() { return file_.is_open() ? file_ : std::cout; }

private:
  std::ofstream file_;
};

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"almost-periodically driven integrate-and-fire toolkit"};
  app.require_subcommand(1);

  std::string signal_spec, preset, out_path, format = "csv";
  double sigma = 0.0;
  apf_solve_config cfg;
  apf_solve_config_default(&cfg);

  auto add_common = [&](CLI::App *cmd, bool with_model) {
    cmd->add_option("--signal", signal_spec,
                    "signal as inline JSON, @file, const:<v> or dyadic:<name>");
    cmd->add_option("--preset", preset, "compiled-in example signal");
    cmd->add_option("--out", out_path, "output path (default stdout)");
    cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    if (with_model) {
      cmd->add_option("--sigma", sigma, "leak rate (default 0)");
      cmd->add_option("--step", cfg.scan_step, "scan step h");
      cmd->add_option("--tol", cfg.time_tol, "bisection stopping width");
      cmd->add_option("--horizon", cfg.horizon, "maximum displacement searched");
      cmd->add_option("--quad-tol", cfg.quad_tol, "quadrature tolerance");
      cmd->add_option("--varsigma", cfg.varsigma,
                      "a.e. lower bound of f - sigma (overrides horizon)");
    }
  };

  // eval
  auto *c_eval = app.add_subcommand("eval", "evaluate the signal on a grid");
  double eval_from = 0.0, eval_to = 1.0;
  int eval_count = 1;
  double eval_at = 0.0;
  bool eval_single = false;
  add_common(c_eval, false);
  c_eval->add_option("--t", eval_at, "single evaluation point");
  c_eval->add_option("--from", eval_from, "grid start");
  c_eval->add_option("--to", eval_to, "grid end");
  c_eval->add_option("--count", eval_count, "grid size");

  // fire
  auto *c_fire = app.add_subcommand("fire", "first threshold crossing after t");
  double fire_t = 0.0;
  add_common(c_fire, true);
  c_fire->add_option("--t", fire_t, "reset time");

  // traj
  auto *c_traj = app.add_subcommand("traj", "successive firing times");
  double traj_t0 = 0.0;
  int traj_n = 10;
  add_common(c_traj, true);
  c_traj->add_option("--t0", traj_t0, "start time");
  c_traj->add_option("--n", traj_n, "number of firings");

  // rate
  auto *c_rate = app.add_subcommand("rate", "firing-rate estimate n / Phi^n(t0)");
  double rate_t0 = 0.0;
  int rate_n = 100;
  add_common(c_rate, true);
  c_rate->add_option("--t0", rate_t0, "start time");
  c_rate->add_option("--n", rate_n, "number of iterates");

  // mean
  auto *c_mean = app.add_subcommand("mean", "Cesaro partials of the signal");
  std::string schedule_spec = "geometric:1:2:12";
  double mean_tol = 1e-3;
  int mean_trailing = 3;
  add_common(c_mean, false);
  c_mean->add_option("--schedule", schedule_spec,
                     "linear:a:b:k | geometric:a:r:k | pow2tower:n | T1,T2,...");
  c_mean->add_option("--conv-tol", mean_tol, "agreement tolerance for the verdict");
  c_mean->add_option("--trailing", mean_trailing, "partials that must agree");

  // scan
  auto *c_scan = app.add_subcommand("scan", "almost-period scan over candidate shifts");
  std::string scan_mode = "uniform";
  double scan_eps = 0.1, scan_eta = 0.5, scan_p = 1.0;
  double tau_from = 1.0, tau_to = 100.0, tau_step = 1.0;
  double win_a = 0.0, win_b = 50.0;
  int scan_samples = 256;
  add_common(c_scan, false);
  c_scan->add_option("--mode", scan_mode, "uniform | stepanov | mu")
      ->check(CLI::IsMember({"uniform", "stepanov", "mu"}));
  c_scan->add_option("--eps", scan_eps, "acceptance level");
  c_scan->add_option("--eta", scan_eta, "measure level (mu mode)");
  c_scan->add_option("--p", scan_p, "Stepanov exponent");
  c_scan->add_option("--tau-from", tau_from, "first candidate shift");
  c_scan->add_option("--tau-to", tau_to, "last candidate shift");
  c_scan->add_option("--tau-step", tau_step, "candidate spacing");
  c_scan->add_option("--window-a", win_a, "sampling window start");
  c_scan->add_option("--window-b", win_b, "sampling window end");
  c_scan->add_option("--samples", scan_samples, "samples per unit");

  // haar
  auto *c_haar = app.add_subcommand("haar", "Haar coefficients / projection error");
  long long haar_k0 = -4, haar_k1 = 4;
  int haar_n = 8;
  double haar_p = 1.0;
  bool haar_error = false;
  double haar_project = 0.0;
  bool haar_do_project = false;
  add_common(c_haar, false);
  c_haar->add_option("--k0", haar_k0, "first cell");
  c_haar->add_option("--k1", haar_k1, "last cell");
  c_haar->add_option("--n", haar_n, "levels");
  c_haar->add_option("--p", haar_p, "error exponent");
  c_haar->add_flag("--error", haar_error, "emit the projection error instead");
  c_haar->add_option("--project", haar_project, "evaluate the projection at t")
      ->each([&](const std::string &) { haar_do_project = true; });

  // verify
  auto *c_verify = app.add_subcommand("verify", "run the built-in verification suite");
  std::string verify_only;
  bool verify_list = false;
  c_verify->add_option("--only", verify_only, "run checks whose id contains this");
  c_verify->add_flag("--list", verify_list, "enumerate check ids without running");

  CLI11_PARSE(app, argc, argv);

  OutputSink sink;
  if (!sink.open(out_path)) {
    std::cerr << "apfire: cannot open " << out_path << "\n";
    return 1;
  }
  std::ostream &os = sink.stream();

  if (c_verify->parsed()) {
    struct Ctx {
      bool list;
    } ctx{verify_list};
    auto cb = +[](const char *id, int pass, const char *detail, void *user) {
      Ctx *c = static_cast<Ctx *>(user);
      if (c->list || pass < 0)
        std::cout << id << "\n";
      else
        std::cout << (pass ? "PASS" : "FAIL") << " " << id
                  << (detail && *detail ? std::string(" -- ") + detail : "") << "\n";
    };
    int failures = apf_verify_run(verify_only.empty() ? nullptr : verify_only.c_str(),
                                  verify_list ? 1 : 0, cb, &ctx);
    if (!verify_list)
      std::cout << (failures == 0 ? "all checks passed" : std::to_string(failures) +
                    " check(s) failed")
                << "\n";
    return failures == 0 ? 0 : 2;
  }

  SignalHandle sig;
  if (!load_signal(signal_spec, preset, sig)) {
    if (sig.ptr == nullptr && std::strlen(apf_last_error()) > 0)
      std::cerr << "apfire: " << apf_last_error() << "\n";
    return 1;
  }

  if (c_eval->parsed()) {
    std::vector<double> ts;
    if (c_eval->count("--t")) {
      ts.push_back(eval_at);
    } else {
      if (eval_count < 1 || (eval_count > 1 && !(eval_to > eval_from))) {
        std::cerr << "apfire: bad evaluation grid\n";
        return 1;
      }
      for (int i = 0; i < eval_count; ++i)
        ts.push_back(eval_count == 1
                         ? eval_from
                         : eval_from + (eval_to - eval_from) * i / (eval_count - 1));
    }
    if (format == "csv") os << "t,value\n";
    std::ostringstream json_rows;
    for (double t : ts) {
      double v;
      apf_status st = apf_signal_eval(sig.ptr, t, &v);
      if (st != APF_OK) return fail(st);
      if (format == "csv")
        os << render(t) << "," << render(v) << "\n";
      else
        json_rows << (json_rows.tellp() > 0 ? "," : "") << "[" << render(t) << ","
                  << render(v) << "]";
    }
    if (format == "json") os << "{\"samples\":[" << json_rows.str() << "]}\n";
    return 0;
  }

  if (c_fire->parsed()) {
    ModelHandle model;
    model.ptr = apf_model_new(sig.ptr, sigma);
    if (!model.ptr) return fail(APF_ERR_USAGE);
    double phi = 0.0, residual = 0.0;
    apf_status st = apf_fire(model.ptr, fire_t, &cfg, &phi, &residual);
    if (st != APF_OK) return fail(st);
    if (format == "csv") {
      os << "t,phi,psi,residual\n";
      os << render(fire_t) << "," << render(phi) << "," << render(phi - fire_t) << ","
         << render(residual) << "\n";
    } else {
      os << "{\"t\":" << render(fire_t) << ",\"phi\":" << render(phi)
         << ",\"psi\":" << render(phi - fire_t) << ",\"residual\":" << render(residual)
         << "}\n";
    }
    return 0;
  }

  if (c_traj->parsed()) {
    ModelHandle model;
    model.ptr = apf_model_new(sig.ptr, sigma);
    if (!model.ptr) return fail(APF_ERR_USAGE);
    std::vector<double> spikes(traj_n), residuals(traj_n);
    int done = 0;
    apf_status st =
        apf_trajectory(model.ptr, traj_t0, traj_n, &cfg, spikes.data(),
                       residuals.data(), &done);
    if (format == "csv") os << "index,spike,residual\n";
    std::ostringstream json_rows;
    for (int i = 0; i < done; ++i) {
      if (format == "csv")
        os << (i + 1) << "," << render(spikes[i]) << "," << render(residuals[i]) << "\n";
      else
        json_rows << (i ? "," : "") << render(spikes[i]);
    }
    if (format == "json") os << "{\"spikes\":[" << json_rows.str() << "]}\n";
    if (st != APF_OK) return fail(st);
    return 0;
  }

  if (c_rate->parsed()) {
    ModelHandle model;
    model.ptr = apf_model_new(sig.ptr, sigma);
    if (!model.ptr) return fail(APF_ERR_USAGE);
    std::vector<double> sequence(rate_n);
    double estimate = 0.0;
    apf_status st =
        apf_firing_rate(model.ptr, rate_t0, rate_n, &cfg, &estimate, sequence.data());
    if (st != APF_OK) return fail(st);
    if (format == "csv") {
      os << "k,rate_k\n";
      for (int k = 0; k < rate_n; ++k) os << (k + 1) << "," << render(sequence[k]) << "\n";
    } else {
      os << "{\"estimate\":" << render(estimate) << "}\n";
    }
    std::cerr << "rate estimate: " << render(estimate) << "\n";
    return 0;
  }

  if (c_mean->parsed()) {
    std::vector<double> schedule;
    if (!parse_schedule(schedule_spec, schedule)) {
      std::cerr << "apfire: bad schedule '" << schedule_spec << "'\n";
      return 1;
    }
    std::vector<double> partials(schedule.size());
    int verdict = 0;
    double limit = 0.0;
    size_t wlo = 0, whi = 0;
    apf_status st =
        apf_mean_value(sig.ptr, schedule.data(), schedule.size(), mean_tol,
                       mean_trailing, partials.data(), &verdict, &limit, &wlo, &whi);
    if (st != APF_OK) return fail(st);
    if (format == "csv") {
      os << "T,M_T\n";
      for (std::size_t i = 0; i < schedule.size(); ++i)
        os << render(schedule[i]) << "," << render(partials[i]) << "\n";
    } else {
      os << "{\"partials\":[";
      for (std::size_t i = 0; i < schedule.size(); ++i)
        os << (i ? "," : "") << "[" << render(schedule[i]) << "," << render(partials[i])
           << "]";
      os << "],\"verdict\":\""
         << (verdict == APF_MEAN_CONVERGED
                 ? "converged"
                 : verdict == APF_MEAN_OSCILLATING ? "oscillating" : "inconclusive")
         << "\"}\n";
    }
    switch (verdict) {
      case APF_MEAN_CONVERGED:
        std::cerr << "verdict: converged, limit " << render(limit) << "\n";
        break;
      case APF_MEAN_OSCILLATING:
        std::cerr << "verdict: oscillating, witness T=" << render(schedule[wlo])
                  << " (M=" << render(partials[wlo]) << ") vs T=" << render(schedule[whi])
                  << " (M=" << render(partials[whi]) << ")\n";
        break;
      default:
        std::cerr << "verdict: inconclusive\n";
        break;
    }
    return 0;
  }

  if (c_scan->parsed()) {
    std::vector<double> taus;
    for (double tau = tau_from; tau <= tau_to + 1e-12; tau += tau_step)
      taus.push_back(tau);
    if (taus.empty()) {
      std::cerr << "apfire: empty candidate grid\n";
      return 1;
    }
    apf_scan_mode mode = scan_mode == "uniform"
                             ? APF_SCAN_UNIFORM
                             : (scan_mode == "stepanov" ? APF_SCAN_STEPANOV : APF_SCAN_MU);
    std::vector<double> deviations(taus.size());
    std::vector<int> accepted(taus.size());
    double max_gap = 0.0;
    apf_status st = apf_scan_periods(sig.ptr, mode, scan_eps, scan_p, scan_eta,
                                     taus.data(), taus.size(), win_a, win_b,
                                     scan_samples, deviations.data(), accepted.data(),
                                     &max_gap);
    if (st != APF_OK) return fail(st);
    if (format == "csv") {
      os << "tau,deviation,accepted\n";
      for (std::size_t i = 0; i < taus.size(); ++i)
        os << render(taus[i]) << "," << render(deviations[i]) << "," << accepted[i]
           << "\n";
    } else {
      os << "{\"max_gap\":" << render(max_gap) << "}\n";
    }
    std::cerr << "max gap between accepted shifts: " << render(max_gap) << "\n";
    return 0;
  }

  if (c_haar->parsed()) {
    if (haar_do_project || !haar_error) {
      apf_haar *coeffs = apf_haar_coefficients(sig.ptr, haar_k0, haar_k1, haar_n, 1e-10);
      if (!coeffs) return fail(APF_ERR_USAGE);
      if (haar_do_project) {
        double v = 0.0;
        apf_status st = apf_haar_project(coeffs, haar_project, &v);
        apf_haar_free(coeffs);
        if (st != APF_OK) return fail(st);
        if (format == "csv")
          os << "t,projection\n" << render(haar_project) << "," << render(v) << "\n";
        else
          os << "{\"t\":" << render(haar_project) << ",\"projection\":" << render(v)
             << "}\n";
        return 0;
      }
      if (format == "csv") os << "k,j,a\n";
      for (long long k = haar_k0; k <= haar_k1; ++k)
        for (int j = 1; j <= haar_n; ++j) {
          double a = 0.0;
          apf_status st = apf_haar_at(coeffs, k, j, &a);
          if (st != APF_OK) {
            apf_haar_free(coeffs);
            return fail(st);
          }
          if (format == "csv") os << k << "," << j << "," << render(a) << "\n";
        }
      apf_haar_free(coeffs);
      return 0;
    }
    double err = 0.0;
    apf_status st =
        apf_haar_projection_error(sig.ptr, haar_n, haar_p, haar_k0, haar_k1, 1e-10, &err);
    if (st != APF_OK) return fail(st);
    if (format == "csv")
      os << "n,error\n" << haar_n << "," << render(err) << "\n";
    else
      os << "{\"n\":" << haar_n << ",\"error\":" << render(err) << "}\n";
    return 0;
  }

  return 1;
}
