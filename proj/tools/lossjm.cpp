// Copyright 2026 The lossjm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// lossjm command-line interface.
//
// Exit codes: 0 success, 1 error, 2 an "incompatible" verdict (compat and
// qubit-pair only).
//
// Each command writes its result to --out (stdout by default) and a manifest
// {command, params, versions, wall_time} to --manifest, or to <out>.manifest.json
// when only --out is given, or to stderr otherwise.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "lossjm/compat.hpp"
#include "lossjm/io.hpp"
#include "lossjm/measurements.hpp"
#include "lossjm/parent.hpp"
#include "lossjm/qubit_criterion.hpp"
#include "lossjm/usd.hpp"
#include "table1_rows.hpp"

namespace {

using lossjm::io::json;
using Clock = std::chrono::steady_clock;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitIncompatible = 2;

struct Common {
  std::string out;
  std::string manifest;
  std::string config;
  int jobs = 1;
};

int default_jobs() {
  if (const char* env = std::getenv("LOSSJM_JOBS")) {
    try {
      return std::max(1, std::stoi(env));
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring malformed LOSSJM_JOBS=" << env << "\n";
    }
  }
  return 1;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << text;
  if (!f) throw std::runtime_error("failed writing " + path);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json read_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  return json::parse(f);
}

void emit(const Common& c, std::string_view command, const json& params, const json& result,
          Clock::time_point start) {
  write_text(c.out, dump(result));
  const double wall = std::chrono::duration<double>(Clock::now() - start).count();
  const std::string m = dump(lossjm::io::manifest(command, params, wall));
  if (!c.manifest.empty())
    write_text(c.manifest, m);
  else if (!c.out.empty() && c.out != "-")
    write_text(c.out + ".manifest.json", m);
  else
    std::cerr << m;
}

/// Runs task(i) for i in [0, count) on up to `jobs` threads. Results are
/// written by index, so ordering does not depend on scheduling.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& task) {
  const std::size_t workers = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, jobs)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          task(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::vector<int> parse_rows(const std::string& spec) {
  std::vector<int> rows;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ',')) {
    const auto dash = part.find('-');
    if (dash == std::string::npos) {
      rows.push_back(std::stoi(part));
    } else {
      const int lo = std::stoi(part.substr(0, dash));
      const int hi = std::stoi(part.substr(dash + 1));
      if (hi < lo) throw std::invalid_argument("row range " + part + " is empty");
      for (int n = lo; n <= hi; ++n) rows.push_back(n);
    }
  }
  return rows;
}

lossjm::RobustnessMethod parse_method(const std::string& m) {
  if (m == "ipm") return lossjm::RobustnessMethod::kInteriorPoint;
  if (m == "bisection") return lossjm::RobustnessMethod::kBisection;
  throw std::invalid_argument("unknown method " + m);
}

json robustness_params(const lossjm::RobustnessOptions& o, const std::string& method) {
  return json{{"method", method},
              {"margin", o.margin},
              {"bisection_width", o.bisection_width},
              {"tol", o.feasibility_tol},
              {"max_iter", o.feasibility_max_iter},
              {"noise_model", lossjm::io::kNoiseModel}};
}

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--out", c.out, "Result file (default stdout)");
  cmd->add_option("--manifest", c.manifest, "Manifest file");
  cmd->add_option("--jobs", c.jobs, "Parallel solves (default from LOSSJM_JOBS, else 1)")->check(CLI::PositiveNumber);
}

void add_robustness(CLI::App* cmd, lossjm::RobustnessOptions& o, std::string& method) {
  cmd->add_option("--method", method, "Robustness method: ipm or bisection")
      ->check(CLI::IsMember({"ipm", "bisection"}));
  cmd->add_option("--margin", o.margin, "Verdict margin on eta*")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--bisection-width", o.bisection_width)->check(CLI::PositiveNumber);
  cmd->add_option("--tol", o.feasibility_tol, "Feasibility residual tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--max-iter", o.feasibility_max_iter, "Feasibility sweeps per probe")->check(CLI::PositiveNumber);
}

void add_family(CLI::App* cmd, lossjm::DisplacedFamilyParams& p) {
  cmd->add_option("--count", p.count, "Number of measurements")->check(CLI::PositiveNumber);
  cmd->add_option("--r", p.r, "Amplitude")->check(CLI::NonNegativeNumber);
  cmd->add_option("--tau", p.tau, "Transmissivity")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--d", p.d, "Fock cutoff")->check(CLI::Range(2, 64));
}

// ---------------------------------------------------------------- family

int cmd_family(const Common& c, lossjm::DisplacedFamilyParams p) {
  const auto start = Clock::now();
  if (!c.config.empty()) p = lossjm::io::family_params_from_json(read_json(c.config));
  const lossjm::MeasurementSet set = lossjm::symmetric_family(p);
  emit(c, "family", lossjm::io::to_json(p), lossjm::io::to_json(set), start);
  return kExitOk;
}

// ---------------------------------------------------------------- table1

struct Table1Config {
  std::string rows = "2-5";
  int d = 3;
  int d_family = 30;
  std::string csv;
  std::optional<double> r_override;
  std::optional<double> tau_override;
};

struct Table1Task {
  int n;
  lossjm::DisplacedFamilyParams params;
  std::string kind;  // "tau_min" or "control"
};

json table1_control(const Table1Task& t, const Table1Config& cfg, const lossjm::RobustnessOptions& opt,
                    double& eta, std::string& verdict, double& seconds) {
  const auto start = Clock::now();
  // n measurements of the row's family at tau = 1/n.
  lossjm::MeasurementSet full = lossjm::project_set(lossjm::symmetric_family(t.params), cfg.d);
  lossjm::MeasurementSet subset;
  subset.povms.assign(full.povms.begin(), full.povms.begin() + t.n);
  json rec;
  if (t.n <= 3) {
    lossjm::DisplacedFamilyParams lossless = t.params;
    lossless.tau = 1.0;
    lossjm::MeasurementSet raw = lossjm::project_set(lossjm::symmetric_family(lossless), cfg.d);
    raw.povms.resize(static_cast<std::size_t>(t.n));
    const lossjm::BalancedCertificate cert = lossjm::certify_balanced(raw);
    const double mres = lossjm::marginal_residual(cert.parent, subset);
    const bool ok = cert.certified() && mres <= 1e-10;
    eta = ok ? 1.0 : 0.0;
    verdict = ok ? "COMPATIBLE" : "UNDETERMINED";
    rec = json{{"method", "balanced_parent"}, {"marginal_residual", mres}, {"psd_residual", cert.psd_residual}};
  } else {
    const lossjm::JmResult r = lossjm::robustness(subset, opt);
    eta = r.eta_star;
    verdict = std::string(lossjm::to_string(r.verdict));
    rec = json{{"method", "solver"},
               {"eta_upper", r.eta_upper},
               {"marginal_residual", r.marginal_residual},
               {"psd_residual", r.psd_residual},
               {"iterations", r.iterations}};
  }
  seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return rec;
}

int cmd_table1(const Common& c, const Table1Config& cfg, lossjm::RobustnessOptions opt, const std::string& method) {
  const auto start = Clock::now();
  opt.method = parse_method(method);
  std::vector<Table1Task> tasks;
  for (int n : parse_rows(cfg.rows)) {
    const auto row = lossjm::tools::table1_row(n);
    if (!row) throw std::invalid_argument("no tabulated row for n = " + std::to_string(n));
    lossjm::DisplacedFamilyParams p{n + 1, cfg.r_override.value_or(row->r), cfg.tau_override.value_or(row->tau_min()),
                                    cfg.d_family};
    tasks.push_back({n, p, "tau_min"});
    lossjm::DisplacedFamilyParams q = p;
    q.tau = 1.0 / n;
    tasks.push_back({n, q, "control"});
  }
  std::vector<json> records(tasks.size());
  std::vector<std::string> csv_lines(tasks.size());
  parallel_for(tasks.size(), c.jobs, [&](std::size_t i) {
    const Table1Task& t = tasks[i];
    double eta = 0, seconds = 0;
    std::string verdict;
    json rec;
    if (t.kind == "tau_min") {
      const lossjm::TableRowVerdict v = lossjm::decide_table_row(t.params, cfg.d, opt);
      rec = lossjm::io::verdict_record(t.n, v);
      eta = v.result.eta_star;
      verdict = std::string(lossjm::to_string(v.result.verdict));
      seconds = v.seconds;
    } else {
      rec = table1_control(t, cfg, opt, eta, verdict, seconds);
      rec = json{{"n", t.n},         {"count", t.n},   {"r", t.params.r},        {"tau", t.params.tau},
                 {"d", cfg.d},       {"eta_star", eta}, {"verdict", verdict},    {"seconds", seconds},
                 {"control", rec}};
    }
    rec["kind"] = t.kind;
    records[i] = rec;
    std::ostringstream line;
    line << std::setprecision(17) << t.n << ',' << t.params.r << ',' << t.params.tau << ',' << cfg.d << ',' << eta
         << ',' << verdict << ',' << std::setprecision(6) << seconds << '\n';
    csv_lines[i] = line.str();
  });
  if (!cfg.csv.empty()) {
    std::string text = "n,r,tau,d,eta_star,verdict,seconds\n";
    for (const auto& l : csv_lines) text += l;
    write_text(cfg.csv, text);
  }
  json params{{"rows", cfg.rows}, {"d", cfg.d}, {"d_family", cfg.d_family}, {"jobs", c.jobs}};
  params["robustness"] = robustness_params(opt, method);
  if (cfg.r_override) params["r"] = *cfg.r_override;
  if (cfg.tau_override) params["tau"] = *cfg.tau_override;
  emit(c, "table1", params, json{{"rows", records}}, start);
  return kExitOk;
}

// ---------------------------------------------------------------- compat

int cmd_compat(const Common& c, const lossjm::DisplacedFamilyParams& p, int d_sub, const std::string& set_path,
               const std::string& mode, lossjm::RobustnessOptions opt, const std::string& method,
               const std::string& parent_out) {
  const auto start = Clock::now();
  opt.method = parse_method(method);
  lossjm::MeasurementSet set;
  json params;
  if (!set_path.empty()) {
    set = lossjm::io::measurement_set_from_json(read_json(set_path));
    params["set"] = set_path;
  } else {
    set = lossjm::symmetric_family(p);
    params["family"] = lossjm::io::to_json(p);
  }
  if (d_sub > 0) set = lossjm::project_set(set, d_sub);
  params["d_sub"] = set.dim();
  params["mode"] = mode;
  params["robustness"] = robustness_params(opt, method);

  const auto t0 = Clock::now();
  const lossjm::JmResult r = mode == "feasibility"
                                 ? lossjm::jm_feasibility(set, opt.feasibility_tol, opt.feasibility_max_iter)
                                 : lossjm::robustness(set, opt);
  const double seconds = std::chrono::duration<double>(Clock::now() - t0).count();

  json out;
  if (set_path.empty()) {
    out = lossjm::io::verdict_record(p.count - 1, lossjm::TableRowVerdict{p, set.dim(), r, seconds});
  } else {
    out = lossjm::io::to_json(r);
    out["count"] = set.size();
    out["d"] = set.dim();
    out["seconds"] = seconds;
  }
  out["noise_model"] = lossjm::io::kNoiseModel;
  if (!parent_out.empty() && r.parent) write_text(parent_out, dump(lossjm::io::to_json(*r.parent)));
  emit(c, "compat", params, out, start);
  return r.verdict == lossjm::Verdict::kIncompatible ? kExitIncompatible : kExitOk;
}

// ---------------------------------------------------------------- parent-verify

int cmd_parent_verify(const Common& c, int n, int d, std::uint64_t seed, double eta, std::vector<double> taus,
                      const std::string& set_path, const std::string& parent_out) {
  const auto start = Clock::now();
  lossjm::MeasurementSet set;
  json params{{"eta", eta}};
  if (!set_path.empty()) {
    set = lossjm::io::measurement_set_from_json(read_json(set_path));
    params["set"] = set_path;
  } else {
    std::mt19937_64 rng(seed);
    set = lossjm::random_measurement_set(n, d, rng);
    params["n"] = n;
    params["d"] = d;
    params["random_seed"] = seed;
    params["generator"] = "mt19937_64";
  }
  const int nm = static_cast<int>(set.size());
  lossjm::LonParentSpec spec = lossjm::LonParentSpec::balanced(nm, set.dim(), eta);
  if (!taus.empty()) {
    if (static_cast<int>(taus.size()) != nm) throw std::invalid_argument("--taus needs one value per measurement");
    spec.first_row.clear();
    for (double t : taus) {
      if (t < 0) throw std::invalid_argument("--taus entries must be >= 0");
      spec.first_row.push_back(std::sqrt(t));
    }
  }
  params["taus"] = spec.taus();
  const double residual = lossjm::verify_marginal_identity(set, spec);
  const lossjm::ParentPovm parent = lossjm::lon_parent(set, spec);
  const double psd = lossjm::psd_residual(parent);
  json out{{"n", nm}, {"d", set.dim()}, {"eta", eta}, {"taus", spec.taus()}, {"marginal_identity_residual", residual},
           {"psd_residual", psd}, {"certified", residual <= 1e-10 && psd <= 1e-10}};
  if (!parent_out.empty()) write_text(parent_out, dump(lossjm::io::to_json(parent)));
  emit(c, "parent-verify", params, out, start);
  return kExitOk;
}

// ---------------------------------------------------------------- qubit-pair

int cmd_qubit_pair(const Common& c, double r, double tau, const std::string& set_path) {
  const auto start = Clock::now();
  json params;
  json out;
  lossjm::PairTestReport rep;
  if (!set_path.empty()) {
    const lossjm::MeasurementSet set = lossjm::io::measurement_set_from_json(read_json(set_path));
    if (set.size() != 2) throw std::invalid_argument("qubit-pair needs exactly two measurements");
    rep = lossjm::pair_test(set[0], set[1]);
    params["set"] = set_path;
    out = lossjm::io::to_json(rep);
  } else {
    const lossjm::MeasurementSet pair = lossjm::displaced_pair(r, tau);
    rep = lossjm::pair_test(pair[0], pair[1]);
    const lossjm::LeadingOrderCheck lo = lossjm::leading_order_check(r, tau);
    params = json{{"r", r}, {"tau", tau}};
    out = lossjm::io::to_json(rep);
    out["predicted_leading_order"] = lo.predicted;
    out["relative_deviation"] = std::isfinite(lo.relative_deviation) ? json(lo.relative_deviation) : json(nullptr);
  }
  emit(c, "qubit-pair", params, out, start);
  return rep.incompatible ? kExitIncompatible : kExitOk;
}

// ---------------------------------------------------------------- usd

int cmd_usd(const Common& c, int n, double r, double tau, const std::vector<double>& sweep, const std::string& csv) {
  const auto start = Clock::now();
  const lossjm::UsdReport rep = lossjm::usd_report(n, r, tau);
  json params{{"n", n}, {"r", r}, {"tau", tau}};
  if (!sweep.empty()) {
    params["sweep_r"] = sweep;
    std::ostringstream text;
    text << "n,r,tau,p_d,p_lon,p_d_approx,p_lon_approx,lossy_success\n" << std::setprecision(17);
    for (double rs : sweep) {
      const lossjm::UsdReport s = lossjm::usd_report(n, rs, tau);
      text << s.n << ',' << s.r << ',' << s.tau << ',' << s.p_d << ',' << s.p_lon << ',' << s.p_d_approx << ','
           << s.p_lon_approx << ',' << s.lossy_success << '\n';
    }
    write_text(csv.empty() ? "-" : csv, text.str());
  }
  emit(c, "usd", params, lossjm::io::to_json(rep), start);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lossjm: joint measurability of lossy bosonic measurements"};
  app.require_subcommand(1);
  Common common;
  common.jobs = default_jobs();

  lossjm::DisplacedFamilyParams family{1, 0.0, 1.0, 2};
  auto* fam = app.add_subcommand("family", "Write the displaced on-off family as JSON");
  add_common(fam, common);
  add_family(fam, family);
  fam->add_option("--config", common.config, "JSON file with keys count, r, tau, d");

  Table1Config t1;
  lossjm::RobustnessOptions rob;
  std::string method = "ipm";
  auto* tab = app.add_subcommand("table1", "Verdicts for the tabulated rows at tau_min and the tau = 1/n control");
  add_common(tab, common);
  add_robustness(tab, rob, method);
  tab->add_option("--rows", t1.rows, "Rows, e.g. 2-5 or 2,3,6");
  tab->add_option("--d", t1.d, "Projection dimension")->check(CLI::Range(2, lossjm::kMaxCompatDim));
  tab->add_option("--d-family", t1.d_family, "Cutoff used to build the family")->check(CLI::Range(2, 64));
  tab->add_option("--csv", t1.csv, "CSV output file");
  tab->add_option("--r", t1.r_override, "Override r for every row")->check(CLI::NonNegativeNumber);
  tab->add_option("--tau", t1.tau_override, "Override tau_min for every row")->check(CLI::Range(0.0, 1.0));

  lossjm::DisplacedFamilyParams cfam{2, 0.1, 1.0, 3};
  int d_sub = 0;
  std::string set_path, mode = "robustness", parent_out;
  auto* comp = app.add_subcommand("compat", "Joint measurability of a family or a measurement-set file");
  add_common(comp, common);
  add_family(comp, cfam);
  add_robustness(comp, rob, method);
  comp->add_option("--d-sub", d_sub, "Project to this dimension first")->check(CLI::Range(1, 64));
  comp->add_option("--set", set_path, "Measurement-set JSON instead of a family");
  comp->add_option("--mode", mode, "robustness or feasibility")->check(CLI::IsMember({"robustness", "feasibility"}));
  comp->add_option("--parent-out", parent_out, "Write the parent POVM JSON here");

  int pn = 2, pd = 4;
  std::uint64_t seed = 0;
  double peta = 1.0;
  std::vector<double> taus;
  auto* par = app.add_subcommand("parent-verify", "Network parent and its marginal identity");
  add_common(par, common);
  par->add_option("--n", pn, "Number of random measurements")->check(CLI::Range(1, 3));
  par->add_option("--d", pd, "Dimension")->check(CLI::Range(2, 16));
  par->add_option("--random-seed", seed, "Seed for mt19937_64");
  par->add_option("--eta", peta, "Extra loss on the parent")->check(CLI::Range(0.0, 1.0));
  par->add_option("--taus", taus, "Per-measurement transmissivities (default 1/n each)")->delimiter(',');
  par->add_option("--set", set_path, "Measurement-set JSON instead of a random set");
  par->add_option("--parent-out", parent_out, "Write the parent POVM JSON here");

  double qr = 0.01, qtau = 0.6;
  auto* qp = app.add_subcommand("qubit-pair", "Closed-form test for two qubit measurements");
  add_common(qp, common);
  qp->add_option("--r", qr, "Amplitude of the +-r pair")->check(CLI::NonNegativeNumber);
  qp->add_option("--tau", qtau, "Transmissivity")->check(CLI::Range(0.0, 1.0));
  qp->add_option("--set", set_path, "Measurement-set JSON with two qubit POVMs");

  int un = 3;
  double ur = 0.01, utau = 0.5;
  std::vector<double> sweep;
  std::string ucsv;
  auto* us = app.add_subcommand("usd", "Unambiguous discrimination report");
  add_common(us, common);
  us->add_option("--n", un, "Number of states")->check(CLI::Range(2, 200));
  us->add_option("--r", ur, "Amplitude")->check(CLI::PositiveNumber);
  us->add_option("--tau", utau, "Transmissivity")->check(CLI::Range(0.0, 1.0));
  us->add_option("--sweep-r", sweep, "Comma-separated r values for a CSV sweep")->delimiter(',');
  us->add_option("--csv", ucsv, "CSV file for --sweep-r (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*fam) return cmd_family(common, family);
    if (*tab) return cmd_table1(common, t1, rob, method);
    if (*comp) return cmd_compat(common, cfam, d_sub, set_path, mode, rob, method, parent_out);
    if (*par) return cmd_parent_verify(common, pn, pd, seed, peta, taus, set_path, parent_out);
    if (*qp) return cmd_qubit_pair(common, qr, qtau, set_path);
    if (*us) return cmd_usd(common, un, ur, utau, sweep, ucsv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
