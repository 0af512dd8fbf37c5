#include "hitmat/campaign.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <json.hpp>

#include "hitmat/rng.hpp"
#include "hitmat/walks.hpp"

namespace hitmat {

using nlohmann::json;

const char* experiment_name(Experiment e) noexcept {
  switch (e) {
    case Experiment::hitting: return "hitting";
    case Experiment::rank_vs_z: return "rank_vs_z";
    case Experiment::robust_frequency: return "robust_frequency";
    case Experiment::deficiency_traces: return "deficiency_traces";
    case Experiment::walk_h: return "walk_h";
    default: return "lofford_profile";
  }
}

Experiment experiment_from_name(const std::string& s) {
  for (Experiment e :
       {Experiment::hitting, Experiment::rank_vs_z, Experiment::robust_frequency,
        Experiment::deficiency_traces, Experiment::walk_h,
        Experiment::lofford_profile})
    if (s == experiment_name(e)) return e;
  throw std::invalid_argument("unknown experiment: " + s);
}

std::vector<double> PSpec::resolve(int n) const {
  std::vector<double> out = absolute;
  for (double c : c_multiples) out.push_back(c * std::log(n) / n);
  for (double p : out)
    if (!(p > 0 && p < 1))
      throw std::invalid_argument("config.p_spec: resolved p=" +
                                  std::to_string(p) + " outside (0,1) at n=" +
                                  std::to_string(n));
  return out;
}

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_ms(double ms, bool record) {
  if (!record) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", ms);
  return buf;
}

rational rational_from_json(const json& v, const std::string& where) {
  try {
    if (v.is_number_integer()) return rational(v.get<long long>());
    if (v.is_string()) {
      std::string s = v.get<std::string>();
      auto slash = s.find('/');
      if (slash == std::string::npos) return rational(bigint(s));
      return rational(bigint(s.substr(0, slash)), bigint(s.substr(slash + 1)));
    }
  } catch (const std::exception&) {
  }
  throw std::invalid_argument(where + ": expected an integer or \"a/b\" string");
}

std::string rational_to_string(const rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

void check_keys(const json& j, const std::string& where,
                std::initializer_list<const char*> allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) {
        ok = true;
        break;
      }
    if (!ok)
      throw std::invalid_argument(where + ": unknown field '" + it.key() + "'");
  }
}

uint64_t fnv1a64(const std::string& s) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

int lofford_cap(FormKind k) {
  switch (k) {
    case FormKind::linear: return 24;
    case FormKind::bilinear: return 12;
    default: return 20;
  }
}

void validate_config(const CampaignConfig& cfg) {
  Experiment e = cfg.experiment;
  bool needs_n = e == Experiment::hitting || e == Experiment::rank_vs_z ||
                 e == Experiment::robust_frequency ||
                 e == Experiment::deficiency_traces;
  bool needs_p = e == Experiment::rank_vs_z ||
                 e == Experiment::robust_frequency ||
                 e == Experiment::deficiency_traces;
  if (e != Experiment::lofford_profile && cfg.trials < 1)
    throw std::invalid_argument("config.trials: must be >= 1");
  if (needs_n) {
    if (cfg.n_list.empty())
      throw std::invalid_argument("config.n_list: must be non-empty");
    for (int n : cfg.n_list)
      if (n < 2) throw std::invalid_argument("config.n_list: every n must be >= 2");
  }
  if (needs_p)
    for (int n : cfg.n_list)
      if (cfg.p_spec.resolve(n).empty())
        throw std::invalid_argument("config.p_spec: must resolve to at least one p");
  if (e == Experiment::robust_frequency)
    for (int n : cfg.n_list)
      for (double p : cfg.p_spec.resolve(n))
        RobustParams::derive(n, p);  // throws when (n, p) is inadmissible
  if (e == Experiment::walk_h) {
    if (cfg.beta_list.empty())
      throw std::invalid_argument("config.walk.beta_list: must be non-empty");
    for (double b : cfg.beta_list)
      if (!(b >= 0 && b <= 1))
        throw std::invalid_argument("config.walk.beta_list: beta must lie in [0,1]");
    if (cfg.walk_length < 0)
      throw std::invalid_argument("config.walk.length: must be >= 0");
  }
  if (e == Experiment::lofford_profile) {
    if (cfg.lofford.k_list.empty())
      throw std::invalid_argument("config.lofford.k_list: must be non-empty");
    for (int k : cfg.lofford.k_list)
      if (k < 1 || k > lofford_cap(cfg.lofford.kind))
        throw std::invalid_argument(
            "config.lofford.k_list: size outside the enumeration cap");
    if (!(cfg.lofford.p > 0 && cfg.lofford.p <= rational(1, 2)))
      throw std::invalid_argument("config.lofford.p: must lie in (0, 1/2]");
  }
  if (cfg.tpl && needs_n)
    for (int n : cfg.n_list)
      if (auto v = validate_template(*cfg.tpl, n, cfg.model))
        throw std::invalid_argument("config.template: at n=" +
                                    std::to_string(n) + ": " + *v);
  if (cfg.oracle_limit < 0)
    throw std::invalid_argument("config.oracle_limit: must be >= 0");
}

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("HITMAT_WORKERS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

struct Task {
  int n = 0;
  double p = 0;
  double beta = 0;
  int k = 0;  // lofford size
};

}  // namespace

CampaignConfig config_from_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("config: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config: expected an object");
  check_keys(j, "config",
             {"experiment", "n_list", "model", "p_spec", "trials", "master_seed",
              "template", "output_path", "workers", "record_timings", "probes",
              "walk", "robust", "lofford", "oracle_limit"});

  CampaignConfig cfg;
  try {
    cfg.experiment = experiment_from_name(j.at("experiment").get<std::string>());
  } catch (const json::exception&) {
    throw std::invalid_argument("config.experiment: required string");
  }
  try {
    if (j.contains("n_list")) cfg.n_list = j["n_list"].get<std::vector<int>>();
    if (j.contains("model"))
      cfg.model = model_from_name(j["model"].get<std::string>());
    if (j.contains("p_spec")) {
      const json& ps = j["p_spec"];
      check_keys(ps, "config.p_spec", {"absolute", "c"});
      if (ps.contains("absolute"))
        cfg.p_spec.absolute = ps["absolute"].get<std::vector<double>>();
      if (ps.contains("c"))
        cfg.p_spec.c_multiples = ps["c"].get<std::vector<double>>();
    }
    if (j.contains("trials")) cfg.trials = j["trials"].get<uint64_t>();
    if (j.contains("master_seed"))
      cfg.master_seed = j["master_seed"].get<uint64_t>();
    if (j.contains("template"))
      cfg.tpl = template_from_json(j["template"].dump());
    if (j.contains("output_path"))
      cfg.output_path = j["output_path"].get<std::string>();
    if (j.contains("workers")) cfg.workers = j["workers"].get<int>();
    if (j.contains("record_timings"))
      cfg.record_timings = j["record_timings"].get<bool>();
    if (j.contains("probes")) {
      const json& pr = j["probes"];
      check_keys(pr, "config.probes", {"tau_inv", "dk_a", "dk_size_cap"});
      if (pr.contains("tau_inv")) cfg.probe_tau_inv = pr["tau_inv"].get<bool>();
      if (pr.contains("dk_a") || pr.contains("dk_size_cap")) {
        DkProbe dk;
        if (pr.contains("dk_a")) dk.a = pr["dk_a"].get<double>();
        if (pr.contains("dk_size_cap")) dk.size_cap = pr["dk_size_cap"].get<int>();
        cfg.dk = dk;
      }
    }
    if (j.contains("walk")) {
      const json& w = j["walk"];
      check_keys(w, "config.walk", {"beta_list", "length"});
      if (w.contains("beta_list"))
        cfg.beta_list = w["beta_list"].get<std::vector<double>>();
      if (w.contains("length")) cfg.walk_length = w["length"].get<int>();
    }
    if (j.contains("robust")) {
      const json& r = j["robust"];
      check_keys(r, "config.robust", {"mode", "random_subsets"});
      if (r.contains("mode")) {
        std::string m = r["mode"].get<std::string>();
        if (m == "exact")
          cfg.robust_mode = CheckMode::exact;
        else if (m == "sampled")
          cfg.robust_mode = CheckMode::sampled;
        else
          throw std::invalid_argument("config.robust.mode: exact or sampled");
      }
      if (r.contains("random_subsets"))
        cfg.robust_random_subsets = r["random_subsets"].get<uint64_t>();
    }
    if (j.contains("lofford")) {
      const json& l = j["lofford"];
      check_keys(l, "config.lofford", {"kind", "k_list", "p"});
      if (l.contains("kind"))
        cfg.lofford.kind = form_kind_from_name(l["kind"].get<std::string>());
      if (l.contains("k_list"))
        cfg.lofford.k_list = l["k_list"].get<std::vector<int>>();
      if (l.contains("p"))
        cfg.lofford.p = rational_from_json(l["p"], "config.lofford.p");
    }
    if (j.contains("oracle_limit"))
      cfg.oracle_limit = j["oracle_limit"].get<int>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  validate_config(cfg);
  return cfg;
}

std::string config_hash(const CampaignConfig& cfg) {
  std::ostringstream s;
  s << "exp=" << experiment_name(cfg.experiment) << ";n=";
  for (int n : cfg.n_list) s << n << ",";
  s << ";model=" << model_name(cfg.model) << ";abs=";
  for (double p : cfg.p_spec.absolute) s << fmt_double(p) << ",";
  s << ";c=";
  for (double c : cfg.p_spec.c_multiples) s << fmt_double(c) << ",";
  s << ";trials=" << cfg.trials << ";seed=" << cfg.master_seed << ";tpl=";
  if (cfg.tpl) s << template_to_json(*cfg.tpl);
  s << ";rec=" << (cfg.record_timings ? 1 : 0)
    << ";tau_inv=" << (cfg.probe_tau_inv ? 1 : 0) << ";dk=";
  if (cfg.dk) s << fmt_double(cfg.dk->a) << ":" << cfg.dk->size_cap;
  s << ";beta=";
  for (double b : cfg.beta_list) s << fmt_double(b) << ",";
  s << ";len=" << cfg.walk_length
    << ";rmode=" << (cfg.robust_mode == CheckMode::exact ? "exact" : "sampled")
    << ";rsub=" << cfg.robust_random_subsets
    << ";lk=" << form_kind_name(cfg.lofford.kind) << ";ks=";
  for (int k : cfg.lofford.k_list) s << k << ",";
  s << ";lp=" << rational_to_string(cfg.lofford.p)
    << ";oracle=" << cfg.oracle_limit;
  uint64_t h = mix64(fnv1a64(s.str()));
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

WilsonInterval wilson95(uint64_t successes, uint64_t trials) {
  if (trials == 0) return {0.0, 1.0};
  const double z = 1.96;
  double n = static_cast<double>(trials);
  double ph = static_cast<double>(successes) / n;
  double z2 = z * z;
  double denom = 1.0 + z2 / n;
  double center = (ph + z2 / (2.0 * n)) / denom;
  double half = (z / denom) * std::sqrt(ph * (1.0 - ph) / n + z2 / (4.0 * n * n));
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

namespace {

std::string csv_prelude(const CampaignConfig& cfg, const std::string& hash) {
  std::ostringstream out;
  out << "# schema=" << kCsvSchema << "\n"
      << "# experiment=" << experiment_name(cfg.experiment) << "\n"
      << "# config_hash=" << hash << "\n"
      << "# master_seed=" << cfg.master_seed << "\n"
      << "# code_version=" << kCodeVersion << "\n";
  bool needs_p = cfg.experiment == Experiment::rank_vs_z ||
                 cfg.experiment == Experiment::robust_frequency ||
                 cfg.experiment == Experiment::deficiency_traces;
  if (needs_p)
    for (int n : cfg.n_list) {
      out << "# resolved_p n=" << n << ":";
      bool first = true;
      for (double p : cfg.p_spec.resolve(n)) {
        out << (first ? " " : ",") << fmt_double(p);
        first = false;
      }
      out << "\n";
    }
  return out.str();
}

std::string header_line(const CampaignConfig& cfg) {
  switch (cfg.experiment) {
    case Experiment::hitting: {
      std::string h =
          "trial,seed,n,model,tau_num,tau_den,z_before,singular_at_tau,"
          "rank_at_tau,Y_at_tau,ms";
      if (cfg.probe_tau_inv) h += ",tau_inv_num,tau_inv_den";
      if (cfg.dk) h += ",dk_event";
      return h + "\n";
    }
    case Experiment::rank_vs_z:
      return "trial,seed,n,model,p,holds,rank,z,ms\n";
    case Experiment::robust_frequency:
      return "trial,seed,n,model,p,k,row_blocked,col_blocked,row_dense,"
             "col_dense,verdict,ms\n";
    case Experiment::deficiency_traces:
      return "trial,seed,n,model,p,m,rank,z,Y,ms\n";
    case Experiment::walk_h:
      return "trial,seed,beta,length,H,final_gap_positive,ms\n";
    default:
      return "index,kind,k,l,p,sup_num,sup_den,sup_atom,ms\n";
  }
}

std::string run_one(const CampaignConfig& cfg, const Task& t, uint64_t index,
                    uint64_t seed) {
  RankOptions ropts;
  ropts.oracle_limit = cfg.oracle_limit;
  const Template* tpl = cfg.tpl ? &*cfg.tpl : nullptr;
  std::ostringstream out;
  switch (cfg.experiment) {
    case Experiment::hitting: {
      TrialProbes probes;
      probes.tau_inv = cfg.probe_tau_inv;
      probes.dk = cfg.dk;
      TrialResult r = hitting_trial(t.n, cfg.model, seed, tpl, probes, ropts);
      out << index << "," << seed << "," << t.n << "," << model_name(cfg.model)
          << "," << r.tau.num_string() << "," << r.tau.den_string() << ","
          << r.z_before_tau << "," << (r.singular_at_tau ? 1 : 0) << ","
          << r.rank_at_tau << "," << r.Y_at_tau << ","
          << fmt_ms(r.runtime_ms, cfg.record_timings);
      if (cfg.probe_tau_inv)
        out << "," << r.tau_inv->num_string() << "," << r.tau_inv->den_string();
      if (cfg.dk) out << "," << (*r.template_event_dk ? 1 : 0);
      out << "\n";
      return out.str();
    }
    case Experiment::rank_vs_z: {
      auto t0 = std::chrono::steady_clock::now();
      RankZOutcome o =
          rank_equals_n_minus_z_trial(t.n, t.p, cfg.model, seed, tpl, ropts);
      double ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
      out << index << "," << seed << "," << t.n << "," << model_name(cfg.model)
          << "," << fmt_double(t.p) << "," << (o.holds ? 1 : 0) << "," << o.rank
          << "," << o.z << "," << fmt_ms(ms, cfg.record_timings) << "\n";
      return out.str();
    }
    case Experiment::robust_frequency: {
      auto t0 = std::chrono::steady_clock::now();
      UniformField f(t.n, cfg.model, seed);
      ZeroOneMatrix m = matrix_at(f, EdgeThreshold::from_double(t.p), tpl);
      RobustParams params = RobustParams::derive(t.n, t.p);
      SampledOptions sopts;
      sopts.random_subsets = cfg.robust_random_subsets;
      RobustVerdict rv = is_n_robust(m, params, cfg.robust_mode, sopts);
      double ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
      out << index << "," << seed << "," << t.n << "," << model_name(cfg.model)
          << "," << fmt_double(t.p) << "," << params.k << ","
          << verdict_name(rv.row_blocked.verdict) << ","
          << verdict_name(rv.col_blocked.verdict) << ","
          << (rv.row_dense ? 1 : 0) << "," << (rv.col_dense ? 1 : 0) << ","
          << verdict_name(rv.verdict()) << ","
          << fmt_ms(ms, cfg.record_timings) << "\n";
      return out.str();
    }
    case Experiment::deficiency_traces: {
      auto t0 = std::chrono::steady_clock::now();
      DeficiencyTrace tr =
          deficiency_trace(t.n, t.p, cfg.model, seed, tpl, -1, ropts);
      double ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
      std::string ms_str = fmt_ms(ms, cfg.record_timings);
      for (size_t i = 0; i < tr.m.size(); ++i)
        out << index << "," << seed << "," << t.n << ","
            << model_name(cfg.model) << "," << fmt_double(t.p) << "," << tr.m[i]
            << "," << tr.rank[i] << "," << tr.z[i] << "," << tr.Y[i] << ","
            << ms_str << "\n";
      return out.str();
    }
    case Experiment::walk_h: {
      auto t0 = std::chrono::steady_clock::now();
      WalkParams wp;
      wp.beta = t.beta;
      wp.length = cfg.walk_length;
      wp.seed = seed;
      std::vector<int> trace = srw_trace(wp);
      long long h = h_statistic(trace);
      std::vector<int> gap = reflected_gap(trace);
      double ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
      out << index << "," << seed << "," << fmt_double(t.beta) << ","
          << cfg.walk_length << "," << h << "," << (gap.back() > 0 ? 1 : 0)
          << "," << fmt_ms(ms, cfg.record_timings) << "\n";
      return out.str();
    }
    default: {  // lofford_profile
      auto t0 = std::chrono::steady_clock::now();
      auto prof = decay_profile(cfg.lofford.kind, {t.k}, cfg.lofford.p);
      double ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
      const rational& sup = prof[0].second;
      out << index << "," << form_kind_name(cfg.lofford.kind) << "," << t.k
          << "," << prof[0].first << "," << rational_to_string(cfg.lofford.p)
          << "," << numerator(sup).str() << "," << denominator(sup).str() << ","
          << fmt_double(static_cast<double>(sup)) << ","
          << fmt_ms(ms, cfg.record_timings) << "\n";
      return out.str();
    }
  }
}

}  // namespace

CampaignOutcome run_campaign(const CampaignConfig& cfg) {
  validate_config(cfg);
  std::string hash = config_hash(cfg);
  int workers = resolve_workers(cfg.workers);

  std::vector<Task> tasks;
  switch (cfg.experiment) {
    case Experiment::hitting:
      for (int n : cfg.n_list)
        for (uint64_t t = 0; t < cfg.trials; ++t) tasks.push_back({n, 0, 0, 0});
      break;
    case Experiment::rank_vs_z:
    case Experiment::robust_frequency:
    case Experiment::deficiency_traces:
      for (int n : cfg.n_list)
        for (double p : cfg.p_spec.resolve(n))
          for (uint64_t t = 0; t < cfg.trials; ++t)
            tasks.push_back({n, p, 0, 0});
      break;
    case Experiment::walk_h:
      for (double b : cfg.beta_list)
        for (uint64_t t = 0; t < cfg.trials; ++t)
          tasks.push_back({0, 0, b, 0});
      break;
    case Experiment::lofford_profile:
      for (int k : cfg.lofford.k_list) tasks.push_back({0, 0, 0, k});
      break;
  }

  std::vector<std::string> lines(tasks.size());
  std::vector<std::string> errors(tasks.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(workers)
#endif
  for (long i = 0; i < static_cast<long>(tasks.size()); ++i) {
    size_t s = static_cast<size_t>(i);
    try {
      lines[s] = run_one(cfg, tasks[s], static_cast<uint64_t>(i),
                         seed_stream(cfg.master_seed, static_cast<uint64_t>(i)));
    } catch (const std::exception& e) {
      errors[s] = e.what()[0] ? e.what() : "unknown error";
    } catch (...) {
      errors[s] = "unknown error";
    }
  }
  (void)workers;
  for (size_t i = 0; i < errors.size(); ++i)
    if (!errors[i].empty())
      throw std::runtime_error("trial " + std::to_string(i) +
                               " failed: " + errors[i]);

  std::string csv = csv_prelude(cfg, hash) + header_line(cfg);
  for (const std::string& l : lines) csv += l;

  CampaignOutcome out;
  out.csv = csv;
  out.summary = summarize(csv);

  if (!cfg.output_path.empty()) {
    std::ofstream f(cfg.output_path, std::ios::binary);
    if (!f) throw std::runtime_error("output path unwritable: " + cfg.output_path);
    f << csv;
    f.close();
    std::string spath = cfg.output_path + ".summary.json";
    std::ofstream sf(spath, std::ios::binary);
    if (!sf) throw std::runtime_error("output path unwritable: " + spath);
    sf << out.summary.to_json() << "\n";
  }
  return out;
}

namespace {

struct Row {
  std::vector<std::string> cells;
};

struct GroupAccum {
  uint64_t rows = 0;
  uint64_t trials = 0;
  uint64_t successes = 0;
  double ms_total = 0;
  // experiment-specific accumulators
  double sum_a = 0, sum_b = 0;
  uint64_t count_a = 0, count_b = 0;
  // deficiency traces: per-step counters and previous-row state
  uint64_t steps = 0, steps_pos = 0, up_pos = 0, steps_zero = 0, up_zero = 0,
           big_drop = 0;
  long long last_trial = -1;
  int last_Y = 0, last_z = 0;
  bool open_trace = false;
};

double to_double(const std::string& s, size_t lineno) {
  try {
    size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("csv line " + std::to_string(lineno) +
                                ": bad number '" + s + "'");
  }
}

long long to_ll(const std::string& s, size_t lineno) {
  try {
    size_t used = 0;
    long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("csv line " + std::to_string(lineno) +
                                ": bad integer '" + s + "'");
  }
}

}  // namespace

std::string CampaignSummary::to_json() const {
  json j;
  j["schema"] = kSummarySchema;
  j["experiment"] = experiment;
  j["config_hash"] = config_hash_hex;
  j["master_seed"] = master_seed;
  j["code_version"] = code_version;
  j["rows"] = json::array();
  for (const SummaryRow& r : rows) {
    json row;
    row["group"] = r.group;
    row["estimate"] = r.estimate;
    row["trials"] = r.trials;
    row["successes"] = r.successes;
    row["wilson_low"] = r.interval.low;
    row["wilson_high"] = r.interval.high;
    row["mean_ms"] = r.mean_ms;
    json extra = json::object();
    for (const auto& [k, v] : r.extra) extra[k] = v;
    row["extra"] = extra;
    j["rows"].push_back(row);
  }
  return j.dump(2);
}

CampaignSummary summarize(const std::string& csv_text) {
  std::map<std::string, std::string> meta;
  std::vector<std::string> header;
  std::vector<Row> rows;
  size_t lineno = 0;

  std::istringstream in(csv_text);
  std::string line;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::string body = line.substr(1);
      size_t start = body.find_first_not_of(' ');
      if (start == std::string::npos) continue;
      body = body.substr(start);
      size_t eq = body.find('=');
      if (eq != std::string::npos && body.substr(0, eq).find(' ') == std::string::npos)
        meta[body.substr(0, eq)] = body.substr(eq + 1);
      continue;
    }
    std::vector<std::string> cells;
    size_t pos = 0;
    while (true) {
      size_t comma = line.find(',', pos);
      if (comma == std::string::npos) {
        cells.push_back(line.substr(pos));
        break;
      }
      cells.push_back(line.substr(pos, comma - pos));
      pos = comma + 1;
    }
    if (header.empty()) {
      header = cells;
      continue;
    }
    if (cells.size() != header.size())
      throw std::invalid_argument("csv line " + std::to_string(lineno) +
                                  ": expected " + std::to_string(header.size()) +
                                  " cells, got " + std::to_string(cells.size()));
    rows.push_back({std::move(cells)});
  }

  if (!meta.count("experiment"))
    throw std::invalid_argument("csv: missing '# experiment=' line");
  if (meta.count("schema") && meta["schema"] != kCsvSchema)
    throw std::invalid_argument("csv: unsupported schema " + meta["schema"]);
  Experiment exp = experiment_from_name(meta["experiment"]);
  if (header.empty())
    throw std::invalid_argument("csv: missing header line");
  if (rows.empty()) throw std::invalid_argument("csv: no data rows");

  auto col = [&](const std::string& name) {
    for (size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return static_cast<int>(i);
    throw std::invalid_argument("csv: missing column '" + name + "'");
  };
  auto col_opt = [&](const std::string& name) {
    for (size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return static_cast<int>(i);
    return -1;
  };

  CampaignSummary out;
  out.experiment = meta["experiment"];
  out.config_hash_hex = meta.count("config_hash") ? meta["config_hash"] : "";
  out.master_seed =
      meta.count("master_seed")
          ? static_cast<uint64_t>(std::stoull(meta["master_seed"]))
          : 0;
  out.code_version = meta.count("code_version") ? meta["code_version"] : "";

  std::vector<std::string> order;
  std::map<std::string, GroupAccum> groups;
  auto accum = [&](const std::string& key) -> GroupAccum& {
    auto it = groups.find(key);
    if (it == groups.end()) {
      order.push_back(key);
      it = groups.emplace(key, GroupAccum{}).first;
    }
    return it->second;
  };

  size_t data_line = 0;
  switch (exp) {
    case Experiment::hitting: {
      int cn = col("n"), cm = col("model"), cs = col("singular_at_tau"),
          cy = col("Y_at_tau"), cz = col("z_before"), cms = col("ms"),
          ctn = col("tau_num"), ctd = col("tau_den"),
          cin = col_opt("tau_inv_num"), cid = col_opt("tau_inv_den"),
          cdk = col_opt("dk_event");
      for (const Row& r : rows) {
        ++data_line;
        GroupAccum& g = accum("n=" + r.cells[static_cast<size_t>(cn)] +
                              " model=" + r.cells[static_cast<size_t>(cm)]);
        ++g.trials;
        if (to_ll(r.cells[static_cast<size_t>(cs)], data_line) == 1) ++g.successes;
        g.sum_a += static_cast<double>(to_ll(r.cells[static_cast<size_t>(cy)], data_line));
        g.sum_b += static_cast<double>(to_ll(r.cells[static_cast<size_t>(cz)], data_line));
        g.ms_total += to_double(r.cells[static_cast<size_t>(cms)], data_line);
        if (cin >= 0 && cid >= 0 &&
            r.cells[static_cast<size_t>(cin)] == r.cells[static_cast<size_t>(ctn)] &&
            r.cells[static_cast<size_t>(cid)] == r.cells[static_cast<size_t>(ctd)])
          ++g.count_a;
        if (cdk >= 0 && to_ll(r.cells[static_cast<size_t>(cdk)], data_line) == 1)
          ++g.count_b;
      }
      for (const std::string& key : order) {
        GroupAccum& g = groups[key];
        SummaryRow row;
        row.group = key;
        row.trials = g.trials;
        row.successes = g.successes;
        row.estimate = static_cast<double>(g.successes) / static_cast<double>(g.trials);
        row.interval = wilson95(g.successes, g.trials);
        row.mean_ms = g.ms_total / static_cast<double>(g.trials);
        row.extra.emplace_back("mean_Y_at_tau",
                               g.sum_a / static_cast<double>(g.trials));
        row.extra.emplace_back("mean_z_before",
                               g.sum_b / static_cast<double>(g.trials));
        if (col_opt("tau_inv_num") >= 0)
          row.extra.emplace_back("frac_tau_inv_at_tau",
                                 static_cast<double>(g.count_a) /
                                     static_cast<double>(g.trials));
        if (col_opt("dk_event") >= 0)
          row.extra.emplace_back("frac_dk_event",
                                 static_cast<double>(g.count_b) /
                                     static_cast<double>(g.trials));
        out.rows.push_back(std::move(row));
      }
      break;
    }
    case Experiment::rank_vs_z: {
      int cn = col("n"), cm = col("model"), cp = col("p"), ch = col("holds"),
          cms = col("ms");
      for (const Row& r : rows) {
        ++data_line;
        GroupAccum& g = accum("n=" + r.cells[static_cast<size_t>(cn)] +
                              " model=" + r.cells[static_cast<size_t>(cm)] +
                              " p=" + r.cells[static_cast<size_t>(cp)]);
        ++g.trials;
        if (to_ll(r.cells[static_cast<size_t>(ch)], data_line) == 1) ++g.successes;
        g.ms_total += to_double(r.cells[static_cast<size_t>(cms)], data_line);
      }
      for (const std::string& key : order) {
        GroupAccum& g = groups[key];
        SummaryRow row;
        row.group = key;
        row.trials = g.trials;
        row.successes = g.successes;
        row.estimate = static_cast<double>(g.successes) / static_cast<double>(g.trials);
        row.interval = wilson95(g.successes, g.trials);
        row.mean_ms = g.ms_total / static_cast<double>(g.trials);
        out.rows.push_back(std::move(row));
      }
      break;
    }
    case Experiment::robust_frequency: {
      int cn = col("n"), cm = col("model"), cp = col("p"), cv = col("verdict"),
          cms = col("ms");
      for (const Row& r : rows) {
        ++data_line;
        GroupAccum& g = accum("n=" + r.cells[static_cast<size_t>(cn)] +
                              " model=" + r.cells[static_cast<size_t>(cm)] +
                              " p=" + r.cells[static_cast<size_t>(cp)]);
        ++g.trials;
        const std::string& v = r.cells[static_cast<size_t>(cv)];
        if (v != "fails") ++g.successes;  // no violation found
        if (v == "holds") ++g.count_a;
        if (v == "unknown") ++g.count_b;
        g.ms_total += to_double(r.cells[static_cast<size_t>(cms)], data_line);
      }
      for (const std::string& key : order) {
        GroupAccum& g = groups[key];
        SummaryRow row;
        row.group = key;
        row.trials = g.trials;
        row.successes = g.successes;
        row.estimate = static_cast<double>(g.successes) / static_cast<double>(g.trials);
        row.interval = wilson95(g.successes, g.trials);
        row.mean_ms = g.ms_total / static_cast<double>(g.trials);
        row.extra.emplace_back("frac_holds", static_cast<double>(g.count_a) /
                                                 static_cast<double>(g.trials));
        row.extra.emplace_back("frac_unknown", static_cast<double>(g.count_b) /
                                                   static_cast<double>(g.trials));
        out.rows.push_back(std::move(row));
      }
      break;
    }
    case Experiment::deficiency_traces: {
      int ct = col("trial"), cn = col("n"), cm = col("model"), cp = col("p"),
          cz = col("z"), cy = col("Y"), cms = col("ms");
      auto close_trace = [](GroupAccum& g) {
        if (g.open_trace) {
          ++g.trials;
          if (g.last_Y == 0) ++g.successes;
          g.open_trace = false;
        }
      };
      for (const Row& r : rows) {
        ++data_line;
        GroupAccum& g = accum("n=" + r.cells[static_cast<size_t>(cn)] +
                              " model=" + r.cells[static_cast<size_t>(cm)] +
                              " p=" + r.cells[static_cast<size_t>(cp)]);
        long long trial = to_ll(r.cells[static_cast<size_t>(ct)], data_line);
        int y = static_cast<int>(to_ll(r.cells[static_cast<size_t>(cy)], data_line));
        int z = static_cast<int>(to_ll(r.cells[static_cast<size_t>(cz)], data_line));
        g.ms_total += to_double(r.cells[static_cast<size_t>(cms)], data_line);
        ++g.rows;
        if (g.open_trace && trial == g.last_trial) {
          ++g.steps;
          int dy = y - g.last_Y, dz = z - g.last_z;
          if (g.last_Y > 0) {
            ++g.steps_pos;
            if (dy == 1) ++g.up_pos;
          } else {
            ++g.steps_zero;
            if (dy >= 1) ++g.up_zero;
          }
          if (-dz >= 2) ++g.big_drop;
        } else {
          close_trace(g);
          g.open_trace = true;
        }
        g.last_trial = trial;
        g.last_Y = y;
        g.last_z = z;
      }
      for (auto& [key, g] : groups) close_trace(g);
      for (const std::string& key : order) {
        GroupAccum& g = groups[key];
        SummaryRow row;
        row.group = key;
        row.trials = g.trials;
        row.successes = g.successes;
        row.estimate = static_cast<double>(g.successes) / static_cast<double>(g.trials);
        row.interval = wilson95(g.successes, g.trials);
        row.mean_ms = g.ms_total / static_cast<double>(g.rows);
        auto ratio = [](uint64_t a, uint64_t b) {
          return b ? static_cast<double>(a) / static_cast<double>(b) : 0.0;
        };
        row.extra.emplace_back("freq_up_from_positive", ratio(g.up_pos, g.steps_pos));
        row.extra.emplace_back("freq_up_from_zero", ratio(g.up_zero, g.steps_zero));
        row.extra.emplace_back("freq_big_z_drop", ratio(g.big_drop, g.steps));
        row.extra.emplace_back("steps", static_cast<double>(g.steps));
        out.rows.push_back(std::move(row));
      }
      break;
    }
    case Experiment::walk_h: {
      int cb = col("beta"), cl = col("length"), ch = col("H"),
          cg = col("final_gap_positive"), cms = col("ms");
      for (const Row& r : rows) {
        ++data_line;
        GroupAccum& g = accum("beta=" + r.cells[static_cast<size_t>(cb)] +
                              " length=" + r.cells[static_cast<size_t>(cl)]);
        ++g.trials;
        if (to_ll(r.cells[static_cast<size_t>(cg)], data_line) == 1) ++g.successes;
        g.sum_a += static_cast<double>(to_ll(r.cells[static_cast<size_t>(ch)], data_line));
        g.ms_total += to_double(r.cells[static_cast<size_t>(cms)], data_line);
      }
      for (const std::string& key : order) {
        GroupAccum& g = groups[key];
        SummaryRow row;
        row.group = key;
        row.trials = g.trials;
        row.successes = g.successes;
        row.estimate = static_cast<double>(g.successes) / static_cast<double>(g.trials);
        row.interval = wilson95(g.successes, g.trials);
        row.mean_ms = g.ms_total / static_cast<double>(g.trials);
        row.extra.emplace_back("mean_H", g.sum_a / static_cast<double>(g.trials));
        out.rows.push_back(std::move(row));
      }
      break;
    }
    default: {  // lofford_profile
      int ck = col("kind"), cs = col("k"), cl = col("l"), cv = col("sup_atom"),
          cms = col("ms");
      std::vector<std::pair<double, double>> pts;  // (ln size, ln sup)
      for (const Row& r : rows) {
        ++data_line;
        double sup = to_double(r.cells[static_cast<size_t>(cv)], data_line);
        long long size_param =
            r.cells[static_cast<size_t>(ck)] == "bilinear"
                ? to_ll(r.cells[static_cast<size_t>(cl)], data_line)
                : to_ll(r.cells[static_cast<size_t>(cs)], data_line);
        SummaryRow row;
        row.group = "kind=" + r.cells[static_cast<size_t>(ck)] +
                    " k=" + r.cells[static_cast<size_t>(cs)];
        row.estimate = sup;
        row.trials = 1;
        row.successes = 0;
        row.interval = {sup, sup};
        row.mean_ms = to_double(r.cells[static_cast<size_t>(cms)], data_line);
        out.rows.push_back(std::move(row));
        if (sup > 0 && size_param > 0)
          pts.emplace_back(std::log(static_cast<double>(size_param)),
                           std::log(sup));
      }
      if (pts.size() >= 2) {
        double mx = 0, my = 0;
        for (auto& [x, y] : pts) {
          mx += x;
          my += y;
        }
        mx /= static_cast<double>(pts.size());
        my /= static_cast<double>(pts.size());
        double sxx = 0, sxy = 0;
        for (auto& [x, y] : pts) {
          sxx += (x - mx) * (x - mx);
          sxy += (x - mx) * (y - my);
        }
        if (sxx > 0) {
          SummaryRow row;
          row.group = "loglog_slope";
          row.estimate = sxy / sxx;
          row.trials = pts.size();
          row.successes = 0;
          row.interval = {row.estimate, row.estimate};
          row.mean_ms = 0;
          out.rows.push_back(std::move(row));
        }
      }
      break;
    }
  }
  return out;
}

}  // namespace hitmat
