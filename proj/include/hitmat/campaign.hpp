#pragma once
// Reproducible Monte Carlo campaigns: a JSON config names an experiment, the
// runner derives one seed per trial from the master seed, executes trials in
// parallel into preassigned slots, and emits a CSV plus a JSON summary.  The
// CSV bytes depend only on the config and master seed, never on the worker
// count; the summary is recomputed from the CSV text, so summarize() of the
// emitted file always matches the summary returned at run time.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hitmat/lofford.hpp"
#include "hitmat/process.hpp"
#include "hitmat/rank.hpp"
#include "hitmat/structure.hpp"
#include "hitmat/template_set.hpp"

namespace hitmat {

inline constexpr const char* kCodeVersion = "hitmat 1.0.0";
inline constexpr const char* kCsvSchema = "hitmat-csv-1";
inline constexpr const char* kSummarySchema = "hitmat-summary-1";

enum class Experiment {
  hitting,
  rank_vs_z,
  robust_frequency,
  deficiency_traces,
  walk_h,
  lofford_profile,
};

const char* experiment_name(Experiment e) noexcept;
Experiment experiment_from_name(const std::string& s);

// Probabilities either given outright or as multiples c of ln n / n, resolved
// per matrix size.
struct PSpec {
  std::vector<double> absolute;
  std::vector<double> c_multiples;

  std::vector<double> resolve(int n) const;
};

struct LoffordSpec {
  FormKind kind = FormKind::linear;
  std::vector<int> k_list;
  rational p = rational(1, 2);
};

struct CampaignConfig {
  Experiment experiment = Experiment::hitting;
  std::vector<int> n_list;
  Model model = Model::asymmetric;
  PSpec p_spec;
  uint64_t trials = 1;
  uint64_t master_seed = 0;
  std::optional<Template> tpl;
  std::string output_path;  // empty: nothing written to disk
  int workers = 0;          // 0: HITMAT_WORKERS, else the OpenMP default
  // The per-trial ms column is zeroed unless this is set, keeping CSV bytes
  // identical across machines and runs.
  bool record_timings = false;

  // hitting extras
  bool probe_tau_inv = false;
  std::optional<DkProbe> dk;

  // walk_h
  std::vector<double> beta_list;
  int walk_length = 10000;

  // robust_frequency
  CheckMode robust_mode = CheckMode::sampled;
  uint64_t robust_random_subsets = 2000;

  // lofford_profile
  LoffordSpec lofford;

  int oracle_limit = 64;  // exact-rank certification cutoff
};

// Throws std::invalid_argument naming the offending field.
CampaignConfig config_from_json(const std::string& json_text);

// 16 hex digits over the semantically meaningful fields (everything that can
// change a result row; output_path and workers excluded).
std::string config_hash(const CampaignConfig& cfg);

struct WilsonInterval {
  double low = 0;
  double high = 1;
};

// 95% score interval for successes/trials.
WilsonInterval wilson95(uint64_t successes, uint64_t trials);

struct SummaryRow {
  std::string group;  // e.g. "n=64 model=asymmetric"
  double estimate = 0;
  uint64_t trials = 0;
  uint64_t successes = 0;
  WilsonInterval interval;
  double mean_ms = 0;
  std::vector<std::pair<std::string, double>> extra;  // per-experiment fields
};

struct CampaignSummary {
  std::string experiment;
  std::string config_hash_hex;
  uint64_t master_seed = 0;
  std::string code_version;
  std::vector<SummaryRow> rows;

  std::string to_json() const;
};

struct CampaignOutcome {
  std::string csv;
  CampaignSummary summary;
};

// Runs all trials, builds the CSV in trial order, summarizes it, and (when
// output_path is set) writes <output_path> and <output_path>.summary.json.
CampaignOutcome run_campaign(const CampaignConfig& cfg);

// Recomputes a summary from CSV text produced by run_campaign.  Throws on
// malformed input or an empty data section.
CampaignSummary summarize(const std::string& csv_text);

}  // namespace hitmat
