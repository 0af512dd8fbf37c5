// Campaign runner: config parsing and hashing, per-trial seed derivation,
// CSV layout, row-by-row agreement with direct trial calls, summary
// recomputation, and byte identity across reruns and worker counts.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "hitmat/campaign.hpp"
#include "hitmat/rng.hpp"
#include "hitmat/walks.hpp"

using namespace hitmat;

namespace {

int failures = 0;

#define CHECK(cond)                                                 \
  do {                                                              \
    if (!(cond)) {                                                  \
      ++failures;                                                   \
      std::printf("FAIL %s:%d: %s\n", __FILE__, __LINE__, #cond);   \
    }                                                               \
  } while (0)

template <typename F>
bool throws_invalid(F&& f) {
  try {
    f();
  } catch (const std::invalid_argument&) {
    return true;
  }
  return false;
}

struct Csv {
  std::vector<std::string> meta;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

Csv parse_csv(const std::string& text) {
  Csv out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      out.meta.push_back(line);
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
    if (out.header.empty())
      out.header = cells;
    else
      out.rows.push_back(cells);
  }
  return out;
}

bool has_meta(const Csv& c, const std::string& line) {
  for (const std::string& m : c.meta)
    if (m == line) return true;
  return false;
}

void test_seed_stream() {
  CHECK(seed_stream(0ULL, 0ULL) == 12872845999058556238ULL);
  CHECK(seed_stream(0ULL, 1ULL) == 11017676530296253281ULL);
  CHECK(seed_stream(0ULL, 2ULL) == 7891318372903466208ULL);
  CHECK(seed_stream(0ULL, 1000ULL) == 1597238466878754562ULL);
  CHECK(seed_stream(1ULL, 0ULL) == 3390556181710369838ULL);
  CHECK(seed_stream(1ULL, 1ULL) == 13998885234169255886ULL);
  CHECK(seed_stream(1ULL, 2ULL) == 14732583110796492504ULL);
  CHECK(seed_stream(1ULL, 1000ULL) == 9622351347244482840ULL);
  CHECK(seed_stream(42ULL, 0ULL) == 9630593985998150142ULL);
  CHECK(seed_stream(42ULL, 1ULL) == 17531132181906116415ULL);
  CHECK(seed_stream(42ULL, 2ULL) == 3049039989905015670ULL);
  CHECK(seed_stream(42ULL, 1000ULL) == 16377214687851210703ULL);
  CHECK(seed_stream(3735928559ULL, 0ULL) == 16660387564892249135ULL);
  CHECK(seed_stream(3735928559ULL, 1ULL) == 388037883882272854ULL);
  CHECK(seed_stream(3735928559ULL, 2ULL) == 9409505664369388843ULL);
  CHECK(seed_stream(3735928559ULL, 1000ULL) == 4884388519923180005ULL);

  std::unordered_set<uint64_t> seen;
  seen.reserve(1 << 21);
  bool collision = false;
  for (uint64_t i = 0; i < 1000000; ++i)
    if (!seen.insert(seed_stream(7, i)).second) collision = true;
  CHECK(!collision);

  for (uint64_t s : {0ULL, 7ULL, 12345678901234ULL})
    CHECK(seed_stream(s, 0) != s);
}

void test_config_parsing() {
  CampaignConfig minimal = config_from_json(
      R"({"experiment":"hitting","n_list":[8]})");
  CHECK(minimal.experiment == Experiment::hitting);
  CHECK(minimal.n_list == (std::vector<int>{8}));
  CHECK(minimal.model == Model::asymmetric);
  CHECK(minimal.trials == 1);
  CHECK(minimal.master_seed == 0);
  CHECK(!minimal.tpl.has_value());
  CHECK(minimal.output_path.empty());
  CHECK(minimal.workers == 0);
  CHECK(!minimal.record_timings);
  CHECK(!minimal.probe_tau_inv);
  CHECK(!minimal.dk.has_value());
  CHECK(minimal.walk_length == 10000);
  CHECK(minimal.robust_mode == CheckMode::sampled);
  CHECK(minimal.robust_random_subsets == 2000);
  CHECK(minimal.oracle_limit == 64);

  CampaignConfig full = config_from_json(R"({
    "experiment": "rank_vs_z",
    "n_list": [8, 16],
    "model": "symmetric",
    "p_spec": {"absolute": [0.25], "c": [0.75]},
    "trials": 9,
    "master_seed": 77,
    "template": {"I_plus": [1], "S_plus": {"1": [3]},
                 "I_minus": [1], "S_minus": {"1": [3]}},
    "output_path": "unused.csv",
    "workers": 3,
    "record_timings": true,
    "oracle_limit": 0
  })");
  CHECK(full.model == Model::symmetric);
  CHECK(full.p_spec.absolute == (std::vector<double>{0.25}));
  CHECK(full.p_spec.c_multiples == (std::vector<double>{0.75}));
  CHECK(full.trials == 9 && full.master_seed == 77);
  CHECK(full.tpl.has_value());
  CHECK(full.tpl->plus_rows == (std::vector<int>{0}));
  CHECK(full.tpl->plus_sets == (std::vector<std::vector<int>>{{2}}));
  CHECK(full.tpl->minus_cols == (std::vector<int>{0}));
  CHECK(full.workers == 3 && full.record_timings && full.oracle_limit == 0);

  CampaignConfig probes = config_from_json(R"({
    "experiment": "hitting", "n_list": [6],
    "probes": {"tau_inv": true, "dk_a": 0.5, "dk_size_cap": 3}
  })");
  CHECK(probes.probe_tau_inv);
  CHECK(probes.dk.has_value());
  CHECK(probes.dk->a == 0.5 && probes.dk->size_cap == 3);

  CampaignConfig walk = config_from_json(R"({
    "experiment": "walk_h", "walk": {"beta_list": [0.1, 0.25], "length": 400}
  })");
  CHECK(walk.beta_list == (std::vector<double>{0.1, 0.25}));
  CHECK(walk.walk_length == 400);

  CampaignConfig robust = config_from_json(R"({
    "experiment": "robust_frequency", "n_list": [32],
    "p_spec": {"c": [0.75]}, "robust": {"mode": "exact", "random_subsets": 500}
  })");
  CHECK(robust.robust_mode == CheckMode::exact);
  CHECK(robust.robust_random_subsets == 500);

  CampaignConfig lof = config_from_json(R"({
    "experiment": "lofford_profile",
    "lofford": {"kind": "quadratic", "k_list": [2, 3], "p": "1/3"}
  })");
  CHECK(lof.lofford.kind == FormKind::quadratic);
  CHECK(lof.lofford.k_list == (std::vector<int>{2, 3}));
  CHECK(lof.lofford.p == rational(1, 3));

  CHECK(throws_invalid([] { config_from_json("not json"); }));
  CHECK(throws_invalid([] { config_from_json("[1,2]"); }));
  CHECK(throws_invalid([] { config_from_json(R"({"n_list":[4]})"); }));
  CHECK(throws_invalid([] {
    config_from_json(R"({"experiment":"hitting","n_list":[4],"bogus":1})");
  }));
  CHECK(throws_invalid([] {
    config_from_json(R"({"experiment":"hitting","n_list":[4],"probes":{"x":1}})");
  }));
  CHECK(throws_invalid([] {
    config_from_json(R"({"experiment":"frobnicate","n_list":[4]})");
  }));
  CHECK(throws_invalid([] {
    config_from_json(R"({"experiment":"hitting","n_list":[4],"trials":0})");
  }));
  CHECK(throws_invalid([] {
    config_from_json(R"({"experiment":"hitting","n_list":[1]})");
  }));
  CHECK(throws_invalid([] {
    config_from_json(R"({"experiment":"hitting"})");
  }));
  CHECK(throws_invalid([] {
    config_from_json(R"({"experiment":"rank_vs_z","n_list":[8]})");
  }));
  CHECK(throws_invalid([] {
    config_from_json(
        R"({"experiment":"rank_vs_z","n_list":[8],"p_spec":{"absolute":[1.5]}})");
  }));
  CHECK(throws_invalid([] {
    config_from_json(
        R"({"experiment":"walk_h","walk":{"beta_list":[1.5]}})");
  }));
  CHECK(throws_invalid([] {
    config_from_json(
        R"({"experiment":"walk_h","walk":{"beta_list":[0.2],"length":-1}})");
  }));
  CHECK(throws_invalid([] {
    config_from_json(
        R"({"experiment":"lofford_profile","lofford":{"k_list":[25]}})");
  }));
  CHECK(throws_invalid([] {
    config_from_json(
        R"({"experiment":"lofford_profile","lofford":{"k_list":[4],"p":"2/3"}})");
  }));
  // Robust derivation must be admissible for every (n, p) pair.
  CHECK(throws_invalid([] {
    config_from_json(
        R"({"experiment":"robust_frequency","n_list":[10],"p_spec":{"absolute":[0.5]}})");
  }));
  CHECK(throws_invalid([] {
    config_from_json(
        R"({"experiment":"hitting","n_list":[4],"template":{"I_plus":[1],"S_plus":{"1":[9]}}})");
  }));
  CHECK(throws_invalid([] {
    config_from_json(R"({"experiment":"hitting","n_list":[4],"oracle_limit":-1})");
  }));

  CHECK(experiment_from_name("deficiency_traces") == Experiment::deficiency_traces);
  CHECK(std::string(experiment_name(Experiment::walk_h)) == "walk_h");
  CHECK(throws_invalid([] { experiment_from_name("nope"); }));
}

void test_config_hash() {
  CampaignConfig base;
  base.experiment = Experiment::hitting;
  base.n_list = {8, 16};
  base.trials = 10;
  base.master_seed = 99;

  std::string h = config_hash(base);
  CHECK(h.size() == 16);
  CHECK(h.find_first_not_of("0123456789abcdef") == std::string::npos);
  CHECK(config_hash(base) == h);

  auto differs = [&](CampaignConfig c) { return config_hash(c) != h; };
  {
    CampaignConfig c = base;
    c.experiment = Experiment::rank_vs_z;
    CHECK(differs(c));
  }
  {
    CampaignConfig c = base;
    c.n_list = {8};
    CHECK(differs(c));
  }
  {
    CampaignConfig c = base;
    c.model = Model::symmetric;
    CHECK(differs(c));
  }
  {
    CampaignConfig c = base;
    c.p_spec.absolute = {0.3};
    CHECK(differs(c));
  }
  {
    CampaignConfig c = base;
    c.p_spec.c_multiples = {0.75};
    CHECK(differs(c));
  }
  {
    CampaignConfig c = base;
    c.trials = 11;
    CHECK(differs(c));
  }
  {
    CampaignConfig c = base;
    c.master_seed = 100;
    CHECK(differs(c));
  }
  {
    CampaignConfig c = base;
    Template t;
    t.plus_rows = {0};
    t.plus_sets = {{1}};
    c.tpl = t;
    CHECK(differs(c));
  }
  {
    CampaignConfig c = base;
    c.record_timings = true;
    CHECK(differs(c));
  }
  {
    CampaignConfig c = base;
    c.probe_tau_inv = true;
    CHECK(differs(c));
  }
  {
    CampaignConfig c = base;
    c.dk = DkProbe{};
    CHECK(differs(c));
  }
  {
    CampaignConfig c = base;
    c.beta_list = {0.1};
    CHECK(differs(c));
  }
  {
    CampaignConfig c = base;
    c.walk_length = 5;
    CHECK(differs(c));
  }
  {
    CampaignConfig c = base;
    c.robust_mode = CheckMode::exact;
    CHECK(differs(c));
  }
  {
    CampaignConfig c = base;
    c.robust_random_subsets = 1;
    CHECK(differs(c));
  }
  {
    CampaignConfig c = base;
    c.lofford.kind = FormKind::bilinear;
    CHECK(differs(c));
  }
  {
    CampaignConfig c = base;
    c.lofford.k_list = {2};
    CHECK(differs(c));
  }
  {
    CampaignConfig c = base;
    c.lofford.p = rational(1, 3);
    CHECK(differs(c));
  }
  {
    CampaignConfig c = base;
    c.oracle_limit = 0;
    CHECK(differs(c));
  }
  // Execution details are not semantic.
  {
    CampaignConfig c = base;
    c.output_path = "elsewhere.csv";
    c.workers = 7;
    CHECK(config_hash(c) == h);
  }
}

void test_hitting_campaign() {
  CampaignConfig cfg;
  cfg.experiment = Experiment::hitting;
  cfg.n_list = {5, 8};
  cfg.trials = 6;
  cfg.master_seed = 2024;

  CampaignOutcome oc = run_campaign(cfg);
  Csv csv = parse_csv(oc.csv);

  CHECK(has_meta(csv, std::string("# schema=") + kCsvSchema));
  CHECK(has_meta(csv, "# experiment=hitting"));
  CHECK(has_meta(csv, "# config_hash=" + config_hash(cfg)));
  CHECK(has_meta(csv, "# master_seed=2024"));
  CHECK(has_meta(csv, std::string("# code_version=") + kCodeVersion));

  CHECK(csv.header ==
        (std::vector<std::string>{"trial", "seed", "n", "model", "tau_num",
                                  "tau_den", "z_before", "singular_at_tau",
                                  "rank_at_tau", "Y_at_tau", "ms"}));
  CHECK(csv.rows.size() == 12);

  uint64_t singular5 = 0, singular8 = 0;
  for (size_t i = 0; i < csv.rows.size(); ++i) {
    const auto& r = csv.rows[i];
    CHECK(r.size() == 11);
    CHECK(std::stoull(r[0]) == i);
    uint64_t seed = std::stoull(r[1]);
    CHECK(seed == seed_stream(cfg.master_seed, i));
    int n = std::stoi(r[2]);
    CHECK(n == (i < 6 ? 5 : 8));
    CHECK(r[3] == "asymmetric");
    TrialResult direct = hitting_trial(n, Model::asymmetric, seed);
    CHECK(r[4] == direct.tau.num_string());
    CHECK(r[5] == direct.tau.den_string());
    CHECK(std::stoi(r[6]) == direct.z_before_tau);
    CHECK(std::stoi(r[7]) == (direct.singular_at_tau ? 1 : 0));
    CHECK(std::stoi(r[8]) == direct.rank_at_tau);
    CHECK(std::stoi(r[9]) == direct.Y_at_tau);
    CHECK(r[10] == "0");
    if (direct.singular_at_tau) ++(n == 5 ? singular5 : singular8);
  }

  CHECK(oc.summary.rows.size() == 2);
  CHECK(oc.summary.rows[0].group == "n=5 model=asymmetric");
  CHECK(oc.summary.rows[1].group == "n=8 model=asymmetric");
  CHECK(oc.summary.rows[0].trials == 6 && oc.summary.rows[1].trials == 6);
  CHECK(oc.summary.rows[0].successes == singular5);
  CHECK(oc.summary.rows[1].successes == singular8);
  CHECK(oc.summary.experiment == "hitting");
  CHECK(oc.summary.config_hash_hex == config_hash(cfg));
  CHECK(oc.summary.master_seed == 2024);

  CHECK(summarize(oc.csv).to_json() == oc.summary.to_json());

  // Reruns and worker counts leave the bytes alone.
  CHECK(run_campaign(cfg).csv == oc.csv);
  CampaignConfig wide = cfg;
  wide.workers = 4;
  CHECK(run_campaign(wide).csv == oc.csv);
  CampaignConfig narrow = cfg;
  narrow.workers = 1;
  CHECK(run_campaign(narrow).csv == oc.csv);

  // A different master seed changes the rows.
  CampaignConfig other = cfg;
  other.master_seed = 2025;
  CHECK(run_campaign(other).csv != oc.csv);

  // Files: CSV bytes and summary JSON plus trailing newline.
  CampaignConfig disk = cfg;
  disk.output_path = "campaign_test_out.csv";
  CampaignOutcome od = run_campaign(disk);
  std::ifstream f("campaign_test_out.csv", std::ios::binary);
  std::stringstream fs;
  fs << f.rdbuf();
  CHECK(fs.str() == od.csv);
  CHECK(od.csv == oc.csv);  // output_path is not semantic
  std::ifstream sf("campaign_test_out.csv.summary.json", std::ios::binary);
  std::stringstream ss;
  ss << sf.rdbuf();
  CHECK(ss.str() == od.summary.to_json() + "\n");
  std::remove("campaign_test_out.csv");
  std::remove("campaign_test_out.csv.summary.json");
}

void test_hitting_probes() {
  CampaignConfig cfg;
  cfg.experiment = Experiment::hitting;
  cfg.n_list = {6};
  cfg.trials = 5;
  cfg.master_seed = 31;
  cfg.probe_tau_inv = true;
  cfg.dk = DkProbe{1.0, 4};

  CampaignOutcome oc = run_campaign(cfg);
  Csv csv = parse_csv(oc.csv);
  CHECK(csv.header.size() == 14);
  CHECK(csv.header[11] == "tau_inv_num");
  CHECK(csv.header[12] == "tau_inv_den");
  CHECK(csv.header[13] == "dk_event");

  TrialProbes probes;
  probes.tau_inv = true;
  probes.dk = cfg.dk;
  for (size_t i = 0; i < csv.rows.size(); ++i) {
    const auto& r = csv.rows[i];
    uint64_t seed = std::stoull(r[1]);
    TrialResult direct = hitting_trial(6, Model::asymmetric, seed, nullptr, probes);
    CHECK(direct.tau_inv.has_value());
    CHECK(r[11] == direct.tau_inv->num_string());
    CHECK(r[12] == direct.tau_inv->den_string());
    CHECK(direct.template_event_dk.has_value());
    CHECK(std::stoi(r[13]) == (*direct.template_event_dk ? 1 : 0));
  }
  bool saw_inv_extra = false, saw_dk_extra = false;
  for (const auto& [k, v] : oc.summary.rows[0].extra) {
    if (k == "frac_tau_inv_at_tau") saw_inv_extra = true;
    if (k == "frac_dk_event") saw_dk_extra = true;
  }
  CHECK(saw_inv_extra && saw_dk_extra);
}

void test_rank_vs_z_campaign() {
  CampaignConfig cfg;
  cfg.experiment = Experiment::rank_vs_z;
  cfg.n_list = {7};
  cfg.p_spec.absolute = {0.3};
  cfg.p_spec.c_multiples = {0.75};
  cfg.trials = 5;
  cfg.master_seed = 404;

  CampaignOutcome oc = run_campaign(cfg);
  Csv csv = parse_csv(oc.csv);
  CHECK(csv.rows.size() == 10);

  bool resolved_meta = false;
  for (const std::string& m : csv.meta)
    if (m.rfind("# resolved_p n=7:", 0) == 0) resolved_meta = true;
  CHECK(resolved_meta);

  std::vector<double> ps = cfg.p_spec.resolve(7);
  CHECK(ps.size() == 2 && ps[0] == 0.3);
  for (size_t i = 0; i < csv.rows.size(); ++i) {
    const auto& r = csv.rows[i];
    uint64_t seed = std::stoull(r[1]);
    CHECK(seed == seed_stream(cfg.master_seed, i));
    double p = ps[i / 5];
    CHECK(std::stod(r[4]) == p);
    RankZOutcome direct = rank_equals_n_minus_z_trial(7, p, Model::asymmetric, seed);
    CHECK(std::stoi(r[5]) == (direct.holds ? 1 : 0));
    CHECK(std::stoi(r[6]) == direct.rank);
    CHECK(std::stoi(r[7]) == direct.z);
  }
  CHECK(oc.summary.rows.size() == 2);
  CHECK(summarize(oc.csv).to_json() == oc.summary.to_json());
}

void test_walk_campaign() {
  CampaignConfig cfg;
  cfg.experiment = Experiment::walk_h;
  cfg.beta_list = {0.2, 0.4};
  cfg.walk_length = 500;
  cfg.trials = 5;
  cfg.master_seed = 88;

  CampaignOutcome oc = run_campaign(cfg);
  Csv csv = parse_csv(oc.csv);
  CHECK(csv.rows.size() == 10);
  for (size_t i = 0; i < csv.rows.size(); ++i) {
    const auto& r = csv.rows[i];
    uint64_t seed = std::stoull(r[1]);
    CHECK(seed == seed_stream(cfg.master_seed, i));
    double beta = cfg.beta_list[i / 5];
    CHECK(std::stod(r[2]) == beta);
    CHECK(std::stoi(r[3]) == 500);
    WalkParams wp{beta, 500, seed};
    std::vector<int> trace = srw_trace(wp);
    CHECK(std::stoll(r[4]) == h_statistic(trace));
    CHECK(std::stoi(r[5]) == (reflected_gap(trace).back() > 0 ? 1 : 0));
  }
  CHECK(oc.summary.rows.size() == 2);
  double mean_h = -1;
  for (const auto& [k, v] : oc.summary.rows[0].extra)
    if (k == "mean_H") mean_h = v;
  long long total = 0;
  for (size_t i = 0; i < 5; ++i) total += std::stoll(csv.rows[i][4]);
  CHECK(mean_h == static_cast<double>(total) / 5.0);
}

void test_deficiency_campaign() {
  CampaignConfig cfg;
  cfg.experiment = Experiment::deficiency_traces;
  cfg.n_list = {8};
  cfg.p_spec.c_multiples = {1.0};
  cfg.trials = 3;
  cfg.master_seed = 555;

  CampaignOutcome oc = run_campaign(cfg);
  Csv csv = parse_csv(oc.csv);

  double p = cfg.p_spec.resolve(8)[0];
  std::vector<DeficiencyTrace> traces;
  for (uint64_t t = 0; t < 3; ++t)
    traces.push_back(deficiency_trace(8, p, Model::asymmetric, seed_stream(555, t)));

  size_t per = traces[0].m.size();
  CHECK(csv.rows.size() == 3 * per);
  for (size_t i = 0; i < csv.rows.size(); ++i) {
    const auto& r = csv.rows[i];
    const DeficiencyTrace& tr = traces[i / per];
    size_t j = i % per;
    CHECK(std::stoull(r[0]) == i / per);
    CHECK(std::stoi(r[5]) == tr.m[j]);
    CHECK(std::stoi(r[6]) == tr.rank[j]);
    CHECK(std::stoi(r[7]) == tr.z[j]);
    CHECK(std::stoi(r[8]) == tr.Y[j]);
  }

  CouplingSummary cs = coupling_statistics(traces);
  CHECK(oc.summary.rows.size() == 1);
  const SummaryRow& row = oc.summary.rows[0];
  CHECK(row.trials == 3);
  CHECK(row.successes == cs.ended_at_zero);
  double fup = -1, fuz = -1, fbd = -1, steps = -1;
  for (const auto& [k, v] : row.extra) {
    if (k == "freq_up_from_positive") fup = v;
    if (k == "freq_up_from_zero") fuz = v;
    if (k == "freq_big_z_drop") fbd = v;
    if (k == "steps") steps = v;
  }
  CHECK(fup == cs.freq_up_from_positive());
  CHECK(fuz == cs.freq_up_from_zero());
  CHECK(fbd == cs.freq_big_z_drop());
  CHECK(steps == static_cast<double>(cs.steps));
}

void test_robust_campaign() {
  CampaignConfig cfg;
  cfg.experiment = Experiment::robust_frequency;
  cfg.n_list = {16};
  cfg.p_spec.c_multiples = {0.75};
  cfg.trials = 4;
  cfg.master_seed = 9090;
  cfg.robust_random_subsets = 200;

  CampaignOutcome oc = run_campaign(cfg);
  Csv csv = parse_csv(oc.csv);
  CHECK(csv.rows.size() == 4);

  double p = cfg.p_spec.resolve(16)[0];
  RobustParams params = RobustParams::derive(16, p);
  uint64_t not_fails = 0;
  for (size_t i = 0; i < csv.rows.size(); ++i) {
    const auto& r = csv.rows[i];
    uint64_t seed = std::stoull(r[1]);
    CHECK(std::stoi(r[5]) == params.k);
    UniformField f(16, Model::asymmetric, seed);
    ZeroOneMatrix m = matrix_at(f, EdgeThreshold::from_double(p));
    SampledOptions sopts;
    sopts.random_subsets = 200;
    RobustVerdict direct = is_n_robust(m, params, CheckMode::sampled, sopts);
    CHECK(r[6] == verdict_name(direct.row_blocked.verdict));
    CHECK(r[7] == verdict_name(direct.col_blocked.verdict));
    CHECK(std::stoi(r[8]) == (direct.row_dense ? 1 : 0));
    CHECK(std::stoi(r[9]) == (direct.col_dense ? 1 : 0));
    CHECK(r[10] == verdict_name(direct.verdict()));
    if (r[10] != "fails") ++not_fails;
  }
  CHECK(oc.summary.rows.size() == 1);
  CHECK(oc.summary.rows[0].successes == not_fails);
}

void test_lofford_campaign() {
  CampaignConfig cfg;
  cfg.experiment = Experiment::lofford_profile;
  cfg.lofford.kind = FormKind::linear;
  cfg.lofford.k_list = {2, 4, 8};
  cfg.lofford.p = rational(1, 2);

  CampaignOutcome oc = run_campaign(cfg);
  Csv csv = parse_csv(oc.csv);
  CHECK(csv.rows.size() == 3);
  auto prof = decay_profile(FormKind::linear, {2, 4, 8}, rational(1, 2));
  for (size_t i = 0; i < 3; ++i) {
    const auto& r = csv.rows[i];
    CHECK(r[1] == "linear");
    CHECK(std::stoi(r[2]) == cfg.lofford.k_list[static_cast<int>(i)]);
    const rational& sup = prof[i].second;
    CHECK(r[5] == numerator(sup).str());
    CHECK(r[6] == denominator(sup).str());
    CHECK(r[4] == "1/2");
  }
  CHECK(oc.summary.rows.size() == 4);
  CHECK(oc.summary.rows[3].group == "loglog_slope");
  CHECK(oc.summary.rows[3].estimate < 0);
  CHECK(run_campaign(cfg).csv == oc.csv);
}

void test_summarize_errors() {
  CHECK(throws_invalid([] { summarize(""); }));
  CHECK(throws_invalid([] {
    summarize("# experiment=hitting\ntrial,seed,n,model,tau_num,tau_den,"
              "z_before,singular_at_tau,rank_at_tau,Y_at_tau,ms\n");
  }));
  CHECK(throws_invalid([] {
    summarize("# schema=other-schema\n# experiment=hitting\nh\n1\n");
  }));
  CHECK(throws_invalid([] {
    summarize("# experiment=hitting\na,b\n1,2,3\n");
  }));
  CHECK(throws_invalid([] { summarize("a,b\n1,2\n"); }));  // no experiment

  // run_campaign validates its config up front.
  CampaignConfig bad;
  bad.experiment = Experiment::hitting;
  bad.n_list = {};
  CHECK(throws_invalid([&] { run_campaign(bad); }));
}

}  // namespace

int main() {
  test_seed_stream();
  test_config_parsing();
  test_config_hash();
  test_hitting_campaign();
  test_hitting_probes();
  test_rank_vs_z_campaign();
  test_walk_campaign();
  test_deficiency_campaign();
  test_robust_campaign();
  test_lofford_campaign();
  test_summarize_errors();
  if (failures) std::printf("%d failure(s)\n", failures);
  return failures ? 1 : 0;
}
