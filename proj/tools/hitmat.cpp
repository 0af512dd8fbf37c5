#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hitmat/campaign.hpp"
#include "hitmat/lofford.hpp"
#include "hitmat/rank.hpp"
#include "hitmat/zero_one_matrix.hpp"

namespace {

using nlohmann::json;

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

hitmat::rational parse_rational(const json& v, const std::string& where) {
  if (v.is_number_integer()) return hitmat::rational(v.get<long long>());
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return hitmat::rational(hitmat::bigint(s));
      return hitmat::rational(hitmat::bigint(s.substr(0, slash)),
                              hitmat::bigint(s.substr(slash + 1)));
    } catch (const std::exception&) {
    }
  }
  throw std::runtime_error(where + ": expected an integer or \"a/b\" string");
}

std::string rational_str(const hitmat::rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

int cmd_run(const std::string& config_path, const std::string& out_path,
            int workers, bool seed_given, uint64_t seed) {
  hitmat::CampaignConfig cfg = hitmat::config_from_json(slurp(config_path));
  if (!out_path.empty()) cfg.output_path = out_path;
  if (workers > 0) cfg.workers = workers;
  if (seed_given) cfg.master_seed = seed;
  auto t0 = std::chrono::steady_clock::now();
  hitmat::CampaignOutcome outcome = hitmat::run_campaign(cfg);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                    .count();
  std::cout << outcome.summary.to_json() << "\n";
  std::cerr << "campaign finished in " << secs << " s";
  if (!cfg.output_path.empty())
    std::cerr << "; wrote " << cfg.output_path << " and " << cfg.output_path
              << ".summary.json";
  std::cerr << "\n";
  return 0;
}

int cmd_summarize(const std::string& csv_path) {
  std::cout << hitmat::summarize(slurp(csv_path)).to_json() << "\n";
  return 0;
}

int cmd_rank(const std::string& matrix_path) {
  hitmat::ZeroOneMatrix m = hitmat::ZeroOneMatrix::parse(slurp(matrix_path));
  hitmat::RankReport rep = hitmat::rank_exact(m);
  int z = hitmat::z_value(m);
  json out;
  out["n"] = m.n();
  out["rank"] = rep.rank;
  out["certified"] = rep.certified;
  out["oracle_checked"] = rep.oracle_checked;
  out["primes_used"] = rep.primes_used;
  out["zero_rows"] = hitmat::zero_rows(m).size();
  out["zero_cols"] = hitmat::zero_cols(m).size();
  out["z"] = z;
  out["deficiency"] = m.n() - rep.rank - z;
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_lofford(const std::string& form_path) {
  json j = json::parse(slurp(form_path));
  std::string kind = j.at("kind").get<std::string>();
  hitmat::rational p =
      j.contains("p") ? parse_rational(j["p"], "p") : hitmat::rational(1, 2);
  hitmat::AtomReport rep;
  if (kind == "linear") {
    std::vector<hitmat::rational> a;
    for (const json& c : j.at("a")) a.push_back(parse_rational(c, "a"));
    rep = hitmat::linear_atom_sup(a, p);
  } else {
    std::vector<std::vector<hitmat::rational>> A;
    for (const json& row : j.at("A")) {
      A.emplace_back();
      for (const json& c : row) A.back().push_back(parse_rational(c, "A"));
    }
    rep = kind == "bilinear" ? hitmat::bilinear_atom_sup(A, p)
                             : hitmat::quadratic_atom_sup(A, p);
    if (kind != "bilinear" && kind != "quadratic")
      throw std::runtime_error("kind must be linear, bilinear or quadratic");
  }
  json out;
  out["kind"] = hitmat::form_kind_name(rep.kind);
  out["k"] = rep.k;
  if (rep.kind == hitmat::FormKind::bilinear) out["l"] = rep.l;
  out["p"] = rational_str(rep.p);
  out["sup_atom"] = rational_str(rep.sup_atom);
  out["sup_atom_double"] = static_cast<double>(rep.sup_atom);
  json arg = json::array();
  for (const hitmat::rational& r : rep.argmax_r) arg.push_back(rational_str(r));
  out["argmax_r"] = arg;
  std::cout << out.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Simulation lab for coupled Bernoulli 0-1 matrix processes: hitting "
      "times, exact ranks, structural predicates, biased walks and exact "
      "atom bounds"};
  app.require_subcommand(1);

  std::string config_path, out_path, csv_path, matrix_path, form_path;
  int workers = 0;
  uint64_t seed = 0;

  CLI::App* run = app.add_subcommand("run", "Run a Monte Carlo campaign");
  run->add_option("config", config_path, "Campaign config (JSON)")->required();
  run->add_option("--out", out_path, "Write the CSV here (overrides the config)");
  run->add_option("--workers", workers,
                  "Worker threads (overrides config and HITMAT_WORKERS)");
  CLI::Option* seed_opt =
      run->add_option("--seed", seed, "Master seed (overrides the config)");

  CLI::App* summ =
      app.add_subcommand("summarize", "Recompute the summary of a campaign CSV");
  summ->add_option("file", csv_path, "CSV produced by run")->required();

  CLI::App* rank = app.add_subcommand(
      "rank", "Exact rank and zero-line profile of a 0-1 matrix file");
  rank->add_option("file", matrix_path, "First line n, then n rows of 0/1")
      ->required();

  CLI::App* lof = app.add_subcommand(
      "lofford", "Exact maximum atom of a Bernoulli form (JSON description)");
  lof->add_option("file", form_path, "Form JSON: kind + a/A + p")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed())
      return cmd_run(config_path, out_path, workers, seed_opt->count() > 0, seed);
    if (summ->parsed()) return cmd_summarize(csv_path);
    if (rank->parsed()) return cmd_rank(matrix_path);
    return cmd_lofford(form_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
