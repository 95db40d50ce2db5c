// stm — exact Sato-Tate moment computation and analysis.
//
// Subcommands: moments, separate, torsion, infer-dim, sample, gaussian,
// catalog. Big integers are emitted as decimal strings in every format.
// Exit codes: 0 ok; 2 spec/flag parse error; 3 evaluator failure;
// 10 inconclusive agreement (separate found no disagreement below the bound).

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "stm/analyzer.hpp"
#include "stm/catalog.hpp"
#include "stm/digest.hpp"
#include "stm/error.hpp"
#include "stm/moments.hpp"
#include "stm/sampler.hpp"
#include "stm/spec_io.hpp"

namespace {

using nlohmann::json;
using namespace stm;

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitEvaluator = 3;
constexpr int kExitInconclusive = 10;

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::InvalidSpec:
    case ErrorKind::NotFound:
      return kExitParse;
    default:
      return kExitEvaluator;
  }
}

struct NamedPair {
  std::string id;
  GroupSpec group;
  RepPtr rep;
};

NamedPair load_pair(const std::string& group_file, const std::string& catalog_name) {
  if (!group_file.empty() && !catalog_name.empty()) {
    raise(ErrorKind::InvalidSpec, "--group and --catalog are mutually exclusive");
  }
  if (!group_file.empty()) {
    std::ifstream in(group_file);
    if (!in) raise(ErrorKind::NotFound, "cannot open " + group_file);
    std::stringstream ss;
    ss << in.rdbuf();
    SpecDocument doc = parse_spec(ss.str());
    std::string id = doc.name.empty() ? group_file : doc.name;
    return {std::move(id), std::move(doc.group), std::move(doc.rep)};
  }
  if (!catalog_name.empty()) {
    CatalogEntry entry = catalog_load(catalog_name);
    return {entry.name, std::move(entry.group), std::move(entry.rep)};
  }
  raise(ErrorKind::InvalidSpec, "one of --group FILE or --catalog NAME is required");
}

json inputs_with_digest(json inputs) {
  inputs["digest"] = "sha256:" + sha256_hex(inputs.dump());
  return inputs;
}

void emit_record(const std::string& command, json inputs, json result,
                 double elapsed_ms) {
  json record;
  record["command"] = command;
  record["inputs"] = inputs_with_digest(std::move(inputs));
  record["result"] = std::move(result);
  record["timing_ms"] = elapsed_ms;
  std::cout << record.dump(2) << "\n";
}

class Stopwatch {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// --- moments ----------------------------------------------------------------

int cmd_moments(const std::string& group_file, const std::string& catalog_name,
                int amax, int bmax, const std::string& format) {
  NamedPair pair = load_pair(group_file, catalog_name);
  Stopwatch watch;
  MomentTable table = moment_table(pair.group, *pair.rep, amax, bmax, pair.id);

  if (format == "csv") {
    std::cout << "a,b,F\n";
    for (const auto& [ab, value] : table.entries) {
      std::cout << ab.first << "," << ab.second << "," << to_dec(value) << "\n";
    }
    return kExitOk;
  }
  json inputs{{"group", json::parse(serialize_group(pair.group))},
              {"rep", json::parse(serialize_rep(*pair.rep))},
              {"amax", amax},
              {"bmax", bmax},
              {"id", pair.id}};
  json rows = json::array();
  for (const auto& [ab, value] : table.entries) {
    rows.push_back({{"a", ab.first}, {"b", ab.second}, {"F", to_dec(value)}});
  }
  json result{{"dim", table.dim}, {"entries", std::move(rows)}};
  emit_record("moments", std::move(inputs), std::move(result), watch.ms());
  return kExitOk;
}

// --- separate -----------------------------------------------------------------

int cmd_separate(const std::string& left_file, const std::string& left_catalog,
                 const std::string& right_file, const std::string& right_catalog,
                 const std::string& norm_name, int bound) {
  NamedPair left = load_pair(left_file, left_catalog);
  NamedPair right = load_pair(right_file, right_catalog);
  NormKind norm = norm_name == "box" ? NormKind::Box : NormKind::TotalDegree;
  Stopwatch watch;
  SeparationReport rep = separation_index(left.group, *left.rep, right.group,
                                          *right.rep, norm, bound, left.id, right.id);
  json inputs{{"left", left.id},   {"right", right.id},
              {"norm", norm_name}, {"bound", bound}};
  json result;
  result["left"] = rep.left_id;
  result["right"] = rep.right_id;
  result["separated"] = rep.separated();
  if (rep.index) {
    result["index"] = *rep.index;
    result["witness"] = {{"a", rep.witness->a},
                         {"b", rep.witness->b},
                         {"left_value", to_dec(rep.witness->left_value)},
                         {"right_value", to_dec(rep.witness->right_value)}};
  } else {
    result["note"] = "agree on every cell of norm <= bound; inconclusive, not equality";
  }
  emit_record("separate", std::move(inputs), std::move(result), watch.ms());
  return rep.separated() ? kExitOk : kExitInconclusive;
}

// --- torsion ------------------------------------------------------------------

int cmd_torsion(const std::string& group_file, const std::string& catalog_name,
                std::int64_t n, int degree) {
  NamedPair pair = load_pair(group_file, catalog_name);
  Stopwatch watch;
  TorsionAgreementReport rep =
      verify_torsion_agreement(pair.group, *pair.rep, n, degree, pair.id);
  json inputs{{"group", pair.id}, {"n", n}, {"degree", degree}};
  json cells = json::array();
  for (const auto& c : rep.cells) {
    cells.push_back({{"a", c.a},
                     {"b", c.b},
                     {"exact", to_dec(c.base_value)},
                     {"approximant", to_dec(c.approx_value)},
                     {"agree", c.agree}});
  }
  json result{{"agreement", rep.full_agreement ? "full" : "partial"},
              {"cells", std::move(cells)}};
  if (rep.first_disagreement_norm) {
    result["first_disagreement"] = {{"norm", *rep.first_disagreement_norm},
                                    {"a", rep.first_disagreement_cell->first},
                                    {"b", rep.first_disagreement_cell->second}};
  }
  emit_record("torsion", std::move(inputs), std::move(result), watch.ms());
  return kExitOk;
}

// --- infer-dim ----------------------------------------------------------------

int cmd_infer_dim(const std::string& group_file, const std::string& catalog_name,
                  const std::string& table_file, int amax) {
  Stopwatch watch;
  json inputs{{"amax", amax}};
  DimensionCertificate cert;
  if (!table_file.empty()) {
    std::ifstream in(table_file);
    if (!in) raise(ErrorKind::NotFound, "cannot open " + table_file);
    json doc;
    try {
      in >> doc;
    } catch (const json::exception& e) {
      raise(ErrorKind::InvalidSpec, table_file + ": " + e.what());
    }
    // accepts the JSON payload of `stm moments`
    MomentTable table;
    table.amax = amax;
    table.bmax = amax;
    table.dim = 0;
    try {
      const json& entries = doc.contains("result") ? doc["result"]["entries"] : doc["entries"];
      for (const auto& row : entries) {
        table.entries[{row.at("a").get<int>(), row.at("b").get<int>()}] =
            from_dec(row.at("F").get<std::string>());
      }
    } catch (const json::exception& e) {
      raise(ErrorKind::InvalidSpec, table_file + ": " + e.what());
    }
    inputs["table"] = table_file;
    cert = infer_dimension(table, amax);
  } else {
    NamedPair pair = load_pair(group_file, catalog_name);
    inputs["group"] = pair.id;
    MomentTable table = moment_table(pair.group, *pair.rep, amax, amax, pair.id);
    cert = infer_dimension(table, amax);
  }
  json result{{"pinned", cert.pinned()},
              {"lo", cert.lo},
              {"hi", cert.hi},
              {"upper_tight_a", cert.upper_tight_a},
              {"lower_witness_a", cert.lower_witness_a}};
  if (cert.pinned()) result["dim"] = cert.lo;
  emit_record("infer-dim", std::move(inputs), std::move(result), watch.ms());
  return kExitOk;
}

// --- sample -------------------------------------------------------------------

int cmd_sample(const std::string& group_file, const std::string& catalog_name,
               std::uint64_t samples, std::uint64_t seed, int amax, int bmax) {
  NamedPair pair = load_pair(group_file, catalog_name);
  Stopwatch watch;
  SampleConfig cfg;
  cfg.group_id = pair.id;
  cfg.samples = samples;
  cfg.seed = seed;
  cfg.amax = amax;
  cfg.bmax = bmax;
  EmpiricalMoments est = estimate_moments(pair.group, *pair.rep, cfg);
  json inputs{{"group", pair.id}, {"samples", samples}, {"seed", seed},
              {"amax", amax},     {"bmax", bmax}};
  json rows = json::array();
  for (int a = 0; a <= amax; ++a) {
    for (int b = 0; b <= bmax; ++b) {
      auto m = est.mean_at(a, b);
      rows.push_back({{"a", a},
                      {"b", b},
                      {"mean_re", m.real()},
                      {"mean_im", m.imag()},
                      {"stderr", est.stderr_at(a, b)}});
    }
  }
  json result{{"samples", samples}, {"seed", seed}, {"estimates", std::move(rows)}};
  emit_record("sample", std::move(inputs), std::move(result), watch.ms());
  return kExitOk;
}

// --- gaussian -----------------------------------------------------------------

int cmd_gaussian(const std::vector<int>& ns, int amax, std::uint64_t samples,
                 std::uint64_t seed) {
  Stopwatch watch;
  auto rows = gaussian_limit_report(ns, amax, samples, seed);
  json inputs{{"ns", ns}, {"amax", amax}, {"samples", samples}, {"seed", seed}};
  json out = json::array();
  for (const auto& r : rows) {
    json row{{"n", r.n},
             {"a", r.a},
             {"exact", to_dec(r.exact)},
             {"gaussian", to_dec(r.gaussian)},
             {"difference", to_dec(r.difference)}};
    if (r.estimate) {
      row["estimate"] = *r.estimate;
      row["estimate_stderr"] = *r.estimate_stderr;
    }
    out.push_back(std::move(row));
  }
  emit_record("gaussian", std::move(inputs), {{"rows", std::move(out)}}, watch.ms());
  return kExitOk;
}

// --- catalog ------------------------------------------------------------------

int cmd_catalog_list() {
  for (const auto& name : catalog_list()) std::cout << name << "\n";
  return kExitOk;
}

int cmd_catalog_show(const std::string& name) {
  CatalogEntry entry = catalog_load(name);
  json out;
  out["name"] = entry.name;
  out["group"] = json::parse(serialize_group(entry.group));
  out["rep"] = json::parse(serialize_rep(*entry.rep));
  out["dim"] = rep_dim(entry.group, *entry.rep);
  out["provenance"] = entry.provenance;
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int cmd_catalog_verify() {
  auto results = catalog_verify();
  bool all_ok = true;
  for (const auto& r : results) {
    std::cout << (r.ok ? "[ OK ] " : "[FAIL] ") << r.name;
    if (!r.ok) std::cout << ": " << r.detail;
    std::cout << "\n";
    all_ok = all_ok && r.ok;
  }
  return all_ok ? kExitOk : kExitEvaluator;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Sato-Tate moment engine and rigidity toolkit"};
  app.require_subcommand(1);

  // moments
  std::string m_group, m_catalog, m_format = "json";
  int m_amax = 0, m_bmax = 0;
  auto* moments_cmd = app.add_subcommand("moments", "emit a table of F(a,b)");
  moments_cmd->add_option("--group", m_group, "spec file");
  moments_cmd->add_option("--catalog", m_catalog, "catalog name");
  moments_cmd->add_option("--amax", m_amax)->required();
  moments_cmd->add_option("--bmax", m_bmax)->required();
  moments_cmd->add_option("--format", m_format)
      ->check(CLI::IsMember({"csv", "json"}));

  // separate
  std::string s_left_group, s_left_catalog, s_right_group, s_right_catalog;
  std::string s_norm = "total";
  int s_bound = 30;
  auto* separate_cmd =
      app.add_subcommand("separate", "first norm level where two moment functions differ");
  separate_cmd->add_option("--left-group", s_left_group, "spec file for the left pair");
  separate_cmd->add_option("--left", s_left_catalog, "catalog name for the left pair");
  separate_cmd->add_option("--right-group", s_right_group, "spec file for the right pair");
  separate_cmd->add_option("--right", s_right_catalog, "catalog name for the right pair");
  separate_cmd->add_option("--norm", s_norm)->check(CLI::IsMember({"total", "box"}));
  separate_cmd->add_option("--bound", s_bound);

  // torsion
  std::string t_group, t_catalog;
  std::int64_t t_n = 2;
  int t_degree = 8;
  auto* torsion_cmd =
      app.add_subcommand("torsion", "compare F against the n-torsion approximant");
  torsion_cmd->add_option("--group", t_group, "spec file");
  torsion_cmd->add_option("--catalog", t_catalog, "catalog name");
  torsion_cmd->add_option("--n", t_n)->required();
  torsion_cmd->add_option("--degree", t_degree)->required();

  // infer-dim
  std::string d_group, d_catalog, d_table;
  int d_amax = 12;
  auto* infer_cmd = app.add_subcommand("infer-dim", "recover dim V from diagonal moments");
  infer_cmd->add_option("--group", d_group, "spec file");
  infer_cmd->add_option("--catalog", d_catalog, "catalog name");
  infer_cmd->add_option("--from-table", d_table, "JSON table produced by 'moments'");
  infer_cmd->add_option("--amax", d_amax);

  // sample
  std::string mc_group, mc_catalog;
  std::uint64_t mc_samples = 100000, mc_seed = 0;
  int mc_amax = 3, mc_bmax = 3;
  auto* sample_cmd = app.add_subcommand("sample", "Monte Carlo moment estimates");
  sample_cmd->add_option("--group", mc_group, "spec file");
  sample_cmd->add_option("--catalog", mc_catalog, "catalog name");
  sample_cmd->add_option("--samples", mc_samples);
  sample_cmd->add_option("--seed", mc_seed);
  sample_cmd->add_option("--amax", mc_amax);
  sample_cmd->add_option("--bmax", mc_bmax);

  // gaussian
  std::vector<int> g_ns{2, 3, 4};
  int g_amax = 5;
  std::uint64_t g_samples = 0, g_seed = 0;
  auto* gaussian_cmd =
      app.add_subcommand("gaussian", "exact unitary diagonal against Gaussian moments");
  gaussian_cmd->add_option("--ns", g_ns, "unitary ranks");
  gaussian_cmd->add_option("--amax", g_amax);
  gaussian_cmd->add_option("--samples", g_samples, "add a Monte Carlo column");
  gaussian_cmd->add_option("--seed", g_seed);

  // catalog
  auto* catalog_cmd = app.add_subcommand("catalog", "catalog inspection");
  auto* list_cmd = catalog_cmd->add_subcommand("list", "list all entries");
  std::string c_show_name;
  auto* show_cmd = catalog_cmd->add_subcommand("show", "show one entry");
  show_cmd->add_option("name", c_show_name)->required();
  auto* verify_cmd =
      catalog_cmd->add_subcommand("verify", "re-run checksums and data invariants");
  catalog_cmd->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  try {
    if (moments_cmd->parsed()) {
      return cmd_moments(m_group, m_catalog, m_amax, m_bmax, m_format);
    }
    if (separate_cmd->parsed()) {
      return cmd_separate(s_left_group, s_left_catalog, s_right_group, s_right_catalog,
                          s_norm, s_bound);
    }
    if (torsion_cmd->parsed()) return cmd_torsion(t_group, t_catalog, t_n, t_degree);
    if (infer_cmd->parsed()) return cmd_infer_dim(d_group, d_catalog, d_table, d_amax);
    if (sample_cmd->parsed()) {
      return cmd_sample(mc_group, mc_catalog, mc_samples, mc_seed, mc_amax, mc_bmax);
    }
    if (gaussian_cmd->parsed()) return cmd_gaussian(g_ns, g_amax, g_samples, g_seed);
    if (catalog_cmd->parsed()) {
      if (list_cmd->parsed()) return cmd_catalog_list();
      if (show_cmd->parsed()) return cmd_catalog_show(c_show_name);
      if (verify_cmd->parsed()) return cmd_catalog_verify();
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitEvaluator;
  }
  return kExitParse;
}
