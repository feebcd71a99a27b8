#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "mmm/campaign.hpp"
#include "mmm/report.hpp"

using namespace mmm;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE_MESSAGE(in.good(), "cannot open ", path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(MMM_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

CampaignConfig small_rank_config() {
  CampaignConfig config;
  config.family = Family::Rank;
  config.m = 2;
  config.n = 3;
  config.r = 1;
  config.samples = 2;
  config.seed = 7;
  return config;
}

}  // namespace

TEST_CASE("doubles are serialized with 17 significant digits") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(1e-6) == "9.9999999999999995e-07");
}

TEST_CASE("identical seed and config produce byte-identical reports") {
  const CampaignConfig config = small_rank_config();
  const std::string a = strip_wall_time(to_json(run_verify(config)));
  const std::string b = strip_wall_time(to_json(run_verify(config)));
  CHECK(a == b);
  CHECK(a.find("wall_time_ms") == std::string::npos);
  CHECK(to_json(run_verify(config)).find("wall_time_ms") != std::string::npos);

  // A different seed changes the sampled values.
  CampaignConfig other = config;
  other.seed = 8;
  CHECK(strip_wall_time(to_json(run_verify(other))) != a);
}

TEST_CASE("summary counts are consistent with the records") {
  CampaignConfig config = small_rank_config();
  config.samples = 4;
  const CurvatureReport report = run_verify(config);
  int pass = 0, fail = 0;
  for (const SampleRecord& s : report.samples) {
    if (s.verdict == "pass")
      ++pass;
    else
      ++fail;
    // Verdict tracks the effective tolerance.
    if (s.verdict != "error") {
      const double tol =
          s.method == "closed" ? config.tol_closed() : config.tol_fd();
      CHECK((s.h_norm <= tol) == (s.verdict == "pass"));
    }
  }
  CHECK(report.summary.pass == pass);
  CHECK(report.summary.fail == fail);
  // closed + fd per sample, plus the conjugated spot check.
  CHECK(static_cast<int>(report.samples.size()) == 2 * config.samples + 1);
}

TEST_CASE("counterexample campaign records failing minimality verdicts") {
  CampaignConfig config;
  config.family = Family::Counterexample;
  config.samples = 3;
  config.seed = 5;
  const CurvatureReport report = run_verify(config);
  REQUIRE(report.samples.size() == 3);
  for (const SampleRecord& s : report.samples) {
    CHECK(s.verdict == "fail");
    CHECK(std::abs(s.h_norm - 1.0) <= 1e-3);
    bool expected = false, confirmed = false;
    for (const std::string& f : s.flags) {
      if (f == "expected_nonminimal") expected = true;
      if (f == "witness_confirmed") confirmed = true;
    }
    CHECK(expected);
    CHECK(confirmed);
  }
  CHECK(report.campaign_success());
}

TEST_CASE("json reports parse and carry the schema") {
  const CurvatureReport report = run_verify(small_rank_config());
  const nlohmann::json j = nlohmann::json::parse(to_json(report));
  CHECK(j.contains("config"));
  CHECK(j.contains("summary"));
  CHECK(j.contains("samples"));
  CHECK(j["config"]["family"] == "rank");
  CHECK(j["config"]["seed"] == 7);
  CHECK(j["summary"]["pass"].get<int>() == report.summary.pass);
  REQUIRE(j["samples"].is_array());
  CHECK(j["samples"].size() == report.samples.size());
  const auto& first = j["samples"][0];
  for (const char* key : {"index", "spec", "values", "method", "h_norm",
                          "tangential_residual", "gram_cond", "verdict", "flags"})
    CHECK(first.contains(key));
}

TEST_CASE("csv mirrors the samples array") {
  const CurvatureReport report = run_verify(small_rank_config());
  const std::string csv = to_csv(report);
  std::size_t lines = 0;
  for (char c : csv)
    if (c == '\n') ++lines;
  CHECK(lines == report.samples.size() + 1);  // header + rows
  CHECK(csv.rfind("index,spec,values,method,", 0) == 0);
}

TEST_CASE("golden report file") {
  const std::string path = std::string(MMM_GOLDEN_DIR) + "/verify_rank_231_s2_seed7.json";
  const std::string current = strip_wall_time(to_json(run_verify(small_rank_config()))) + "\n";
  if (std::getenv("MMM_REGEN_GOLDEN") != nullptr) {
    std::ofstream out(path);
    REQUIRE(out.good());
    out << current;
    MESSAGE("regenerated " << path);
    return;
  }
  CHECK(current == read_file(path));
}

TEST_CASE("gram, cone-sphere and dims reports serialize") {
  CampaignConfig config;
  config.family = Family::Skew;
  config.n = 4;
  config.r = 2;
  config.samples = 3;
  config.seed = 11;
  const GramCheckReport gram_report = run_check_gram(config);
  CHECK(gram_report.all_pass());
  const nlohmann::json gj = nlohmann::json::parse(to_json(gram_report));
  CHECK(gj["summary"]["max_identity_residual"].get<double>() <= 1e-10);

  const ConeSphereCampaignReport cone_report = run_cone_sphere();
  CHECK(cone_report.all_pass());
  const nlohmann::json cj = nlohmann::json::parse(to_json(cone_report));
  CHECK(cj["charts"].size() == 4);

  const DimsReport dims_report = run_dims();
  CHECK(dims_report.all_pass());
  const nlohmann::json dj = nlohmann::json::parse(to_json(dims_report));
  CHECK(dj["rows"].size() == dims_report.rows.size());
}

TEST_CASE("cli exit codes and file outputs") {
  CHECK(run_cli("verify rank --m 2 --n 3 --r 1 --samples 2 --seed 7") == 0);
  CHECK(run_cli("verify counterexample --samples 2 --seed 3") == 0);
  CHECK(run_cli("verify rank --m 5 --n 3 --r 1") == 2);   // invalid sizes
  CHECK(run_cli("verify rank --m 2") == 2);               // missing flags
  CHECK(run_cli("verify sym --pattern 1,1 --method closed") == 2);
  CHECK(run_cli("nonsense") == 2);
  CHECK(run_cli("dims") == 0);
  CHECK(run_cli("check cone-sphere") == 0);
  CHECK(run_cli("check gram skew --n 5 --r 2 --samples 3 --seed 1") == 0);

  const std::string json_path = "cli_report.json";
  const std::string csv_path = "cli_report.csv";
  CHECK(run_cli("verify skew --n 4 --r 1 --samples 2 --seed 9 --json " + json_path +
                " --csv " + csv_path) == 0);
  const nlohmann::json j = nlohmann::json::parse(read_file(json_path));
  CHECK(j["config"]["family"] == "skew");
  CHECK(read_file(csv_path).rfind("index,", 0) == 0);

  // Byte-identical reruns (wall time aside).
  const std::string first = strip_wall_time(read_file(json_path));
  CHECK(run_cli("verify skew --n 4 --r 1 --samples 2 --seed 9 --json " + json_path) == 0);
  CHECK(strip_wall_time(read_file(json_path)) == first);
  std::remove(json_path.c_str());
  std::remove(csv_path.c_str());
}
