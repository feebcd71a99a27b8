// mmm — numerical minimality checks for matrix manifolds.
//
// Subcommands:
//   verify {rank|skew|sym|counterexample}   seeded mean-curvature campaigns
//   check gram {rank|skew}                  analytic vs numeric metric inverse
//   check cone-sphere                       cone/sphere reduction checks
//   dims                                    dimension formula sweep
//
// Exit codes: 0 all pass, 1 verification failure, 2 usage error.
// Set MMM_LOG=error|warn|info|debug for diagnostics on stderr.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

#include "mmm/campaign.hpp"
#include "mmm/log.hpp"

namespace {

struct CliOptions {
  mmm::CampaignConfig config;
  std::string pattern_csv;
  std::string method = "both";
};

void add_common_flags(CLI::App* cmd, CliOptions& opts) {
  cmd->add_option("--samples", opts.config.samples, "samples per campaign");
  cmd->add_option("--seed", opts.config.seed, "RNG seed");
  cmd->add_option("--tol", opts.config.tol_override,
                  "override the pass tolerance");
  cmd->add_option("--method", opts.method, "curvature path: closed|fd|both")
      ->check(CLI::IsMember({"closed", "fd", "both"}));
  cmd->add_option("--json", opts.config.json_path, "write the JSON report here");
  cmd->add_option("--csv", opts.config.csv_path, "write the CSV report here");
  cmd->add_option("--gap", opts.config.gap, "minimum sampled spectral gap");
}

mmm::VerifyMethod parse_method(const std::string& name) {
  if (name == "closed") return mmm::VerifyMethod::Closed;
  if (name == "fd") return mmm::VerifyMethod::Fd;
  return mmm::VerifyMethod::Both;
}

int finish_verify(CliOptions& opts) {
  opts.config.method = parse_method(opts.method);
  if (!opts.pattern_csv.empty())
    opts.config.pattern = mmm::MultiplicityPattern::parse(opts.pattern_csv);
  const mmm::CurvatureReport report = mmm::run_verify(opts.config);
  mmm::print_human(std::cout, report);
  if (!mmm::write_outputs(report)) {
    mmm::log::error("failed to write report outputs");
    return 1;
  }
  return report.campaign_success() ? 0 : 1;
}

int finish_check_gram(CliOptions& opts) {
  opts.config.method = parse_method(opts.method);
  const mmm::GramCheckReport report = mmm::run_check_gram(opts.config);
  mmm::print_human(std::cout, report);
  if (!opts.config.json_path.empty()) {
    std::ofstream out(opts.config.json_path);
    if (!out) return 1;
    out << mmm::to_json(report) << "\n";
  }
  return report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical minimality checks for matrix manifolds"};
  app.require_subcommand(1);

  // verify
  CLI::App* verify = app.add_subcommand("verify", "run a minimality campaign");
  verify->require_subcommand(1);

  CliOptions rank_opts;
  rank_opts.config.family = mmm::Family::Rank;
  CLI::App* verify_rank =
      verify->add_subcommand("rank", "fixed-rank rectangular matrices");
  verify_rank->add_option("--m", rank_opts.config.m, "rows")->required();
  verify_rank->add_option("--n", rank_opts.config.n, "columns")->required();
  verify_rank->add_option("--r", rank_opts.config.r, "rank")->required();
  add_common_flags(verify_rank, rank_opts);

  CliOptions skew_opts;
  skew_opts.config.family = mmm::Family::Skew;
  CLI::App* verify_skew =
      verify->add_subcommand("skew", "fixed-rank skew-symmetric matrices");
  verify_skew->add_option("--n", skew_opts.config.n, "size")->required();
  verify_skew->add_option("--r", skew_opts.config.r, "half rank (matrix rank = 2r)")
      ->required();
  add_common_flags(verify_skew, skew_opts);

  CliOptions sym_opts;
  sym_opts.config.family = mmm::Family::Sym;
  CLI::App* verify_sym =
      verify->add_subcommand("sym", "eigenvalue-multiplicity strata");
  verify_sym
      ->add_option("--pattern", sym_opts.pattern_csv,
                   "multiplicity counts, e.g. 1,1 for one simple + one double")
      ->required();
  add_common_flags(verify_sym, sym_opts);

  CliOptions witness_opts;
  witness_opts.config.family = mmm::Family::Counterexample;
  witness_opts.config.samples = 5;
  CLI::App* verify_witness = verify->add_subcommand(
      "counterexample", "the non-minimal rank-one symmetric cone");
  add_common_flags(verify_witness, witness_opts);

  // check
  CLI::App* check = app.add_subcommand("check", "closed-form cross-checks");
  check->require_subcommand(1);
  CLI::App* check_gram =
      check->add_subcommand("gram", "analytic vs numeric metric inverse");
  check_gram->require_subcommand(1);

  CliOptions gram_rank_opts;
  gram_rank_opts.config.family = mmm::Family::Rank;
  gram_rank_opts.config.samples = 20;
  CLI::App* gram_rank = check_gram->add_subcommand("rank", "rank family");
  gram_rank->add_option("--m", gram_rank_opts.config.m, "rows")->required();
  gram_rank->add_option("--n", gram_rank_opts.config.n, "columns")->required();
  gram_rank->add_option("--r", gram_rank_opts.config.r, "rank")->required();
  add_common_flags(gram_rank, gram_rank_opts);

  CliOptions gram_skew_opts;
  gram_skew_opts.config.family = mmm::Family::Skew;
  gram_skew_opts.config.samples = 20;
  CLI::App* gram_skew = check_gram->add_subcommand("skew", "skew family");
  gram_skew->add_option("--n", gram_skew_opts.config.n, "size")->required();
  gram_skew->add_option("--r", gram_skew_opts.config.r, "half rank")->required();
  add_common_flags(gram_skew, gram_skew_opts);

  std::string cone_json;
  CLI::App* check_cone =
      check->add_subcommand("cone-sphere", "cone/sphere curvature reduction");
  check_cone->add_option("--json", cone_json, "write the JSON report here");

  std::string dims_json;
  CLI::App* dims = app.add_subcommand("dims", "dimension formula sweep");
  dims->add_option("--json", dims_json, "write the JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (verify->parsed()) {
      if (verify_rank->parsed()) return finish_verify(rank_opts);
      if (verify_skew->parsed()) return finish_verify(skew_opts);
      if (verify_sym->parsed()) return finish_verify(sym_opts);
      if (verify_witness->parsed()) return finish_verify(witness_opts);
    }
    if (check->parsed()) {
      if (check_gram->parsed()) {
        if (gram_rank->parsed()) return finish_check_gram(gram_rank_opts);
        if (gram_skew->parsed()) return finish_check_gram(gram_skew_opts);
      }
      if (check_cone->parsed()) {
        const mmm::ConeSphereCampaignReport report = mmm::run_cone_sphere();
        mmm::print_human(std::cout, report);
        if (!cone_json.empty()) {
          std::ofstream out(cone_json);
          if (!out) return 1;
          out << mmm::to_json(report) << "\n";
        }
        return report.all_pass() ? 0 : 1;
      }
    }
    if (dims->parsed()) {
      const mmm::DimsReport report = mmm::run_dims();
      mmm::print_human(std::cout, report);
      if (!dims_json.empty()) {
        std::ofstream out(dims_json);
        if (!out) return 1;
        out << mmm::to_json(report) << "\n";
      }
      return report.all_pass() ? 0 : 1;
    }
  } catch (const mmm::SpecError& e) {
    std::cerr << "invalid parameters: " << e.what() << "\n";
    return 2;
  } catch (const mmm::Error& e) {
    std::cerr << "verification error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
