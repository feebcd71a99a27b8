// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion pins its tolerances in code; runtimes are printed
// for reference.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mmm/campaign.hpp"
#include "mmm/curvature.hpp"
#include "mmm/rng.hpp"

using namespace mmm;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

RankChartSpec random_rank_spec(Rng& rng, int max_size) {
  const int n = 2 + static_cast<int>(rng.next_u64() % (max_size - 1));
  const int m = 2 + static_cast<int>(rng.next_u64() % (n - 1));
  const int r = 1 + static_cast<int>(rng.next_u64() % m);
  return RankChartSpec(m, n, r, rng.descending_values(r, 0.5, 3.0, 0.1));
}

SkewChartSpec random_skew_spec(Rng& rng, int max_size) {
  const int n = 3 + static_cast<int>(rng.next_u64() % (max_size - 2));
  const int r = 1 + static_cast<int>(rng.next_u64() % (n / 2));
  return SkewChartSpec(n, r, rng.descending_values(r, 0.5, 3.0, 0.1));
}

Outcome criterion_rank_minimality() {
  Outcome out;
  double worst_closed = 0, worst_fd = 0;
  std::uint64_t seed = 1000;
  for (int n = 1; n <= 5; ++n)
    for (int m = 1; m <= n; ++m)
      for (int r = 1; r <= m; ++r) {
        CampaignConfig config;
        config.family = Family::Rank;
        config.m = m;
        config.n = n;
        config.r = r;
        config.samples = 10;
        config.seed = seed++;
        config.method = VerifyMethod::Both;
        const CurvatureReport report = run_verify(config);
        for (const SampleRecord& s : report.samples) {
          if (s.method == "closed")
            worst_closed = std::max(worst_closed, s.h_norm);
          else
            worst_fd = std::max(worst_fd, s.h_norm);
        }
        if (!report.all_pass()) out.pass = false;
      }
  if (worst_closed > 1e-6 || worst_fd > 1e-4) out.pass = false;
  std::ostringstream os;
  os << "max |H| closed " << format_double(worst_closed) << " (tol 1e-6), fd "
     << format_double(worst_fd) << " (tol 1e-4)";
  out.detail = os.str();
  return out;
}

Outcome criterion_skew_minimality() {
  Outcome out;
  double worst_closed = 0, worst_fd = 0;
  std::uint64_t seed = 2000;
  for (int n = 2; n <= 6; ++n)
    for (int r = 1; 2 * r <= n; ++r) {
      CampaignConfig config;
      config.family = Family::Skew;
      config.n = n;
      config.r = r;
      config.samples = 10;
      config.seed = seed++;
      config.method = VerifyMethod::Both;
      const CurvatureReport report = run_verify(config);
      for (const SampleRecord& s : report.samples) {
        if (s.method == "closed")
          worst_closed = std::max(worst_closed, s.h_norm);
        else
          worst_fd = std::max(worst_fd, s.h_norm);
      }
      if (!report.all_pass()) out.pass = false;
    }
  if (worst_closed > 1e-6 || worst_fd > 1e-4) out.pass = false;
  std::ostringstream os;
  os << "max |H| closed " << format_double(worst_closed) << " (tol 1e-6), fd "
     << format_double(worst_fd) << " (tol 1e-4)";
  out.detail = os.str();
  return out;
}

Outcome criterion_sym_minimality() {
  Outcome out;
  double worst = 0;
  std::uint64_t seed = 3000;
  for (int n = 1; n <= 5; ++n)
    for (const MultiplicityPattern& pattern : all_patterns(n)) {
      CampaignConfig config;
      config.family = Family::Sym;
      config.pattern = pattern;
      config.samples = 10;
      config.seed = seed++;
      config.method = VerifyMethod::Fd;
      const CurvatureReport report = run_verify(config);
      worst = std::max(worst, report.summary.max_h_norm);
      if (!report.all_pass()) out.pass = false;
    }
  if (worst > 1e-4) out.pass = false;
  out.detail = "max |H| fd " + format_double(worst) + " (tol 1e-4)";
  return out;
}

Outcome criterion_counterexample() {
  Outcome out;
  CampaignConfig config;
  config.family = Family::Counterexample;
  config.samples = 10;
  config.seed = 4000;
  const CurvatureReport report = run_verify(config);
  double worst_dev = 0;
  for (const SampleRecord& s : report.samples)
    worst_dev = std::max(worst_dev, std::abs(s.h_norm - 1.0));
  out.pass = report.campaign_success() && worst_dev <= 1e-3;
  out.detail = "max | |H| - 1 | = " + format_double(worst_dev) + " (tol 1e-3)";
  return out;
}

Outcome criterion_gram_crosscheck() {
  Outcome out;
  Rng rng(5000);
  double worst_gap = 0, worst_id = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const RankChartSpec spec = random_rank_spec(rng, 5);
    const Matrix g = gram(rank_tangent_frame(spec)).g;
    const Matrix analytic = analytic_gram_inverse_rank(spec).g;
    worst_gap = std::max(worst_gap, (analytic - g.inverse()).cwiseAbs().maxCoeff());
    worst_id = std::max(
        worst_id,
        (g * analytic - Matrix::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff());
  }
  for (int trial = 0; trial < 20; ++trial) {
    const SkewChartSpec spec = random_skew_spec(rng, 6);
    const Matrix g = gram(skew_tangent_frame(spec)).g;
    const Matrix analytic = analytic_gram_inverse_skew(spec).g;
    worst_gap = std::max(worst_gap, (analytic - g.inverse()).cwiseAbs().maxCoeff());
    worst_id = std::max(
        worst_id,
        (g * analytic - Matrix::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff());
  }
  out.pass = worst_gap <= 1e-8 && worst_id <= 1e-10;
  out.detail = "max |analytic - numeric| = " + format_double(worst_gap) +
               " (tol 1e-8), max |G G^-1 - Id| = " + format_double(worst_id) +
               " (tol 1e-10)";
  return out;
}

Outcome criterion_second_derivatives() {
  Outcome out;
  Rng rng(6000);
  double worst = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const RankChartSpec spec = random_rank_spec(rng, 5);
    const Chart chart = rank_chart(spec);
    const SecondDerivTensor closed = second_derivatives_closed_rank(spec);
    const SecondDerivTensor fd =
        second_derivatives_fd(chart, FdOptions{}.clamped_to_box(chart.box_radius));
    for (int i = 0; i < chart.dim; ++i)
      for (int j = 0; j < chart.dim; ++j)
        if (closed.is_known(i, j))
          worst = std::max(worst,
                           (closed.at(i, j) - fd.at(i, j)).cwiseAbs().maxCoeff());
  }
  for (int trial = 0; trial < 20; ++trial) {
    const SkewChartSpec spec = random_skew_spec(rng, 6);
    const Chart chart = skew_chart(spec);
    const SecondDerivTensor closed = second_derivatives_closed_skew(spec);
    const SecondDerivTensor fd =
        second_derivatives_fd(chart, FdOptions{}.clamped_to_box(chart.box_radius));
    for (int i = 0; i < chart.dim; ++i)
      for (int j = 0; j < chart.dim; ++j)
        if (closed.is_known(i, j))
          worst = std::max(worst,
                           (closed.at(i, j) - fd.at(i, j)).cwiseAbs().maxCoeff());
  }
  out.pass = worst <= 1e-6;
  out.detail = "max entrywise gap = " + format_double(worst) + " (tol 1e-6)";
  return out;
}

Outcome criterion_normal_orthogonality() {
  Outcome out;
  Rng rng(7000);
  double worst = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const RankChartSpec spec = random_rank_spec(rng, 5);
    const SecondDerivTensor d2 = second_derivatives_closed_rank(spec);
    const Frame normal = rank_normal_frame(spec);
    for (int i = 0; i < d2.dim; ++i)
      for (int j = 0; j < d2.dim; ++j)
        if (d2.is_known(i, j))
          for (const Matrix& nv : normal.vectors)
            worst = std::max(worst, std::abs(frobenius_inner(d2.at(i, j), nv)));
  }
  for (int trial = 0; trial < 10; ++trial) {
    const SkewChartSpec spec = random_skew_spec(rng, 6);
    const SecondDerivTensor d2 = second_derivatives_closed_skew(spec);
    const Frame normal = skew_normal_frame(spec);
    for (int i = 0; i < d2.dim; ++i)
      for (int j = 0; j < d2.dim; ++j)
        if (d2.is_known(i, j))
          for (const Matrix& nv : normal.vectors)
            worst = std::max(worst, std::abs(frobenius_inner(d2.at(i, j), nv)));
  }
  out.pass = worst <= 1e-12;
  out.detail = "max |<d2, normal>| = " + format_double(worst) + " (tol 1e-12)";
  return out;
}

Outcome criterion_cone_sphere() {
  Outcome out;
  const ConeSphereCampaignReport report = run_cone_sphere();
  out.pass = report.all_pass();
  double worst_diff = 0;
  for (const auto& row : report.rows) worst_diff = std::max(worst_diff, row.diff);
  out.detail = "max |H_cone - H_sphere| = " + format_double(worst_diff) +
               " (tol 1e-6), sphere sanity |H| = " +
               format_double(report.sphere_sanity_h) + " (2 +- 1e-6)";
  return out;
}

Outcome criterion_dimensions() {
  Outcome out;
  const DimsReport report = run_dims();
  out.pass = report.all_pass();
  out.detail = std::to_string(report.pass) + "/" +
               std::to_string(report.pass + report.fail) + " rows integer-exact";
  return out;
}

Outcome criterion_invariance() {
  Outcome out;
  Rng rng(8000);
  double worst = 0;

  const RankChartSpec rank_spec(3, 4, 2, rng.descending_values(2, 0.5, 3.0, 0.1));
  const Chart rank_base = rank_chart(rank_spec);
  const double rank_h = mean_curvature(rank_base).h_norm;
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix u = rng.haar_orthogonal(3);
    const Matrix v = rng.haar_orthogonal(4);
    Chart conj = rank_base;
    conj.closed_spec.reset();
    conj.base = MatrixPoint::rect(u * rank_base.base.entries() * v.transpose());
    const Chart inner = rank_base;
    conj.eval = [inner, u, v](const Vector& uu) {
      return MatrixPoint::rect(u * inner.eval(uu).entries() * v.transpose());
    };
    worst = std::max(worst, std::abs(mean_curvature(conj).h_norm - rank_h));
  }

  const SkewChartSpec skew_spec(5, 2, rng.descending_values(2, 0.5, 3.0, 0.1));
  const Chart skew_base = skew_chart(skew_spec);
  const double skew_h = mean_curvature(skew_base).h_norm;
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix q = rng.haar_orthogonal(5);
    Chart conj = skew_base;
    conj.closed_spec.reset();
    conj.base = MatrixPoint::skew(q * skew_base.base.entries() * q.transpose());
    const Chart inner = skew_base;
    conj.eval = [inner, q](const Vector& uu) {
      return MatrixPoint::skew(q * inner.eval(uu).entries() * q.transpose());
    };
    worst = std::max(worst, std::abs(mean_curvature(conj).h_norm - skew_h));
  }

  const SymChartSpec sym_spec(MultiplicityPattern({1, 1}),
                              rng.descending_values(2, -3.0, 3.0, 0.1));
  const Chart sym_base = sym_chart(sym_spec);
  const double sym_h = mean_curvature(sym_base).h_norm;
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix q = rng.haar_orthogonal(3);
    Chart conj = sym_base;
    conj.base = MatrixPoint::sym(q * sym_base.base.entries() * q.transpose());
    const Chart inner = sym_base;
    conj.eval = [inner, q](const Vector& uu) {
      return MatrixPoint::sym(q * inner.eval(uu).entries() * q.transpose());
    };
    worst = std::max(worst, std::abs(mean_curvature(conj).h_norm - sym_h));
  }

  out.pass = worst <= 1e-6;
  out.detail = "max | |H|_conj - |H| | = " + format_double(worst) + " (tol 1e-6)";
  return out;
}

Outcome criterion_determinism() {
  Outcome out;
  out.pass = true;

  CampaignConfig rank_config;
  rank_config.family = Family::Rank;
  rank_config.m = 2;
  rank_config.n = 3;
  rank_config.r = 1;
  rank_config.samples = 2;
  rank_config.seed = 7;

  CampaignConfig skew_config;
  skew_config.family = Family::Skew;
  skew_config.n = 5;
  skew_config.r = 2;
  skew_config.samples = 3;
  skew_config.seed = 21;

  CampaignConfig sym_config;
  sym_config.family = Family::Sym;
  sym_config.pattern = MultiplicityPattern({1, 1});
  sym_config.samples = 3;
  sym_config.seed = 22;

  for (const CampaignConfig& config : {rank_config, skew_config, sym_config}) {
    const std::string a = strip_wall_time(to_json(run_verify(config)));
    const std::string b = strip_wall_time(to_json(run_verify(config)));
    if (a != b) {
      out.pass = false;
      out.detail = "rerun bytes differ for " + to_string(config.family);
    }
  }

  const std::string golden_path =
      std::string(MMM_GOLDEN_DIR) + "/verify_rank_231_s2_seed7.json";
  std::ifstream in(golden_path);
  if (!in.good()) {
    out.pass = false;
    out.detail = "missing golden file " + golden_path;
    return out;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string current =
      strip_wall_time(to_json(run_verify(rank_config))) + "\n";
  if (current != ss.str()) {
    out.pass = false;
    out.detail = "golden file mismatch";
  }
  if (out.detail.empty())
    out.detail = "byte-identical reruns (3 families) and golden file match";
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "minimality, rank family (r <= m <= n <= 5)", criterion_rank_minimality},
      {2, "minimality, skew family (n <= 6)", criterion_skew_minimality},
      {3, "minimality, symmetric strata (n <= 5)", criterion_sym_minimality},
      {4, "non-minimal witness |H| = 1 +- 1e-3", criterion_counterexample},
      {5, "analytic vs numeric metric inverse", criterion_gram_crosscheck},
      {6, "closed-form second derivatives vs fd", criterion_second_derivatives},
      {7, "second derivatives orthogonal to normal frames", criterion_normal_orthogonality},
      {8, "cone/sphere reduction", criterion_cone_sphere},
      {9, "dimension formulas vs numeric chart rank", criterion_dimensions},
      {10, "group-action invariance of |H|", criterion_invariance},
      {11, "deterministic reports and golden files", criterion_determinism},
  };

  bool all_pass = true;
  for (const Criterion& criterion : criteria) {
    const auto start = Clock::now();
    Outcome outcome;
    try {
      outcome = criterion.run();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(Clock::now() - start).count();
    std::printf("[%s] criterion %2d: %s — %s (%.2f s)\n",
                outcome.pass ? "PASS" : "FAIL", criterion.id, criterion.name,
                outcome.detail.c_str(), seconds);
    if (!outcome.pass) all_pass = false;
  }
  std::printf("%s\n", all_pass ? "ACCEPTANCE: ALL CRITERIA PASS"
                               : "ACCEPTANCE: FAILURES PRESENT");
  return all_pass ? 0 : 1;
}
