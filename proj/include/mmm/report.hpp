#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mmm/spectra.hpp"

namespace mmm {

enum class Family { Rank, Skew, Sym, Counterexample };
std::string to_string(Family family);

enum class VerifyMethod { Closed, Fd, Both };
std::string to_string(VerifyMethod method);

/// One seeded verification campaign. Family-specific size parameters:
/// rank uses (m, n, r), skew uses (n, r), sym uses the pattern.
struct CampaignConfig {
  Family family = Family::Rank;
  int m = 0, n = 0, r = 0;
  MultiplicityPattern pattern;
  int samples = 10;
  std::uint64_t seed = 0;
  VerifyMethod method = VerifyMethod::Both;
  double tol_override = 0.0;  // 0 keeps the per-method defaults
  double gap = 0.1;           // minimum spectral gap for sampled specs
  std::string json_path;
  std::string csv_path;

  double tol_closed() const { return tol_override > 0 ? tol_override : 1e-6; }
  double tol_fd() const { return tol_override > 0 ? tol_override : 1e-4; }
  /// Counterexample band around the expected ||H|| = 1.
  double tol_witness() const { return tol_override > 0 ? tol_override : 1e-3; }
};

struct SampleRecord {
  int index = 0;
  std::string spec;
  std::vector<double> values;  // sampled sigma / omega / lambda (or theta0)
  std::string method;          // "closed" | "fd"
  double h_norm = 0;
  double tangential_residual = 0;
  double gram_cond = 0;
  std::string verdict;  // "pass" | "fail" | "error"
  std::vector<std::string> flags;
  std::string error;
};

struct CampaignSummary {
  double max_h_norm = 0;
  int pass = 0;
  int fail = 0;
  double wall_time_ms = 0;
};

struct CurvatureReport {
  CampaignConfig config;
  CampaignSummary summary;
  std::vector<SampleRecord> samples;

  bool all_pass() const { return summary.fail == 0; }
  /// Exit-code criterion. Counterexample campaigns succeed when every record
  /// confirms the non-minimal witness magnitude (flag "witness_confirmed");
  /// the per-record minimality verdict stays "fail" there by design.
  bool campaign_success() const;
};

struct GramCheckReport {
  CampaignConfig config;
  struct Row {
    int index = 0;
    std::string spec;
    std::vector<double> values;
    double inverse_gap = 0;        // max |analytic - numeric inverse|
    double identity_residual = 0;  // max |G * G^-1 - Id|
    std::string verdict;
    std::vector<std::string> flags;
  };
  std::vector<Row> rows;
  double max_inverse_gap = 0;
  double max_identity_residual = 0;
  int pass = 0;
  int fail = 0;
  double wall_time_ms = 0;

  bool all_pass() const { return fail == 0; }
};

struct ConeSphereCampaignReport {
  struct Row {
    std::string chart;
    double h_cone = 0;
    double h_sphere = 0;
    double diff = 0;
    double expected_h = 0;  // independent oracle value for ||H||
    std::string verdict;
  };
  std::vector<Row> rows;
  double sphere_sanity_h = 0;  // ||H|| of the unit-sphere graph chart
  std::string sanity_verdict;
  int pass = 0;
  int fail = 0;
  double wall_time_ms = 0;

  bool all_pass() const { return fail == 0; }
};

struct DimsReport {
  struct Row {
    std::string family;
    std::string params;
    int formula = 0;
    int numeric = 0;
    bool match = false;
  };
  std::vector<Row> rows;
  int pass = 0;
  int fail = 0;
  double wall_time_ms = 0;

  bool all_pass() const { return fail == 0; }
};

/// Deterministic JSON: fixed key order, floats printed with 17 significant
/// digits, matrices as row-major nested arrays. Byte-identical for identical
/// seed + config, except for the wall_time_ms field.
std::string to_json(const CurvatureReport& report);
std::string to_json(const GramCheckReport& report);
std::string to_json(const ConeSphereCampaignReport& report);
std::string to_json(const DimsReport& report);

/// One CSV row per sample record, mirroring the JSON samples array.
std::string to_csv(const CurvatureReport& report);

/// Drops the wall_time_ms field; used by golden-file and determinism checks.
std::string strip_wall_time(const std::string& json);

std::string format_double(double value);  // %.17g

}  // namespace mmm
