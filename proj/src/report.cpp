#include "mmm/report.hpp"

#include <cstdio>
#include <regex>
#include <sstream>

namespace mmm {

std::string to_string(Family family) {
  switch (family) {
    case Family::Rank: return "rank";
    case Family::Skew: return "skew";
    case Family::Sym: return "sym";
    case Family::Counterexample: return "counterexample";
  }
  return "?";
}

std::string to_string(VerifyMethod method) {
  switch (method) {
    case VerifyMethod::Closed: return "closed";
    case VerifyMethod::Fd: return "fd";
    case VerifyMethod::Both: return "both";
  }
  return "?";
}

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

bool CurvatureReport::campaign_success() const {
  if (config.family == Family::Counterexample) {
    for (const SampleRecord& s : samples) {
      if (s.verdict == "error") return false;
      bool confirmed = false;
      for (const std::string& flag : s.flags)
        if (flag == "witness_confirmed") confirmed = true;
      if (!confirmed) return false;
    }
    return !samples.empty();
  }
  return summary.fail == 0;
}

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

std::string double_array(const std::vector<double>& values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ",";
    out += format_double(values[i]);
  }
  out += "]";
  return out;
}

std::string string_array(const std::vector<std::string>& values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ",";
    out += quote(values[i]);
  }
  out += "]";
  return out;
}

std::string config_json(const CampaignConfig& c, const char* command) {
  std::ostringstream os;
  os << "{\"command\":" << quote(command)
     << ",\"family\":" << quote(to_string(c.family));
  if (c.family == Family::Rank) {
    os << ",\"m\":" << c.m << ",\"n\":" << c.n << ",\"r\":" << c.r;
  } else if (c.family == Family::Skew) {
    os << ",\"n\":" << c.n << ",\"r\":" << c.r;
  } else if (c.family == Family::Sym) {
    os << ",\"pattern\":[";
    for (std::size_t i = 0; i < c.pattern.kappa.size(); ++i) {
      if (i) os << ",";
      os << c.pattern.kappa[i];
    }
    os << "]";
  }
  os << ",\"samples\":" << c.samples << ",\"seed\":" << c.seed
     << ",\"method\":" << quote(to_string(c.method))
     << ",\"tol_closed\":" << format_double(c.tol_closed())
     << ",\"tol_fd\":" << format_double(c.tol_fd())
     << ",\"gap\":" << format_double(c.gap) << "}";
  return os.str();
}

std::string sample_json(const SampleRecord& s) {
  std::ostringstream os;
  os << "{\"index\":" << s.index << ",\"spec\":" << quote(s.spec)
     << ",\"values\":" << double_array(s.values)
     << ",\"method\":" << quote(s.method)
     << ",\"h_norm\":" << format_double(s.h_norm)
     << ",\"tangential_residual\":" << format_double(s.tangential_residual)
     << ",\"gram_cond\":" << format_double(s.gram_cond)
     << ",\"verdict\":" << quote(s.verdict) << ",\"flags\":" << string_array(s.flags);
  if (!s.error.empty()) os << ",\"error\":" << quote(s.error);
  os << "}";
  return os.str();
}

}  // namespace

std::string to_json(const CurvatureReport& report) {
  std::ostringstream os;
  os << "{\"config\":" << config_json(report.config, "verify") << ",\"summary\":{"
     << "\"max_h_norm\":" << format_double(report.summary.max_h_norm)
     << ",\"pass\":" << report.summary.pass << ",\"fail\":" << report.summary.fail
     << ",\"wall_time_ms\":" << format_double(report.summary.wall_time_ms)
     << "},\"samples\":[";
  for (std::size_t i = 0; i < report.samples.size(); ++i) {
    if (i) os << ",";
    os << sample_json(report.samples[i]);
  }
  os << "]}";
  return os.str();
}

std::string to_json(const GramCheckReport& report) {
  std::ostringstream os;
  os << "{\"config\":" << config_json(report.config, "check-gram")
     << ",\"summary\":{"
     << "\"max_inverse_gap\":" << format_double(report.max_inverse_gap)
     << ",\"max_identity_residual\":" << format_double(report.max_identity_residual)
     << ",\"pass\":" << report.pass << ",\"fail\":" << report.fail
     << ",\"wall_time_ms\":" << format_double(report.wall_time_ms)
     << "},\"samples\":[";
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const auto& row = report.rows[i];
    if (i) os << ",";
    os << "{\"index\":" << row.index << ",\"spec\":" << quote(row.spec)
       << ",\"values\":" << double_array(row.values)
       << ",\"inverse_gap\":" << format_double(row.inverse_gap)
       << ",\"identity_residual\":" << format_double(row.identity_residual)
       << ",\"verdict\":" << quote(row.verdict)
       << ",\"flags\":" << string_array(row.flags) << "}";
  }
  os << "]}";
  return os.str();
}

std::string to_json(const ConeSphereCampaignReport& report) {
  std::ostringstream os;
  os << "{\"config\":{\"command\":\"check-cone-sphere\"},\"summary\":{"
     << "\"sphere_sanity_h\":" << format_double(report.sphere_sanity_h)
     << ",\"sanity_verdict\":" << quote(report.sanity_verdict)
     << ",\"pass\":" << report.pass << ",\"fail\":" << report.fail
     << ",\"wall_time_ms\":" << format_double(report.wall_time_ms)
     << "},\"charts\":[";
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const auto& row = report.rows[i];
    if (i) os << ",";
    os << "{\"chart\":" << quote(row.chart)
       << ",\"h_cone\":" << format_double(row.h_cone)
       << ",\"h_sphere\":" << format_double(row.h_sphere)
       << ",\"diff\":" << format_double(row.diff)
       << ",\"expected_h\":" << format_double(row.expected_h)
       << ",\"verdict\":" << quote(row.verdict) << "}";
  }
  os << "]}";
  return os.str();
}

std::string to_json(const DimsReport& report) {
  std::ostringstream os;
  os << "{\"config\":{\"command\":\"dims\"},\"summary\":{"
     << "\"pass\":" << report.pass << ",\"fail\":" << report.fail
     << ",\"wall_time_ms\":" << format_double(report.wall_time_ms)
     << "},\"rows\":[";
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const auto& row = report.rows[i];
    if (i) os << ",";
    os << "{\"family\":" << quote(row.family) << ",\"params\":" << quote(row.params)
       << ",\"formula\":" << row.formula << ",\"numeric\":" << row.numeric
       << ",\"match\":" << (row.match ? "true" : "false") << "}";
  }
  os << "]}";
  return os.str();
}

std::string to_csv(const CurvatureReport& report) {
  std::ostringstream os;
  os << "index,spec,values,method,h_norm,tangential_residual,gram_cond,verdict,flags\n";
  for (const SampleRecord& s : report.samples) {
    os << s.index << "," << s.spec << ",\"";
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      if (i) os << ";";
      os << format_double(s.values[i]);
    }
    os << "\"," << s.method << "," << format_double(s.h_norm) << ","
       << format_double(s.tangential_residual) << "," << format_double(s.gram_cond)
       << "," << s.verdict << ",\"";
    for (std::size_t i = 0; i < s.flags.size(); ++i) {
      if (i) os << ";";
      os << s.flags[i];
    }
    os << "\"\n";
  }
  return os.str();
}

std::string strip_wall_time(const std::string& json) {
  static const std::regex field(",\"wall_time_ms\":[^,}]*");
  return std::regex_replace(json, field, "");
}

}  // namespace mmm
