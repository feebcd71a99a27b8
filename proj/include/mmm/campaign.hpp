#pragma once

#include <iosfwd>

#include "mmm/report.hpp"

namespace mmm {

/// Seeded minimality campaign over one family (or the non-minimal witness).
/// Sample i uses the RNG stream split(seed, i); one extra record re-checks
/// sample 0 at a conjugated base point (flagged "conjugated").
CurvatureReport run_verify(const CampaignConfig& config);

/// Analytic vs numeric metric-inverse cross-check (rank and skew families).
GramCheckReport run_check_gram(const CampaignConfig& config);

/// Cone/sphere reduction over the built-in chart set plus the unit-sphere
/// sanity value.
ConeSphereCampaignReport run_cone_sphere();

/// Dimension-formula sweep: rank m <= n <= 5, skew n <= 6, sym n <= 5.
DimsReport run_dims();

void print_human(std::ostream& os, const CurvatureReport& report);
void print_human(std::ostream& os, const GramCheckReport& report);
void print_human(std::ostream& os, const ConeSphereCampaignReport& report);
void print_human(std::ostream& os, const DimsReport& report);

/// Writes json/csv outputs if the config names paths. Returns false on I/O
/// failure.
bool write_outputs(const CurvatureReport& report);

}  // namespace mmm
