#pragma once

#include "conelab/catalog.hpp"

#include <string>
#include <vector>

namespace conelab {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerificationReport {
  std::string id;
  std::string family;
  long k2 = 0;
  std::vector<CheckResult> checks;
  std::vector<NegativeCount> negatives;  ///< computed, canonical order
  long b_x = 0;
  std::vector<std::string> discrepancies;  ///< known misprints in the printed claims
  std::vector<std::string> imported_claims;
  std::vector<std::string> nef_rays;  ///< computed dual of Eff, formatted
  bool pass() const;
};

/// Never throws on a mathematical failure; those become failed checks.
VerificationReport verify_entry(const SurfaceEntry& entry);

std::vector<VerificationReport> verify_catalog(const Catalog& catalog);

/// Sorted by multiplicity, then self-intersection descending, then genus.
std::vector<NegativeCount> canonical_multiset(std::vector<NegativeCount> counts);

/// "10(-1,1), 2(-4,0), (-2,0)"; "None" for the empty list.
std::string format_negatives(const std::vector<NegativeCount>& counts);

/// One line per entry, sorted by K^2 descending then id. Throws unverified
/// if any report failed.
std::string negative_curve_table(const std::vector<VerificationReport>& reports);

std::string reports_to_text(const std::vector<VerificationReport>& reports);
std::string reports_to_json(const std::vector<VerificationReport>& reports);

}  // namespace conelab
