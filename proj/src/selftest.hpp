#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "analysis.hpp"

namespace belgauge {

struct PropertyResult {
  std::string name;
  std::string tolerance;  // key into Tolerances, or "exact"
  std::size_t cases = 0;
  double worst_slack = 0.0;  // minimum over cases; >= 0 passes

  bool pass() const { return worst_slack >= 0.0; }
};

struct SelftestReport {
  std::uint64_t seed = 0;
  std::vector<PropertyResult> properties;

  bool all_pass() const;
  std::size_t passed() const;
  /// One line per property plus a summary. Contains no timing, so equal
  /// seeds and tolerances give byte-identical text.
  std::string text() const;
  Json to_json() const;
};

/// Runs the invariant suite of every module on a seeded fleet of states.
SelftestReport run_selftest(std::uint64_t seed, const Tolerances& tol);

}  // namespace belgauge
