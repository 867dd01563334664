#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wlab/groupring.hpp"

namespace wlab {

struct SuiteConfig {
  FiniteGroup group;
  int n_check = 16;
  int n_work = -1;  // derived from the group order when negative
  std::uint64_t seed = 1;
  int unit_samples = 100;    // logarithm sampling (integrality, additivity, omega)
  int pair_samples = 20;     // per-(subgroup, unit) identities
  int tuple_samples = 20;    // random class-module members
  int lattice_samples = 200; // units spanning the image lattice
  std::vector<std::string> families;  // subset of {additive, k1, lattice}; empty = all
  std::string corrupt;  // test hook: "phi-tuple" or "psi-tuple" tampers one entry
};

struct CheckResult {
  std::string name;
  std::string family;
  bool pass = false;
  int residual = 0;    // worst residual valuation seen, capped at n_check
  std::string detail;
};

struct SuiteReport {
  std::string group_name;
  long p = 2;
  int order = 1;
  int n_check = 16;
  int n_work = 0;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;
  bool pass = false;
};

/// Every enabled check over one group; checks run concurrently and are
/// assembled in a fixed order, so identical configs give identical reports.
/// PrecisionExhausted propagates with the failing check named; every other
/// library error fails the check that raised it.
SuiteReport run_suite(const SuiteConfig& cfg);

/// The groups a full verification run covers: cyclic towers, Klein four,
/// dihedral and quaternion at p = 2, elementary abelian and Heisenberg at
/// p = 3, and the first two cyclic 5-groups.
std::vector<FiniteGroup> default_suite_groups();

}  // namespace wlab
