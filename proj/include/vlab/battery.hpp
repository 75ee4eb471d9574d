#pragma once

#include "vlab/config.hpp"
#include "vlab/quillen.hpp"

namespace vlab {

struct BatteryHooks {
  /// Test hook: flips the sign of the rescaled symplectic form inside the
  /// prequantum comparison, so the identity must fail.
  bool sabotage_omega = false;
};

struct BatteryResult {
  std::vector<VerificationReport> reports;
  bool all_pass() const;
};

Surface surface_from_config(const RunConfig& c);
HermitianMetric metric_from_config(const RunConfig& c, const Grid& g);
VortexSolution solve_from_config(const RunConfig& c);
FixedSection psi0_from_config(const RunConfig& c, const VortexSolution& sol);

/// Runs every identity check against a solved configuration.
BatteryResult run_verify_battery(const RunConfig& c, const BatteryHooks& hooks = {});

std::string reports_to_json(const std::vector<VerificationReport>& reports, const RunConfig& c);
std::string reports_to_table(const std::vector<VerificationReport>& reports);

/// Identity names the battery must always cover.
const std::vector<std::string>& required_identity_names();

}  // namespace vlab
