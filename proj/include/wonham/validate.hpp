#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace wonham {

struct CheckResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  bool passed() const;
  void print(std::ostream& os) const;
};

/// Exact and oracle identities on freshly simulated paths:
///   additive_unit       |A_{s,t}(1) - (t - s)|                      <= 1e-12
///   exact_derivative    trapezoid of a e^{-int a} vs 1 - e^{-D}     <= 1e-3 relative
///   smoother_ode        smooth_path vs backward RK4, delta = 10 dt  <= 1e-5
///   smoother_dual       primal vs dual smoothing formula            <= 1e-9
///   cross_integrator    pi-space vs logistic filter, gamma = 100    <= 0.05
///   backward_transform  vs RK4 on a smooth synthetic b              <= 1e-6
///   forward_transform   vs RK4 on a smooth synthetic b              <= 1e-6
///   spike_count         mean truncated count vs lambda p H (1/eps - 1), within 3 stderr
///   max_spike_cdf       empirical P(M* <= 0.7) vs closed form, within 3 stderr
ValidationReport run_validation(std::uint64_t seed = 1);

}  // namespace wonham
