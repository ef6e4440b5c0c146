#pragma once

#include <string>

#include "crn/certify.hpp"
#include "crn/network.hpp"

namespace crn {

struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> states;
  int accepted_steps = 0;
  int rejected_steps = 0;
  bool stiff_abort = false;  // step underflow; trajectory is partial
};

/// Adaptive Dormand-Prince RK45 for the mass-action field, per-step
/// relative error <= tol. A step that would push any component to <= 0 is
/// rejected and halved. Samples lie on a uniform grid (cubic Hermite dense
/// output) plus the accepted step points.
Trajectory integrate(const ReactionNetwork& net, const std::vector<double>& x0,
                     double t_end, double tol, int samples = 1000);

/// L(x) = sum_i x_i (ln x_i - ln x_i* - 1) + x_i*, with x ln x -> 0 at 0.
double lyapunov(const std::vector<double>& x, const std::vector<double>& x_star);

/// Weak ordering of complexes by (x/x*)^{z_i}, descending; ties (relative
/// gap <= 1e-12) grouped. Ties mark stratum-boundary points.
struct StratumLabel {
  std::vector<std::vector<int>> groups;  // descending, each group tied
  bool tied() const {
    for (const auto& g : groups)
      if (g.size() > 1) return true;
    return false;
  }
  bool strict_equals(const Ordering& mu) const;
  std::string str() const;  // e.g. "2>4>1>3" or "2>{1,4}>3"
};

StratumLabel locate_stratum(const std::vector<double>& x,
                            const std::vector<double>& x_star,
                            const std::vector<Complex>& complexes);

struct HViolation {
  double time;
  std::vector<int> siphon;
  double increase;
};

struct MonitorReport {
  std::vector<double> lyapunov_values;
  double max_lyapunov_increase = 0;
  double conservation_drift = 0;  // max relative drift over conserved c
  std::vector<StratumLabel> stratum_labels;
  std::vector<HViolation> h_violations;
};

/// Validates a trajectory against a certificate: Lyapunov non-increase,
/// conservation, stratum labels, and monotonicity of H = <alpha_I, x>
/// across consecutive samples that stay in one certified stratum.
/// Violations beyond 1e-8 absolute are flagged.
MonitorReport monitor(const ReactionNetwork& net, const Trajectory& traj,
                      const std::vector<double>& x_star,
                      const StabilityCertificate* certificate);

/// CSV with header "t,x_1..x_m,L,stratum_label".
std::string trajectory_csv(const ReactionNetwork& net, const Trajectory& traj,
                           const std::vector<double>& x_star);

}  // namespace crn
