#include "crn/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace crn {

namespace {

// Dormand-Prince 5(4) coefficients.
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
constexpr double kB5[7] = {35.0 / 384,     0, 500.0 / 1113, 125.0 / 192,
                           -2187.0 / 6784, 11.0 / 84, 0};
constexpr double kB4[7] = {5179.0 / 57600,  0,           7571.0 / 16695,
                           393.0 / 640,     -92097.0 / 339200,
                           187.0 / 2100,    1.0 / 40};

struct Knot {
  double t;
  std::vector<double> x;
  std::vector<double> f;
};

std::vector<double> hermite(const Knot& a, const Knot& b, double t) {
  double h = b.t - a.t;
  double s = (t - a.t) / h;
  double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
  double h10 = s * (1 - s) * (1 - s);
  double h01 = s * s * (3 - 2 * s);
  double h11 = s * s * (s - 1);
  std::vector<double> out(a.x.size());
  for (size_t j = 0; j < out.size(); ++j)
    out[j] = h00 * a.x[j] + h10 * h * a.f[j] + h01 * b.x[j] + h11 * h * b.f[j];
  return out;
}

}  // namespace

Trajectory integrate(const ReactionNetwork& net, const std::vector<double>& x0,
                     double t_end, double tol, int samples) {
  if (static_cast<int>(x0.size()) != net.species_count())
    throw std::invalid_argument("x0 dimension mismatch");
  for (double v : x0)
    if (v <= 0) throw std::invalid_argument("x0 must be strictly positive");
  if (t_end <= 0) throw std::invalid_argument("t_end must be positive");
  if (tol <= 0 || tol > 1e-2) throw std::invalid_argument("tol out of (0, 1e-2]");

  Trajectory traj;
  std::vector<Knot> knots;
  knots.push_back({0.0, x0, mass_action_rhs(net, x0)});

  double t = 0;
  std::vector<double> x = x0;
  double h = t_end / 100;
  const double h_min = 1e-14 * t_end;
  std::vector<std::vector<double>> k(7);

  while (t < t_end) {
    h = std::min(h, t_end - t);
    if (h < h_min) {
      traj.stiff_abort = true;
      break;
    }
    k[0] = knots.back().f;
    bool positive = true;
    std::vector<double> x5(x.size()), x4(x.size());
    for (int stage = 1; stage < 7 && positive; ++stage) {
      std::vector<double> xs = x;
      for (int p = 0; p < stage; ++p)
        for (size_t j = 0; j < x.size(); ++j) xs[j] += h * kA[stage][p] * k[p][j];
      for (double v : xs) positive = positive && v > 0;
      if (positive) k[stage] = mass_action_rhs(net, xs);
    }
    if (positive) {
      for (size_t j = 0; j < x.size(); ++j) {
        double d5 = 0, d4 = 0;
        for (int p = 0; p < 7; ++p) {
          d5 += kB5[p] * k[p][j];
          d4 += kB4[p] * k[p][j];
        }
        x5[j] = x[j] + h * d5;
        x4[j] = x[j] + h * d4;
      }
      for (double v : x5) positive = positive && v > 0;
    }
    if (!positive) {
      h *= 0.5;
      ++traj.rejected_steps;
      continue;
    }
    double err = 0;
    for (size_t j = 0; j < x.size(); ++j) {
      double scale = std::max({std::abs(x[j]), std::abs(x5[j]), 1e-30});
      err = std::max(err, std::abs(x5[j] - x4[j]) / scale);
    }
    if (err > tol) {
      h *= std::max(0.1, 0.9 * std::pow(tol / err, 0.2));
      ++traj.rejected_steps;
      continue;
    }
    t += h;
    x = x5;
    knots.push_back({t, x, mass_action_rhs(net, x)});
    ++traj.accepted_steps;
    if (err > 0) h *= std::min(5.0, 0.9 * std::pow(tol / err, 0.2));
    else h *= 5.0;
  }

  // Uniform monitor grid via dense output.
  double reached = knots.back().t;
  size_t seg = 0;
  for (int i = 0; i <= samples; ++i) {
    double ts = reached * i / samples;
    while (seg + 1 < knots.size() - 1 && knots[seg + 1].t < ts) ++seg;
    traj.times.push_back(ts);
    if (ts <= knots.front().t) {
      traj.states.push_back(knots.front().x);
    } else if (ts >= knots.back().t) {
      traj.states.push_back(knots.back().x);
    } else {
      traj.states.push_back(hermite(knots[seg], knots[seg + 1], ts));
    }
  }
  return traj;
}

double lyapunov(const std::vector<double>& x, const std::vector<double>& x_star) {
  double sum = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 0)
      sum += x[i] * (std::log(x[i]) - std::log(x_star[i]) - 1) + x_star[i];
    else
      sum += x_star[i];  // x ln x -> 0
  }
  return sum;
}

bool StratumLabel::strict_equals(const Ordering& mu) const {
  if (tied()) return false;
  if (groups.size() != mu.size()) return false;
  for (size_t i = 0; i < mu.size(); ++i)
    if (groups[i][0] != mu[i]) return false;
  return true;
}

std::string StratumLabel::str() const {
  std::string out;
  for (size_t g = 0; g < groups.size(); ++g) {
    if (g) out += ">";
    if (groups[g].size() == 1) {
      out += std::to_string(groups[g][0] + 1);
    } else {
      out += "{";
      for (size_t i = 0; i < groups[g].size(); ++i) {
        if (i) out += ",";
        out += std::to_string(groups[g][i] + 1);
      }
      out += "}";
    }
  }
  return out;
}

StratumLabel locate_stratum(const std::vector<double>& x,
                            const std::vector<double>& x_star,
                            const std::vector<Complex>& complexes) {
  int n = static_cast<int>(complexes.size());
  std::vector<double> ratio(x.size());
  for (size_t j = 0; j < x.size(); ++j) ratio[j] = x[j] / x_star[j];
  std::vector<std::pair<double, int>> vals;
  for (int i = 0; i < n; ++i) vals.push_back({monomial(ratio, complexes[i].z), i});
  std::stable_sort(vals.begin(), vals.end(), [](const auto& a, const auto& b) {
    return a.first > b.first;
  });
  StratumLabel label;
  for (int i = 0; i < n; ++i) {
    bool tie = i > 0 && std::abs(vals[i - 1].first - vals[i].first) <=
                            1e-12 * std::max(std::abs(vals[i].first), 1e-300);
    if (tie) {
      label.groups.back().push_back(vals[i].second);
    } else {
      label.groups.push_back({vals[i].second});
    }
  }
  for (auto& g : label.groups) std::sort(g.begin(), g.end());
  return label;
}

MonitorReport monitor(const ReactionNetwork& net, const Trajectory& traj,
                      const std::vector<double>& x_star,
                      const StabilityCertificate* certificate) {
  MonitorReport rep;
  for (const auto& x : traj.states)
    rep.lyapunov_values.push_back(lyapunov(x, x_star));
  for (size_t k = 1; k < rep.lyapunov_values.size(); ++k)
    rep.max_lyapunov_increase = std::max(
        rep.max_lyapunov_increase,
        rep.lyapunov_values[k] - rep.lyapunov_values[k - 1]);

  for (const IntVec& c : conserved_quantities(net)) {
    double ref = 0;
    for (size_t j = 0; j < c.size(); ++j) ref += c[j] * traj.states.front()[j];
    double scale = std::max(std::abs(ref), 1e-300);
    for (const auto& x : traj.states) {
      double v = 0;
      for (size_t j = 0; j < c.size(); ++j) v += c[j] * x[j];
      rep.conservation_drift =
          std::max(rep.conservation_drift, std::abs(v - ref) / scale);
    }
  }

  for (const auto& x : traj.states)
    rep.stratum_labels.push_back(locate_stratum(x, x_star, net.complexes));

  if (certificate) {
    for (const auto& entry : certificate->entries) {
      if (!entry.certified || !entry.alpha) continue;
      std::vector<double> alpha = to_doubles(*entry.alpha);
      auto h_of = [&](const std::vector<double>& x) {
        double h = 0;
        for (size_t j = 0; j < x.size(); ++j) h += alpha[j] * x[j];
        return h;
      };
      for (size_t k = 1; k < traj.states.size(); ++k) {
        const auto& la = rep.stratum_labels[k - 1];
        const auto& lb = rep.stratum_labels[k];
        bool same_certified_stratum = false;
        for (const Ordering& mu : entry.orderings)
          if (la.strict_equals(mu) && lb.strict_equals(mu)) {
            same_certified_stratum = true;
            break;
          }
        if (!same_certified_stratum) continue;
        double dh = h_of(traj.states[k]) - h_of(traj.states[k - 1]);
        if (dh > 1e-8)
          rep.h_violations.push_back({traj.times[k], entry.siphon.indices, dh});
      }
    }
  }
  return rep;
}

std::string trajectory_csv(const ReactionNetwork& net, const Trajectory& traj,
                           const std::vector<double>& x_star) {
  std::ostringstream os;
  os.precision(15);
  os << "t";
  for (int j = 0; j < net.species_count(); ++j) os << ",x_" << (j + 1);
  os << ",L,stratum_label\n";
  for (size_t k = 0; k < traj.times.size(); ++k) {
    os << traj.times[k];
    for (double v : traj.states[k]) os << "," << v;
    os << "," << lyapunov(traj.states[k], x_star) << ","
       << locate_stratum(traj.states[k], x_star, net.complexes).str() << "\n";
  }
  return os.str();
}

}  // namespace crn
