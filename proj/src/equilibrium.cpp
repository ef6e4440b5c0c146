#include "crn/equilibrium.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace crn {

namespace {

// Exact kernel of the per-class balance matrix A, where
// (A psi)_i = sum_j k(j,i) psi_j - psi_i sum_j k(i,j), with psi of the
// class's first complex pinned to 1. For a strongly connected class the
// kernel is one-dimensional and strictly positive.
std::optional<RatVec> class_potential(const ReactionNetwork& net,
                                      const std::vector<int>& cls) {
  int nc = static_cast<int>(cls.size());
  std::vector<int> local(net.complex_count(), -1);
  for (int i = 0; i < nc; ++i) local[cls[i]] = i;

  std::vector<RatVec> a(nc, RatVec(nc, Rat(0)));
  for (const auto& r : net.reactions) {
    if (local[r.source] < 0 || local[r.target] < 0) continue;
    a[local[r.target]][local[r.source]] += r.rate;
    a[local[r.source]][local[r.source]] -= r.rate;
  }
  // Solve A psi = 0 with psi_0 = 1: move column 0 to the right-hand side.
  int nv = nc - 1;
  std::vector<RatVec> mat(nc, RatVec(nv + 1, Rat(0)));
  for (int i = 0; i < nc; ++i) {
    for (int j = 1; j < nc; ++j) mat[i][j - 1] = a[i][j];
    mat[i][nv] = -a[i][0];
  }
  // Exact Gaussian elimination.
  int row = 0;
  std::vector<int> pivot_col(nc, -1);
  for (int col = 0; col < nv && row < nc; ++col) {
    int sel = -1;
    for (int i = row; i < nc; ++i)
      if (mat[i][col] != 0) { sel = i; break; }
    if (sel < 0) continue;
    std::swap(mat[row], mat[sel]);
    Rat p = mat[row][col];
    for (int j = 0; j <= nv; ++j) mat[row][j] /= p;
    for (int i = 0; i < nc; ++i) {
      if (i == row || mat[i][col] == 0) continue;
      Rat f = mat[i][col];
      for (int j = 0; j <= nv; ++j) mat[i][j] -= f * mat[row][j];
    }
    pivot_col[row] = col;
    ++row;
  }
  // Inconsistent or underdetermined systems mean no unique positive kernel.
  for (int i = row; i < nc; ++i)
    if (mat[i][nv] != 0) return std::nullopt;
  RatVec psi(nc, Rat(0));
  psi[0] = 1;
  std::vector<bool> solved(nv, false);
  for (int i = 0; i < row; ++i) {
    int col = pivot_col[i];
    for (int j = 0; j < nv; ++j)
      if (j != col && mat[i][j] != 0) return std::nullopt;  // free variable
    psi[col + 1] = mat[i][nv];
    solved[col] = true;
  }
  for (int j = 0; j < nv; ++j)
    if (!solved[j]) return std::nullopt;
  for (const Rat& v : psi)
    if (v <= 0) return std::nullopt;
  return psi;
}

}  // namespace

std::optional<ComplexPotential> complex_potential(const ReactionNetwork& net) {
  if (!is_weakly_reversible(net)) return std::nullopt;
  auto lc = linkage_classes(net);
  RatVec psi(net.complex_count(), Rat(0));
  for (const auto& cls : lc.classes) {
    auto p = class_potential(net, cls);
    if (!p) return std::nullopt;
    for (size_t i = 0; i < cls.size(); ++i) psi[cls[i]] = (*p)[i];
  }
  return ComplexPotential{std::move(psi)};
}

double complex_balance_residual(const ReactionNetwork& net,
                                const std::vector<double>& x) {
  int n = net.complex_count();
  auto flux = equilibrium_flux(net, x);
  double worst = 0;
  for (int i = 0; i < n; ++i) {
    double in = 0, out = 0;
    for (int j = 0; j < n; ++j) {
      in += flux[j][i];
      out += flux[i][j];
    }
    double scale = std::max({in, out, 1e-300});
    worst = std::max(worst, std::abs(in - out) / scale);
  }
  return worst;
}

std::vector<std::vector<double>> equilibrium_flux(const ReactionNetwork& net,
                                                  const std::vector<double>& x) {
  int n = net.complex_count();
  std::vector<std::vector<double>> flux(n, std::vector<double>(n, 0.0));
  for (const auto& r : net.reactions)
    flux[r.source][r.target] =
        r.rate.get_d() * monomial(x, net.complexes[r.source].z);
  return flux;
}

std::optional<EquilibriumResult> find_equilibrium(const ReactionNetwork& net) {
  auto pot = complex_potential(net);
  if (!pot) return std::nullopt;

  int m = net.species_count();
  int n = net.complex_count();
  auto lc = linkage_classes(net);
  int l = lc.count();

  // <z_i, y> - u_{class(i)} = log psi_i, unknowns (y, u), least squares.
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, m + l);
  Eigen::VectorXd rhs(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) a(i, j) = net.complexes[i].z[j];
    a(i, m + lc.class_of[i]) = -1.0;
    rhs(i) = std::log(pot->psi[i].get_d());
  }
  Eigen::VectorXd sol = a.colPivHouseholderQr().solve(rhs);
  double lin_residual = (a * sol - rhs).lpNorm<Eigen::Infinity>();

  bool structural = deficiency(net) == 0;  // weak reversibility already holds
  if (!structural && lin_residual > 1e-9) return std::nullopt;

  EquilibriumResult res;
  res.x_star.resize(m);
  for (int j = 0; j < m; ++j) res.x_star[j] = std::exp(sol(j));
  res.residual = complex_balance_residual(net, res.x_star);
  res.complex_balanced = structural || res.residual <= 1e-9;
  res.detailed_balanced = check_detailed_balance(net, res.x_star);
  if (!res.complex_balanced) return std::nullopt;
  return res;
}

bool check_detailed_balance(const ReactionNetwork& net,
                            const std::vector<double>& x) {
  int n = net.complex_count();
  std::vector<std::vector<double>> rate(n, std::vector<double>(n, 0.0));
  for (const auto& r : net.reactions) rate[r.source][r.target] = r.rate.get_d();
  for (const auto& r : net.reactions) {
    double fwd = rate[r.source][r.target] * monomial(x, net.complexes[r.source].z);
    double bwd = rate[r.target][r.source] * monomial(x, net.complexes[r.target].z);
    double scale = std::max({fwd, bwd, 1e-300});
    if (std::abs(fwd - bwd) > 1e-9 * scale) return false;
  }
  return true;
}

std::vector<double> project_to_class(const ReactionNetwork& net,
                                     const EquilibriumResult& x_hat,
                                     const std::vector<double>& x0) {
  int m = net.species_count();
  for (double v : x0)
    if (v <= 0) throw std::invalid_argument("x0 must be strictly positive");
  auto cons = conserved_quantities(net);
  if (cons.empty()) return x_hat.x_star;  // single compatibility class

  int k = static_cast<int>(cons.size());
  Eigen::MatrixXd b(m, k);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < m; ++i) b(i, j) = static_cast<double>(cons[j][i]);
  Eigen::Map<const Eigen::VectorXd> x0v(x0.data(), m);
  Eigen::VectorXd xh(m);
  for (int i = 0; i < m; ++i) xh(i) = x_hat.x_star[i];

  // Minimize g(u) = sum_i xh_i e^{(B u)_i} - <x0, B u>, strictly convex.
  Eigen::VectorXd u = Eigen::VectorXd::Zero(k);
  auto value = [&](const Eigen::VectorXd& uu) {
    Eigen::VectorXd w = b * uu;
    double g = 0;
    for (int i = 0; i < m; ++i) g += xh(i) * std::exp(w(i)) - x0[i] * w(i);
    return g;
  };
  for (int iter = 0; iter < 200; ++iter) {
    Eigen::VectorXd w = b * u;
    Eigen::VectorXd ew(m);
    for (int i = 0; i < m; ++i) ew(i) = xh(i) * std::exp(w(i));
    Eigen::VectorXd grad = b.transpose() * (ew - x0v);
    if (grad.lpNorm<Eigen::Infinity>() <= 1e-12) {
      std::vector<double> out(m);
      for (int i = 0; i < m; ++i) out[i] = ew(i);
      return out;
    }
    Eigen::MatrixXd hess = b.transpose() * ew.asDiagonal() * b;
    Eigen::VectorXd step = hess.ldlt().solve(grad);
    double damp = 1.0;
    if (grad.lpNorm<Eigen::Infinity>() > 1e-6) {
      // Globalize far from the optimum; near it the decrease drops below
      // double rounding, so take the (locally convergent) full step.
      double g0 = value(u);
      while (damp > 1e-16 && value(u - damp * step) > g0) damp *= 0.5;
    }
    u -= damp * step;
  }
  throw std::runtime_error(
      "projection onto the compatibility class did not converge: g = " +
      std::to_string(value(u)));
}

}  // namespace crn
