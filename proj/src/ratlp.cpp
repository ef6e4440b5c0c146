#include "crn/ratlp.hpp"

#include <cassert>

namespace crn {
namespace {

// Exact tableau simplex for: max c.v  s.t.  A v <= b, v >= 0.
// Bland's rule throughout, so degenerate pivots cannot cycle.
struct LpOutcome {
  enum Status { Optimal, Infeasible, Unbounded } status = Infeasible;
  RatVec primal;     // length N
  RatVec dual;       // length M; Farkas multipliers when Infeasible
  Rat objective = 0;
};

class Simplex {
 public:
  Simplex(std::vector<RatVec> a, RatVec b, RatVec c)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
    m_ = static_cast<int>(a_.size());
    n_ = m_ ? static_cast<int>(a_[0].size()) : static_cast<int>(c_.size());
    aux_ = n_ + m_;  // phase-1 variable column
    cols_ = aux_ + 1;
    tab_.assign(m_, RatVec(cols_, Rat(0)));
    basis_.resize(m_);
    active_.assign(m_, true);
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < n_; ++j) tab_[i][j] = a_[i][j];
      tab_[i][n_ + i] = 1;
      tab_[i][aux_] = -1;
      basis_[i] = n_ + i;
    }
    rhs_ = b_;
  }

  LpOutcome run() {
    LpOutcome out;
    if (!phase1()) {
      out.status = LpOutcome::Infeasible;
      out.dual = extract_dual();
      return out;
    }
    // Phase 2 objective: reduced costs of the true objective.
    allowed_aux_ = false;
    set_objective(c_);
    if (!iterate()) {
      out.status = LpOutcome::Unbounded;
      return out;
    }
    out.status = LpOutcome::Optimal;
    out.primal.assign(n_, Rat(0));
    for (int i = 0; i < m_; ++i)
      if (active_[i] && basis_[i] < n_) out.primal[basis_[i]] = rhs_[i];
    out.dual = extract_dual();
    out.objective = objval_;
    return out;
  }

 private:
  // Returns false when the constraint system A v <= b, v >= 0 is empty;
  // the phase-1 duals then form a Farkas certificate.
  bool phase1() {
    int worst = -1;
    for (int i = 0; i < m_; ++i)
      if (b_[i] < 0 && (worst < 0 || b_[i] < b_[worst])) worst = i;
    if (worst < 0) {
      allowed_aux_ = false;
      set_objective(c_zero());
      return true;
    }
    pivot(worst, aux_);
    RatVec caux(cols_ > 0 ? n_ : 0, Rat(0));
    caux.assign(n_, Rat(0));
    allowed_aux_ = true;
    set_objective(caux, /*aux_cost=*/Rat(-1));
    bool bounded = iterate();
    assert(bounded);  // phase-1 objective is bounded above by 0
    (void)bounded;
    if (objval_ < 0) return false;
    // Drive the auxiliary variable out of the basis if it sits there at 0.
    for (int i = 0; i < m_; ++i) {
      if (!active_[i] || basis_[i] != aux_) continue;
      int col = -1;
      for (int j = 0; j < aux_; ++j)
        if (tab_[i][j] != 0) { col = j; break; }
      if (col >= 0) {
        pivot(i, col);
      } else {
        active_[i] = false;  // redundant all-zero row
      }
    }
    return true;
  }

  RatVec c_zero() const { return RatVec(n_, Rat(0)); }

  void set_objective(const RatVec& c, Rat aux_cost = Rat(0)) {
    obj_.assign(cols_, Rat(0));
    for (int j = 0; j < n_; ++j) obj_[j] = c[j];
    obj_[aux_] = aux_cost;
    objval_ = 0;
    // Reduce against the current basis.
    for (int i = 0; i < m_; ++i) {
      if (!active_[i]) continue;
      Rat cb = cost_of(basis_[i], c, aux_cost);
      if (cb == 0) continue;
      for (int j = 0; j < cols_; ++j) obj_[j] -= cb * tab_[i][j];
      objval_ += cb * rhs_[i];
    }
  }

  Rat cost_of(int var, const RatVec& c, const Rat& aux_cost) const {
    if (var < n_) return c[var];
    if (var == aux_) return aux_cost;
    return 0;
  }

  bool iterate() {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < cols_; ++j) {
        if (j == aux_ && !allowed_aux_) continue;
        if (obj_[j] > 0) { enter = j; break; }  // Bland: smallest index
      }
      if (enter < 0) return true;
      int leave = -1;
      Rat best;
      for (int i = 0; i < m_; ++i) {
        if (!active_[i] || tab_[i][enter] <= 0) continue;
        Rat ratio = rhs_[i] / tab_[i][enter];
        if (leave < 0 || ratio < best ||
            (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }

  void pivot(int row, int col) {
    Rat p = tab_[row][col];
    assert(p != 0);
    for (int j = 0; j < cols_; ++j) tab_[row][j] /= p;
    rhs_[row] /= p;
    for (int i = 0; i < m_; ++i) {
      if (i == row || !active_[i]) continue;
      Rat f = tab_[i][col];
      if (f == 0) continue;
      for (int j = 0; j < cols_; ++j) tab_[i][j] -= f * tab_[row][j];
      rhs_[i] -= f * rhs_[row];
    }
    if (!obj_.empty()) {
      Rat f = obj_[col];
      if (f != 0) {
        for (int j = 0; j < cols_; ++j) obj_[j] -= f * tab_[row][j];
        objval_ += f * rhs_[row];
      }
    }
    basis_[row] = col;
  }

  RatVec extract_dual() const {
    RatVec y(m_, Rat(0));
    for (int i = 0; i < m_; ++i) y[i] = -obj_[n_ + i];
    return y;
  }

  std::vector<RatVec> a_;
  RatVec b_, c_;
  std::vector<RatVec> tab_;
  RatVec rhs_, obj_;
  std::vector<int> basis_;
  std::vector<bool> active_;
  Rat objval_ = 0;
  int m_ = 0, n_ = 0, aux_ = 0, cols_ = 0;
  bool allowed_aux_ = false;
};

// Constraint normalized to  a.x >= b  (possibly strict), tagged with the
// input constraint it came from and the sign it contributes to a
// certificate on that constraint.
struct Row {
  RatVec a;
  Rat b;
  bool strict = false;
  int origin = -1;
  int sign = 1;
};

std::vector<Row> normalize(const std::vector<LinearConstraint>& cs, int dim) {
  std::vector<Row> rows;
  for (size_t k = 0; k < cs.size(); ++k) {
    const auto& c = cs[k];
    if (static_cast<int>(c.coeffs.size()) != dim)
      throw std::invalid_argument("constraint dimension mismatch");
    RatVec neg(c.coeffs.size());
    for (size_t j = 0; j < c.coeffs.size(); ++j) neg[j] = -c.coeffs[j];
    switch (c.rel) {
      case Rel::GE:
        rows.push_back({c.coeffs, c.rhs, false, static_cast<int>(k), 1});
        break;
      case Rel::GT:
        rows.push_back({c.coeffs, c.rhs, true, static_cast<int>(k), 1});
        break;
      case Rel::LE:
        rows.push_back({neg, -c.rhs, false, static_cast<int>(k), 1});
        break;
      case Rel::LT:
        rows.push_back({neg, -c.rhs, true, static_cast<int>(k), 1});
        break;
      case Rel::EQ:
        rows.push_back({c.coeffs, c.rhs, false, static_cast<int>(k), 1});
        rows.push_back({neg, -c.rhs, false, static_cast<int>(k), -1});
        break;
    }
  }
  return rows;
}

}  // namespace

FeasibilityResult solve_feasibility(const std::vector<LinearConstraint>& constraints,
                                    int dim) {
  if (dim < 0) throw std::invalid_argument("negative dimension");
  FeasibilityResult res;
  if (constraints.empty()) {
    res.feasible = true;
    res.witness.assign(dim, Rat(0));
    return res;
  }
  auto rows = normalize(constraints, dim);
  bool has_strict = false;
  bool homogeneous = true;
  for (const auto& r : rows) {
    has_strict = has_strict || r.strict;
    homogeneous = homogeneous && r.b == 0;
  }

  // Variables: x split into p - q; optional margin t = tp - tq.
  int nvar = 2 * dim + (has_strict ? 2 : 0);
  std::vector<RatVec> a;
  RatVec b;
  for (const auto& r : rows) {
    // a.x - e t >= b  becomes  -a.p + a.q + e tp - e tq <= -b
    RatVec lp(nvar, Rat(0));
    for (int j = 0; j < dim; ++j) {
      lp[j] = -r.a[j];
      lp[dim + j] = r.a[j];
    }
    if (has_strict && r.strict) {
      lp[2 * dim] = 1;
      lp[2 * dim + 1] = -1;
    }
    a.push_back(std::move(lp));
    b.push_back(-r.b);
  }
  if (has_strict) {
    RatVec bound(nvar, Rat(0));
    bound[2 * dim] = 1;
    bound[2 * dim + 1] = -1;
    a.push_back(std::move(bound));
    b.push_back(Rat(1));
  }
  RatVec c(nvar, Rat(0));
  if (has_strict) {
    c[2 * dim] = 1;
    c[2 * dim + 1] = -1;
  }

  LpOutcome lp = Simplex(a, b, c).run();
  if (lp.status == LpOutcome::Unbounded)
    throw std::logic_error("margin objective cannot be unbounded");

  auto build_certificate = [&](const RatVec& dual) {
    RatVec cert(constraints.size(), Rat(0));
    for (size_t i = 0; i < rows.size(); ++i)
      cert[rows[i].origin] += Rat(rows[i].sign) * dual[i];
    res.certificate = normalize_max_abs(std::move(cert));
  };

  if (lp.status == LpOutcome::Infeasible ||
      (has_strict && lp.objective <= 0)) {
    res.feasible = false;
    build_certificate(lp.dual);
    return res;
  }

  res.feasible = true;
  res.witness.assign(dim, Rat(0));
  for (int j = 0; j < dim; ++j) res.witness[j] = lp.primal[j] - lp.primal[dim + j];
  if (homogeneous) res.witness = normalize_max_abs(std::move(res.witness));
  return res;
}

FeasibilityResult solve_strict_direction(const std::vector<RatVec>& directions) {
  if (directions.empty()) {
    FeasibilityResult res;
    res.feasible = true;
    return res;
  }
  int dim = static_cast<int>(directions[0].size());
  for (size_t i = 0; i < directions.size(); ++i) {
    if (static_cast<int>(directions[i].size()) != dim)
      throw std::invalid_argument("direction dimension mismatch");
    bool zero = true;
    for (const Rat& q : directions[i]) zero = zero && q == 0;
    if (zero) {
      // <0, y> > 0 is unsatisfiable on its own.
      FeasibilityResult res;
      res.feasible = false;
      res.certificate.assign(directions.size(), Rat(0));
      res.certificate[i] = 1;
      return res;
    }
  }
  std::vector<LinearConstraint> cs;
  for (const auto& d : directions) cs.push_back({d, Rel::GT, Rat(0)});
  return solve_feasibility(cs, dim);
}

bool satisfies_all(const std::vector<LinearConstraint>& constraints,
                   const RatVec& witness) {
  for (const auto& c : constraints) {
    if (c.coeffs.size() != witness.size()) return false;
    Rat lhs = 0;
    for (size_t j = 0; j < witness.size(); ++j) lhs += c.coeffs[j] * witness[j];
    switch (c.rel) {
      case Rel::LT: if (!(lhs < c.rhs)) return false; break;
      case Rel::LE: if (!(lhs <= c.rhs)) return false; break;
      case Rel::EQ: if (!(lhs == c.rhs)) return false; break;
      case Rel::GE: if (!(lhs >= c.rhs)) return false; break;
      case Rel::GT: if (!(lhs > c.rhs)) return false; break;
    }
  }
  return true;
}

bool certificate_valid(const std::vector<LinearConstraint>& constraints,
                       const RatVec& certificate) {
  if (certificate.size() != constraints.size()) return false;
  size_t dim = constraints.empty() ? 0 : constraints[0].coeffs.size();
  RatVec combo(dim, Rat(0));
  Rat rhs = 0;
  Rat strict_weight = 0;
  for (size_t k = 0; k < constraints.size(); ++k) {
    const auto& c = constraints[k];
    const Rat& y = certificate[k];
    if (c.rel != Rel::EQ && y < 0) return false;
    // Orient every inequality as >= before combining.
    Rat s = (c.rel == Rel::LE || c.rel == Rel::LT) ? Rat(-1) : Rat(1);
    for (size_t j = 0; j < dim; ++j) combo[j] += y * s * c.coeffs[j];
    rhs += y * s * c.rhs;
    if (c.rel == Rel::GT || c.rel == Rel::LT) strict_weight += y;
  }
  for (const Rat& q : combo)
    if (q != 0) return false;
  return rhs > 0 || (rhs == 0 && strict_weight > 0);
}

}  // namespace crn
