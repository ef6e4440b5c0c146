#include "crn/graph.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <set>
#include <sstream>

namespace crn {

LinkageClasses linkage_classes(const ReactionNetwork& net) {
  int n = net.complex_count();
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (const auto& r : net.reactions) parent[find(r.source)] = find(r.target);

  LinkageClasses out;
  out.class_of.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    int root = find(i);
    if (out.class_of[root] < 0) {
      out.class_of[root] = out.count();
      out.classes.emplace_back();
    }
    out.class_of[i] = out.class_of[root];
    out.classes[out.class_of[i]].push_back(i);
  }
  return out;
}

bool is_weakly_reversible(const ReactionNetwork& net) {
  int n = net.complex_count();
  std::vector<std::vector<int>> fwd(n), bwd(n);
  for (const auto& r : net.reactions) {
    fwd[r.source].push_back(r.target);
    bwd[r.target].push_back(r.source);
  }
  auto reach = [&](int from, const std::vector<std::vector<int>>& adj) {
    std::vector<bool> seen(n, false);
    std::vector<int> stack = {from};
    seen[from] = true;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : adj[v])
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
    }
    return seen;
  };
  for (const auto& cls : linkage_classes(net).classes) {
    auto down = reach(cls[0], fwd);
    auto up = reach(cls[0], bwd);
    for (int v : cls)
      if (!down[v] || !up[v]) return false;
  }
  return true;
}

int deficiency(const ReactionNetwork& net) {
  return net.complex_count() - linkage_classes(net).count() -
         stoichiometric_subspace(net).dimension();
}

namespace {

using FluxMatrix = std::vector<std::vector<double>>;

double max_flux(const FluxMatrix& flux) {
  double mx = 0;
  for (const auto& row : flux)
    for (double v : row) mx = std::max(mx, v);
  return mx;
}

void check_balanced(const ReactionNetwork& net, const FluxMatrix& flux) {
  int n = net.complex_count();
  double scale = std::max(max_flux(flux), 1e-300);
  for (int i = 0; i < n; ++i) {
    double in = 0, out = 0;
    for (int j = 0; j < n; ++j) {
      in += flux[j][i];
      out += flux[i][j];
    }
    if (std::abs(in - out) > 1e-9 * scale) {
      std::ostringstream os;
      os << "flux not balanced at complex " << (i + 1) << ": inflow " << in
         << " vs outflow " << out;
      throw std::invalid_argument(os.str());
    }
  }
}

// Lexicographically smallest directed cycle in the support, canonicalized
// to start at its smallest vertex. DFS in ascending neighbor order finds
// sequences in lexicographic order, so the first hit is the minimum.
std::vector<int> smallest_cycle(const FluxMatrix& residual, double eps) {
  int n = static_cast<int>(residual.size());
  for (int start = 0; start < n; ++start) {
    std::vector<int> path = {start};
    std::vector<bool> on_path(n, false);
    on_path[start] = true;
    std::vector<int> found;
    std::function<bool(int)> dfs = [&](int v) {
      for (int w = 0; w < n; ++w) {
        if (residual[v][w] <= eps) continue;
        if (w == start && path.size() >= 2) {
          found = path;
          found.push_back(start);
          return true;
        }
        if (w <= start || on_path[w]) continue;
        path.push_back(w);
        on_path[w] = true;
        if (dfs(w)) return true;
        path.pop_back();
        on_path[w] = false;
      }
      return false;
    };
    if (dfs(start)) return found;
  }
  return {};
}

void all_cycles_from(const FluxMatrix& residual, double eps, int start,
                     std::vector<int>& path, std::vector<bool>& on_path,
                     std::vector<std::vector<int>>& out) {
  int n = static_cast<int>(residual.size());
  int v = path.back();
  for (int w = 0; w < n; ++w) {
    if (residual[v][w] <= eps) continue;
    if (w == start && path.size() >= 2) {
      auto cyc = path;
      cyc.push_back(start);
      out.push_back(std::move(cyc));
      continue;
    }
    if (w <= start || on_path[w]) continue;
    path.push_back(w);
    on_path[w] = true;
    all_cycles_from(residual, eps, start, path, on_path, out);
    path.pop_back();
    on_path[w] = false;
  }
}

std::vector<std::vector<int>> all_cycles(const FluxMatrix& residual, double eps) {
  int n = static_cast<int>(residual.size());
  std::vector<std::vector<int>> out;
  for (int start = 0; start < n; ++start) {
    std::vector<int> path = {start};
    std::vector<bool> on_path(n, false);
    on_path[start] = true;
    all_cycles_from(residual, eps, start, path, on_path, out);
  }
  std::sort(out.begin(), out.end());
  return out;
}

double subtract_cycle(FluxMatrix& residual, const std::vector<int>& cyc,
                      double eps) {
  double w = std::numeric_limits<double>::infinity();
  for (size_t j = 0; j + 1 < cyc.size(); ++j)
    w = std::min(w, residual[cyc[j]][cyc[j + 1]]);
  for (size_t j = 0; j + 1 < cyc.size(); ++j) {
    double& e = residual[cyc[j]][cyc[j + 1]];
    e -= w;
    if (e <= eps) e = 0;
  }
  return w;
}

}  // namespace

CycleDecomposition cycle_decomposition(const ReactionNetwork& net,
                                       const FluxMatrix& flux) {
  check_balanced(net, flux);
  double eps = 1e-9 * std::max(max_flux(flux), 1e-300);
  FluxMatrix residual = flux;
  for (auto& row : residual)
    for (double& v : row)
      if (v <= eps) v = 0;

  CycleDecomposition out;
  for (;;) {
    auto cyc = smallest_cycle(residual, eps);
    if (cyc.empty()) break;
    double w = subtract_cycle(residual, cyc, eps);
    out.cycles.push_back({Cycle{cyc}, w});
  }
  for (const auto& row : residual)
    for (double v : row)
      if (v > eps)
        throw std::invalid_argument("flux support left acyclic residual");
  return out;
}

std::vector<CycleDecomposition> cycle_decompositions_exhaustive(
    const ReactionNetwork& net, const FluxMatrix& flux, int max_count) {
  check_balanced(net, flux);
  double eps = 1e-9 * std::max(max_flux(flux), 1e-300);
  std::vector<CycleDecomposition> results;
  std::set<std::string> seen;

  std::function<void(FluxMatrix, CycleDecomposition)> go =
      [&](FluxMatrix residual, CycleDecomposition acc) {
        if (static_cast<int>(results.size()) >= max_count) return;
        auto choices = all_cycles(residual, eps);
        if (choices.empty()) {
          for (const auto& row : residual)
            for (double v : row)
              if (v > eps) return;  // dead branch, unremovable residue
          std::ostringstream key;
          for (const auto& [cyc, w] : acc.cycles) {
            for (int v : cyc.indices) key << v << ",";
            key << std::llround(w / eps) << ";";
          }
          if (seen.insert(key.str()).second) results.push_back(std::move(acc));
          return;
        }
        for (const auto& cyc : choices) {
          FluxMatrix next = residual;
          double w = subtract_cycle(next, cyc, eps);
          auto acc2 = acc;
          acc2.cycles.push_back({Cycle{cyc}, w});
          go(std::move(next), std::move(acc2));
          if (static_cast<int>(results.size()) >= max_count) return;
        }
      };
  go(flux, {});
  return results;
}

}  // namespace crn
