#include "crn/certify.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <set>
#include <thread>

#include "json.hpp"

namespace crn {

namespace {

int thread_count(int jobs) {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* env = std::getenv("CRN_CERT_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) n = v;
  }
  return std::min(n, jobs);
}

}  // namespace

Ordering induced_cycle_ordering(const Ordering& mu, const Cycle& cycle) {
  int l = cycle.length();
  std::vector<int> pos_of;  // complex -> cycle position
  int n = static_cast<int>(mu.size());
  pos_of.assign(n, -1);
  for (int p = 0; p < l; ++p) pos_of[cycle.indices[p]] = p;
  Ordering out;
  for (int c : mu)
    if (pos_of[c] >= 0) out.push_back(pos_of[c]);
  return out;
}

PartialSumSet build_partial_sum_set(const ReactionNetwork& net,
                                    const CycleDecomposition& decomposition,
                                    const std::vector<Ordering>& m_i,
                                    const SiphonSet& siphon) {
  int m = net.species_count();
  std::set<IntVec> vectors;
  for (const auto& [cycle, weight] : decomposition.cycles) {
    (void)weight;
    int l = cycle.length();
    // s at cycle position p: z(next-in-cycle) - z(current).
    std::vector<IntVec> s(l);
    for (int p = 0; p < l; ++p) {
      const IntVec& cur = net.complexes[cycle.indices[p]].z;
      const IntVec& nxt = net.complexes[cycle.indices[(p + 1) % l]].z;
      s[p].resize(m);
      for (int j = 0; j < m; ++j) s[p][j] = nxt[j] - cur[j];
    }
    for (const Ordering& mu : m_i) {
      Ordering ord = induced_cycle_ordering(mu, cycle);
      IntVec acc(m, 0);
      for (int k = 0; k + 1 < l; ++k) {
        for (int j = 0; j < m; ++j) acc[j] += s[ord[k]][j];
        vectors.insert(acc);
      }
    }
  }
  PartialSumSet p;
  p.siphon = siphon;
  p.vectors.assign(vectors.begin(), vectors.end());
  return p;
}

namespace {

std::vector<LinearConstraint> alpha_sign_rows(int m,
                                              const std::vector<int>& siphon) {
  std::vector<bool> in_i(m, false);
  for (int i : siphon) in_i[i] = true;
  std::vector<LinearConstraint> cs;
  for (int j = 0; j < m; ++j) {
    LinearConstraint c;
    c.coeffs.assign(m, Rat(0));
    c.coeffs[j] = 1;
    c.rel = in_i[j] ? Rel::LE : Rel::EQ;
    c.rhs = in_i[j] ? Rat(-1) : Rat(0);
    cs.push_back(std::move(c));
  }
  return cs;
}

}  // namespace

FeasibilityResult check_condition1(const ReactionNetwork& net,
                                   const std::vector<Ordering>& m_i,
                                   const SiphonSet& siphon) {
  int m = net.species_count();
  auto cs = alpha_sign_rows(m, siphon.indices);
  for (const Ordering& mu : m_i) {
    for (size_t i = 0; i + 1 < mu.size(); ++i) {
      const IntVec& a = net.complexes[mu[i]].z;
      const IntVec& b = net.complexes[mu[i + 1]].z;
      RatVec d(m);
      for (int j = 0; j < m; ++j) d[j] = Rat(a[j] - b[j], 1);
      cs.push_back({std::move(d), Rel::GE, Rat(0)});
    }
  }
  return solve_feasibility(cs, m);
}

FeasibilityResult check_condition2(const PartialSumSet& p, int species_count) {
  auto cs = alpha_sign_rows(species_count, p.siphon.indices);
  for (const IntVec& v : p.vectors)
    cs.push_back({to_ratvec(v), Rel::LE, Rat(0)});
  return solve_feasibility(cs, species_count);
}

StabilityCertificate certify_global_stability(const ReactionNetwork& net,
                                              const CertifyOptions& opts) {
  StabilityCertificate cert;
  cert.stoichiometric_dimension = stoichiometric_subspace(net).dimension();

  auto eq = find_equilibrium(net);
  if (!eq) {
    cert.verdict = Verdict::NotComplexBalanced;
    return cert;
  }
  cert.equilibrium = *eq;

  if (cert.stoichiometric_dimension == 2) {
    cert.two_dimensional = true;
    cert.verdict = Verdict::GloballyStable;
    return cert;
  }

  auto flux = equilibrium_flux(net, eq->x_star);
  std::vector<CycleDecomposition> decomps;
  if (opts.exhaustive_decomposition) {
    decomps = cycle_decompositions_exhaustive(net, flux, opts.max_decompositions);
  } else {
    decomps = {cycle_decomposition(net, flux)};
  }
  cert.decomposition = decomps[0];

  int m = net.species_count();
  auto siphons = enumerate_siphons(net, opts.max_species);
  cert.entries.resize(siphons.size());

  auto certify_one = [&](size_t idx) {
    const SiphonSet& siphon = siphons[idx];
    SiphonCertificate entry;
    entry.siphon = siphon;

    if (static_cast<int>(siphon.indices.size()) == m) {
      // Trajectories of complex balanced systems stay away from the origin.
      entry.condition = CertCondition::OriginExclusion;
      entry.certified = true;
      cert.entries[idx] = std::move(entry);
      return;
    }

    auto m_i = enumerate_adjacent_orderings(net, siphon, opts.max_complexes);
    entry.ordering_count = static_cast<int>(m_i.size());
    entry.orderings = m_i;
    entry.condition1_feasible = check_condition1(net, m_i, siphon).feasible;

    bool done = false;
    for (size_t d = 0; d < decomps.size() && !done; ++d) {
      auto p = build_partial_sum_set(net, decomps[d], m_i, siphon);
      auto res = check_condition2(p, m);
      if (res.feasible) {
        entry.condition = CertCondition::Condition2;
        entry.certified = true;
        entry.alpha = res.witness;
        entry.partial_sums = std::move(p);
        entry.decomposition_index = static_cast<int>(d);
        done = true;
      } else if (d == 0) {
        entry.partial_sums = std::move(p);
        entry.farkas_witness = res.certificate;
      }
    }
    if (!done && entry.condition1_feasible) {
      auto res = check_condition1(net, m_i, siphon);
      entry.condition = CertCondition::Condition1;
      entry.certified = true;
      entry.alpha = res.witness;
    }
    cert.entries[idx] = std::move(entry);
  };

  int workers = thread_count(static_cast<int>(siphons.size()));
  if (workers <= 1) {
    for (size_t i = 0; i < siphons.size(); ++i) certify_one(i);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (size_t i = next++; i < siphons.size(); i = next++) certify_one(i);
      });
    for (auto& th : pool) th.join();
  }

  bool all_certified = true;
  for (const auto& e : cert.entries) all_certified = all_certified && e.certified;
  cert.verdict = all_certified ? Verdict::GloballyStable : Verdict::Inconclusive;
  return cert;
}

std::string condition_name(CertCondition c) {
  switch (c) {
    case CertCondition::Condition1: return "Condition1";
    case CertCondition::Condition2: return "Condition2";
    case CertCondition::TwoDimensional: return "TwoDimensional";
    case CertCondition::OriginExclusion: return "OriginExclusion";
  }
  return "?";
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::GloballyStable: return "GloballyStable";
    case Verdict::Inconclusive: return "Inconclusive";
    case Verdict::NotComplexBalanced: return "NotComplexBalanced";
  }
  return "?";
}

namespace {

uint64_t fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

nlohmann::json ratvec_json(const RatVec& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const Rat& q : v) out.push_back(rat_str(q));
  return out;
}

}  // namespace

std::string certificate_to_json(const ReactionNetwork& net,
                                const StabilityCertificate& cert) {
  nlohmann::json j;
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016llx",
                static_cast<unsigned long long>(fnv1a(serialize_network(net))));
  j["network_hash"] = hash;
  j["verdict"] = verdict_name(cert.verdict);
  j["stoichiometric_dimension"] = cert.stoichiometric_dimension;
  j["two_dimensional"] = cert.two_dimensional;
  if (cert.equilibrium) {
    j["equilibrium"] = {
        {"x_star", cert.equilibrium->x_star},
        {"residual", cert.equilibrium->residual},
        {"complex_balanced", cert.equilibrium->complex_balanced},
        {"detailed_balanced", cert.equilibrium->detailed_balanced},
    };
  }
  j["entries"] = nlohmann::json::array();
  for (const auto& e : cert.entries) {
    nlohmann::json je;
    nlohmann::json siphon = nlohmann::json::array();
    for (int i : e.siphon.indices) siphon.push_back(i + 1);
    je["siphon"] = siphon;
    je["minimal"] = e.siphon.minimal;
    je["condition"] = condition_name(e.condition);
    je["certified"] = e.certified;
    je["ordering_count"] = e.ordering_count;
    je["condition1_feasible"] = e.condition1_feasible;
    je["decomposition_index"] = e.decomposition_index;
    if (e.alpha) je["alpha"] = ratvec_json(*e.alpha);
    if (e.partial_sums) {
      nlohmann::json p = nlohmann::json::array();
      for (const IntVec& v : e.partial_sums->vectors) p.push_back(v);
      je["P"] = p;
    }
    if (e.farkas_witness) je["farkas_witness"] = ratvec_json(*e.farkas_witness);
    j["entries"].push_back(std::move(je));
  }
  j["decomposition"] = nlohmann::json::array();
  for (const auto& [cycle, w] : cert.decomposition.cycles) {
    nlohmann::json c;
    nlohmann::json idx = nlohmann::json::array();
    for (int v : cycle.indices) idx.push_back(v + 1);
    c["cycle"] = idx;
    c["weight"] = w;
    j["decomposition"].push_back(std::move(c));
  }
  return j.dump(2);
}

}  // namespace crn
