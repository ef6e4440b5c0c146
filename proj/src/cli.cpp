#include "crn/cli.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include "crn/certify.hpp"
#include "crn/simulate.hpp"
#include "json.hpp"

namespace crn::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open input file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string species_set_str(const ReactionNetwork& net,
                            const std::vector<int>& indices) {
  std::string out = "{";
  for (size_t i = 0; i < indices.size(); ++i) {
    if (i) out += ", ";
    out += net.species.names[indices[i]];
  }
  return out + "}";
}

std::string ordering_str(const Ordering& mu) {
  std::string out = "[";
  for (size_t i = 0; i < mu.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(mu[i] + 1);
  }
  return out + "]";
}

std::string intvec_str(const IntVec& v) {
  std::string out = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(v[i]);
  }
  return out + ")";
}

std::string cycle_str(const Cycle& c) {
  std::string out = "{";
  for (size_t i = 0; i < c.indices.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(c.indices[i] + 1);
  }
  return out + "}";
}

std::string doubles_str(const std::vector<double>& v) {
  std::ostringstream os;
  os.precision(12);
  os << "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << v[i];
  }
  os << ")";
  return os.str();
}

nlohmann::json ordering_json(const Ordering& mu) {
  nlohmann::json out = nlohmann::json::array();
  for (int c : mu) out.push_back(c + 1);
  return out;
}

int cmd_analyze(const ReactionNetwork& net, const RunConfig& config,
                std::ostream& out) {
  auto lc = linkage_classes(net);
  bool wr = is_weakly_reversible(net);
  int def = deficiency(net);
  int s = stoichiometric_subspace(net).dimension();
  auto conserved = conserved_quantities(net);
  auto eq = find_equilibrium(net);

  if (config.format == "json") {
    nlohmann::json j;
    j["species"] = net.species.names;
    nlohmann::json complexes = nlohmann::json::array();
    for (int i = 0; i < net.complex_count(); ++i)
      complexes.push_back(net.complex_str(i));
    j["complexes"] = complexes;
    j["reaction_count"] = net.reaction_count();
    j["linkage_classes"] = lc.count();
    j["weakly_reversible"] = wr;
    j["deficiency"] = def;
    j["stoichiometric_dimension"] = s;
    j["conserved_quantities"] = conserved;
    j["complex_balanced"] = eq.has_value();
    if (eq) {
      j["equilibrium"] = eq->x_star;
      j["equilibrium_residual"] = eq->residual;
      j["detailed_balanced"] = eq->detailed_balanced;
    }
    out << j.dump(2) << "\n";
    return kExitStable;
  }

  out << "species (" << net.species_count() << "):";
  for (const auto& name : net.species.names) out << " " << name;
  out << "\ncomplexes (" << net.complex_count() << "):\n";
  for (int i = 0; i < net.complex_count(); ++i)
    out << "  " << (i + 1) << ": " << net.complex_str(i) << "\n";
  out << "reactions: " << net.reaction_count() << "\n";
  out << "linkage classes: " << lc.count() << "\n";
  out << "weakly reversible: " << (wr ? "yes" : "no") << "\n";
  out << "deficiency: " << def << "\n";
  out << "stoichiometric subspace dimension: " << s << "\n";
  out << "conserved quantities: " << conserved.size() << "\n";
  for (const IntVec& c : conserved) out << "  " << intvec_str(c) << "\n";
  if (eq) {
    out << "complex balanced: yes"
        << (eq->detailed_balanced ? " (detailed balanced)" : "") << "\n";
    out << "equilibrium x* = " << doubles_str(eq->x_star)
        << "  residual = " << eq->residual << "\n";
  } else {
    out << "complex balanced: no\n";
  }
  return kExitStable;
}

int cmd_siphons(const ReactionNetwork& net, const RunConfig& config,
                std::ostream& out) {
  auto siphons = enumerate_siphons(net, config.max_species);
  if (config.format == "json") {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& s : siphons) {
      nlohmann::json idx = nlohmann::json::array();
      for (int i : s.indices) idx.push_back(i + 1);
      j.push_back({{"species", idx}, {"minimal", s.minimal}});
    }
    out << j.dump(2) << "\n";
    return kExitStable;
  }
  out << "semi-locking sets: " << siphons.size() << "\n";
  for (const auto& s : siphons)
    out << "  " << species_set_str(net, s.indices)
        << (s.minimal ? "  (minimal)" : "") << "\n";
  return kExitStable;
}

int cmd_strata(const ReactionNetwork& net, const RunConfig& config,
               std::ostream& out) {
  auto records = enumerate_nonempty_strata(net, config.max_complexes);
  if (config.format == "json") {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : records)
      j.push_back({{"ordering", ordering_json(r.ordering)},
                   {"witness_y", [&] {
                      nlohmann::json w = nlohmann::json::array();
                      for (const Rat& q : r.witness_y) w.push_back(rat_str(q));
                      return w;
                    }()}});
    out << j.dump(2) << "\n";
    return kExitStable;
  }
  out << "nonempty strata: " << records.size() << " of ";
  long total = 1;
  for (int i = 2; i <= net.complex_count(); ++i) total *= i;
  out << total << " orderings\n";
  for (const auto& r : records) out << "  " << ordering_str(r.ordering) << "\n";
  return kExitStable;
}

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::GloballyStable: return kExitStable;
    case Verdict::Inconclusive: return kExitInconclusive;
    case Verdict::NotComplexBalanced: return kExitNotComplexBalanced;
  }
  return kExitNumerical;
}

StabilityCertificate run_certify(const ReactionNetwork& net,
                                 const RunConfig& config) {
  CertifyOptions opts;
  opts.exhaustive_decomposition = config.exhaustive_decomposition;
  opts.max_species = config.max_species;
  opts.max_complexes = config.max_complexes;
  return certify_global_stability(net, opts);
}

int cmd_certify(const ReactionNetwork& net, const RunConfig& config,
                std::ostream& out) {
  auto cert = run_certify(net, config);
  if (config.format == "json") {
    out << certificate_to_json(net, cert) << "\n";
    return verdict_exit(cert.verdict);
  }

  if (cert.verdict == Verdict::NotComplexBalanced) {
    out << "verdict: NOT COMPLEX BALANCED\n"
        << "no positive complex balanced equilibrium exists for these rates\n";
    return kExitNotComplexBalanced;
  }
  out << "equilibrium x* = " << doubles_str(cert.equilibrium->x_star)
      << "  residual = " << cert.equilibrium->residual << "\n";
  if (cert.two_dimensional) {
    out << "verdict: GLOBALLY STABLE (two-dimensional stoichiometric "
           "subspace)\n";
    return kExitStable;
  }
  out << "cycle decomposition:\n";
  for (const auto& [cycle, w] : cert.decomposition.cycles)
    out << "  " << cycle_str(cycle) << "  weight " << w << "\n";
  for (const auto& e : cert.entries) {
    out << "siphon " << species_set_str(net, e.siphon.indices);
    if (e.condition == CertCondition::OriginExclusion) {
      out << "  certified (all species: origin excluded)\n";
      continue;
    }
    out << "  |M_I| = " << e.ordering_count;
    if (e.partial_sums) out << "  |P| = " << e.partial_sums->vectors.size();
    if (e.certified) {
      out << "  certified by " << condition_name(e.condition)
          << "  alpha = " << ratvec_str(*e.alpha) << "\n";
    } else {
      out << "  NOT certified";
      if (e.farkas_witness)
        out << "  infeasibility witness = " << ratvec_str(*e.farkas_witness);
      out << "\n";
    }
  }
  out << "verdict: "
      << (cert.verdict == Verdict::GloballyStable ? "GLOBALLY STABLE"
                                                  : "INCONCLUSIVE")
      << "\n";
  return verdict_exit(cert.verdict);
}

int cmd_simulate(const ReactionNetwork& net, const RunConfig& config,
                 std::ostream& out, std::ostream& err) {
  auto cert = run_certify(net, config);
  if (!cert.equilibrium) {
    err << "error: no complex balanced equilibrium; nothing to validate\n";
    return kExitNotComplexBalanced;
  }

  std::vector<double> x0 = config.x0;
  if (x0.empty()) {
    std::mt19937 rng(config.seed);
    std::uniform_real_distribution<double> u(std::log(0.1), std::log(10.0));
    for (int j = 0; j < net.species_count(); ++j) x0.push_back(std::exp(u(rng)));
  }
  if (static_cast<int>(x0.size()) != net.species_count())
    throw std::invalid_argument("x0 has " + std::to_string(x0.size()) +
                                " entries, expected " +
                                std::to_string(net.species_count()));
  for (double v : x0)
    if (!(v > 0)) throw std::invalid_argument("x0 must be strictly positive");

  std::vector<double> x_star = project_to_class(net, *cert.equilibrium, x0);
  Trajectory traj = integrate(net, x0, config.t_end, config.tol);
  MonitorReport rep = monitor(net, traj, x_star, &cert);

  std::string prefix = config.output_prefix;
  if (prefix.empty())
    prefix = std::filesystem::path(config.input_path).stem().string();
  std::string csv_path = prefix + ".trajectory.csv";
  std::string mon_path = prefix + ".monitor.json";
  {
    std::ofstream csv(csv_path);
    csv << trajectory_csv(net, traj, x_star);
  }
  {
    nlohmann::json j;
    j["x0"] = x0;
    j["x_star"] = x_star;
    j["t_reached"] = traj.times.back();
    j["accepted_steps"] = traj.accepted_steps;
    j["rejected_steps"] = traj.rejected_steps;
    j["stiff_abort"] = traj.stiff_abort;
    j["lyapunov_initial"] = rep.lyapunov_values.front();
    j["lyapunov_final"] = rep.lyapunov_values.back();
    j["max_lyapunov_increase"] = rep.max_lyapunov_increase;
    j["conservation_drift"] = rep.conservation_drift;
    j["final_stratum"] = rep.stratum_labels.back().str();
    nlohmann::json viol = nlohmann::json::array();
    for (const auto& v : rep.h_violations) {
      nlohmann::json sv = nlohmann::json::array();
      for (int i : v.siphon) sv.push_back(i + 1);
      viol.push_back({{"t", v.time}, {"siphon", sv}, {"increase", v.increase}});
    }
    j["h_violations"] = viol;
    std::ofstream mon(mon_path);
    mon << j.dump(2) << "\n";
  }

  if (config.format == "json") {
    nlohmann::json j;
    j["trajectory_csv"] = csv_path;
    j["monitor_json"] = mon_path;
    j["verdict"] = verdict_name(cert.verdict);
    j["stiff_abort"] = traj.stiff_abort;
    j["final_state"] = traj.states.back();
    j["lyapunov_final"] = rep.lyapunov_values.back();
    j["max_lyapunov_increase"] = rep.max_lyapunov_increase;
    j["h_violation_count"] = rep.h_violations.size();
    out << j.dump(2) << "\n";
  } else {
    out << "x0 = " << doubles_str(x0) << "\n";
    out << "class equilibrium x* = " << doubles_str(x_star) << "\n";
    out << "integrated to t = " << traj.times.back() << " ("
        << traj.accepted_steps << " accepted, " << traj.rejected_steps
        << " rejected steps)\n";
    out << "final state = " << doubles_str(traj.states.back()) << "\n";
    out << "Lyapunov: " << rep.lyapunov_values.front() << " -> "
        << rep.lyapunov_values.back()
        << "  max increase = " << rep.max_lyapunov_increase << "\n";
    out << "conservation drift: " << rep.conservation_drift << "\n";
    out << "final stratum: " << rep.stratum_labels.back().str() << "\n";
    out << "H monotonicity violations: " << rep.h_violations.size() << "\n";
    out << "wrote " << csv_path << " and " << mon_path << "\n";
  }
  if (traj.stiff_abort) {
    err << "error: step size underflow at t = " << traj.times.back()
        << "; partial trajectory written\n";
    return kExitNumerical;
  }
  return kExitStable;
}

}  // namespace

int run_command(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    ReactionNetwork net = parse_network(read_file(config.input_path));
    if (config.command == "analyze") return cmd_analyze(net, config, out);
    if (config.command == "siphons") return cmd_siphons(net, config, out);
    if (config.command == "strata") return cmd_strata(net, config, out);
    if (config.command == "certify") return cmd_certify(net, config, out);
    if (config.command == "simulate") return cmd_simulate(net, config, out, err);
    err << "error: unknown command '" << config.command << "'\n";
    return kExitInput;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitScale;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace cli
