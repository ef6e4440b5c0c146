#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <optional>
#include <random>

#include "crn/certify.hpp"
#include "crn/simulate.hpp"

namespace py = pybind11;
using namespace crn;

namespace {

CertifyOptions make_options(bool exhaustive, int max_species,
                            int max_complexes) {
  CertifyOptions opts;
  opts.exhaustive_decomposition = exhaustive;
  opts.max_species = max_species;
  opts.max_complexes = max_complexes;
  return opts;
}

py::dict analyze(const std::string& text) {
  ReactionNetwork net = parse_network(text);
  py::dict d;
  d["species"] = net.species.names;
  std::vector<std::string> complexes;
  for (int i = 0; i < net.complex_count(); ++i)
    complexes.push_back(net.complex_str(i));
  d["complexes"] = complexes;
  d["reaction_count"] = net.reaction_count();
  d["linkage_classes"] = linkage_classes(net).count();
  d["weakly_reversible"] = is_weakly_reversible(net);
  d["deficiency"] = deficiency(net);
  d["stoichiometric_dimension"] = stoichiometric_subspace(net).dimension();
  d["conserved_quantities"] = conserved_quantities(net);
  auto eq = find_equilibrium(net);
  d["complex_balanced"] = eq.has_value();
  if (eq) {
    d["equilibrium"] = eq->x_star;
    d["equilibrium_residual"] = eq->residual;
    d["detailed_balanced"] = eq->detailed_balanced;
  } else {
    d["equilibrium"] = py::none();
  }
  return d;
}

py::list siphons(const std::string& text, int max_species) {
  ReactionNetwork net = parse_network(text);
  py::list out;
  for (const SiphonSet& s : enumerate_siphons(net, max_species)) {
    std::vector<int> one_based;
    for (int i : s.indices) one_based.push_back(i + 1);
    py::dict d;
    d["species"] = one_based;
    d["minimal"] = s.minimal;
    out.append(d);
  }
  return out;
}

py::list strata(const std::string& text, int max_complexes) {
  ReactionNetwork net = parse_network(text);
  py::list out;
  for (const StratumRecord& r : enumerate_nonempty_strata(net, max_complexes)) {
    std::vector<int> one_based;
    for (int c : r.ordering) one_based.push_back(c + 1);
    out.append(one_based);
  }
  return out;
}

std::string certify_json(const std::string& text, bool exhaustive,
                         int max_species, int max_complexes) {
  ReactionNetwork net = parse_network(text);
  auto cert = certify_global_stability(
      net, make_options(exhaustive, max_species, max_complexes));
  return certificate_to_json(net, cert);
}

py::dict simulate(const std::string& text, double t_end, double tol,
                  std::optional<std::vector<double>> x0_opt, unsigned seed,
                  int samples) {
  ReactionNetwork net = parse_network(text);
  auto cert = certify_global_stability(net);
  if (!cert.equilibrium)
    throw std::invalid_argument("no complex balanced equilibrium");

  std::vector<double> x0;
  if (x0_opt) {
    x0 = *x0_opt;
  } else {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(std::log(0.1), std::log(10.0));
    for (int j = 0; j < net.species_count(); ++j) x0.push_back(std::exp(u(rng)));
  }

  std::vector<double> x_star = project_to_class(net, *cert.equilibrium, x0);
  Trajectory traj = integrate(net, x0, t_end, tol, samples);
  MonitorReport rep = monitor(net, traj, x_star, &cert);

  py::dict d;
  d["verdict"] = verdict_name(cert.verdict);
  d["x0"] = x0;
  d["x_star"] = x_star;
  d["times"] = traj.times;
  d["states"] = traj.states;
  d["lyapunov"] = rep.lyapunov_values;
  d["max_lyapunov_increase"] = rep.max_lyapunov_increase;
  d["conservation_drift"] = rep.conservation_drift;
  d["stiff_abort"] = traj.stiff_abort;
  std::vector<std::string> labels;
  for (const auto& l : rep.stratum_labels) labels.push_back(l.str());
  d["stratum_labels"] = labels;
  py::list violations;
  for (const auto& v : rep.h_violations) {
    std::vector<int> one_based;
    for (int i : v.siphon) one_based.push_back(i + 1);
    py::dict pv;
    pv["t"] = v.time;
    pv["siphon"] = one_based;
    pv["increase"] = v.increase;
    violations.append(pv);
  }
  d["h_violations"] = violations;
  return d;
}

}  // namespace

PYBIND11_MODULE(_crncert, m) {
  m.doc() = "certification toolkit for mass-action reaction networks";

  py::register_exception<ParseError>(m, "NetworkParseError", PyExc_ValueError);

  m.def("analyze", &analyze, py::arg("text"),
        "structural report for a network description");
  m.def("siphons", &siphons, py::arg("text"),
        py::arg("max_species") = kMaxSiphonSpecies,
        "semi-locking sets as 1-based species index lists");
  m.def("strata", &strata, py::arg("text"),
        py::arg("max_complexes") = kMaxOrderingComplexes,
        "nonempty strata as 1-based complex orderings");
  m.def("certify_json", &certify_json, py::arg("text"),
        py::arg("exhaustive_decomposition") = false,
        py::arg("max_species") = kMaxSiphonSpecies,
        py::arg("max_complexes") = kMaxOrderingComplexes,
        "stability certificate as a JSON string");
  m.def("simulate", &simulate, py::arg("text"), py::arg("t_end") = 100.0,
        py::arg("tol") = 1e-8, py::arg("x0") = py::none(),
        py::arg("seed") = 0u, py::arg("samples") = 1000,
        "integrate the mass-action dynamics and validate the certificate");
  m.def("roundtrip", [](const std::string& text) {
    return serialize_network(parse_network(text));
  }, py::arg("text"), "canonical text form of a parsed network");
}
