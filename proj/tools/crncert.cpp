#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "crn/cli.hpp"

namespace {

std::vector<double> parse_x0(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t pos = 0;
    double v = std::stod(item, &pos);
    while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos])))
      ++pos;
    if (pos != item.size()) throw std::invalid_argument("bad x0 entry: " + item);
    out.push_back(v);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certification and simulation for mass-action reaction networks"};
  app.require_subcommand(1);

  crn::cli::RunConfig config;
  std::string x0_text;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-i,--input", config.input_path, "network description file")
        ->required();
    sub->add_option("--format", config.format, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    sub->add_option("--max-species", config.max_species,
                    "species cap for semi-locking set enumeration")
        ->capture_default_str();
    sub->add_option("--max-complexes", config.max_complexes,
                    "complex cap for ordering enumeration")
        ->capture_default_str();
    return sub;
  };

  add_common(app.add_subcommand("analyze", "structural network report"));
  add_common(app.add_subcommand("siphons", "enumerate semi-locking sets"));
  add_common(app.add_subcommand("strata", "enumerate nonempty strata"));
  auto* certify =
      add_common(app.add_subcommand("certify", "decide global stability"));
  certify->add_flag("--exhaustive-decomposition",
                    config.exhaustive_decomposition,
                    "try alternative cycle decompositions");
  auto* simulate = add_common(
      app.add_subcommand("simulate", "integrate and validate a certificate"));
  simulate->add_option("--t-end", config.t_end, "integration horizon")
      ->capture_default_str();
  simulate->add_option("--tol", config.tol, "per-step relative error tolerance")
      ->capture_default_str();
  simulate->add_option("--x0", x0_text,
                       "initial state, comma separated (default: random)");
  simulate->add_option("--seed", config.seed, "RNG seed for the random x0")
      ->capture_default_str();
  simulate->add_option("--output-prefix", config.output_prefix,
                       "prefix for trajectory/monitor files");
  simulate->add_flag("--exhaustive-decomposition",
                     config.exhaustive_decomposition,
                     "try alternative cycle decompositions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : crn::cli::kExitInput;
  }

  config.command = app.get_subcommands().front()->get_name();
  if (!x0_text.empty()) {
    try {
      config.x0 = parse_x0(x0_text);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return crn::cli::kExitInput;
    }
  }
  return crn::cli::run_command(config, std::cout, std::cerr);
}
