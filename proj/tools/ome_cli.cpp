// ome: command-line front end.
//
//   ome <subcommand> --config device.conf [--set name=value]... [--format csv|json]
//       [--output path] [--seed n] [--strict]
//
// Exit status: 0 ok, 1 error, 2 failed constraint in strict mode.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ome/config.hpp"
#include "ome/error.hpp"
#include "ome/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Pulsed optomechanical entanglement calculator"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> sets;
  std::optional<std::string> format;
  std::optional<std::string> output;
  std::optional<std::uint64_t> seed;
  ome::RunOptions opts;
  std::optional<std::string> model;
  std::optional<double> beta;
  std::optional<std::size_t> cutoff;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "run configuration file")->required();
    sub->add_option("--set", sets, "override, name=value (repeatable)");
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--output", output, "output file (default: stdout)");
    sub->add_option("--seed", seed, "seed for Monte-Carlo paths");
    sub->add_flag("--strict", opts.strict, "exit 2 when a constraint check fails");
  };

  for (const auto& name : ome::subcommands()) {
    CLI::App* sub = app.add_subcommand(name);
    add_common(sub);
    if (name == "decay" || name == "visibility")
      sub->add_option("--model", model, "eid, qg or gic")->check(CLI::IsMember({"eid", "qg", "gic"}));
    if (name == "decay") sub->add_option("--n-max", opts.n_max, "largest number of half periods");
    if (name == "visibility") sub->add_option("--n", opts.n, "half periods of injected decoherence");
    if (name == "validate") {
      sub->add_option("--beta", beta, "displacement amplitude for the checks");
      sub->add_option("--fock-cutoff", cutoff, "Fock cutoff of the brute-force engine");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  const std::string subcommand = app.get_subcommands().front()->get_name();

  try {
    if (format) sets.push_back("output.format=" + *format);
    if (output) sets.push_back("output.path=" + *output);
    if (seed) sets.push_back("seed=" + std::to_string(*seed));
    ome::RunConfig cfg = ome::load_config(config_path, sets);
    if (model) opts.model = ome::model_kind_from_string(*model);
    opts.beta = beta;
    opts.fock_cutoff = cutoff;
    return ome::run(subcommand, cfg, opts, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
