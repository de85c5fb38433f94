#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ome/config.hpp"
#include "ome/report_io.hpp"

namespace ome {

struct RunOptions {
  std::optional<ModelKind> model;  // decay / visibility: restrict or inject one model
  int n = 1;                       // visibility: half periods of injected decoherence
  int n_max = 10;                  // decay: rows n = 1..n_max
  std::optional<double> beta;      // validate
  std::optional<std::size_t> fock_cutoff;  // validate
  bool strict = false;
};

struct RunOutput {
  Table table;
  nlohmann::json json;
  bool constraints_ok = true;
  std::vector<std::string> warnings;
};

const std::vector<std::string>& subcommands();

/// Computes a subcommand's report. Throws on error.
RunOutput execute(const std::string& subcommand, const RunConfig& cfg, const RunOptions& opts);

/// Writes the report in the configured format and returns the exit status:
/// 0 ok, 1 error, 2 failed constraint in strict mode.
int run(const std::string& subcommand, const RunConfig& cfg, const RunOptions& opts,
        std::ostream& out, std::ostream& err);

}  // namespace ome
