#pragma once

// Run configuration: a key/value text file with named blocks.
//
//   # comment
//   seed = 7
//   params {
//     omega_m = 20 kHz
//     M = 60 ng
//   }
//   sweep {
//     axis = beta 1 10 5        # name start stop steps [log]
//   }
//
// One statement per line. Every physics parameter must be given; unknown
// keys are rejected.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ome/decoherence.hpp"
#include "ome/feasibility.hpp"
#include "ome/params.hpp"

namespace ome {

struct SweepAxis {
  std::string name;  // a parameter name
  double start = 0.0;
  double stop = 0.0;
  std::size_t steps = 1;
  bool log = false;

  std::vector<double> values() const;
};

struct RunConfig {
  PhysParams params;
  std::optional<double> finesse;
  std::vector<ModelKind> models = {ModelKind::eid, ModelKind::qg, ModelKind::gic};
  std::vector<SweepAxis> sweep;
  std::string sweep_subcommand = "correlations";
  std::size_t workers = 1;
  std::string format = "csv";
  std::string output_path;  // empty: standard output
  std::uint64_t seed = 1;
  bool oracle_enabled = false;
  std::size_t fock_cutoff = 60;
  std::size_t mc_samples = 400;
  FeasibilityOptions feasibility;
};

/// Raw statements in file order, key qualified by its block ("params.beta").
struct ConfigEntry {
  std::string key;
  std::string value;
  int line = 0;
};

std::vector<ConfigEntry> parse_config_text(const std::string& text);

/// `overrides` are "name=value" strings; a bare parameter or constant name
/// is qualified automatically.
RunConfig build_config(std::vector<ConfigEntry> entries,
                       const std::vector<std::string>& overrides = {});

RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides = {});

}  // namespace ome
