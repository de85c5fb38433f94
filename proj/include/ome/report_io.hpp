#pragma once

// JSON and CSV forms of every report. CSV cells carry 17 significant digits
// so a file reproduces the doubles it was written from.

#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ome/decoherence.hpp"
#include "ome/feasibility.hpp"
#include "ome/measurement.hpp"
#include "ome/witness.hpp"

namespace ome {

struct DecayRow {
  ModelKind model = ModelKind::eid;
  int n = 1;
  double deficit = 0.0;
  bool valid = true;
  friend bool operator==(const DecayRow&, const DecayRow&) = default;
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string format_number(double v);

void write_csv(const Table& table, std::ostream& out);

void to_json(nlohmann::json& j, const CorrelationResult& r);
void from_json(const nlohmann::json& j, CorrelationResult& r);
void to_json(nlohmann::json& j, const InterferenceResult& r);
void from_json(const nlohmann::json& j, InterferenceResult& r);
void to_json(nlohmann::json& j, const WitnessReport& r);
void from_json(const nlohmann::json& j, WitnessReport& r);
void to_json(nlohmann::json& j, const ConstraintFlag& f);
void from_json(const nlohmann::json& j, ConstraintFlag& f);
void to_json(nlohmann::json& j, const FeasibilityReport& r);
void from_json(const nlohmann::json& j, FeasibilityReport& r);
void to_json(nlohmann::json& j, const TestabilityEntry& e);
void from_json(const nlohmann::json& j, TestabilityEntry& e);
void to_json(nlohmann::json& j, const DecayRow& r);
void from_json(const nlohmann::json& j, DecayRow& r);

}  // namespace ome
