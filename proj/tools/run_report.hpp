#pragma once

// Machine-readable result of one CLI command. Serializes to JSON and back
// without loss (doubles are written with round-trip precision).

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tenfold/index.hpp"

namespace tenfold::cli {

struct GapEntry {
  std::string kind;
  double value = 0.0;
  friend bool operator==(const GapEntry&, const GapEntry&) = default;
};

struct OracleEntry {
  std::string verdict;
  Index localized_count = 0;
  double energy_window = 0.0;
  std::vector<double> eigenvalues_in_window;
  std::vector<double> localized_energies;
  std::vector<std::string> warnings;
  std::optional<std::string> spectra_file;
  friend bool operator==(const OracleEntry&, const OracleEntry&) = default;
};

struct RunReport {
  std::string command;
  std::string class_label;
  double energy = 0.0;
  std::vector<std::string> models;
  std::map<std::string, GapEntry> gaps;          // "bulk" or "left"/"right"
  std::map<std::string, IndexValue> indices;     // "plus"/"minus" or "left"/"right"
  std::map<std::string, double> residuals;       // membership and symmetry residuals
  std::optional<bool> bulk_consistency;
  std::optional<bool> canonical_form;
  std::optional<Index> protected_bound;
  std::optional<Index> predicted_kernel_dim;
  std::optional<bool> consistency;
  std::optional<double> isotropy_defect;
  std::optional<OracleEntry> oracle;
  std::vector<std::string> notes;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

void to_json(nlohmann::json& j, const GapEntry& g);
void from_json(const nlohmann::json& j, GapEntry& g);
void to_json(nlohmann::json& j, const OracleEntry& o);
void from_json(const nlohmann::json& j, OracleEntry& o);
void to_json(nlohmann::json& j, const RunReport& r);
void from_json(const nlohmann::json& j, RunReport& r);

nlohmann::json index_to_json(const IndexValue& v);
/// Throws Error(Parse) for an unknown kind or an out-of-range value.
IndexValue index_from_json(const nlohmann::json& j);

std::string dump(const RunReport& r);
/// Throws Error(Parse).
RunReport parse_report(const std::string& text);

}  // namespace tenfold::cli
