#include "run_report.hpp"

namespace tenfold::cli {

using nlohmann::json;

namespace {

template <class T>
void put(json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

template <class T>
void take(const json& j, const char* key, std::optional<T>& v) {
  if (j.contains(key) && !j.at(key).is_null()) v = j.at(key).get<T>();
  else v.reset();
}

}  // namespace

json index_to_json(const IndexValue& v) { return {{"kind", std::string(to_string(v.kind()))}, {"value", v.value()}}; }

IndexValue index_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const int value = j.at("value").get<int>();
  try {
    if (kind == to_string(IndexValue::Kind::Zero)) {
      if (value != 0) throw Error(ErrorKind::Parse, "zero index with nonzero value");
      return IndexValue::zero();
    }
    if (kind == to_string(IndexValue::Kind::KernelDim)) return IndexValue::kernel_dim(value);
    if (kind == to_string(IndexValue::Kind::Sign)) return IndexValue::sign(value);
  } catch (const Error& e) {
    throw Error(ErrorKind::Parse, std::string("bad index value: ") + e.what());
  }
  throw Error(ErrorKind::Parse, "unknown index kind '" + kind + "'");
}

void to_json(json& j, const GapEntry& g) { j = {{"kind", g.kind}, {"value", g.value}}; }

void from_json(const json& j, GapEntry& g) {
  j.at("kind").get_to(g.kind);
  j.at("value").get_to(g.value);
}

void to_json(json& j, const OracleEntry& o) {
  j = {{"verdict", o.verdict},
       {"localized_count", o.localized_count},
       {"energy_window", o.energy_window},
       {"eigenvalues_in_window", o.eigenvalues_in_window},
       {"localized_energies", o.localized_energies},
       {"warnings", o.warnings}};
  put(j, "spectra_file", o.spectra_file);
}

void from_json(const json& j, OracleEntry& o) {
  j.at("verdict").get_to(o.verdict);
  j.at("localized_count").get_to(o.localized_count);
  j.at("energy_window").get_to(o.energy_window);
  j.at("eigenvalues_in_window").get_to(o.eigenvalues_in_window);
  j.at("localized_energies").get_to(o.localized_energies);
  j.at("warnings").get_to(o.warnings);
  take(j, "spectra_file", o.spectra_file);
}

void to_json(json& j, const RunReport& r) {
  json indices = json::object();
  for (const auto& [k, v] : r.indices) indices[k] = index_to_json(v);
  j = {{"command", r.command}, {"class", r.class_label}, {"energy", r.energy}, {"models", r.models},
       {"gaps", r.gaps},       {"indices", indices},      {"residuals", r.residuals}, {"notes", r.notes}};
  put(j, "bulk_consistency", r.bulk_consistency);
  put(j, "canonical_form", r.canonical_form);
  put(j, "protected_bound", r.protected_bound);
  put(j, "predicted_kernel_dim", r.predicted_kernel_dim);
  put(j, "consistency", r.consistency);
  put(j, "isotropy_defect", r.isotropy_defect);
  put(j, "oracle", r.oracle);
}

void from_json(const json& j, RunReport& r) {
  j.at("command").get_to(r.command);
  j.at("class").get_to(r.class_label);
  j.at("energy").get_to(r.energy);
  j.at("models").get_to(r.models);
  j.at("gaps").get_to(r.gaps);
  r.indices.clear();
  for (const auto& [k, v] : j.at("indices").items()) r.indices.emplace(k, index_from_json(v));
  j.at("residuals").get_to(r.residuals);
  j.at("notes").get_to(r.notes);
  take(j, "bulk_consistency", r.bulk_consistency);
  take(j, "canonical_form", r.canonical_form);
  take(j, "protected_bound", r.protected_bound);
  take(j, "predicted_kernel_dim", r.predicted_kernel_dim);
  take(j, "consistency", r.consistency);
  take(j, "isotropy_defect", r.isotropy_defect);
  take(j, "oracle", r.oracle);
}

std::string dump(const RunReport& r) { return json(r).dump(2); }

RunReport parse_report(const std::string& text) {
  try {
    return json::parse(text).get<RunReport>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("run report: ") + e.what());
  }
}

}  // namespace tenfold::cli
