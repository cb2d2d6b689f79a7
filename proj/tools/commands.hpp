#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "model_file.hpp"
#include "run_report.hpp"
#include "tenfold/verify.hpp"

namespace tenfold::cli {

struct Options {
  std::optional<double> tol_eig;
  std::optional<double> tol_rank;
  DiscretizationSpec spec;
  bool verify = false;
  std::optional<std::filesystem::path> spectra_path;
};

/// A bulk model together with its symmetry class resolved. `canonical` is
/// false when explicit symmetries were declared in a basis that is not the
/// canonical one of their class; indices are then not computed.
struct ResolvedBulk {
  ModelFile file;
  BulkData bulk;
  CartanClass cls = CartanClass::A;
  bool canonical = true;
  SymmetrySet raw;  // symmetries in the model's own coordinates
};

ModelFile load_with_overrides(const ModelFile& parsed, const Options& opt);
ResolvedBulk resolve_bulk(const ModelFile& file);

RunReport cmd_classify(const std::filesystem::path& model, const Options& opt, std::ostream& out);
/// Two bulk files, or a single piecewise_dirac profile.
RunReport cmd_junction(const std::vector<std::filesystem::path>& files, const Options& opt, std::ostream& out);

struct SweepRange {
  double from = 0.0;
  double to = 1.0;
  int points = 11;
  std::optional<std::filesystem::path> reference;
};

struct SweepRow {
  double parameter = 0.0;
  bool gap_closed = false;
  double gap = 0.0;
  std::string index;
  std::optional<Index> predicted;
};

std::vector<SweepRow> sweep_rows(const std::string& template_text, const std::string& source, const SweepRange& range,
                                 const Options& opt);
/// Columns parameter, gap, index, predicted_modes.
void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out);

void cmd_table(std::ostream& out);

/// 3 for parse-type failures, 2 for every other domain error.
int exit_code(ErrorKind kind) noexcept;

}  // namespace tenfold::cli
