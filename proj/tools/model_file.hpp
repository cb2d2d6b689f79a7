#pragma once

// Model files: one `key = value` per line, value in JSON, complex entries
// as [re, im], '#' starts a comment. See README for the schema.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "tenfold/models.hpp"

namespace tenfold::cli {

enum class ModelKind { Dirac, Schrodinger, TightBinding, PiecewiseDirac };

std::string_view to_string(ModelKind kind) noexcept;

struct ModelFile {
  std::string source;
  ModelKind kind = ModelKind::Dirac;
  double energy = 0.0;
  Matrix w;                        // dirac
  Matrix v;                        // schrodinger
  TightBindingModel chain;         // tight_binding
  PiecewiseDiracProfile profile;   // piecewise_dirac
  std::optional<CartanClass> named_class;
  SymmetrySet symmetries;          // explicit T/C/S in the model's own coordinates
  Tolerances tol;

  bool has_explicit_symmetries() const { return symmetries.t || symmetries.c || symmetries.s; }
  /// N: half the boundary dimension.
  Index half_dim() const;
  SymplecticForm form() const;
};

/// Throws Error(Parse) with "source:line: field 'key': ..." diagnostics,
/// and domain errors when declared symmetries do not fit the model.
ModelFile parse_model_text(std::string_view text, std::string_view source);
ModelFile load_model_file(const std::filesystem::path& path);

std::string read_text(const std::filesystem::path& path);

/// The single `$name` placeholder of a sweep template. Throws BadTemplate
/// unless exactly one distinct name occurs.
std::string template_placeholder(std::string_view text);
std::string substitute(std::string_view text, const std::string& name, double value);

}  // namespace tenfold::cli
