#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "commands.hpp"

using namespace tenfold;
using namespace tenfold::cli;

namespace {

void emit(const RunReport& rep, const std::optional<std::string>& out_path) {
  if (!out_path) return;
  std::ofstream file(*out_path);
  if (!file) throw Error(ErrorKind::BadSpec, "cannot write " + *out_path);
  file << dump(rep) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tenfold: Lagrangian-plane classification of gapped bulks and junctions"};
  app.require_subcommand(1);

  Options opt;
  std::optional<std::string> out_path;
  std::optional<std::string> spectra;
  app.add_option("--tol-eig", opt.tol_eig, "eigenvalue tolerance (overrides model files)");
  app.add_option("--tol-rank", opt.tol_rank, "rank tolerance (overrides model files)");
  app.add_option("--out", out_path, "JSON report (classify/junction/verify) or CSV (sweep)");

  auto add_spec = [&](CLI::App* sub) {
    sub->add_option("--spec-L", opt.spec.half_length, "Dirac domain half-length");
    sub->add_option("--spec-h", opt.spec.step, "Dirac grid step");
    sub->add_option("--spec-cells", opt.spec.n_cells, "tight-binding cells per side");
    sub->add_option("--spec-window", opt.spec.energy_window, "energy window around E");
    sub->add_option("--spectra", spectra, "write the in-window spectrum as CSV");
  };

  std::string model;
  auto* classify = app.add_subcommand("classify", "class, membership and indices of one bulk");
  classify->add_option("model", model, "model file")->required();

  std::vector<std::string> files;
  auto* junction = app.add_subcommand("junction", "indices, protected bound and predicted modes of a junction");
  junction->add_option("files", files, "left and right model files, or one piecewise_dirac file")->required();
  junction->add_flag("--verify", opt.verify, "run the finite-size oracle");
  add_spec(junction);

  auto* verify = app.add_subcommand("verify", "junction report plus finite-size oracle");
  verify->add_option("files", files, "left and right model files, or one piecewise_dirac file")->required();
  add_spec(verify);

  std::string template_path;
  SweepRange range;
  std::optional<std::string> reference;
  auto* sweep = app.add_subcommand("sweep", "sweep one $parameter of a model template");
  sweep->add_option("template", template_path, "model template containing one $name")->required();
  sweep->add_option("--from", range.from)->required();
  sweep->add_option("--to", range.to)->required();
  sweep->add_option("--points", range.points)->required();
  sweep->add_option("--reference", reference, "left model for the predicted-modes column");

  app.add_subcommand("table", "print the ten-fold table");

  // Global options are accepted after the subcommand too.
  for (auto* sub : {classify, junction, verify, sweep}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    if (spectra) opt.spectra_path = *spectra;
    if (classify->parsed()) {
      emit(cmd_classify(model, opt, std::cout), out_path);
    } else if (junction->parsed() || verify->parsed()) {
      if (verify->parsed()) opt.verify = true;
      opt.spec.validate();
      std::vector<std::filesystem::path> paths(files.begin(), files.end());
      emit(cmd_junction(paths, opt, std::cout), out_path);
    } else if (sweep->parsed()) {
      if (reference) range.reference = *reference;
      const auto rows = sweep_rows(read_text(template_path), template_path, range, opt);
      if (out_path) {
        std::ofstream csv(*out_path);
        if (!csv) throw Error(ErrorKind::BadSpec, "cannot write " + *out_path);
        write_sweep_csv(rows, csv);
        std::cout << rows.size() << " rows written to " << *out_path << '\n';
      } else {
        write_sweep_csv(rows, std::cout);
      }
    } else {
      cmd_table(std::cout);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
