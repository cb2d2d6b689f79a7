#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "commands.hpp"

using namespace tenfold;
using namespace tenfold::cli;

namespace {
const std::string kData = TENFOLD_DATA;

std::string data(const std::string& name) { return kData + "/" + name; }

int run(const std::string& args) {
  const std::string cmd = std::string(TENFOLD_BIN) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::filesystem::path temp(const std::string& name) { return std::filesystem::temp_directory_path() / name; }

ErrorKind parse_error_kind(const std::string& text) {
  try {
    parse_model_text(text, "inline");
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected a parse failure");
  return ErrorKind::Parse;
}

RunReport classify(const std::string& file) {
  std::ostringstream out;
  return cmd_classify(data(file), Options{}, out);
}
}  // namespace

TEST_CASE("model parsing") {
  const ModelFile m = parse_model_text("# c\nmodel = \"dirac\"  # kind\nW = [[[1, 0], [0, 2]], [[0, -2], [3, 0]]]\nenergy = 0.1\n",
                                       "inline");
  CHECK(m.kind == ModelKind::Dirac);
  CHECK(m.w(0, 1) == cplx(0, 2));
  CHECK(m.w(1, 0) == cplx(0, -2));
  CHECK(m.energy == doctest::Approx(0.1));
  CHECK_FALSE(m.named_class);
}

TEST_CASE("model parse diagnostics") {
  CHECK(parse_error_kind("model = \"dirac\"\nW = [[1, 0]]\n") == ErrorKind::Parse);
  CHECK(parse_error_kind("model = \"dirac\"\nW = [[[1, 0], [2, 0]], [[1, 0]]]\n") == ErrorKind::Parse);
  CHECK(parse_error_kind("model = \"dirac\"\n") == ErrorKind::Parse);
  CHECK(parse_error_kind("model = \"graphene\"\nW = [[[1, 0]]]\n") == ErrorKind::Parse);
  CHECK(parse_error_kind("model = \"dirac\"\nW = [[[1, 0]]]\nfoo = 1\n") == ErrorKind::Parse);
  CHECK(parse_error_kind("model = \"dirac\"\nW = [[[1, 0]]]\nclass = \"XYZ\"\n") == ErrorKind::Parse);
  CHECK(parse_error_kind("model = \"dirac\"\nW = [[[1, 0]]\n") == ErrorKind::Parse);
  try {
    parse_model_text("model = \"dirac\"\n\nW = [[[1, 0], [2]]]\n", "f.model");
  } catch (const Error& e) {
    const std::string what = e.what();
    CHECK(what.find("f.model:3") != std::string::npos);
    CHECK(what.find("'W'") != std::string::npos);
  }
  // an S that anticommutes with nothing useful is rejected at load
  CHECK(parse_error_kind("model = \"dirac\"\nW = [[[1, 0]]]\nS = [[[1, 0], [0, 0]], [[0, 0], [1, 0]]]\n") ==
        ErrorKind::InconsistentSymmetries);
}

TEST_CASE("classify fixtures") {
  RunReport r = classify("dirac_plus1.model");
  CHECK(r.class_label == "AIII");
  CHECK(r.indices.at("minus") == IndexValue::kernel_dim(0));
  CHECK(r.indices.at("plus") == IndexValue::kernel_dim(1));
  CHECK(*r.bulk_consistency);
  r = classify("dirac_minus1.model");
  CHECK(r.indices.at("minus") == IndexValue::kernel_dim(1));
  CHECK(r.indices.at("plus") == IndexValue::kernel_dim(0));
  try {
    classify("ssh_in_band.model");
    FAIL("expected GapClosed");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::GapClosed);
    CHECK(std::string(e.what()).find("distance") != std::string::npos);
  }
}

TEST_CASE("classify is deterministic") {
  std::ostringstream a, b;
  const RunReport ra = cmd_classify(data("aiii_n2_inverted.model"), Options{}, a);
  const RunReport rb = cmd_classify(data("aiii_n2_inverted.model"), Options{}, b);
  CHECK(dump(ra) == dump(rb));
  CHECK(a.str() == b.str());
}

TEST_CASE("explicit symmetries: canonical and rotated") {
  const std::string base = "model = \"dirac\"\nW = [[[-1, 0]]]\n";
  const ModelFile canon = parse_model_text(base + "S = [[[0, 0], [1, 0]], [[1, 0], [0, 0]]]\n", "inline");
  ResolvedBulk rb = resolve_bulk(canon);
  CHECK(rb.cls == CartanClass::AIII);
  CHECK(rb.canonical);

  // -S is an equally valid chiral symmetry, but not the canonical matrix
  const ModelFile rotated = parse_model_text(base + "S = [[[0, 0], [-1, 0]], [[-1, 0], [0, 0]]]\n", "inline");
  rb = resolve_bulk(rotated);
  CHECK(rb.cls == CartanClass::AIII);
  CHECK_FALSE(rb.canonical);
}

TEST_CASE("declared class must fit the Dirac potential") {
  const ModelFile m = parse_model_text("model = \"dirac\"\nclass = \"AIII\"\nW = [[[0, 1]]]\n", "inline");
  CHECK_THROWS_AS(resolve_bulk(m), Error);
}

TEST_CASE("junction fixtures") {
  std::ostringstream out;
  Options opt;
  RunReport r = cmd_junction({data("dirac_minus1.model"), data("dirac_plus1.model")}, opt, out);
  CHECK(*r.protected_bound == 1);
  CHECK(*r.predicted_kernel_dim == 1);
  CHECK_FALSE(r.oracle);

  r = cmd_junction({data("dirac_plus1.model"), data("dirac_plus1.model")}, opt, out);
  CHECK(*r.protected_bound == 0);
  CHECK(*r.predicted_kernel_dim == 0);

  r = cmd_junction({data("aiii_n2_trivial.model"), data("aiii_n2_inverted.model")}, opt, out);
  CHECK(*r.protected_bound == 2);

  opt.verify = true;
  r = cmd_junction({data("mass_wall.model")}, opt, out);
  REQUIRE(r.oracle);
  CHECK(r.oracle->verdict == "PASS");
  CHECK(r.oracle->localized_count == 1);

  r = cmd_junction({data("ssh_12.model"), data("ssh_21.model")}, opt, out);
  REQUIRE(r.oracle);
  CHECK(r.oracle->verdict == "PASS");

  try {
    cmd_junction({data("ssh_21.model"), data("ssh_sweep_reference.model")}, opt, out);
    FAIL("expected IncompatibleBoundary");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IncompatibleBoundary);
  }
}

TEST_CASE("run report round trip") {
  std::ostringstream out;
  Options opt;
  opt.verify = true;
  opt.spectra_path = temp("tenfold_spectra.csv");
  std::vector<RunReport> reports{
      cmd_junction({data("mass_wall.model")}, opt, out),
      cmd_junction({data("dirac_minus1.model"), data("dirac_plus1.model")}, opt, out),
      classify("aiii_n2_inverted.model"),
  };
  RunReport empty;
  reports.push_back(empty);
  for (const RunReport& r : reports) {
    const RunReport back = parse_report(dump(r));
    CHECK(back == r);
    CHECK(dump(back) == dump(r));
  }
  CHECK_THROWS_AS(parse_report("{\"command\": 1}"), Error);
}

TEST_CASE("sweep templates") {
  CHECK(template_placeholder("x = $m\ny = $m") == "m");
  CHECK_THROWS_AS(template_placeholder("x = 1"), Error);
  CHECK_THROWS_AS(template_placeholder("x = $m\ny = $n"), Error);

  const std::string text = tenfold::cli::read_text(data("dirac_mass_sweep.template"));
  const auto rows = sweep_rows(text, "t", SweepRange{-1.0, 1.0, 41, std::nullopt}, Options{});
  REQUIRE(rows.size() == 41);
  CHECK(rows[20].gap_closed);
  CHECK(rows[20].parameter == 0.0);
  for (int i = 0; i < 20; ++i) CHECK(rows[static_cast<std::size_t>(i)].index == IndexValue::sign(-1).to_string());
  for (int i = 21; i < 41; ++i) {
    CHECK(rows[static_cast<std::size_t>(i)].index == IndexValue::sign(1).to_string());
    CHECK(rows[static_cast<std::size_t>(i)].gap == doctest::Approx(rows[static_cast<std::size_t>(i)].parameter));
  }

  const std::string ssh = tenfold::cli::read_text(data("ssh_sweep.template"));
  const auto srows =
      sweep_rows(ssh, "t", SweepRange{0.5, 2.0, 7, std::filesystem::path(data("ssh_sweep_reference.model"))}, Options{});
  REQUIRE(srows.size() == 7);
  CHECK(srows[2].parameter == doctest::Approx(1.0));
  CHECK(srows[2].gap_closed);
  // the reference is trivial: only the topological side (w > v) binds a seam mode
  for (std::size_t i : {0u, 1u}) CHECK(*srows[i].predicted == 0);
  for (std::size_t i : {3u, 4u, 5u, 6u}) CHECK(*srows[i].predicted == 1);
  for (std::size_t i : {0u, 1u, 3u, 4u, 5u, 6u})
    CHECK(srows[i].gap == doctest::Approx(std::abs(srows[i].parameter - 1.0) / std::max(1.0, srows[i].parameter)).epsilon(1e-9));

  std::ostringstream csv;
  write_sweep_csv(rows, csv);
  std::istringstream in(csv.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "parameter,gap,index,predicted_modes");
  int closed = 0;
  while (std::getline(in, line)) closed += line.find("GAP_CLOSED") != std::string::npos;
  CHECK(closed == 1);

  const auto flat = sweep_rows("model = \"dirac\"\nclass = \"D\"\nW = [[[$m, 0]]]\n", "t",
                               SweepRange{0.5, 2.0, 5, std::nullopt}, Options{});
  for (const SweepRow& r : flat) CHECK(r.index == flat.front().index);
}

TEST_CASE("table") {
  std::ostringstream out;
  cmd_table(out);
  std::istringstream in(out.str());
  std::vector<std::string> lines;
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  REQUIRE(lines.size() == 11);
  bool d = false, ci = false;
  for (const auto& l : lines) {
    if (l.rfind("D ", 0) == 0) d = l.find("det(U) ∈ {±1}") != std::string::npos;
    if (l.rfind("CI ", 0) == 0) ci = l.substr(l.size() - 1) == "0";
  }
  CHECK(d);
  CHECK(ci);
}

TEST_CASE("binary exit codes") {
  CHECK(run("table") == 0);
  CHECK(run("classify " + data("dirac_plus1.model")) == 0);
  CHECK(run("classify " + data("ssh_in_band.model")) == 2);
  CHECK(run("junction " + data("ssh_21.model") + " " + data("ssh_sweep_reference.model")) == 2);
  CHECK(run("classify /nonexistent.model") == 3);
  CHECK(run("sweep " + data("dirac_plus1.model") + " --from 0 --to 1 --points 3") == 3);
  CHECK(run("frobnicate") == 3);
  CHECK(run("classify --tol-eig 0 " + data("dirac_plus1.model")) == 2);

  const auto report = temp("tenfold_report.json");
  const auto spectra = temp("tenfold_cli_spectra.csv");
  CHECK(run("verify " + data("mass_wall.model") + " --out " + report.string() + " --spectra " + spectra.string() +
            " --spec-L 20 --spec-h 0.05") == 0);
  const RunReport r = parse_report(read_text(report));
  REQUIRE(r.oracle);
  CHECK(r.oracle->localized_count == 1);
  CHECK(read_text(spectra).rfind("index,eigenvalue,central_weight", 0) == 0);

  const auto csv = temp("tenfold_sweep.csv");
  CHECK(run("sweep " + data("dirac_mass_sweep.template") + " --from -1 --to 1 --points 41 --out " + csv.string()) == 0);
  CHECK(read_text(csv).find("GAP_CLOSED") != std::string::npos);
}
