#include "commands.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace tenfold::cli {

namespace {

BulkData build_bulk(const ModelFile& f) {
  switch (f.kind) {
    case ModelKind::Dirac: return dirac_bulk(ConstantDiracModel{f.w}, f.energy, f.tol);
    case ModelKind::Schrodinger: return schrodinger_bulk(ConstantSchrodingerModel{f.v, f.energy}, f.tol);
    case ModelKind::TightBinding: return tb_bulk(f.chain, f.energy, f.tol);
    case ModelKind::PiecewiseDirac: break;
  }
  throw Error(ErrorKind::BadSpec, f.source + ": a piecewise_dirac profile is not a bulk; use `junction` on it");
}

// Leray coordinates y = D Q* x with D = diag(sqrt(A_+), sqrt(A_-)).
struct LerayMap {
  Matrix to;    // D Q*
  Matrix from;  // Q D^{-1}
};

LerayMap leray_map(const CanonicalSplit& s) {
  RealVector d(2 * s.half_dim());
  d << s.a_plus.cwiseSqrt(), s.a_minus.cwiseSqrt();
  return {d.asDiagonal() * s.q.adjoint(), s.q * d.cwiseInverse().asDiagonal()};
}

SymmetrySet to_leray(const SymmetrySet& raw, const LerayMap& m) {
  SymmetrySet out;
  if (raw.t) out.t = AntiUnitary{m.to * raw.t->v * m.from.conjugate(), raw.t->sign};
  if (raw.c) out.c = AntiUnitary{m.to * raw.c->v * m.from.conjugate(), raw.c->sign};
  if (raw.s) out.s = m.to * *raw.s * m.from;
  return out;
}

SymmetrySet from_leray(const SymmetrySet& canon, const LerayMap& m) {
  SymmetrySet out;
  if (canon.t) out.t = AntiUnitary{m.from * canon.t->v * m.to.conjugate(), canon.t->sign};
  if (canon.c) out.c = AntiUnitary{m.from * canon.c->v * m.to.conjugate(), canon.c->sign};
  if (canon.s) out.s = m.from * *canon.s * m.to;
  return out;
}

bool same_symmetries(const SymmetrySet& a, const SymmetrySet& b, double tol) {
  auto close = [&](const Matrix& x, const Matrix& y) { return max_abs(x - y) < tol; };
  if (a.t.has_value() != b.t.has_value() || a.c.has_value() != b.c.has_value() || a.s.has_value() != b.s.has_value())
    return false;
  if (a.t && (a.t->sign != b.t->sign || !close(a.t->v, b.t->v))) return false;
  if (a.c && (a.c->sign != b.c->sign || !close(a.c->v, b.c->v))) return false;
  if (a.s && !close(*a.s, *b.s)) return false;
  return true;
}

void check_dirac_symmetry(const ModelFile& f, const Matrix& w, const SymmetrySet& raw) {
  const OperatorSymmetryReport rep = dirac_operator_symmetry(w, raw, f.tol);
  if (!rep.pass)
    throw Error(ErrorKind::InconsistentSymmetries,
                f.source + ": the Dirac potential does not commute with the declared symmetries");
}

struct ClassResolution {
  CartanClass cls = CartanClass::A;
  bool canonical = true;
  SymmetrySet raw;
};

ClassResolution resolve_class(const ModelFile& f, const CanonicalSplit& split) {
  ClassResolution r;
  const Index n = f.half_dim();
  const LerayMap map = leray_map(split);
  if (f.named_class) {
    r.cls = *f.named_class;
    r.raw = from_leray(canonical_symmetry_basis(r.cls, n).first, map);
  } else if (f.has_explicit_symmetries()) {
    r.raw = f.symmetries.completed();
    r.cls = cartan_class(r.raw, f.tol);
    if (requires_even_size(r.cls) && n % 2 != 0)
      throw Error(ErrorKind::BadParity, f.source + ": class " + std::string(to_string(r.cls)) + " needs even N");
    r.canonical = same_symmetries(to_leray(r.raw, map), canonical_symmetry_basis(r.cls, n).first.completed(), 1e-8);
  }
  if (f.kind == ModelKind::Dirac) check_dirac_symmetry(f, f.w, r.raw);
  if (f.kind == ModelKind::PiecewiseDirac)
    for (const Matrix& w : f.profile.w) check_dirac_symmetry(f, w, r.raw);
  return r;
}

// Plane {(x, U x)} of the canonical Leray coordinates.
LagrangianPlane leray_plane(const Matrix& u, CartanClass cls, const Tolerances& tol) {
  const Index n = u.rows();
  Matrix frame(2 * n, n);
  frame << Matrix::Identity(n, n), u;
  return make_plane(orthonormalize(frame, tol), canonical_symmetry_basis(cls, n).second, tol);
}

void record_respects(RunReport& rep, const std::string& tag, const RespectReport& r) {
  if (r.t_distance) rep.residuals["respects_T_" + tag] = *r.t_distance;
  if (r.c_distance) rep.residuals["respects_C_" + tag] = *r.c_distance;
  if (r.s_distance) rep.residuals["respects_S_" + tag] = *r.s_distance;
}

GapEntry gap_entry(const BulkData& b) { return {b.gap.kind, b.gap.value}; }

std::string fmt(double x) {
  std::ostringstream s;
  s << std::setprecision(6) << x;
  return s.str();
}

OracleEntry run_oracle(const JunctionReport& jr, const DiscreteOperator& op, const Options& opt, std::ostream& out) {
  for (const std::string& w : op.warnings) out << "warning: " << w << '\n';
  OracleReport oracle = count_near_zero_localized(op, opt.spec);
  if (opt.spectra_path) {
    std::ofstream csv(*opt.spectra_path);
    if (!csv) throw Error(ErrorKind::BadSpec, "cannot write " + opt.spectra_path->string());
    write_spectra_csv(oracle, csv);
    oracle.spectra_file = opt.spectra_path->string();
  }
  const Verdict verdict = oracle_compare(jr, oracle);
  OracleEntry e;
  e.verdict = std::string(to_string(verdict));
  e.localized_count = oracle.localized_count;
  e.energy_window = oracle.energy_window;
  e.eigenvalues_in_window = oracle.eigenvalues_in_window;
  e.localized_energies = oracle.localized_energies;
  e.warnings = op.warnings;
  e.spectra_file = oracle.spectra_file;
  out << "oracle: dim " << op.dim() << ", " << oracle.eigenvalues_in_window.size() << " eigenvalues in |E| < "
      << fmt(oracle.energy_window) << ", localized " << oracle.localized_count << " -> " << e.verdict << '\n';
  return e;
}

void print_junction(const JunctionReport& jr, std::ostream& out) {
  out << "class: " << to_string(jr.cls) << '\n'
      << "index left:  " << jr.index_left.to_string() << '\n'
      << "index right: " << jr.index_right.to_string() << '\n'
      << "protected bound: " << jr.protected_bound << '\n'
      << "predicted kernel dim: " << jr.predicted_kernel_dim << '\n'
      << "consistency: " << (jr.consistency ? "ok" : "FAILED") << '\n';
}

void fill_junction(RunReport& rep, const JunctionReport& jr) {
  rep.class_label = std::string(to_string(jr.cls));
  rep.indices.insert_or_assign("left", jr.index_left);
  rep.indices.insert_or_assign("right", jr.index_right);
  rep.protected_bound = jr.protected_bound;
  rep.predicted_kernel_dim = jr.predicted_kernel_dim;
  rep.consistency = jr.consistency;
}

// Thin-wrapper so both loaders apply the CLI overrides.
ModelFile load(const std::filesystem::path& p, const Options& opt) { return load_with_overrides(load_model_file(p), opt); }

}  // namespace

ModelFile load_with_overrides(const ModelFile& parsed, const Options& opt) {
  ModelFile f = parsed;
  if (opt.tol_eig) f.tol.eig_tol = *opt.tol_eig;
  if (opt.tol_rank) f.tol.rank_tol = *opt.tol_rank;
  f.tol.validate();
  return f;
}

ResolvedBulk resolve_bulk(const ModelFile& file) {
  BulkData bulk = build_bulk(file);
  const ClassResolution cr = resolve_class(file, bulk.split);
  return ResolvedBulk{file, std::move(bulk), cr.cls, cr.canonical, cr.raw};
}

RunReport cmd_classify(const std::filesystem::path& model, const Options& opt, std::ostream& out) {
  const ModelFile f = load(model, opt);
  const ResolvedBulk rb = resolve_bulk(f);
  const Tolerances& tol = f.tol;
  RunReport rep;
  rep.command = "classify";
  rep.class_label = std::string(to_string(rb.cls));
  rep.energy = f.energy;
  rep.models.push_back(std::string(to_string(f.kind)));
  rep.gaps.emplace("bulk", gap_entry(rb.bulk));
  rep.canonical_form = rb.canonical;
  if (rb.bulk.closed_form_residual) rep.residuals["closed_form"] = *rb.bulk.closed_form_residual;

  out << "model: " << to_string(f.kind) << " (N = " << f.half_dim() << "), E = " << f.energy << '\n'
      << "class: " << rep.class_label << '\n'
      << "gap certificate: " << rb.bulk.gap.kind << " = " << fmt(rb.bulk.gap.value) << '\n';

  if (!rb.canonical) {
    // Only basis-free checks are possible.
    record_respects(rep, "plus", plane_respects(rb.bulk.plane_plus, rb.raw, tol));
    record_respects(rep, "minus", plane_respects(rb.bulk.plane_minus, rb.raw, tol));
    rep.notes.push_back("declared symmetries are not in the canonical basis of their class; indices not computed");
    out << "note: " << rep.notes.back() << '\n';
    return rep;
  }

  const Matrix& up = rb.bulk.u_plus.matrix();
  const Matrix& um = rb.bulk.u_minus.matrix();
  const double res_plus = membership_residual(up, rb.cls);
  const double res_minus = membership_residual(um, rb.cls);
  rep.residuals["membership_plus"] = res_plus;
  rep.residuals["membership_minus"] = res_minus;
  const SymmetrySet canon = canonical_symmetry_basis(rb.cls, f.half_dim()).first.completed();
  record_respects(rep, "plus", plane_respects(leray_plane(up, rb.cls, tol), canon, tol));
  record_respects(rep, "minus", plane_respects(leray_plane(um, rb.cls, tol), canon, tol));
  out << "membership residual U+: " << fmt(res_plus) << ", U-: " << fmt(res_minus) << '\n';

  const IndexValue ip = topological_index(up, rb.cls, tol);
  const IndexValue im = topological_index(um, rb.cls, tol);
  rep.indices.emplace("plus", ip);
  rep.indices.emplace("minus", im);
  rep.bulk_consistency = bulk_consistency_check(rb.cls, ip, im, f.half_dim());
  out << "index U+: " << ip.to_string() << '\n'
      << "index U-: " << im.to_string() << '\n'
      << "bulk consistency: " << (*rep.bulk_consistency ? "ok" : "FAILED") << '\n';
  return rep;
}

RunReport cmd_junction(const std::vector<std::filesystem::path>& files, const Options& opt, std::ostream& out) {
  RunReport rep;
  rep.command = opt.verify ? "verify" : "junction";

  if (files.size() == 1) {
    const ModelFile f = load(files[0], opt);
    if (f.kind != ModelKind::PiecewiseDirac)
      throw Error(ErrorKind::BadSpec, f.source + ": a single file must be a piecewise_dirac profile");
    const SymplecticForm form = f.form();
    const ClassResolution cr = resolve_class(f, canonical_split(form, f.tol));
    if (!cr.canonical) throw Error(ErrorKind::InconsistentSymmetries, f.source + ": symmetries not in canonical form");
    const ContinuousJunction cj = continuous_junction_report(f.profile, f.energy, cr.cls, f.tol);
    rep.energy = f.energy;
    rep.models.push_back(std::string(to_string(f.kind)));
    fill_junction(rep, cj.report);
    rep.indices.insert_or_assign("transported_plus", cj.transported_plus);
    rep.indices.insert_or_assign("transported_minus", cj.transported_minus);
    rep.isotropy_defect = cj.isotropy_defect;
    print_junction(cj.report, out);
    out << "transported indices: " << cj.transported_plus.to_string() << " / " << cj.transported_minus.to_string()
        << ", isotropy defect " << fmt(cj.isotropy_defect) << '\n';
    if (opt.verify)
      rep.oracle = run_oracle(cj.report, discretize_dirac_junction(f.profile, opt.spec, f.energy), opt, out);
    return rep;
  }
  if (files.size() != 2) throw Error(ErrorKind::BadSpec, "junction takes a left and a right model file");

  const ResolvedBulk left = resolve_bulk(load(files[0], opt));
  const ResolvedBulk right = resolve_bulk(load(files[1], opt));
  if (left.file.kind != right.file.kind)
    throw Error(ErrorKind::IncompatibleBoundary, "left and right models are of different kinds");
  if (left.file.energy != right.file.energy)
    throw Error(ErrorKind::BadSpec, "left and right files set different energies");
  if (left.cls != right.cls)
    throw Error(ErrorKind::InconsistentSymmetries, "left is class " + std::string(to_string(left.cls)) +
                                                       ", right is class " + std::string(to_string(right.cls)));
  const Tolerances& tol = left.file.tol;
  CartanClass cls = left.cls;
  if (!left.canonical || !right.canonical) {
    cls = CartanClass::A;
    rep.notes.push_back("symmetries not in canonical form; indices and bound computed as class A");
    out << "note: " << rep.notes.back() << '\n';
  }
  const JunctionReport jr = junction_report(left.bulk, right.bulk, cls, tol);
  rep.energy = left.file.energy;
  rep.models = {std::string(to_string(left.file.kind)), std::string(to_string(right.file.kind))};
  rep.gaps.emplace("left", gap_entry(left.bulk));
  rep.gaps.emplace("right", gap_entry(right.bulk));
  fill_junction(rep, jr);
  print_junction(jr, out);

  if (opt.verify) {
    if (left.file.kind == ModelKind::Dirac) {
      PiecewiseDiracProfile profile{{0.0}, {left.file.w, right.file.w}};
      rep.oracle = run_oracle(jr, discretize_dirac_junction(profile, opt.spec, rep.energy), opt, out);
    } else if (left.file.kind == ModelKind::TightBinding) {
      rep.oracle = run_oracle(jr, finite_chain(left.file.chain, right.file.chain, opt.spec, rep.energy, tol), opt, out);
    } else {
      throw Error(ErrorKind::BadSpec, "no finite-size oracle for Schrodinger junctions");
    }
  }
  return rep;
}

std::vector<SweepRow> sweep_rows(const std::string& template_text, const std::string& source, const SweepRange& range,
                                 const Options& opt) {
  const std::string name = template_placeholder(template_text);
  if (range.points < 1) throw Error(ErrorKind::BadSpec, "sweep needs at least one point");
  std::optional<ResolvedBulk> reference;
  if (range.reference) reference = resolve_bulk(load(*range.reference, opt));

  std::vector<SweepRow> rows;
  for (int i = 0; i < range.points; ++i) {
    SweepRow row;
    row.parameter = range.points == 1 ? range.from
                                      : range.from + (range.to - range.from) * static_cast<double>(i) / (range.points - 1);
    const ModelFile f = load_with_overrides(
        parse_model_text(substitute(template_text, name, row.parameter), source + "[$" + name + "]"), opt);
    try {
      const ResolvedBulk rb = resolve_bulk(f);
      row.gap = rb.bulk.gap.value;
      row.index = rb.canonical ? topological_index(rb.bulk.u_plus.matrix(), rb.cls, f.tol).to_string() : "n/a";
      if (reference) row.predicted = predicted_zero_modes(reference->bulk, rb.bulk, f.tol);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::GapClosed && e.kind() != ErrorKind::NotInGap) throw;
      row.gap_closed = true;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << "parameter,gap,index,predicted_modes\n";
  out << std::setprecision(12);
  for (const SweepRow& r : rows) {
    out << r.parameter << ',';
    if (r.gap_closed) {
      out << "GAP_CLOSED,GAP_CLOSED,GAP_CLOSED\n";
      continue;
    }
    out << r.gap << ',' << r.index << ',';
    if (r.predicted) out << *r.predicted;
    out << '\n';
  }
}

namespace {

std::size_t display_width(std::string_view s) {
  std::size_t n = 0;
  for (unsigned char c : s)
    if ((c & 0xC0) != 0x80) ++n;
  return n;
}

std::string pad(std::string_view s, std::size_t width) {
  std::string out(s);
  const std::size_t w = display_width(s);
  if (w < width) out.append(width - w, ' ');
  return out;
}

std::string sq(int v) { return v == 0 ? "0" : (v > 0 ? "+1" : "-1"); }

}  // namespace

void cmd_table(std::ostream& out) {
  std::vector<std::array<std::string, 6>> rows{{"class", "T", "C", "S", "classifying space", "index"}};
  for (const CartanRow& r : cartan_table())
    rows.push_back({std::string(to_string(r.label)), sq(r.t), sq(r.c), std::to_string(r.s),
                    std::string(r.classifying_space), std::string(r.index)});
  std::array<std::size_t, 6> width{};
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], display_width(row[c]));
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) line += (c + 1 < row.size() ? pad(row[c], width[c] + 2) : row[c]);
    out << line << '\n';
  }
}

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Parse:
    case ErrorKind::BadTemplate: return 3;
    default: return 2;
  }
}

}  // namespace tenfold::cli
