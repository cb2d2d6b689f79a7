#include "model_file.hpp"

#include <json.hpp>

#include <fstream>
#include <regex>
#include <set>
#include <sstream>

namespace tenfold::cli {

using nlohmann::json;

std::string_view to_string(ModelKind kind) noexcept {
  switch (kind) {
    case ModelKind::Dirac: return "dirac";
    case ModelKind::Schrodinger: return "schrodinger";
    case ModelKind::TightBinding: return "tight_binding";
    case ModelKind::PiecewiseDirac: return "piecewise_dirac";
  }
  return "?";
}

Index ModelFile::half_dim() const {
  switch (kind) {
    case ModelKind::Dirac: return w.rows();
    case ModelKind::Schrodinger: return v.rows();
    case ModelKind::TightBinding: return chain.size();
    case ModelKind::PiecewiseDirac: return profile.size();
  }
  return 0;
}

SymplecticForm ModelFile::form() const {
  switch (kind) {
    case ModelKind::Schrodinger: return schrodinger_form(v.rows());
    case ModelKind::TightBinding: return tb_form(chain);
    default: return dirac_form(half_dim());
  }
}

namespace {

struct Field {
  std::string key;
  json value;
  int line = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view source) : source_(source) {}

  [[noreturn]] void fail(int line, const std::string& key, const std::string& what) const {
    std::ostringstream msg;
    msg << source_ << ':' << line;
    if (!key.empty()) msg << ": field '" << key << "'";
    msg << ": " << what;
    throw Error(ErrorKind::Parse, msg.str());
  }

  double number(const Field& f, const json& j) const {
    if (!j.is_number()) fail(f.line, f.key, "expected a number, got " + j.dump());
    return j.get<double>();
  }

  cplx complex(const Field& f, const json& j) const {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
      fail(f.line, f.key, "expected a complex entry [re, im], got " + j.dump());
    return {j[0].get<double>(), j[1].get<double>()};
  }

  Matrix matrix(const Field& f, const json& j) const {
    if (!j.is_array() || j.empty()) fail(f.line, f.key, "expected a non-empty array of rows");
    const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
    if (cols == 0) fail(f.line, f.key, "row 0 must be a non-empty array of [re, im] entries");
    Matrix m(static_cast<Index>(j.size()), static_cast<Index>(cols));
    for (std::size_t r = 0; r < j.size(); ++r) {
      if (!j[r].is_array() || j[r].size() != cols)
        fail(f.line, f.key, "row " + std::to_string(r) + " has a different length (matrix must be rectangular)");
      for (std::size_t c = 0; c < cols; ++c) m(static_cast<Index>(r), static_cast<Index>(c)) = complex(f, j[r][c]);
    }
    return m;
  }

  Matrix square(const Field& f, const json& j) const {
    Matrix m = matrix(f, j);
    if (m.rows() != m.cols()) fail(f.line, f.key, "matrix must be square");
    return m;
  }

  std::vector<Matrix> matrix_list(const Field& f) const {
    if (!f.value.is_array() || f.value.empty()) fail(f.line, f.key, "expected a non-empty list of matrices");
    std::vector<Matrix> out;
    for (const json& item : f.value) out.push_back(square(f, item));
    return out;
  }

  AntiUnitary antiunitary(const Field& f) const {
    const json& j = f.value;
    if (!j.is_object() || !j.contains("V") || !j.contains("sign"))
      fail(f.line, f.key, "expected {\"V\": matrix, \"sign\": +1 or -1}");
    const json& s = j["sign"];
    if (!s.is_number_integer() || (s.get<int>() != 1 && s.get<int>() != -1))
      fail(f.line, f.key, "sign must be 1 or -1");
    return {square(f, j["V"]), s.get<int>()};
  }

 private:
  std::string source_;
};

std::string strip_comment(const std::string& line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"' && (i == 0 || line[i - 1] != '\\')) quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

const std::set<std::string> kKnownKeys{"model", "energy", "W", "V", "a", "b", "seam_hopping", "breakpoints",
                                       "W_list", "class", "T", "C", "S", "tol_rank", "tol_eig", "tol_frame"};

const std::set<std::string>& required_keys(ModelKind kind) {
  static const std::set<std::string> dirac{"W"}, schrod{"V"}, tb{"a", "b"}, piecewise{"breakpoints", "W_list"};
  switch (kind) {
    case ModelKind::Dirac: return dirac;
    case ModelKind::Schrodinger: return schrod;
    case ModelKind::TightBinding: return tb;
    case ModelKind::PiecewiseDirac: return piecewise;
  }
  return dirac;
}

const std::set<std::string>& allowed_payload(ModelKind kind) {
  static const std::set<std::string> dirac{"W"}, schrod{"V"}, tb{"a", "b", "seam_hopping"},
      piecewise{"breakpoints", "W_list"};
  switch (kind) {
    case ModelKind::Dirac: return dirac;
    case ModelKind::Schrodinger: return schrod;
    case ModelKind::TightBinding: return tb;
    case ModelKind::PiecewiseDirac: return piecewise;
  }
  return dirac;
}

}  // namespace

ModelFile parse_model_text(std::string_view text, std::string_view source) {
  Parser p(source);
  std::map<std::string, Field> fields;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) p.fail(line_no, "", "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!kKnownKeys.count(key)) p.fail(line_no, key, "unknown key");
    if (fields.count(key)) p.fail(line_no, key, "duplicate key (first set on line " + std::to_string(fields[key].line) + ")");
    json parsed;
    try {
      parsed = json::parse(value);
    } catch (const json::parse_error& e) {
      p.fail(line_no, key, std::string("value is not valid JSON: ") + e.what());
    }
    fields[key] = Field{key, std::move(parsed), line_no};
  }

  if (!fields.count("model")) p.fail(line_no, "model", "missing (dirac | schrodinger | tight_binding | piecewise_dirac)");
  ModelFile m;
  m.source = std::string(source);
  {
    const Field& f = fields["model"];
    if (!f.value.is_string()) p.fail(f.line, f.key, "expected a string");
    const std::string kind = f.value.get<std::string>();
    if (kind == "dirac") m.kind = ModelKind::Dirac;
    else if (kind == "schrodinger") m.kind = ModelKind::Schrodinger;
    else if (kind == "tight_binding") m.kind = ModelKind::TightBinding;
    else if (kind == "piecewise_dirac") m.kind = ModelKind::PiecewiseDirac;
    else p.fail(f.line, f.key, "unknown model kind '" + kind + "'");
  }
  for (const std::string& key : required_keys(m.kind))
    if (!fields.count(key)) p.fail(fields["model"].line, key, "required for model " + std::string(to_string(m.kind)));
  static const std::set<std::string> payload_keys{"W", "V", "a", "b", "seam_hopping", "breakpoints", "W_list"};
  for (const auto& [key, f] : fields)
    if (payload_keys.count(key) && !allowed_payload(m.kind).count(key))
      p.fail(f.line, key, "not used by model " + std::string(to_string(m.kind)));

  if (fields.count("energy")) m.energy = p.number(fields["energy"], fields["energy"].value);
  if (fields.count("tol_rank")) m.tol.rank_tol = p.number(fields["tol_rank"], fields["tol_rank"].value);
  if (fields.count("tol_eig")) m.tol.eig_tol = p.number(fields["tol_eig"], fields["tol_eig"].value);
  if (fields.count("tol_frame")) m.tol.frame_tol = p.number(fields["tol_frame"], fields["tol_frame"].value);
  try {
    m.tol.validate();
  } catch (const Error& e) {
    p.fail(0, "tol_*", e.what());
  }

  switch (m.kind) {
    case ModelKind::Dirac: m.w = p.square(fields["W"], fields["W"].value); break;
    case ModelKind::Schrodinger: m.v = p.square(fields["V"], fields["V"].value); break;
    case ModelKind::TightBinding: {
      m.chain.a = p.matrix_list(fields["a"]);
      m.chain.b = p.matrix_list(fields["b"]);
      if (m.chain.a.size() != m.chain.b.size())
        p.fail(fields["b"].line, "b", "needs as many entries as 'a' (one per site of the cell)");
      const Index n = m.chain.a.front().rows();
      for (const auto* key : {"a", "b"})
        for (const Matrix& x : key == std::string("a") ? m.chain.a : m.chain.b)
          if (x.rows() != n) p.fail(fields[key].line, key, "all matrices must be " + std::to_string(n) + "x" + std::to_string(n));
      if (fields.count("seam_hopping")) {
        m.chain.seam_hopping = p.square(fields["seam_hopping"], fields["seam_hopping"].value);
        if (m.chain.seam_hopping->rows() != n) p.fail(fields["seam_hopping"].line, "seam_hopping", "wrong size");
      }
      m.chain.validate(m.tol);
      break;
    }
    case ModelKind::PiecewiseDirac: {
      const Field& bf = fields["breakpoints"];
      if (!bf.value.is_array() || bf.value.empty()) p.fail(bf.line, bf.key, "expected a non-empty list of numbers");
      for (const json& t : bf.value) m.profile.breakpoints.push_back(p.number(bf, t));
      m.profile.w = p.matrix_list(fields["W_list"]);
      try {
        m.profile.validate();
      } catch (const Error& e) {
        p.fail(fields["W_list"].line, "W_list", e.what());
      }
      break;
    }
  }

  if (fields.count("class")) {
    const Field& f = fields["class"];
    if (!f.value.is_string()) p.fail(f.line, f.key, "expected a Cartan label string");
    try {
      m.named_class = parse_cartan_class(f.value.get<std::string>());
    } catch (const Error& e) {
      p.fail(f.line, f.key, e.what());
    }
    for (const auto* key : {"T", "C", "S"})
      if (fields.count(key)) p.fail(fields[key].line, key, "cannot be combined with a named class");
  }
  const Index dim = 2 * m.half_dim();
  if (fields.count("T")) m.symmetries.t = p.antiunitary(fields["T"]);
  if (fields.count("C")) m.symmetries.c = p.antiunitary(fields["C"]);
  if (fields.count("S")) m.symmetries.s = p.square(fields["S"], fields["S"].value);
  for (const auto* key : {"T", "C", "S"}) {
    if (!fields.count(key)) continue;
    const Index rows = key == std::string("S") ? m.symmetries.s->rows()
                       : key == std::string("T") ? m.symmetries.t->v.rows()
                                                 : m.symmetries.c->v.rows();
    if (rows != dim) p.fail(fields[key].line, key, "must act on the boundary space of dimension " + std::to_string(dim));
  }
  if (m.has_explicit_symmetries()) {
    const CompatibilityReport compat = check_J_compatibility(m.symmetries, m.form(), m.tol);
    if (!compat.pass)
      throw Error(ErrorKind::InconsistentSymmetries,
                  m.source + ": declared symmetries are not compatible with the boundary form J");
  }
  return m;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, path.string() + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ModelFile load_model_file(const std::filesystem::path& path) { return parse_model_text(read_text(path), path.string()); }

std::string template_placeholder(std::string_view text) {
  static const std::regex pattern(R"(\$([A-Za-z_][A-Za-z0-9_]*))");
  std::set<std::string> names;
  const std::string s(text);
  for (auto it = std::sregex_iterator(s.begin(), s.end(), pattern); it != std::sregex_iterator(); ++it)
    names.insert((*it)[1].str());
  if (names.size() != 1) {
    std::ostringstream msg;
    msg << "template must contain exactly one swept scalar $name, found " << names.size();
    throw Error(ErrorKind::BadTemplate, msg.str());
  }
  return *names.begin();
}

std::string substitute(std::string_view text, const std::string& name, double value) {
  std::ostringstream num;
  num.precision(17);
  num << value;
  const std::string token = "$" + name;
  std::string out(text);
  for (std::size_t pos = out.find(token); pos != std::string::npos; pos = out.find(token, pos)) {
    out.replace(pos, token.size(), num.str());
    pos += num.str().size();
  }
  return out;
}

}  // namespace tenfold::cli
