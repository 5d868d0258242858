#include "singer/serialize.hpp"

#include <fstream>
#include <sstream>

namespace singer {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::ParseError, where + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(where, std::string("missing field '") + key + "'");
  return *it;
}

u64 read_u64(const Json& j, const std::string& where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) bad(where, "expected a non-negative integer");
  return j.get<u64>();
}

Json matrix_json(const Mat& A) { return Json(to_codes(A)); }

Mat read_matrix(const Json& j, const GaloisField& F, const std::string& where) {
  if (!j.is_array() || j.empty()) bad(where, "expected a non-empty list of rows");
  std::vector<std::vector<u64>> rows;
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::string at = where + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || j[r].size() != j[0].size()) bad(at, "rows must be lists of equal length");
    std::vector<u64> row;
    for (std::size_t c = 0; c < j[r].size(); ++c) {
      const std::string cell = at + "[" + std::to_string(c) + "]";
      u64 v = read_u64(j[r][c], cell);
      if (v >= F.size()) bad(cell, "code " + std::to_string(v) + " outside a field of size " + std::to_string(F.size()));
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  return from_codes(F, rows);
}

std::vector<Mat> read_matrices(const Json& j, const GaloisField& F, const std::string& where) {
  if (!j.is_array()) bad(where, "expected a list of matrices");
  std::vector<Mat> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(read_matrix(j[i], F, where + "[" + std::to_string(i) + "]"));
  return out;
}

Fe read_element(const Json& j, const GaloisField& F, const std::string& where) {
  u64 v = read_u64(j, where);
  if (v >= F.size()) bad(where, "code outside the field");
  return F.element(v);
}

void write_header(Json& j, const char* format, const FieldCtx& ctx, const ModuleSpec& spec) {
  j["format"] = format;
  j["p"] = ctx.p();
  j["f"] = ctx.f();
  j["d"] = ctx.d();
  j["q"] = ctx.q();
  j["spec"] = factors_to_string(spec.factors);
  j["defining_poly_q"] = ctx.defining_poly_q();
  j["defining_poly_qd"] = ctx.defining_poly_qd();
}

std::pair<FieldCtx, ModuleSpec> read_header(const Json& j, const char* format) {
  const Json& fmt = field(j, "format", "$");
  if (!fmt.is_string() || fmt.get<std::string>() != format) bad("$.format", std::string("expected \"") + format + "\"");
  u64 p = read_u64(field(j, "p", "$"), "$.p");
  u64 f = read_u64(field(j, "f", "$"), "$.f");
  u64 d = read_u64(field(j, "d", "$"), "$.d");
  if (!is_prime_u64(p) || f < 1 || d < 1 || f > 64 || d > 64) bad("$", "p must be prime and f, d positive");
  FieldCtx ctx(p, static_cast<unsigned>(f), static_cast<unsigned>(d));
  if (field(j, "q", "$") != Json(ctx.q())) bad("$.q", "q differs from p^f");
  if (field(j, "defining_poly_q", "$") != Json(ctx.defining_poly_q())) bad("$.defining_poly_q", "polynomial differs from the canonical one");
  if (field(j, "defining_poly_qd", "$") != Json(ctx.defining_poly_qd())) bad("$.defining_poly_qd", "polynomial differs from the canonical one");
  const Json& s = field(j, "spec", "$");
  if (!s.is_string()) bad("$.spec", "expected a string");
  ModuleSpec spec{ctx.d(), ctx.q(), parse_factors(s.get<std::string>())};
  return {ctx, spec};
}

void check_shapes(const std::vector<Mat>& ms, Index n, const std::string& where) {
  for (std::size_t i = 0; i < ms.size(); ++i)
    if (ms[i].rows() != n || ms[i].cols() != n)
      bad(where + "[" + std::to_string(i) + "]", "expected a " + std::to_string(n) + " x " + std::to_string(n) + " matrix");
}

} // namespace

Json instance_to_json(const PlantedInstance& inst, bool include_oracle) {
  Json j;
  write_header(j, kInstanceFormat, inst.ctx, inst.spec);
  j["seed"] = inst.seed;
  Json gens = Json::array();
  for (const Mat& g : inst.generators) gens.push_back(matrix_json(g));
  j["generators"] = gens;
  if (include_oracle && inst.oracle) {
    Json o;
    Json A = Json::array();
    for (const Mat& a : inst.oracle->A) A.push_back(matrix_json(a));
    o["A"] = A;
    o["T"] = matrix_json(inst.oracle->T);
    o["seed"] = inst.seed;
    o["singer"] = inst.oracle->singer;
    j["oracle"] = o;
  }
  return j;
}

PlantedInstance instance_from_json(const Json& j) {
  auto [ctx, spec] = read_header(j, kInstanceFormat);
  PlantedInstance inst{ctx, spec, {}, read_u64(field(j, "seed", "$"), "$.seed"), std::nullopt};
  const Index n = static_cast<Index>(dim(spec));
  inst.generators = read_matrices(field(j, "generators", "$"), ctx.Fq(), "$.generators");
  if (inst.generators.empty()) bad("$.generators", "expected at least one generator");
  check_shapes(inst.generators, n, "$.generators");
  auto it = j.find("oracle");
  if (it != j.end()) {
    Oracle o;
    o.A = read_matrices(field(*it, "A", "$.oracle"), ctx.Fq(), "$.oracle.A");
    check_shapes(o.A, static_cast<Index>(ctx.d()), "$.oracle.A");
    o.T = read_matrix(field(*it, "T", "$.oracle"), ctx.Fq(), "$.oracle.T");
    if (o.T.rows() != n || o.T.cols() != n) bad("$.oracle.T", "scrambler size differs from dim(W)");
    const Json& sg = field(*it, "singer", "$.oracle");
    if (!sg.is_boolean()) bad("$.oracle.singer", "expected a boolean");
    o.singer = sg.get<bool>();
    if (o.A.size() != inst.generators.size()) bad("$.oracle.A", "count differs from the public generators");
    inst.oracle = std::move(o);
  }
  return inst;
}

Json result_to_json(const RewriteResult& r) {
  Json j;
  write_header(j, kResultFormat, r.ctx, r.spec);
  j["omega"] = r.omega.value();
  Json phi = Json::array();
  for (const Mat& m : r.phi) phi.push_back(matrix_json(m));
  j["phi"] = phi;
  j["C"] = matrix_json(r.C);
  Json eig = Json::array();
  for (const Fe& e : r.eigenvalues) eig.push_back(e.value());
  j["eigenvalues"] = eig;
  j["labels"] = r.labels;
  const auto names = basis_labels(r.spec);
  Json shown = Json::array();
  for (std::size_t idx : r.labels) shown.push_back(to_string(names[idx]));
  j["label_names"] = shown;
  Json sc = Json::array();
  for (const Fe& s : r.scalars) sc.push_back(s.value());
  j["scalars"] = sc;
  j["stats"] = {{"elements_sampled", r.stats.elements_sampled}, {"dlog_calls", r.stats.dlog_calls}, {"retries", r.stats.retries}};
  return j;
}

RewriteResult result_from_json(const Json& j) {
  auto [ctx, spec] = read_header(j, kResultFormat);
  const GaloisField& F = ctx.Fqd();
  const Index n = static_cast<Index>(dim(spec));
  RewriteResult r{ctx, spec, {}, Mat(), {}, {}, Fe(), {}, {}};
  r.omega = read_element(field(j, "omega", "$"), F, "$.omega");
  r.phi = read_matrices(field(j, "phi", "$"), F, "$.phi");
  check_shapes(r.phi, static_cast<Index>(ctx.d()), "$.phi");
  r.C = read_matrix(field(j, "C", "$"), F, "$.C");
  if (r.C.rows() != n || r.C.cols() != n) bad("$.C", "eigenbasis size differs from dim(W)");
  const Json& eig = field(j, "eigenvalues", "$");
  const Json& lab = field(j, "labels", "$");
  const Json& sc = field(j, "scalars", "$");
  if (!eig.is_array() || !lab.is_array() || !sc.is_array()) bad("$", "eigenvalues, labels and scalars must be lists");
  for (std::size_t i = 0; i < eig.size(); ++i) r.eigenvalues.push_back(read_element(eig[i], F, "$.eigenvalues[" + std::to_string(i) + "]"));
  for (std::size_t i = 0; i < lab.size(); ++i) {
    u64 v = read_u64(lab[i], "$.labels[" + std::to_string(i) + "]");
    if (v >= static_cast<u64>(n)) bad("$.labels[" + std::to_string(i) + "]", "label index out of range");
    r.labels.push_back(static_cast<std::size_t>(v));
  }
  for (std::size_t i = 0; i < sc.size(); ++i) r.scalars.push_back(read_element(sc[i], F, "$.scalars[" + std::to_string(i) + "]"));
  const Json& st = field(j, "stats", "$");
  r.stats.elements_sampled = read_u64(field(st, "elements_sampled", "$.stats"), "$.stats.elements_sampled");
  r.stats.dlog_calls = read_u64(field(st, "dlog_calls", "$.stats"), "$.stats.dlog_calls");
  r.stats.retries = read_u64(field(st, "retries", "$.stats"), "$.stats.retries");
  return r;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, "byte " + std::to_string(e.byte) + ": malformed JSON");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidInput, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorCode::InvalidInput, "write failed for " + path);
}

} // namespace singer
