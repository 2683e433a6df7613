#include "sbsplit/json_io.hpp"

#include <fstream>
#include <sstream>

namespace sbsplit {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw InvalidInput((where.empty() ? std::string("<root>") : where) + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing key \"") + key + "\"");
  return *it;
}

const Json& array(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array");
  return j;
}

long integer(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<long>();
}

std::size_t index(const Json& j, std::size_t dim, const std::string& where) {
  long v = integer(j, where);
  if (v < 0 || static_cast<std::size_t>(v) >= dim) fail(where, "index out of range");
  return static_cast<std::size_t>(v);
}

QVector vector_from_json(const Json& j, const std::string& where) {
  QVector v;
  std::size_t k = 0;
  for (const auto& x : array(j, where)) v.push_back(rat_from_json(x, where + "/" + std::to_string(k++)));
  return v;
}

Json vector_to_json(const QVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

// Sparse {"i","j","k","c"} entries into a dim x dim table of coordinate vectors.
std::vector<std::vector<QVector>> table_from_json(const Json& entries, std::size_t dim, const std::string& where) {
  std::vector<std::vector<QVector>> t(dim, std::vector<QVector>(dim, QVector(dim, Rat(0))));
  std::size_t n = 0;
  for (const auto& e : array(entries, where)) {
    std::string w = where + "/" + std::to_string(n++);
    std::size_t i = index(field(e, "i", w), dim, w + "/i");
    std::size_t jj = index(field(e, "j", w), dim, w + "/j");
    std::size_t k = index(field(e, "k", w), dim, w + "/k");
    t[i][jj][k] = rat_from_json(field(e, "c", w), w + "/c");
  }
  return t;
}

Json entry(std::size_t i, std::size_t j, std::size_t k, const Rat& c) {
  Json e;
  e["i"] = i;
  e["j"] = j;
  e["k"] = k;
  e["c"] = to_json(c);
  return e;
}

std::size_t dimension(const Json& j, const std::string& where) {
  long d = integer(field(j, "dim", where), where + "/dim");
  if (d <= 0 || d > 4096) fail(where + "/dim", "dimension out of range");
  return static_cast<std::size_t>(d);
}

Json poly_to_json(const UniPoly& p) {
  Json a = Json::array();
  for (const auto& c : p.coeffs()) a.push_back(to_json(c));
  return a;
}

}  // namespace

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    auto p = msg.find("syntax error");
    if (p != std::string::npos) msg = msg.substr(p);
    throw InvalidInput(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput(path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str(), path);
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

Json to_json(const Rat& q) { return to_string(q); }

Rat rat_from_json(const Json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a rational string");
  try {
    return parse_rat(j.get<std::string>());
  } catch (const InvalidInput& e) {
    fail(where, e.what());
  }
}

Json to_json(const QMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json r = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(to_json(m(i, j)));
    rows.push_back(std::move(r));
  }
  return rows;
}

QMatrix matrix_from_json(const Json& j, const std::string& where) {
  const auto& rows = array(j, where);
  if (rows.empty()) fail(where, "empty matrix");
  std::size_t cols = array(rows[0], where + "/0").size();
  QMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = array(rows[i], where + "/" + std::to_string(i));
    if (r.size() != cols) fail(where + "/" + std::to_string(i), "ragged matrix");
    for (std::size_t c = 0; c < cols; ++c)
      m(i, c) = rat_from_json(r[c], where + "/" + std::to_string(i) + "/" + std::to_string(c));
  }
  return m;
}

Json surface_to_json(const SurfaceQuadrics& s) {
  Json j;
  j["n"] = 10;
  Json q = Json::array();
  for (const auto& a : s.quadrics) q.push_back(to_json(a));
  j["quadrics"] = std::move(q);
  return j;
}

SurfaceQuadrics surface_from_json(const Json& j) {
  if (integer(field(j, "n", ""), "/n") != 10) fail("/n", "expected n = 10");
  SurfaceQuadrics s;
  std::size_t k = 0;
  for (const auto& q : array(field(j, "quadrics", ""), "/quadrics")) {
    std::string w = "/quadrics/" + std::to_string(k++);
    QMatrix a = matrix_from_json(q, w);
    if (a.rows() != 10 || a.cols() != 10) fail(w, "expected a 10x10 matrix");
    s.quadrics.push_back(std::move(a));
  }
  return s;
}

Json map_to_json(const QMatrix& m) {
  Json j;
  j["matrix"] = to_json(m);
  j["status"] = "split";
  return j;
}

QMatrix map_from_json(const Json& j) {
  QMatrix m = matrix_from_json(field(j, "matrix", ""), "/matrix");
  if (m.rows() != 10 || m.cols() != 10) fail("/matrix", "expected a 10x10 matrix");
  return m;
}

Json lie_to_json(const LieAlgebra& g) {
  Json j;
  j["dim"] = g.dim();
  Json sc = Json::array();
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t jj = i + 1; jj < g.dim(); ++jj)
      for (std::size_t k = 0; k < g.dim(); ++k)
        if (sgn(g.sc(i, jj)[k]) != 0) sc.push_back(entry(i, jj, k, g.sc(i, jj)[k]));
  j["sc"] = std::move(sc);
  return j;
}

LieAlgebra lie_from_json(const Json& j) {
  std::size_t dim = dimension(j, "");
  auto t = table_from_json(field(j, "sc", ""), dim, "/sc");
  // Entries may list either or both orders; antisymmetry fills the other.
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t jj = i + 1; jj < dim; ++jj)
      for (std::size_t k = 0; k < dim; ++k) {
        Rat a = t[i][jj][k], b = t[jj][i][k];
        if (sgn(a) == 0) t[i][jj][k] = -b;
        else if (sgn(b) == 0) t[jj][i][k] = -a;
        else if (a != -b) fail("/sc", "structure constants are not antisymmetric");
      }
  LieAlgebra g(dim, std::move(t));
  g.validate();
  return g;
}

Json algebra_to_json(const AssocAlg& a) {
  Json j;
  j["dim"] = a.dim();
  Json mt = Json::array();
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t jj = 0; jj < a.dim(); ++jj)
      for (std::size_t k = 0; k < a.dim(); ++k)
        if (sgn(a.mt(i, jj)[k]) != 0) mt.push_back(entry(i, jj, k, a.mt(i, jj)[k]));
  j["mt"] = std::move(mt);
  j["unit"] = vector_to_json(a.unit());
  return j;
}

AssocAlg algebra_from_json(const Json& j) {
  std::size_t dim = dimension(j, "");
  auto t = table_from_json(field(j, "mt", ""), dim, "/mt");
  QVector unit = vector_from_json(field(j, "unit", ""), "/unit");
  if (unit.size() != dim) fail("/unit", "length differs from dim");
  AssocAlg a(dim, std::move(t), std::move(unit));
  a.validate();
  return a;
}

Json field_to_json(const FieldPtr& f) {
  Json j;
  j["tower"] = Json::array({poly_to_json(f->modulus())});
  return j;
}

FieldPtr field_from_json(const Json& j) {
  const auto& tower = array(field(j, "tower", ""), "/tower");
  if (tower.size() != 1) fail("/tower", "expected a single absolute step");
  QVector c = vector_from_json(tower[0], "/tower/0");
  UniPoly m(c, Rat(0));
  if (m.degree() < 1) fail("/tower/0", "polynomial of degree < 1");
  if (!m.is_monic()) fail("/tower/0", "polynomial is not monic");
  try {
    return NumberField::create(m);
  } catch (const PreconditionError& e) {
    fail("/tower/0", e.what());
  }
}

Json elem_to_json(const NfElem& e) {
  Json j;
  j["coords"] = vector_to_json(e.coords());
  return j;
}

NfElem elem_from_json(const Json& j, const FieldPtr& f) {
  QVector c = vector_from_json(field(j, "coords", ""), "/coords");
  if (static_cast<int>(c.size()) != f->degree()) fail("/coords", "length differs from the field degree");
  return NfElem(f, std::move(c));
}

Json certificate_to_json(const NormCertificate& c) {
  Json j;
  j["prime"] = c.prime;
  j["kind"] = c.kind;
  j["witness"] = poly_to_json(c.witness);
  j["valuation"] = c.valuation;
  return j;
}

NormCertificate certificate_from_json(const Json& j) {
  NormCertificate c;
  long p = integer(field(j, "prime", ""), "/prime");
  if (p < 2) fail("/prime", "expected a prime");
  c.prime = static_cast<unsigned long>(p);
  const auto& kind = field(j, "kind", "");
  if (!kind.is_string()) fail("/kind", "expected a string");
  c.kind = kind.get<std::string>();
  c.witness = UniPoly(vector_from_json(field(j, "witness", ""), "/witness"), Rat(0));
  c.valuation = integer(field(j, "valuation", ""), "/valuation");
  return c;
}

Json csa_result_to_json(const CsaResult& r) {
  Json j;
  j["status"] = to_string(r.status);
  if (!r.route.empty()) j["route"] = r.route;
  if (r.certificate) j["certificate"] = certificate_to_json(*r.certificate);
  if (r.presentation) {
    Json p;
    p["field"] = field_to_json(r.presentation->galois.field);
    p["sigma"] = elem_to_json(r.presentation->galois.sigma_image);
    p["beta"] = to_json(r.presentation->beta);
    p["a"] = vector_to_json(r.presentation->a);
    p["b"] = vector_to_json(r.presentation->b);
    j["presentation"] = std::move(p);
  }
  if (r.witness) {
    Json imgs = Json::array();
    for (const auto& m : r.witness->images) imgs.push_back(to_json(m));
    j["witness"] = Json{{"images", std::move(imgs)}};
  }
  if (r.status == CsaResult::Status::Unknown) j["norm_bound"] = r.norm_bound;
  return j;
}

Json sl3_decision_to_json(const Sl3Decision& d) {
  Json j;
  j["status"] = to_string(d.status);
  if (!d.route.empty()) j["route"] = d.route;
  if (!d.reason.empty()) j["reason"] = d.reason;
  j["field_degree"] = d.field_degree;
  if (d.assoc_dim != 0) j["assoc_dim"] = d.assoc_dim;
  if (d.status == Sl3Decision::Status::Split) {
    Json imgs = Json::array();
    for (const auto& m : d.images) imgs.push_back(to_json(m));
    j["images"] = std::move(imgs);
  }
  if (d.csa) j["csa"] = csa_result_to_json(*d.csa);
  return j;
}

Json verdict_to_json(const PipelineVerdict& v) {
  Json j;
  j["status"] = to_string(v.status);
  j["stage"] = v.stage;
  if (!v.reason.empty()) j["reason"] = v.reason;
  j["lie_dim"] = v.lie_dim;
  if (v.lie) {
    if (!v.lie->route.empty()) j["route"] = v.lie->route;
    if (v.lie->csa) {
      if (v.lie->csa->certificate) j["certificate"] = certificate_to_json(*v.lie->csa->certificate);
      if (v.lie->csa->presentation) j["presentation"] = csa_result_to_json(*v.lie->csa)["presentation"];
    }
  }
  if (v.matrix) {
    j["matrix"] = to_json(*v.matrix);
    j["tau_applied"] = v.tau_applied;
  }
  return j;
}

Json norm_result_to_json(const NormResult& r) {
  Json j;
  j["status"] = to_string(r.status);
  if (r.solution) j["x"] = vector_to_json(r.solution->coords());
  if (r.certificate) j["certificate"] = certificate_to_json(*r.certificate);
  j["search_bound"] = r.search_bound;
  return j;
}

}  // namespace sbsplit
