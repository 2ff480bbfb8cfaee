#include "quadmorph/document.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "quadmorph/error.hpp"

namespace quadmorph {

namespace {

using json = nlohmann::json;

const char* const kKinds[] = {"clifford", "osystem", "orthomul", "qhm"};

json matrix_to_json(const Matrix& a) {
  json rows = json::array();
  for (std::size_t r = 0; r < a.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < a.cols(); ++c) {
      if (a.is_exact())
        row.push_back(a.rational(r, c).get_str());
      else
        row.push_back(a.value(r, c));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& rows, bool exact) {
  if (!rows.is_array() || rows.empty() || !rows.front().is_array() || rows.front().empty())
    throw Error(ErrorKind::Format, "a matrix must be a nonempty array of nonempty rows");
  const std::size_t nr = rows.size(), nc = rows.front().size();
  std::vector<Rational> q;
  std::vector<double> d;
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != nc) throw Error(ErrorKind::Format, "matrix rows differ in length");
    for (const auto& e : row) {
      if (exact) {
        if (e.is_string())
          q.push_back(parse_rational(e.get<std::string>()));
        else if (e.is_number_integer())
          q.emplace_back(e.get<long>());
        else
          throw Error(ErrorKind::Format, "rational entries must be \"p/q\" strings or integers");
      } else {
        if (e.is_number())
          d.push_back(e.get<double>());
        else if (e.is_string())
          d.push_back(parse_rational(e.get<std::string>()).get_d());
        else
          throw Error(ErrorKind::Format, "float entries must be numbers");
      }
    }
  }
  return exact ? Matrix::exact(nr, nc, std::move(q)) : Matrix::approx(nr, nc, std::move(d));
}

bool all_exact(const std::vector<Matrix>& ms) {
  return std::all_of(ms.begin(), ms.end(), [](const Matrix& m) { return m.is_exact(); });
}

std::vector<Matrix> uniform(const std::vector<Matrix>& ms) {
  if (all_exact(ms)) return ms;
  std::vector<Matrix> out;
  for (const auto& m : ms) out.push_back(m.to_approx());
  return out;
}

ObjectDocument make(const std::string& kind, std::size_t a, std::size_t b, const std::vector<Matrix>& ms) {
  ObjectDocument doc{kind, {a, b}, all_exact(ms), uniform(ms), {}};
  return doc;
}

void require_kind(const ObjectDocument& doc, const std::string& kind) {
  if (doc.kind != kind)
    throw Error(ErrorKind::IncompatibleKind, "expected a " + kind + " document, got " + doc.kind);
}

void check_shapes(const ObjectDocument& doc) {
  const auto [a, b] = doc.dims;
  auto fail = [&](const std::string& what) { throw Error(ErrorKind::Format, doc.kind + ": " + what); };
  if (a == 0 || b == 0) fail("dims must be positive");
  if (doc.kind == "orthomul") {
    if (doc.matrices.size() != a) fail("expected one slice per basis vector of the first factor");
    const std::size_t rows = doc.matrices.front().rows();
    for (const auto& m : doc.matrices)
      if (m.cols() != b || m.rows() != rows) fail("slice shapes disagree with dims");
    return;
  }
  if (doc.matrices.size() != b) fail("expected " + std::to_string(b) + " matrices");
  for (const auto& m : doc.matrices)
    if (m.rows() != a || m.cols() != a) fail("matrices must be " + std::to_string(a) + "x" + std::to_string(a));
  if (doc.kind == "clifford" && a % 2 != 0) fail("ambient dimension must be even");
}

}  // namespace

std::string serialize(const ObjectDocument& doc) {
  json j;
  j["kind"] = doc.kind;
  j["dims"] = json::array({doc.dims.first, doc.dims.second});
  j["scalars"] = doc.exact ? "rational" : "float";
  json ms = json::array();
  for (const auto& m : doc.matrices) ms.push_back(matrix_to_json(doc.exact ? m : m.to_approx()));
  j["matrices"] = std::move(ms);
  j["meta"] = json::object();
  for (const auto& [k, v] : doc.meta) j["meta"][k] = v;
  return j.dump(2) + "\n";
}

ObjectDocument parse_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Format, std::string("malformed JSON: ") + e.what());
  }
  try {
    if (!j.is_object()) throw Error(ErrorKind::Format, "document must be a JSON object");
    ObjectDocument doc;
    doc.kind = j.at("kind").get<std::string>();
    if (std::find(std::begin(kKinds), std::end(kKinds), doc.kind) == std::end(kKinds))
      throw Error(ErrorKind::Format, "unknown kind " + doc.kind);
    const auto& dims = j.at("dims");
    if (!dims.is_array() || dims.size() != 2) throw Error(ErrorKind::Format, "dims must be a pair");
    doc.dims = {dims[0].get<std::size_t>(), dims[1].get<std::size_t>()};
    const std::string scalars = j.value("scalars", "rational");
    if (scalars != "rational" && scalars != "float")
      throw Error(ErrorKind::Format, "scalars must be \"rational\" or \"float\"");
    doc.exact = scalars == "rational";
    const auto& ms = j.at("matrices");
    if (!ms.is_array() || ms.empty()) throw Error(ErrorKind::Format, "matrices must be a nonempty array");
    for (const auto& m : ms) doc.matrices.push_back(matrix_from_json(m, doc.exact));
    if (j.contains("meta") && j["meta"].is_object())
      for (const auto& [k, v] : j["meta"].items()) doc.meta[k] = v.is_string() ? v.get<std::string>() : v.dump();
    check_shapes(doc);
    return doc;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Format, std::string("bad document: ") + e.what());
  }
}

ObjectDocument to_document(const CliffordSystem& cs) { return make("clifford", cs.two_m, cs.n, cs.matrices); }
ObjectDocument to_document(const OSystem& os) { return make("osystem", os.m, os.n, os.matrices); }
ObjectDocument to_document(const orthomul::OrthogonalMultiplication& mu) {
  return make("orthomul", mu.p, mu.q, mu.slices);
}
ObjectDocument to_document(const QuadraticHarmonicMorphism& phi) {
  return make("qhm", phi.m, phi.n, phi.components);
}

CliffordSystem as_clifford(const ObjectDocument& doc) {
  require_kind(doc, "clifford");
  return {doc.dims.first, doc.dims.second, doc.matrices};
}

OSystem as_osystem(const ObjectDocument& doc) {
  require_kind(doc, "osystem");
  return {doc.dims.first, doc.dims.second, doc.matrices};
}

orthomul::OrthogonalMultiplication as_orthomul(const ObjectDocument& doc) {
  require_kind(doc, "orthomul");
  return {doc.dims.first, doc.dims.second, doc.matrices.front().rows(), doc.matrices};
}

QuadraticHarmonicMorphism as_qhm(const ObjectDocument& doc) {
  require_kind(doc, "qhm");
  return {doc.dims.first, doc.dims.second, doc.matrices};
}

}  // namespace quadmorph
