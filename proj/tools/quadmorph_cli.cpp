// quadmorph: construct, verify, convert and classify Clifford systems,
// O-systems, orthogonal multiplications and quadratic harmonic morphisms.
//
// Exit codes: 0 success, 1 mathematical rejection, 2 input or format error.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "quadmorph/clifford.hpp"
#include "quadmorph/document.hpp"
#include "quadmorph/error.hpp"
#include "quadmorph/orthomul.hpp"
#include "quadmorph/osystem.hpp"
#include "quadmorph/qhm.hpp"

namespace {

using namespace quadmorph;
using json = nlohmann::json;

constexpr int kOk = 0;
constexpr int kRejected = 1;
constexpr int kFormat = 2;

struct Options {
  std::string out;
  std::uint64_t seed = 0;
  std::size_t samples = 64;
  double tol = 1e-9;
  std::string format = "json";
  std::string command;
};

TolerancePolicy policy(const Options& o) {
  TolerancePolicy t;
  t.identity_tol = o.tol;
  t.validate();
  return t;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Format, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.out, std::ios::binary);
  if (!out) throw Error(ErrorKind::Format, "cannot write " + o.out);
  out << text;
}

void emit_document(const Options& o, ObjectDocument doc) {
  doc.meta["command"] = o.command;
  doc.meta["seed"] = std::to_string(o.seed);
  doc.meta["version"] = QUADMORPH_VERSION;
  emit(o, serialize(doc));
}

std::string join_indices(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

json error_json(const Error& e) {
  json j{{"status", "fail"}, {"error", std::string(to_string(e.kind()))}, {"message", e.what()}};
  if (!e.indices().empty()) j["indices"] = e.indices();
  if (e.residual() != 0.0) j["residual"] = e.residual();
  return j;
}

QuadraticHarmonicMorphism qhm_of(const ObjectDocument& doc) {
  if (doc.kind == "clifford") return qhm::from_clifford(as_clifford(doc));
  return as_qhm(doc);
}

// ------------------------------------------------------------------ sigma

int cmd_sigma(const Options& o, std::size_t m) {
  const auto hr = osystem::hurwitz_radon(m);
  if (o.format == "json") {
    emit(o, json{{"m", hr.m}, {"r", hr.r}, {"c", hr.c}, {"d", hr.d}, {"sigma", hr.sigma}}.dump() + "\n");
  } else {
    std::ostringstream s;
    s << "m=" << hr.m << " r=" << hr.r << " c=" << hr.c << " d=" << hr.d << " sigma=" << hr.sigma << "\n";
    emit(o, s.str());
  }
  return kOk;
}

// -------------------------------------------------------------- construct

int cmd_construct(const Options& o, const std::string& kind, std::size_t n, std::size_t m, std::size_t hopf) {
  if (kind == "clifford") {
    if (n == 0) throw Error(ErrorKind::Format, "construct clifford needs --n");
    emit_document(o, to_document(clifford::construct_irreducible(n)));
  } else if (kind == "osystem") {
    if (m == 0) throw Error(ErrorKind::Format, "construct osystem needs --m");
    emit_document(o, to_document(osystem::construct_range_maximal(m)));
  } else if (kind == "orthomul") {
    if (n != 0) {
      emit_document(o, to_document(orthomul::standard_multiplication(n)));
    } else if (m != 0) {
      emit_document(o, to_document(orthomul::from_osystem(osystem::construct_range_maximal(m))));
    } else {
      throw Error(ErrorKind::Format, "construct orthomul needs --n (1, 2, 4, 8) or --m");
    }
  } else if (kind == "qhm") {
    if (hopf != 0) {
      emit_document(o, to_document(orthomul::hopf_construction(orthomul::standard_multiplication(hopf))));
    } else if (n != 0) {
      emit_document(o, to_document(qhm::from_clifford(clifford::construct_irreducible(n))));
    } else {
      throw Error(ErrorKind::Format, "construct qhm needs --hopf or --n");
    }
  } else {
    throw Error(ErrorKind::Format, "unknown kind " + kind);
  }
  return kOk;
}

// ----------------------------------------------------------------- verify

int cmd_verify(const Options& o, const std::string& file) {
  const ObjectDocument doc = parse_document(read_file(file));
  const TolerancePolicy tol = policy(o);
  json report{{"kind", doc.kind}, {"dims", {doc.dims.first, doc.dims.second}}};
  try {
    if (doc.kind == "clifford") {
      clifford::verify_clifford(doc.matrices, tol);
    } else if (doc.kind == "osystem") {
      osystem::verify_osystem(doc.matrices, tol);
    } else if (doc.kind == "orthomul") {
      const auto r = orthomul::verify_orthomul(as_orthomul(doc), o.samples, o.seed, tol);
      report["max_defect"] = r.max_defect;
      report["exact_path"] = r.exact_path;
      if (!r.holds) {
        report["status"] = "fail";
        report["error"] = "NotNormPreserving";
        emit(o, report.dump(2) + "\n");
        return kRejected;
      }
    } else {
      const auto sv = qhm::sampled_check(doc.matrices, o.samples, o.seed);
      qhm::verify_qhm(doc.matrices, tol, o.samples, o.seed);
      report["sampled_max_defect"] = sv.max_defect;
      report["samples"] = o.samples;
    }
  } catch (const Error& e) {
    if (e.is_format_error()) throw;
    json j = error_json(e);
    j["kind"] = report["kind"];
    j["dims"] = report["dims"];
    emit(o, j.dump(2) + "\n");
    return kRejected;
  }
  report["status"] = "pass";
  emit(o, report.dump(2) + "\n");
  return kOk;
}

// --------------------------------------------------------------- classify

json classification_json(const qhm::ClassificationReport& r) {
  json j;
  j["q_rank"] = r.q_rank;
  j["spectrum"] = {{"positive", r.positive_eigenvalues}, {"zero_count", r.zero_count}};
  j["q_nonsingular"] = r.is_q_nonsingular;
  j["umbilical"] = r.is_umbilical;
  json scales = json::array(), parts = json::array();
  for (const auto& s : r.splitting) {
    scales.push_back(s.scale);
    parts.push_back({{"scale", s.scale}, {"dims", {s.summand.m, s.summand.n}}});
  }
  j["scales"] = scales;
  j["splitting"] = parts;
  return j;
}

int cmd_classify(const Options& o, const std::string& file) {
  const ObjectDocument doc = parse_document(read_file(file));
  const TolerancePolicy tol = policy(o);
  if (doc.kind != "qhm" && doc.kind != "clifford")
    throw Error(ErrorKind::IncompatibleKind, "classify needs a qhm or clifford document");
  const auto phi = qhm::verify_qhm(qhm_of(doc).components, tol, o.samples, o.seed);
  emit(o, classification_json(qhm::classify(phi, tol)).dump(2) + "\n");
  return kOk;
}

// ---------------------------------------------------------------- convert

int cmd_convert(const Options& o, const std::string& file, const std::string& to) {
  const ObjectDocument doc = parse_document(read_file(file));
  const TolerancePolicy tol = policy(o);
  const std::string& from = doc.kind;
  if (from == "qhm" && to == "clifford") {
    const auto phi = qhm::verify_qhm(doc.matrices, tol, o.samples, o.seed);
    const auto report = qhm::classify(phi, tol);
    if (!report.is_umbilical || !report.is_q_nonsingular)
      throw Error(ErrorKind::NotUmbilical, "only umbilical Q-nonsingular maps come from Clifford systems");
    const double lambda = report.positive_eigenvalues.front();
    const bool integral = phi.is_exact() && lambda == std::round(lambda);
    const Scalar scale = integral ? Scalar(static_cast<long>(lambda)) : Scalar(lambda);
    const auto unit = qhm::scaled(phi, Scalar(1) / scale);
    emit_document(o, to_document(clifford::verify_clifford(unit.components, tol)));
  } else if (from == "clifford" && to == "qhm") {
    emit_document(o, to_document(qhm::from_clifford(clifford::verify_clifford(doc.matrices, tol))));
  } else if (from == "clifford" && to == "osystem") {
    emit_document(o, to_document(osystem::from_clifford(clifford::verify_clifford(doc.matrices, tol), tol)));
  } else if (from == "osystem" && to == "clifford") {
    emit_document(o, to_document(osystem::to_clifford(osystem::verify_osystem(doc.matrices, tol))));
  } else if (from == "osystem" && to == "orthomul") {
    emit_document(o, to_document(orthomul::from_osystem(osystem::verify_osystem(doc.matrices, tol))));
  } else if (from == "orthomul" && to == "osystem") {
    emit_document(o, to_document(orthomul::to_osystem(as_orthomul(doc), tol)));
  } else {
    throw Error(ErrorKind::IncompatibleKind, "no conversion from " + from + " to " + to);
  }
  return kOk;
}

// ----------------------------------------------------------------- extend

int cmd_extend(const Options& o, const std::string& file) {
  const ObjectDocument doc = parse_document(read_file(file));
  const TolerancePolicy tol = policy(o);
  const auto phi = qhm::verify_qhm(qhm_of(doc).components, tol, o.samples, o.seed);
  emit_document(o, to_document(qhm::range_extend(phi, tol, o.seed)));
  return kOk;
}

// ------------------------------------------------------------------ split

int cmd_split(const Options& o, const std::string& file) {
  const ObjectDocument doc = parse_document(read_file(file));
  const TolerancePolicy tol = policy(o);
  const auto phi = qhm::verify_qhm(qhm_of(doc).components, tol, o.samples, o.seed);
  const auto report = qhm::classify(phi, tol);
  json j;
  j["scales"] = json::array();
  j["summands"] = json::array();
  for (const auto& s : report.splitting) {
    j["scales"].push_back(s.scale);
    ObjectDocument part = to_document(s.summand);
    j["summands"].push_back(json::parse(serialize(part)));
  }
  j["coordinate_map"] = json::parse(serialize(ObjectDocument{"qhm", {report.coordinate_map.cols(), 1}, false,
                                                             {report.coordinate_map.to_approx()}, {}}))["matrices"][0];
  emit(o, j.dump(2) + "\n");
  return kOk;
}

// ------------------------------------------------------------------- eval

int cmd_eval(const Options& o, const std::string& file, const std::string& point) {
  const ObjectDocument doc = parse_document(read_file(file));
  std::vector<double> x;
  std::stringstream ss(point);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      x.push_back(parse_rational(item).get_d());
    } catch (const Error&) {
      try {
        x.push_back(std::stod(item));
      } catch (const std::exception&) {
        throw Error(ErrorKind::Format, "bad coordinate " + item);
      }
    }
  }
  const auto phi = qhm_of(doc);
  emit(o, json(qhm::evaluate(phi, x)).dump() + "\n");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quadratic harmonic morphisms, Clifford systems, O-systems and orthogonal multiplications"};
  app.require_subcommand(1);
  Options o;
  if (const char* env = std::getenv("QHM_SEED")) {
    try {
      o.seed = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "error: QHM_SEED is not an unsigned integer\n";
      return kFormat;
    }
  }
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", o.out, "Output file (stdout when omitted)");
    sub->add_option("--seed", o.seed, "Seed for sampled checks");
    sub->add_option("--samples", o.samples, "Number of sampled points")->check(CLI::PositiveNumber);
    sub->add_option("--tol", o.tol, "Identity tolerance (relative Frobenius)")->check(CLI::PositiveNumber);
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  };

  std::size_t sigma_m = 0;
  auto* sigma = app.add_subcommand("sigma", "Hurwitz-Radon decomposition of m");
  sigma->add_option("m", sigma_m)->required()->check(CLI::PositiveNumber);
  add_common(sigma);

  std::string kind;
  std::size_t n = 0, m = 0, hopf = 0;
  auto* construct = app.add_subcommand("construct", "Build a canonical object");
  construct->add_option("kind", kind)->required()->check(CLI::IsMember({"clifford", "osystem", "orthomul", "qhm"}));
  construct->add_option("--n", n, "Clifford index / algebra dimension");
  construct->add_option("--m", m, "O-system dimension");
  construct->add_option("--hopf", hopf, "Hopf construction on the algebra of this dimension");
  add_common(construct);

  std::string file;
  auto* verify = app.add_subcommand("verify", "Verify a document");
  verify->add_option("file", file)->required();
  add_common(verify);

  auto* classify = app.add_subcommand("classify", "Classify a quadratic harmonic morphism");
  classify->add_option("file", file)->required();
  add_common(classify);

  std::string to;
  auto* convert = app.add_subcommand("convert", "Convert between kinds");
  convert->add_option("file", file)->required();
  convert->add_option("--to", to)->required()->check(CLI::IsMember({"clifford", "osystem", "orthomul", "qhm"}));
  add_common(convert);

  auto* extend = app.add_subcommand("extend", "Extend a domain-minimal map to the maximal range");
  extend->add_option("file", file)->required();
  add_common(extend);

  auto* split = app.add_subcommand("split", "Split into scaled umbilical summands");
  split->add_option("file", file)->required();
  add_common(split);

  std::string point;
  auto* eval = app.add_subcommand("eval", "Evaluate a map at a point");
  eval->add_option("file", file)->required();
  eval->add_option("--x", point, "Comma-separated coordinates")->required();
  add_common(eval);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kFormat;
  }
  for (int i = 1; i < argc; ++i) o.command += (i > 1 ? " " : "") + std::string(argv[i]);
  if (o.format != "json" && o.format != "text") return kFormat;
  if (sigma->parsed() && std::find(argv, argv + argc, std::string("--format")) == argv + argc) o.format = "text";

  try {
    if (sigma->parsed()) return cmd_sigma(o, sigma_m);
    if (construct->parsed()) return cmd_construct(o, kind, n, m, hopf);
    if (verify->parsed()) return cmd_verify(o, file);
    if (classify->parsed()) return cmd_classify(o, file);
    if (convert->parsed()) return cmd_convert(o, file, to);
    if (extend->parsed()) return cmd_extend(o, file);
    if (split->parsed()) return cmd_split(o, file);
    if (eval->parsed()) return cmd_eval(o, file, point);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (!e.indices().empty()) std::cerr << "indices: " << join_indices(e.indices()) << "\n";
    return e.is_format_error() ? kFormat : kRejected;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFormat;
  }
  return kFormat;
}
