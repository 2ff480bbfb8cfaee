#pragma once

// JSON interchange format:
//   { "kind": "clifford" | "osystem" | "orthomul" | "qhm",
//     "dims": [a, b],
//     "scalars": "rational" | "float",
//     "matrices": [ [[...], ...], ... ],
//     "meta": { "command": ..., "seed": ..., "version": ... } }
// Rationals are written as "p/q" strings, floats as JSON numbers.
//
// dims: clifford [2m, n], osystem [m, n], orthomul [p, q] (n_out from the
// slice rows), qhm [m, n].

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "quadmorph/matrix.hpp"
#include "quadmorph/orthomul.hpp"
#include "quadmorph/systems.hpp"

namespace quadmorph {

struct ObjectDocument {
  std::string kind;
  std::pair<std::size_t, std::size_t> dims{0, 0};
  bool exact = true;
  std::vector<Matrix> matrices;
  std::map<std::string, std::string> meta;
};

/// Deterministic text (sorted keys, two-space indent, trailing newline).
std::string serialize(const ObjectDocument& doc);

/// Throws Error(Format) on malformed JSON, unknown kinds, bad rationals or
/// shapes that disagree with dims.
ObjectDocument parse_document(const std::string& text);

ObjectDocument to_document(const CliffordSystem& cs);
ObjectDocument to_document(const OSystem& os);
ObjectDocument to_document(const orthomul::OrthogonalMultiplication& mu);
ObjectDocument to_document(const QuadraticHarmonicMorphism& phi);

/// Unvalidated typed views; throw Error(IncompatibleKind) on a kind mismatch.
CliffordSystem as_clifford(const ObjectDocument& doc);
OSystem as_osystem(const ObjectDocument& doc);
orthomul::OrthogonalMultiplication as_orthomul(const ObjectDocument& doc);
QuadraticHarmonicMorphism as_qhm(const ObjectDocument& doc);

}  // namespace quadmorph
