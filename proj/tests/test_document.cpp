#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "quadmorph/clifford.hpp"
#include "quadmorph/document.hpp"
#include "quadmorph/error.hpp"
#include "quadmorph/orthomul.hpp"
#include "quadmorph/osystem.hpp"
#include "quadmorph/qhm.hpp"
#include "support.hpp"

using namespace quadmorph;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Document, GoldenFileParses) {
  const auto doc = parse_document(read_file(std::string(QUADMORPH_TEST_DATA) + "/two_scale_qhm.json"));
  EXPECT_EQ(doc.kind, "qhm");
  EXPECT_EQ(doc.dims, (std::pair<std::size_t, std::size_t>{8, 3}));
  EXPECT_TRUE(doc.exact);
  const auto phi = as_qhm(doc);
  const auto expected = fixtures::two_scale_components();
  for (std::size_t a = 0; a < 3; ++a) EXPECT_EQ(phi.components[a], expected[a]);
}

TEST(Document, RoundTripsEveryKind) {
  const auto cs = clifford::construct_irreducible(3);
  EXPECT_EQ(as_clifford(parse_document(serialize(to_document(cs)))).matrices, cs.matrices);
  const auto os = osystem::construct_range_maximal(8);
  EXPECT_EQ(as_osystem(parse_document(serialize(to_document(os)))).matrices, os.matrices);
  const auto mu = orthomul::standard_multiplication(4);
  EXPECT_EQ(as_orthomul(parse_document(serialize(to_document(mu)))).slices, mu.slices);
  const QuadraticHarmonicMorphism phi{2, 2, fixtures::z_squared()};
  EXPECT_EQ(as_qhm(parse_document(serialize(to_document(phi)))).components, phi.components);
}

TEST(Document, FloatsRoundTripBitExact) {
  const Matrix g = random_orthogonal(4, 3);
  const OSystem os{4, 1, {g}};
  const auto back = as_osystem(parse_document(serialize(to_document(os))));
  EXPECT_FALSE(back.is_exact());
  EXPECT_EQ(back.matrices[0].values(), g.values());
}

TEST(Document, SerializationIsDeterministic) {
  const auto doc = to_document(osystem::construct_range_maximal(4));
  const std::string a = serialize(doc);
  EXPECT_EQ(a, serialize(parse_document(a)));
  EXPECT_EQ(a.back(), '\n');
}

TEST(Document, RationalsAreStrings) {
  const QuadraticHarmonicMorphism phi{2, 1, {Matrix::exact(2, 2, {Rational(1, 2), 0, 0, Rational(-1, 2)})}};
  const std::string text = serialize(to_document(phi));
  EXPECT_NE(text.find("\"1/2\""), std::string::npos);
  EXPECT_NE(text.find("\"-1/2\""), std::string::npos);
}

TEST(Document, Rejections) {
  auto kind = [](const std::string& text) {
    try {
      parse_document(text);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::InvalidTolerance;
  };
  EXPECT_EQ(kind("{"), ErrorKind::Format);
  EXPECT_EQ(kind(R"({"kind":"spinor","dims":[1,1],"scalars":"rational","matrices":[]})"), ErrorKind::Format);
  EXPECT_EQ(kind(R"({"kind":"qhm","dims":[2,1],"scalars":"rational","matrices":[[["1","x"],["0","1"]]]})"),
            ErrorKind::Format);
  EXPECT_EQ(kind(R"({"kind":"qhm","dims":[3,1],"scalars":"rational","matrices":[[["1","0"],["0","-1"]]]})"),
            ErrorKind::Format);
  EXPECT_EQ(kind(R"({"kind":"qhm","dims":[2,1],"scalars":"rational","matrices":[[["1","0"],["0","1/0"]]]})"),
            ErrorKind::Format);
  const auto doc = to_document(osystem::construct_range_maximal(2));
  EXPECT_THROW(as_qhm(doc), Error);
  try {
    as_clifford(doc);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::IncompatibleKind);
  }
}
