#include <gtest/gtest.h>

#include <sstream>

#include "latpoly/objfile.hpp"
#include "latpoly/polytope.hpp"

using namespace latpoly;

namespace {

ComputationObject round_trip(const ComputationObject& obj) {
  std::stringstream ss;
  save(obj, ss);
  return load(ss, obj.rulebase_ptr());
}

void expect_identical(const ComputationObject& a, const ComputationObject& b) {
  EXPECT_EQ(a.class_tag(), b.class_tag());
  ASSERT_EQ(a.list_properties(), b.list_properties());
  for (const auto& k : a.list_properties()) EXPECT_TRUE(*a.get(k) == *b.get(k)) << k;
}

// Requests everything that can be computed for this object.
void compute_all(ComputationObject& obj) {
  for (const auto& p : obj.rulebase().properties()) {
    try {
      request(obj, p.name);
    } catch (const EngineError&) {
    }
  }
}

std::vector<std::string> section_keys(const std::string& text) {
  std::vector<std::string> keys;
  std::istringstream is(text);
  bool expect_key = true;
  for (std::string line; std::getline(is, line);) {
    if (line.empty()) {
      expect_key = true;
      continue;
    }
    if (line[0] == '#') continue;
    if (expect_key) keys.push_back(line);
    expect_key = false;
  }
  return keys;
}

}  // namespace

TEST(ObjectFile, CubeAfterFVector) {
  auto P = cube(3);
  request(P, "F_VECTOR");
  std::stringstream ss;
  save(P, ss);
  EXPECT_EQ(section_keys(ss.str()), (std::vector<std::string>{"CLASS", "AMBIENT_DIM", "DIM", "FACETS",
                                                              "VERTICES_IN_FACETS", "BOUNDED", "HASSE_DIAGRAM",
                                                              "F_VECTOR", "F2_VECTOR"}));
  auto Q = load(ss, default_rulebase());
  expect_identical(P, Q);
  auto before = Q.rules_executed();
  EXPECT_EQ(request_as<RatVector>(Q, "F_VECTOR"), (RatVector{8, 12, 6}));
  EXPECT_EQ(Q.rules_executed(), before);
  EXPECT_EQ(before, 0u);
}

TEST(ObjectFile, ExactRationals) {
  auto P = from_points(RatMatrix{{1, Rational(1, 3), 0}, {1, 0, Rational(-7, 2)}, {2, 1, 1}});
  request(P, "FACETS");
  std::stringstream ss;
  save(P, ss);
  EXPECT_NE(ss.str().find("1/3"), std::string::npos);
  EXPECT_NE(ss.str().find("-7/2"), std::string::npos);
  expect_identical(P, round_trip(P));
}

TEST(ObjectFile, EmptyMatrixKeepsWidth) {
  auto P = cube(2);
  request(P, "VERTICES");
  request(P, "AFFINE_HULL");
  auto Q = round_trip(P);
  EXPECT_EQ(request_as<RatMatrix>(Q, "AFFINE_HULL").cols(), 3u);
  expect_identical(P, Q);
}

TEST(ObjectFile, EverythingRoundTrips) {
  RatMatrix M{{0, 1, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0}, {0, 0, 0, 1, 0, 0}, {0, 0, 0, 0, 1, 0},
              {0, 0, 0, 0, 0, 1}, {1, 0, 2, 1, 1, 2}, {1, 2, 0, 2, 1, 1}, {1, 1, 2, 0, 2, 1},
              {1, 1, 1, 2, 0, 2}, {1, 2, 1, 1, 2, 0}};
  std::vector<ComputationObject> objs;
  objs.push_back(cube(3));
  objs.push_back(cross(3));
  objs.push_back(cross(5));
  objs.push_back(from_points(M));
  objs.push_back(unit_simplex(2));
  for (auto& o : objs) {
    compute_all(o);
    expect_identical(o, round_trip(o));
  }
  EXPECT_EQ(objs[0].class_tag(), "LatticePolytope");
  EXPECT_TRUE(objs[3].has("HILBERT_BASIS"));
}

TEST(ObjectFile, CommentsAndErrors) {
  std::istringstream ok("# a cube fragment\nCLASS\nPolytope\n\nDIM # trailing comment\n3\n\nBOUNDED\n1\n");
  auto P = load(ok, default_rulebase());
  EXPECT_EQ(P.list_properties(), (std::vector<std::string>{"DIM", "BOUNDED"}));
  EXPECT_TRUE(request_as<bool>(P, "BOUNDED"));

  auto fails_with = [](const std::string& text, const std::string& needle) {
    std::istringstream is(text);
    try {
      load(is, default_rulebase());
    } catch (const ObjectFileError& e) {
      return std::string(e.what()).find(needle) != std::string::npos;
    }
    return false;
  };
  EXPECT_TRUE(fails_with("DIM\n3\n", "CLASS"));
  EXPECT_TRUE(fails_with("CLASS\nNoSuchClass\n", "NoSuchClass"));
  EXPECT_TRUE(fails_with("CLASS\nPolytope\n\nWHATEVER\n1\n", "WHATEVER"));
  EXPECT_TRUE(fails_with("CLASS\nPolytope\n\nBOUNDED\n2\n", "BOUNDED"));
  EXPECT_TRUE(fails_with("CLASS\nPolytope\n\nFACETS\n1 0\n1 2 3\n", "FACETS"));
  EXPECT_TRUE(fails_with("CLASS\nPolytope\n\nFACETS\n1 x\n", "FACETS"));
  EXPECT_TRUE(fails_with("CLASS\nPolytope\n\nDIM\n3\n\nDIM\n3\n", "duplicate"));
  EXPECT_TRUE(fails_with("CLASS\nPolytope\n\nVERTICES_IN_FACETS\n{0 1\n", "VERTICES_IN_FACETS"));
}
