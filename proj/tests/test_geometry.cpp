#include <gtest/gtest.h>

#include <algorithm>
#include <iterator>
#include <random>
#include <set>

#include "latpoly/polytope.hpp"
#include "oracles.hpp"

using namespace latpoly;

namespace {

using oracle::cone_matrix;
using oracle::random_01_points;
using oracle::row_set;

Rational eval(const RatMatrix& a, std::size_t i, const RatMatrix& p, std::size_t j) {
  Rational s = 0;
  for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * p(j, k);
  return s;
}

bool contains(const IncidenceMatrix& inc, const IndexSet& s) { return std::find(inc.begin(), inc.end(), s) != inc.end(); }

}  // namespace

TEST(DoubleDescription, SquareFromPoints) {
  RatMatrix pts{{1, 0, 0}, {1, 1, 0}, {1, 0, 1}, {1, 1, 1}, {1, Rational(1, 2), Rational(1, 2)}};
  auto fd = facets_from_points(pts);
  EXPECT_EQ(fd.facets.rows(), 4u);
  EXPECT_EQ(fd.affine_hull.rows(), 0u);
  auto v = extreme_points(pts, fd.facets, fd.affine_hull);
  EXPECT_EQ(v.rows(), 4u);
  EXPECT_EQ(row_set(v), row_set(RatMatrix{{1, 0, 0}, {1, 1, 0}, {1, 0, 1}, {1, 1, 1}}));
}

TEST(DoubleDescription, LowerDimensionalHasAffineHull) {
  // a segment in the plane x2 = x1
  RatMatrix pts{{1, 0, 0}, {1, 2, 2}, {1, 1, 1}};
  auto fd = facets_from_points(pts);
  EXPECT_EQ(fd.affine_hull.rows(), 1u);
  EXPECT_EQ(fd.facets.rows(), 2u);
  EXPECT_EQ(dim_of_points(pts), 1);
  auto v = extreme_points(pts, fd.facets, fd.affine_hull);
  EXPECT_EQ(row_set(v), row_set(RatMatrix{{1, 0, 0}, {1, 2, 2}}));
}

TEST(DoubleDescription, EmptyFromFacets) {
  RatMatrix f{{-1, 1}, {-1, -1}};  // x >= 1 and x <= -1
  EXPECT_THROW(vertices_from_facets(f), EmptyPolyhedron);
}

TEST(DoubleDescription, UnboundedFromFacets) {
  RatMatrix f{{0, 1, 0}, {0, 0, 1}};  // positive orthant
  auto v = vertices_from_facets(f);
  EXPECT_FALSE(bounded(v));
  std::set<RatVector> rows = row_set(v);
  EXPECT_TRUE(rows.count(RatVector{1, 0, 0}));
  EXPECT_TRUE(rows.count(RatVector{0, 1, 0}));
  EXPECT_TRUE(rows.count(RatVector{0, 0, 1}));
}

TEST(Cube, FacetsInPrintedOrder) {
  auto P = cube(3);
  auto f = request_as<RatMatrix>(P, "FACETS");
  RatMatrix expect{{1, 1, 0, 0}, {1, 0, 0, 1}, {1, 0, 1, 0}, {1, 0, -1, 0}, {1, -1, 0, 0}, {1, 0, 0, -1}};
  EXPECT_EQ(f, expect);
  EXPECT_EQ(request_as<Integer>(P, "AMBIENT_DIM"), 3);
  EXPECT_EQ(request_as<Integer>(P, "DIM"), 3);
}

TEST(Cube, VerticesAgreeWithStoredIncidence) {
  for (int d = 1; d <= 4; ++d) {
    auto P = cube(d);
    auto stored = request_as<IncidenceMatrix>(P, "VERTICES_IN_FACETS");
    auto v = request_as<RatMatrix>(P, "VERTICES");
    auto f = request_as<RatMatrix>(P, "FACETS");
    EXPECT_EQ(v.rows(), std::size_t{1} << d);
    EXPECT_EQ(incidence(v, f), stored) << "d=" << d;
  }
}

TEST(FaceLattice, CubeAndCrossFVectors) {
  auto P3 = cube(3);
  EXPECT_EQ(request_as<RatVector>(P3, "F_VECTOR"), (RatVector{8, 12, 6}));
  auto P4 = cube(4);
  EXPECT_EQ(request_as<RatVector>(P4, "F_VECTOR"), (RatVector{16, 32, 24, 8}));
  auto X3 = cross(3);
  EXPECT_EQ(request_as<RatVector>(X3, "F_VECTOR"), (RatVector{6, 12, 8}));
  auto X5 = cross(5);
  // cross(d) has 2^{k+1} C(d, k+1) faces of dimension k
  EXPECT_EQ(request_as<RatVector>(X5, "F_VECTOR"), (RatVector{10, 40, 80, 80, 32}));
}

TEST(FaceLattice, EulerRelationOnRandomPolytopes) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    int d = 2 + trial % 3;
    auto pts = random_01_points(rng, d, std::min(1 << d, d + 2 + trial % 5));
    auto P = from_points(pts);
    int dim = static_cast<int>(request_as<Integer>(P, "DIM").get_si());
    auto f = request_as<RatVector>(P, "F_VECTOR");
    ASSERT_EQ(static_cast<int>(f.size()), dim);
    Rational chi = 0;
    for (int k = 0; k < dim; ++k) chi += (k % 2 ? -1 : 1) * f[k];
    EXPECT_EQ(chi, 1 - (dim % 2 ? -1 : 1)) << "trial " << trial;
  }
}

TEST(FaceLattice, CubeHasseDiagram) {
  auto P = cube(3);
  auto h = request_as<HasseDiagram>(P, "HASSE_DIAGRAM");
  // empty face, 8 + 12 + 6 proper faces, the cube itself
  EXPECT_EQ(h.nodes.size(), 28u);
  EXPECT_EQ(h.top_dim(), 3);
  // empty->vertex 8, vertex->edge 24, edge->facet 24, facet->top 6
  EXPECT_EQ(h.covers.size(), 62u);
}

TEST(FaceLattice, F2VectorDiagonalIsFVector) {
  auto P = cube(3);
  auto f = request_as<RatVector>(P, "F_VECTOR");
  auto f2 = request_as<RatMatrix>(P, "F2_VECTOR");
  ASSERT_EQ(f2.rows(), 3u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(f2(i, i), f[i]);
  EXPECT_EQ(f2(0, 1), 24);  // vertex-edge flags
  EXPECT_EQ(f2(0, 2), 24);
  EXPECT_EQ(f2(1, 2), 24);
  EXPECT_EQ(f2(1, 0), f2(0, 1));
}

TEST(Graphs, CubeAndCrossRegularity) {
  auto P = cube(3);
  auto g = request_as<Graph>(P, "GRAPH");
  EXPECT_EQ(g.nodes(), 8u);
  EXPECT_EQ(g.edges(), 12u);
  for (int v = 0; v < 8; ++v) EXPECT_EQ(g.degree(v), 3u);
  auto dg = request_as<Graph>(P, "DUAL_GRAPH");
  EXPECT_EQ(dg.nodes(), 6u);
  EXPECT_EQ(dg.edges(), 12u);
  auto X = cross(3);
  EXPECT_TRUE(isomorphic(request_as<Graph>(X, "DUAL_GRAPH"), g));
  EXPECT_TRUE(isomorphic(request_as<Graph>(X, "GRAPH"), dg));
}

TEST(ConeC, FacetStructure) {
  auto C = from_points(cone_matrix());
  auto f = request_as<RatMatrix>(C, "FACETS");
  EXPECT_EQ(f.rows(), 27u);
  EXPECT_EQ(request_as<Integer>(C, "N_FACETS"), 27);
  EXPECT_FALSE(request_as<bool>(C, "BOUNDED"));
  EXPECT_TRUE(request_as<bool>(C, "POINTED"));
  // vertices keep the input order
  EXPECT_EQ(request_as<RatMatrix>(C, "VERTICES"), cone_matrix());
  auto inc = request_as<IncidenceMatrix>(C, "VERTICES_IN_FACETS");
  EXPECT_TRUE(contains(inc, IndexSet{0, 1, 2, 3, 4}));
  EXPECT_TRUE(contains(inc, IndexSet{5, 6, 7, 8, 9}));
  // every facet inequality holds on all generators, tight on its incidence row
  auto m = cone_matrix();
  for (std::size_t i = 0; i < f.rows(); ++i)
    for (std::size_t j = 0; j < m.rows(); ++j) {
      Rational s = eval(f, i, m, j);
      EXPECT_GE(s, 0);
      bool tight = std::binary_search(inc[i].begin(), inc[i].end(), static_cast<int>(j));
      EXPECT_EQ(s == 0, tight);
    }
}

// Vertex sets of all facets, from a brute-force search over 5-subsets of M
// whose normal has constant sign on the generators.
TEST(ConeC, AllFacetVertexSets) {
  const std::set<IndexSet> expect{
      {0, 1, 2, 3, 4},    {0, 1, 2, 3, 9},    {0, 1, 2, 4, 8},    {0, 1, 2, 6, 8, 9}, {0, 1, 3, 4, 7},
      {0, 1, 3, 7, 9},    {0, 1, 4, 5, 7, 8}, {0, 1, 7, 8, 9},    {0, 2, 3, 4, 6},    {0, 2, 3, 6, 9},
      {0, 2, 4, 6, 8},    {0, 3, 4, 6, 7, 9}, {0, 4, 6, 7, 8},    {0, 6, 7, 8, 9},    {1, 2, 3, 4, 5},
      {1, 2, 3, 5, 7, 9}, {1, 2, 4, 5, 8},    {1, 2, 5, 8, 9},    {1, 3, 4, 5, 7},    {1, 5, 7, 8, 9},
      {2, 3, 4, 5, 6, 8}, {2, 3, 5, 6, 9},    {2, 5, 6, 8, 9},    {3, 4, 5, 6, 7},    {3, 5, 6, 7, 9},
      {4, 5, 6, 7, 8},    {5, 6, 7, 8, 9}};
  auto C = from_points(cone_matrix());
  auto inc = request_as<IncidenceMatrix>(C, "VERTICES_IN_FACETS");
  EXPECT_EQ(std::set<IndexSet>(inc.begin(), inc.end()), expect);
  EXPECT_EQ(oracle::brute_force_facets(cone_matrix()), expect);
}

TEST(BruteForceFacets, AgreesOnCubeAndCross) {
  for (auto P : {cube(3), cross(3), cross(4)}) {
    auto v = request_as<RatMatrix>(P, "VERTICES");
    auto inc = request_as<IncidenceMatrix>(P, "VERTICES_IN_FACETS");
    EXPECT_EQ(oracle::brute_force_facets(v), std::set<IndexSet>(inc.begin(), inc.end()));
  }
}

TEST(ConeC, DualGraphEdgesMeetInRidges) {
  auto C = from_points(cone_matrix());
  auto inc = request_as<IncidenceMatrix>(C, "VERTICES_IN_FACETS");
  auto h = request_as<HasseDiagram>(C, "HASSE_DIAGRAM");
  auto dg = request_as<Graph>(C, "DUAL_GRAPH");
  std::set<IndexSet> ridges;
  for (const auto& n : h.nodes)
    if (n.dim == h.top_dim() - 2) ridges.insert(n.face);
  EXPECT_EQ(ridges.size(), 75u);
  EXPECT_EQ(dg.edges(), 75u);
  for (int a = 0; a < static_cast<int>(dg.dim()); ++a)
    for (int b : dg.adjacent_nodes(a)) {
      IndexSet common;
      std::set_intersection(inc[a].begin(), inc[a].end(), inc[b].begin(), inc[b].end(), std::back_inserter(common));
      EXPECT_TRUE(ridges.count(common));
    }
}

TEST(ConeC, FVectorDifferenceToCrossPolytope) {
  auto C = from_points(cone_matrix());
  auto X = cross(5);
  auto fc = request_as<RatVector>(C, "F_VECTOR");
  auto fx = request_as<RatVector>(X, "F_VECTOR");
  ASSERT_EQ(fc.size(), 5u);
  RatVector diff(5);
  for (int i = 0; i < 5; ++i) diff[i] = fx[i] - fc[i];
  EXPECT_EQ(diff, (RatVector{0, 0, 0, 5, 5}));
}

// A 0/1 point set is in convex position, so every input point is a vertex;
// facets are checked directly against the point set.
TEST(RoundTrip, Random01Polytopes) {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    int d = 1 + trial % 4;
    int max = 1 << d;
    int count = std::min(max, d + 1 + static_cast<int>(rng() % max));
    auto pts = random_01_points(rng, d, count);
    auto fd = facets_from_points(pts);
    auto v = extreme_points(pts, fd.facets, fd.affine_hull);
    EXPECT_EQ(row_set(v), row_set(pts)) << "trial " << trial;
    int dim = dim_of_points(pts);
    EXPECT_EQ(static_cast<int>(fd.affine_hull.rows()), d - dim);
    for (std::size_t i = 0; i < fd.facets.rows(); ++i) {
      RatMatrix tight(0, d + 1);
      for (std::size_t j = 0; j < pts.rows(); ++j) {
        Rational s = eval(fd.facets, i, pts, j);
        ASSERT_GE(s, 0);
        if (s == 0) tight.append_row(pts.row_vector(j));
      }
      EXPECT_EQ(static_cast<int>(rank(tight)), dim) << "facet " << i << " of trial " << trial;
    }
    auto back = vertices_from_facets(fd.facets, fd.affine_hull);
    EXPECT_EQ(row_set(back), row_set(pts)) << "trial " << trial;
    auto again = facets_from_points(back);
    EXPECT_EQ(again.facets, fd.facets);
  }
}
