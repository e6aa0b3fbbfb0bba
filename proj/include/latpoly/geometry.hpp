#pragma once

// Exact polyhedral geometry in homogeneous coordinates.
//
// Points and vertices are rows (x0, x1, ..., xd); x0 = 1 for affine points
// and x0 = 0 for rays. An inequality row (a0, a1, ..., ad) means
// a0*x0 + a1*x1 + ... + ad*xd >= 0, an equation row means = 0.

#include "latpoly/exactmath.hpp"
#include "latpoly/graph.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace latpoly {

class EmptyPolyhedron : public std::runtime_error {
 public:
  EmptyPolyhedron() : std::runtime_error("EMPTY: the inequality system has no feasible point") {}
};

using IncidenceMatrix = std::vector<IndexSet>;

struct HasseDiagram {
  struct Node {
    IndexSet face;
    int dim = -1;
    friend bool operator==(const Node&, const Node&) = default;
  };
  std::vector<Node> nodes;                   // bottom first, top last, ordered by (dim, face)
  std::vector<std::pair<int, int>> covers;  // (lower node, upper node)
  int n_vertices = 0;

  int top_dim() const { return nodes.empty() ? -1 : nodes.back().dim; }
  friend bool operator==(const HasseDiagram&, const HasseDiagram&) = default;
};

namespace detail {

using Bits = boost::dynamic_bitset<>;

inline Bits to_bits(const IndexSet& s, std::size_t n) {
  Bits b(n);
  for (int i : s) b.set(i);
  return b;
}

inline IndexSet to_index_set(const Bits& b) {
  IndexSet s;
  for (auto i = b.find_first(); i != Bits::npos; i = b.find_next(i)) s.push_back(static_cast<int>(i));
  return s;
}

inline Integer int_dot(const IntVector& a, const IntVector& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Rational mixed_dot(const IntVector& a, std::span<const Rational> x) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * x[i];
  return s;
}

}  // namespace detail

/// Generators of the cone {x : A x >= 0, E x = 0}: extreme rays (primitive,
/// integer) plus a basis of the lineality space.
struct ConeGenerators {
  IntMatrix rays;
  IntMatrix lineality;
};

/// Double description method. Inequalities are inserted in input order;
/// adjacency of two rays is decided by the algebraic rank test on the
/// constraints tight at both.
inline ConeGenerators double_description(const RatMatrix& ineqs, const RatMatrix& eqs, std::size_t n) {
  using detail::Bits;
  using detail::int_dot;
  if (ineqs.rows() && ineqs.cols() != n) throw DimensionError("double_description: inequality width mismatch");
  if (eqs.rows() && eqs.cols() != n) throw DimensionError("double_description: equation width mismatch");

  std::vector<IntVector> A;
  for (std::size_t i = 0; i < ineqs.rows(); ++i) A.push_back(scale_to_integer(ineqs.row(i)));

  // start from the linear subspace cut out by the equations
  std::vector<IntVector> lineality;
  {
    RatMatrix start = eqs.rows() ? null_space(eqs) : RatMatrix::identity(n);
    for (std::size_t i = 0; i < start.rows(); ++i) lineality.push_back(scale_to_integer(start.row(i)));
  }
  struct Ray {
    IntVector v;
    Bits tight;
  };
  std::vector<Ray> rays;
  const std::size_t m = A.size();

  // equations count towards the rank of every tight set
  IntMatrix eq_rows(0, n);
  for (std::size_t i = 0; i < eqs.rows(); ++i) eq_rows.append_row(scale_to_integer(eqs.row(i)));
  const std::size_t eq_rank = rank(eq_rows);

  auto tight_rank = [&](const Bits& z) {
    IntMatrix sub = eq_rows;
    for (auto i = z.find_first(); i != Bits::npos; i = z.find_next(i)) sub.append_row(A[i]);
    return rank(sub);
  };

  for (std::size_t k = 0; k < m; ++k) {
    const IntVector& p = A[k];
    std::size_t hit = lineality.size();
    for (std::size_t i = 0; i < lineality.size(); ++i)
      if (int_dot(p, lineality[i]) != 0) {
        hit = i;
        break;
      }
    if (hit < lineality.size()) {
      IntVector l0 = lineality[hit];
      Integer pl0 = int_dot(p, l0);
      if (pl0 < 0) {
        for (auto& x : l0) x = -x;
        pl0 = -pl0;
      }
      lineality.erase(lineality.begin() + hit);
      auto project = [&](IntVector& v) {
        Integer pv = int_dot(p, v);
        if (pv == 0) return;
        for (std::size_t j = 0; j < n; ++j) v[j] = pl0 * v[j] - pv * l0[j];
        v = primitive(v);
      };
      for (auto& l : lineality) project(l);
      for (auto& r : rays) {
        project(r.v);
        r.tight.resize(m);
        r.tight.set(k);
      }
      Ray nr{l0, Bits(m)};
      for (std::size_t j = 0; j < k; ++j) nr.tight.set(j);  // earlier constraints vanish on lineality
      rays.push_back(std::move(nr));
      continue;
    }

    std::vector<std::size_t> pos, neg;
    std::vector<Integer> val(rays.size());
    for (std::size_t i = 0; i < rays.size(); ++i) {
      val[i] = int_dot(p, rays[i].v);
      if (val[i] > 0) pos.push_back(i);
      else if (val[i] < 0) neg.push_back(i);
    }
    if (neg.empty()) {
      for (std::size_t i = 0; i < rays.size(); ++i)
        if (val[i] == 0) rays[i].tight.set(k);
      continue;
    }
    const std::size_t needed = n - lineality.size() - 2;  // rank of a 2-face's tight set
    std::vector<Ray> next;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if (val[i] > 0) next.push_back(rays[i]);
      else if (val[i] == 0) {
        next.push_back(rays[i]);
        next.back().tight.set(k);
      }
    }
    for (auto ip : pos)
      for (auto in : neg) {
        Bits common = rays[ip].tight & rays[in].tight;
        if (n < lineality.size() + 2) continue;
        if (common.count() + eq_rank < needed) continue;
        if (tight_rank(common) != needed) continue;
        IntVector v(n);
        for (std::size_t j = 0; j < n; ++j) v[j] = val[ip] * rays[in].v[j] - val[in] * rays[ip].v[j];
        Ray r{primitive(v), common};
        r.tight.set(k);
        next.push_back(std::move(r));
      }
    rays = std::move(next);
  }

  ConeGenerators out{IntMatrix(0, n), IntMatrix(0, n)};
  for (auto& r : rays) out.rays.append_row(r.v);
  for (auto& l : lineality) out.lineality.append_row(l);
  return out;
}

namespace detail {

// Canonical equation basis: reduced echelon form, rows scaled to primitive integers.
inline RatMatrix canonical_equations(const IntMatrix& eqs, std::size_t n) {
  RatMatrix e = to_rational(eqs);
  auto piv = rref(e);
  RatMatrix out(0, n);
  for (std::size_t i = 0; i < piv.size(); ++i) out.append_row(to_rational(scale_to_integer(e.row(i))));
  return out;
}

// Reduce an inequality modulo the equations (zero the equation pivot columns), then make it primitive.
inline IntVector reduce_modulo(std::span<const Integer> row, const RatMatrix& eqs) {
  RatVector v(row.begin(), row.end());
  RatMatrix e = eqs;
  auto piv = rref(e);
  for (std::size_t i = 0; i < piv.size(); ++i) {
    const Rational f = v[piv[i]];
    if (f == 0) continue;
    for (std::size_t j = 0; j < v.size(); ++j) v[j] -= f * e(i, j);
  }
  return primitive(scale_to_integer(v));
}

inline bool lex_less(std::span<const Rational> a, std::span<const Rational> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

inline RatMatrix sorted_rows(const std::vector<RatVector>& rows, std::size_t n) {
  std::vector<RatVector> r = rows;
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end()), r.end());
  return RatMatrix::from_rows(r, n);
}

}  // namespace detail

/// Normalizes a homogeneous point row: leading coordinate 1 for points,
/// primitive integer direction for rays. Rejects zero and negative-leading rows.
inline RatVector normalize_point(std::span<const Rational> row) {
  if (std::all_of(row.begin(), row.end(), [](const Rational& q) { return q == 0; }))
    throw std::invalid_argument("point row is zero");
  if (row[0] < 0) throw std::invalid_argument("point row has negative homogenizing coordinate");
  if (row[0] == 0) return to_rational(primitive(scale_to_integer(row)));
  RatVector v(row.begin(), row.end());
  const Rational lead = v[0];
  for (auto& x : v) x /= lead;
  return v;
}

struct FacetDescription {
  RatMatrix facets;       // irredundant, primitive integer rows, sorted lexicographically
  RatMatrix affine_hull;  // canonical equation rows
};

/// Facets and affine hull of the cone spanned by the homogeneous rows of `points`.
inline FacetDescription facets_from_points(const RatMatrix& points) {
  const std::size_t n = points.cols();
  if (points.rows() == 0) throw std::invalid_argument("facets_from_points: no points");
  auto gens = double_description(points, RatMatrix(0, n), n);
  FacetDescription out;
  out.affine_hull = detail::canonical_equations(gens.lineality, n);
  std::vector<RatVector> rows;
  for (std::size_t i = 0; i < gens.rays.rows(); ++i)
    rows.push_back(to_rational(detail::reduce_modulo(gens.rays.row(i), out.affine_hull)));
  out.facets = detail::sorted_rows(rows, n);
  return out;
}

/// Vertices (and rays, leading 0) of {x : F x >= 0, E x = 0}, sorted lexicographically.
inline RatMatrix vertices_from_facets(const RatMatrix& facets, const RatMatrix& eqs = {}) {
  const std::size_t n = facets.rows() ? facets.cols() : eqs.cols();
  if (n == 0) throw DimensionError("vertices_from_facets: no columns");
  RatMatrix ineqs = facets;
  RatVector far(n);
  far[0] = 1;
  ineqs.append_row(far);
  auto gens = double_description(ineqs, eqs.rows() ? eqs : RatMatrix(0, n), n);
  if (gens.lineality.rows() != 0) throw std::domain_error("vertices_from_facets: polyhedron contains a line");
  std::vector<RatVector> rows;
  bool feasible = false;
  for (std::size_t i = 0; i < gens.rays.rows(); ++i) {
    RatVector v = to_rational(gens.rays.row_vector(i));
    if (v[0] != 0) feasible = true;
    rows.push_back(normalize_point(v));
  }
  if (!feasible) throw EmptyPolyhedron();
  return detail::sorted_rows(rows, n);
}

/// Extreme rows of `points` (normalized, duplicates removed), in input order.
inline RatMatrix extreme_points(const RatMatrix& points, const RatMatrix& facets, const RatMatrix& affine_hull) {
  const std::size_t n = points.cols();
  RatMatrix out(0, n);
  std::set<RatVector> seen;
  for (std::size_t i = 0; i < points.rows(); ++i) {
    RatVector p = normalize_point(points.row(i));
    if (!seen.insert(p).second) continue;
    RatMatrix tight = affine_hull;
    if (tight.cols() != n) tight = RatMatrix(0, n);
    for (std::size_t f = 0; f < facets.rows(); ++f)
      if (dot(facets.row_vector(f), p) == 0) tight.append_row(facets.row(f));
    if (rank(tight) == n - 1) out.append_row(p);
  }
  return out;
}

/// VERTICES_IN_FACETS: vertex v belongs to row F iff F is tight at v.
inline IncidenceMatrix incidence(const RatMatrix& vertices, const RatMatrix& facets) {
  IncidenceMatrix inc(facets.rows());
  for (std::size_t f = 0; f < facets.rows(); ++f)
    for (std::size_t v = 0; v < vertices.rows(); ++v)
      if (dot<Rational, Rational>(facets.row(f), vertices.row(v)) == 0) inc[f].push_back(static_cast<int>(v));
  return inc;
}

inline int count_vertices(const IncidenceMatrix& inc) {
  int n = 0;
  for (const auto& row : inc)
    for (int v : row) n = std::max(n, v + 1);
  return n;
}

/// Face lattice from vertex-facet incidences, built bottom-up: the covers of
/// a face are the inclusion-minimal closures of (face + one more vertex).
inline HasseDiagram hasse_diagram(const IncidenceMatrix& inc, int n_vertices = -1) {
  using detail::Bits;
  if (n_vertices < 0) n_vertices = count_vertices(inc);
  const std::size_t nv = static_cast<std::size_t>(n_vertices);
  std::vector<Bits> facet_bits;
  for (const auto& row : inc) facet_bits.push_back(detail::to_bits(row, nv));
  Bits all(nv);
  all.set();

  auto closure = [&](const Bits& s) {
    Bits c = all;
    for (const auto& f : facet_bits)
      if (s.is_subset_of(f)) c &= f;
    return c;
  };

  std::vector<Bits> faces{Bits(nv)};
  std::vector<int> dims{-1};
  std::map<Bits, int> index{{faces[0], 0}};
  std::vector<std::pair<int, int>> covers;
  std::vector<int> level{0};
  int d = -1;
  while (!level.empty()) {
    std::vector<int> next_level;
    for (int fi : level) {
      const Bits f = faces[fi];
      if (f == all && nv > 0) continue;
      std::vector<Bits> cand;
      for (std::size_t v = 0; v < nv; ++v) {
        if (f.test(v)) continue;
        Bits s = f;
        s.set(v);
        Bits c = closure(s);
        if (std::find(cand.begin(), cand.end(), c) == cand.end()) cand.push_back(c);
      }
      for (std::size_t i = 0; i < cand.size(); ++i) {
        bool minimal = true;
        for (std::size_t j = 0; j < cand.size() && minimal; ++j)
          if (i != j && cand[j].is_proper_subset_of(cand[i])) minimal = false;
        if (!minimal) continue;
        auto [it, inserted] = index.try_emplace(cand[i], static_cast<int>(faces.size()));
        if (inserted) {
          faces.push_back(cand[i]);
          dims.push_back(d + 1);
          next_level.push_back(it->second);
        }
        covers.emplace_back(fi, it->second);
      }
    }
    level = std::move(next_level);
    ++d;
  }

  // renumber by (dim, face)
  std::vector<int> order(faces.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::vector<IndexSet> sets(faces.size());
  for (std::size_t i = 0; i < faces.size(); ++i) sets[i] = detail::to_index_set(faces[i]);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return std::tie(dims[a], sets[a]) < std::tie(dims[b], sets[b]);
  });
  std::vector<int> pos(faces.size());
  HasseDiagram h;
  h.n_vertices = n_vertices;
  for (std::size_t i = 0; i < order.size(); ++i) {
    pos[order[i]] = static_cast<int>(i);
    h.nodes.push_back({sets[order[i]], dims[order[i]]});
  }
  for (auto [a, b] : covers) h.covers.emplace_back(pos[a], pos[b]);
  std::sort(h.covers.begin(), h.covers.end());
  return h;
}

/// Counts of faces of dimension 0 .. DIM-1.
inline RatVector f_vector(const HasseDiagram& h) {
  const int d = h.top_dim();
  RatVector f(d > 0 ? d : 0);
  for (const auto& node : h.nodes)
    if (node.dim >= 0 && node.dim < d) f[node.dim] += 1;
  return f;
}

/// Entry (i, j): number of incident pairs (i-face, j-face); the diagonal is the f-vector.
inline RatMatrix f2_vector(const HasseDiagram& h) {
  const int d = h.top_dim();
  const std::size_t n = d > 0 ? static_cast<std::size_t>(d) : 0;
  RatMatrix f2(n, n);
  std::vector<detail::Bits> bits;
  for (const auto& node : h.nodes) bits.push_back(detail::to_bits(node.face, h.n_vertices));
  for (std::size_t a = 0; a < h.nodes.size(); ++a) {
    const int da = h.nodes[a].dim;
    if (da < 0 || da >= d) continue;
    f2(da, da) += 1;
    for (std::size_t b = 0; b < h.nodes.size(); ++b) {
      const int db = h.nodes[b].dim;
      if (db <= da || db >= d) continue;
      if (bits[a].is_subset_of(bits[b])) {
        f2(da, db) += 1;
        f2(db, da) += 1;
      }
    }
  }
  return f2;
}

/// Vertex-edge graph: nodes are vertices, edges the 1-dimensional faces.
inline Graph vertex_graph(const HasseDiagram& h) {
  Graph g(static_cast<std::size_t>(h.n_vertices));
  for (const auto& node : h.nodes)
    if (node.dim == 1 && node.face.size() == 2 && h.top_dim() >= 1) g.add_edge(node.face[0], node.face[1]);
  return g;
}

/// Facet-ridge graph: nodes are the facets in incidence order, edges join
/// facets sharing a ridge.
inline Graph dual_graph(const HasseDiagram& h, const IncidenceMatrix& inc) {
  Graph g(inc.size());
  const int d = h.top_dim();
  if (d < 1) return g;
  std::map<IndexSet, int> dim_of;
  for (const auto& node : h.nodes) dim_of[node.face] = node.dim;
  for (std::size_t i = 0; i < inc.size(); ++i)
    for (std::size_t j = i + 1; j < inc.size(); ++j) {
      IndexSet common;
      std::set_intersection(inc[i].begin(), inc[i].end(), inc[j].begin(), inc[j].end(), std::back_inserter(common));
      auto it = dim_of.find(common);
      if (it != dim_of.end() && it->second == d - 2) g.add_edge(static_cast<int>(i), static_cast<int>(j));
    }
  return g;
}

inline bool bounded(const RatMatrix& generators) {
  for (std::size_t i = 0; i < generators.rows(); ++i)
    if (generators(i, 0) <= 0) return false;
  return true;
}

inline int ambient_dim(const RatMatrix& m) { return static_cast<int>(m.cols()) - 1; }

inline int dim_of_points(const RatMatrix& points) { return static_cast<int>(rank(points)) - 1; }

/// The cone over the polyhedron contains no line.
inline bool pointed(const RatMatrix& facets, const RatMatrix& affine_hull, std::size_t n) {
  RatMatrix all(0, n);
  for (std::size_t i = 0; i < facets.rows(); ++i) all.append_row(facets.row(i));
  for (std::size_t i = 0; i < affine_hull.rows(); ++i) all.append_row(affine_hull.row(i));
  return rank(all) == n;
}

}  // namespace latpoly
