#pragma once

// The standard polytope rulebase (Polytope and its LatticePolytope subclass)
// and the object constructors.

#include "latpoly/engine.hpp"
#include "latpoly/geometry.hpp"
#include "latpoly/lattice.hpp"

#include <memory>
#include <string>
#include <vector>

namespace latpoly {

inline const std::string kPolytope = "Polytope";
inline const std::string kLatticePolytope = "LatticePolytope";

/// Rows scaled to integers; rows of a point matrix are cone generators.
inline IntMatrix to_integer_rows(const RatMatrix& m) {
  IntMatrix out(0, m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) out.append_row(scale_to_integer(m.row(i)));
  return out;
}

namespace detail {

template <class T>
const T& arg(std::span<const ValuePtr> in, std::size_t i) {
  return std::get<T>(*in[i]);
}

inline int int_arg(std::span<const ValuePtr> in, std::size_t i) { return static_cast<int>(arg<Integer>(in, i).get_si()); }

inline PropertyValue integer_value(long v) { return Integer(v); }

inline void add_properties(Rulebase& rb) {
  struct Entry {
    const char* name;
    ValueKind kind;
    const std::string& owner;
  };
  const Entry entries[] = {
      {"POINTS", ValueKind::Matrix, kPolytope},
      {"VERTICES", ValueKind::Matrix, kPolytope},
      {"FACETS", ValueKind::Matrix, kPolytope},
      {"AFFINE_HULL", ValueKind::Matrix, kPolytope},
      {"AMBIENT_DIM", ValueKind::Integer, kPolytope},
      {"DIM", ValueKind::Integer, kPolytope},
      {"VERTICES_IN_FACETS", ValueKind::Incidence, kPolytope},
      {"BOUNDED", ValueKind::Boolean, kPolytope},
      {"POINTED", ValueKind::Boolean, kPolytope},
      {"N_VERTICES", ValueKind::Integer, kPolytope},
      {"N_FACETS", ValueKind::Integer, kPolytope},
      {"HASSE_DIAGRAM", ValueKind::Hasse, kPolytope},
      {"F_VECTOR", ValueKind::Vector, kPolytope},
      {"F2_VECTOR", ValueKind::Matrix, kPolytope},
      {"GRAPH", ValueKind::Graph, kPolytope},
      {"DUAL_GRAPH", ValueKind::Graph, kPolytope},
      {"LATTICE", ValueKind::Boolean, kPolytope},
      {"LATTICE_POINTS", ValueKind::Matrix, kPolytope},
      {"N_LATTICE_POINTS", ValueKind::Integer, kPolytope},
      {"INTERIOR_LATTICE_POINTS", ValueKind::Matrix, kPolytope},
      {"N_INTERIOR_LATTICE_POINTS", ValueKind::Integer, kPolytope},
      {"HILBERT_BASIS", ValueKind::Matrix, kPolytope},
      {"H_STAR_VECTOR", ValueKind::Vector, kLatticePolytope},
      {"LATTICE_VOLUME", ValueKind::Integer, kLatticePolytope},
      {"LATTICE_DEGREE", ValueKind::Integer, kLatticePolytope},
      {"LATTICE_CODEGREE", ValueKind::Integer, kLatticePolytope},
      {"REFLEXIVE", ValueKind::Boolean, kLatticePolytope},
      {"SMOOTH", ValueKind::Boolean, kLatticePolytope},
  };
  for (const auto& e : entries)
    if (e.owner == kPolytope) rb.register_property({e.name, e.kind, e.owner});
  rb.register_class({kLatticePolytope, kPolytope, {{"BOUNDED", true}, {"LATTICE", true}}});
  for (const auto& e : entries)
    if (e.owner == kLatticePolytope) rb.register_property({e.name, e.kind, e.owner});
}

inline void add_rules(Rulebase& rb) {
  auto rule = [&](std::string id, std::vector<std::string> targets, std::vector<std::string> sources, RuleBody body,
                  const std::string& cls = kPolytope) {
    rb.register_rule({std::move(id), std::move(sources), std::move(targets), cls, 1, std::move(body)});
  };

  // convex hull and representations
  rule("facets_from_points", {"FACETS", "AFFINE_HULL"}, {"POINTS"}, [](auto in) {
    auto fd = facets_from_points(arg<RatMatrix>(in, 0));
    return std::vector<PropertyValue>{std::move(fd.facets), std::move(fd.affine_hull)};
  });
  rule("vertices_from_points", {"VERTICES"}, {"POINTS", "FACETS", "AFFINE_HULL"}, [](auto in) {
    return std::vector<PropertyValue>{extreme_points(arg<RatMatrix>(in, 0), arg<RatMatrix>(in, 1), arg<RatMatrix>(in, 2))};
  });
  rule("vertices_from_facets", {"VERTICES"}, {"FACETS"}, [](auto in) {
    return std::vector<PropertyValue>{vertices_from_facets(arg<RatMatrix>(in, 0))};
  });
  rule("affine_hull_from_vertices", {"AFFINE_HULL"}, {"VERTICES"}, [](auto in) {
    const auto& v = arg<RatMatrix>(in, 0);
    auto eqs = null_space(v);
    RatMatrix canonical(0, v.cols());
    RatMatrix e = eqs;
    auto piv = rref(e);
    for (std::size_t i = 0; i < piv.size(); ++i) canonical.append_row(to_rational(scale_to_integer(e.row(i))));
    return std::vector<PropertyValue>{std::move(canonical)};
  });
  rule("facets_from_vertices", {"FACETS", "AFFINE_HULL"}, {"VERTICES"}, [](auto in) {
    auto fd = facets_from_points(arg<RatMatrix>(in, 0));
    return std::vector<PropertyValue>{std::move(fd.facets), std::move(fd.affine_hull)};
  });
  rule("vertices_in_facets", {"VERTICES_IN_FACETS"}, {"VERTICES", "FACETS"}, [](auto in) {
    return std::vector<PropertyValue>{incidence(arg<RatMatrix>(in, 0), arg<RatMatrix>(in, 1))};
  });

  // dimensions and basic flags
  for (const char* src : {"POINTS", "VERTICES", "FACETS"})
    rule(std::string("ambient_dim_from_") + src, {"AMBIENT_DIM"}, {src}, [](auto in) {
      return std::vector<PropertyValue>{integer_value(ambient_dim(arg<RatMatrix>(in, 0)))};
    });
  for (const char* src : {"POINTS", "VERTICES"})
    rule(std::string("dim_from_") + src, {"DIM"}, {src}, [](auto in) {
      return std::vector<PropertyValue>{integer_value(dim_of_points(arg<RatMatrix>(in, 0)))};
    });
  for (const char* src : {"POINTS", "VERTICES"})
    rule(std::string("bounded_from_") + src, {"BOUNDED"}, {src}, [](auto in) {
      return std::vector<PropertyValue>{bounded(arg<RatMatrix>(in, 0))};
    });
  rule("pointed", {"POINTED"}, {"FACETS", "AFFINE_HULL"}, [](auto in) {
    const auto& f = arg<RatMatrix>(in, 0);
    const auto& e = arg<RatMatrix>(in, 1);
    return std::vector<PropertyValue>{pointed(f, e, std::max(f.cols(), e.cols()))};
  });
  rule("n_vertices", {"N_VERTICES"}, {"VERTICES"}, [](auto in) {
    return std::vector<PropertyValue>{integer_value(static_cast<long>(arg<RatMatrix>(in, 0).rows()))};
  });
  rule("n_facets", {"N_FACETS"}, {"FACETS"}, [](auto in) {
    return std::vector<PropertyValue>{integer_value(static_cast<long>(arg<RatMatrix>(in, 0).rows()))};
  });

  // combinatorics
  rule("hasse_diagram", {"HASSE_DIAGRAM"}, {"VERTICES_IN_FACETS"}, [](auto in) {
    return std::vector<PropertyValue>{hasse_diagram(arg<IncidenceMatrix>(in, 0))};
  });
  rule("f_vector", {"F_VECTOR", "F2_VECTOR"}, {"HASSE_DIAGRAM"}, [](auto in) {
    const auto& h = arg<HasseDiagram>(in, 0);
    return std::vector<PropertyValue>{f_vector(h), f2_vector(h)};
  });
  rule("graph", {"GRAPH"}, {"HASSE_DIAGRAM"}, [](auto in) {
    return std::vector<PropertyValue>{vertex_graph(arg<HasseDiagram>(in, 0))};
  });
  rule("dual_graph", {"DUAL_GRAPH"}, {"HASSE_DIAGRAM", "VERTICES_IN_FACETS"}, [](auto in) {
    return std::vector<PropertyValue>{dual_graph(arg<HasseDiagram>(in, 0), arg<IncidenceMatrix>(in, 1))};
  });

  // lattice points
  rule("lattice", {"LATTICE"}, {"VERTICES"}, [](auto in) {
    return std::vector<PropertyValue>{lattice_test(arg<RatMatrix>(in, 0))};
  });
  rule("lattice_points", {"LATTICE_POINTS"}, {"VERTICES", "FACETS", "AFFINE_HULL"}, [](auto in) {
    return std::vector<PropertyValue>{lattice_points(arg<RatMatrix>(in, 0), arg<RatMatrix>(in, 1), arg<RatMatrix>(in, 2))};
  });
  rule("n_lattice_points", {"N_LATTICE_POINTS"}, {"LATTICE_POINTS"}, [](auto in) {
    return std::vector<PropertyValue>{integer_value(static_cast<long>(arg<RatMatrix>(in, 0).rows()))};
  });
  rule("interior_lattice_points", {"INTERIOR_LATTICE_POINTS"}, {"VERTICES", "FACETS", "AFFINE_HULL"}, [](auto in) {
    return std::vector<PropertyValue>{
        lattice_points(arg<RatMatrix>(in, 0), arg<RatMatrix>(in, 1), arg<RatMatrix>(in, 2), true)};
  });
  rule("n_interior_lattice_points", {"N_INTERIOR_LATTICE_POINTS"}, {"INTERIOR_LATTICE_POINTS"}, [](auto in) {
    return std::vector<PropertyValue>{integer_value(static_cast<long>(arg<RatMatrix>(in, 0).rows()))};
  });
  for (const char* src : {"POINTS", "VERTICES"})
    rule(std::string("hilbert_basis_from_") + src, {"HILBERT_BASIS"}, {src}, [](auto in) {
      return std::vector<PropertyValue>{to_rational(hilbert_basis(to_integer_rows(arg<RatMatrix>(in, 0))))};
    });

  // LatticePolytope only
  rule(
      "h_star_vector", {"H_STAR_VECTOR"}, {"VERTICES", "FACETS", "AFFINE_HULL"},
      [](auto in) {
        const auto& v = arg<RatMatrix>(in, 0);
        const std::size_t d = v.cols() - 1;
        auto counts = ehrhart_counts(v, arg<RatMatrix>(in, 1), arg<RatMatrix>(in, 2), d);
        return std::vector<PropertyValue>{h_star(counts, d)};
      },
      kLatticePolytope);
  rule(
      "lattice_volume", {"LATTICE_VOLUME"}, {"H_STAR_VECTOR"},
      [](auto in) { return std::vector<PropertyValue>{lattice_volume(arg<RatVector>(in, 0))}; }, kLatticePolytope);
  rule(
      "lattice_degree", {"LATTICE_DEGREE"}, {"H_STAR_VECTOR"},
      [](auto in) { return std::vector<PropertyValue>{integer_value(lattice_degree(arg<RatVector>(in, 0)))}; },
      kLatticePolytope);
  rule(
      "lattice_codegree", {"LATTICE_CODEGREE"}, {"H_STAR_VECTOR"},
      [](auto in) { return std::vector<PropertyValue>{integer_value(lattice_codegree(arg<RatVector>(in, 0)))}; },
      kLatticePolytope);
  rule(
      "reflexive", {"REFLEXIVE"}, {"FACETS", "DIM", "AMBIENT_DIM"},
      [](auto in) {
        return std::vector<PropertyValue>{reflexive(arg<RatMatrix>(in, 0), int_arg(in, 1), int_arg(in, 2))};
      },
      kLatticePolytope);
  rule(
      "smooth", {"SMOOTH"}, {"HASSE_DIAGRAM", "VERTICES"},
      [](auto in) { return std::vector<PropertyValue>{smooth(arg<HasseDiagram>(in, 0), arg<RatMatrix>(in, 1))}; },
      kLatticePolytope);
  rule(
      "n_interior_from_h_star", {"N_INTERIOR_LATTICE_POINTS"}, {"H_STAR_VECTOR"},
      [](auto in) { return std::vector<PropertyValue>{n_interior_from_hstar(arg<RatVector>(in, 0))}; },
      kLatticePolytope);
}

}  // namespace detail

/// Polytope with LatticePolytope below it, preconditions BOUNDED and LATTICE.
inline std::shared_ptr<Rulebase> standard_rulebase() {
  auto rb = std::make_shared<Rulebase>();
  rb->register_class({kPolytope, "", {}});
  detail::add_properties(*rb);
  detail::add_rules(*rb);
  return rb;
}

inline const std::shared_ptr<Rulebase>& default_rulebase() {
  static const std::shared_ptr<Rulebase> rb = standard_rulebase();
  return rb;
}

// ---------------------------------------------------------------------------
// constructors

/// [-1,1]^d, born with AMBIENT_DIM, DIM, FACETS, VERTICES_IN_FACETS, BOUNDED.
/// Vertex indices follow the lexicographic order of the vertex coordinates.
inline ComputationObject cube(int d, std::shared_ptr<Rulebase> rb = default_rulebase()) {
  if (d < 1) throw std::invalid_argument("cube: dimension must be at least 1");
  const std::size_t n = static_cast<std::size_t>(d) + 1;
  // facet (sign, axis) pairs; the 3-cube keeps its customary listing order
  std::vector<std::pair<int, int>> order;
  if (d == 3) {
    order = {{1, 1}, {1, 3}, {1, 2}, {-1, 2}, {-1, 1}, {-1, 3}};
  } else {
    for (int j = 1; j <= d; ++j) order.insert(order.end(), {{1, j}, {-1, j}});
  }
  RatMatrix facets(0, n);
  IncidenceMatrix inc;
  const int nv = 1 << d;
  for (auto [sign, axis] : order) {
    RatVector f(n);
    f[0] = 1;
    f[axis] = sign;
    facets.append_row(f);
    // vertex i has coordinate x_axis = +1 iff bit (d - axis) of i is set
    IndexSet row;
    for (int v = 0; v < nv; ++v) {
      const bool plus = (v >> (d - axis)) & 1;
      if ((sign > 0) != plus) row.push_back(v);
    }
    inc.push_back(std::move(row));
  }
  ComputationObject obj(std::move(rb), kPolytope);
  obj.set("AMBIENT_DIM", Integer(d));
  obj.set("DIM", Integer(d));
  obj.set("FACETS", std::move(facets));
  obj.set("VERTICES_IN_FACETS", std::move(inc));
  obj.set("BOUNDED", true);
  return obj;
}

/// conv{±e_1, ..., ±e_d}, born with VERTICES (e_1, -e_1, e_2, ...) and BOUNDED.
inline ComputationObject cross(int d, std::shared_ptr<Rulebase> rb = default_rulebase()) {
  if (d < 1) throw std::invalid_argument("cross: dimension must be at least 1");
  const std::size_t n = static_cast<std::size_t>(d) + 1;
  RatMatrix v(0, n);
  for (int j = 1; j <= d; ++j)
    for (int s : {1, -1}) {
      RatVector row(n);
      row[0] = 1;
      row[j] = s;
      v.append_row(row);
    }
  ComputationObject obj(std::move(rb), kPolytope);
  obj.set("VERTICES", std::move(v));
  obj.set("BOUNDED", true);
  return obj;
}

/// Object born with POINTS only. Rows are homogeneous: leading 1 for points,
/// 0 for rays; a positive leading entry is scaled to 1.
inline ComputationObject from_points(const RatMatrix& m, std::shared_ptr<Rulebase> rb = default_rulebase()) {
  if (m.rows() == 0) throw std::invalid_argument("from_points: empty point matrix");
  if (m.cols() < 1) throw std::invalid_argument("from_points: point rows need a homogenizing coordinate");
  RatMatrix points(0, m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    RatVector r = m.row_vector(i);
    if (std::all_of(r.begin(), r.end(), [](const Rational& q) { return q == 0; }))
      throw std::invalid_argument("from_points: row " + std::to_string(i) + " is zero");
    if (r[0] < 0) throw std::invalid_argument("from_points: row " + std::to_string(i) + " has a negative leading entry");
    if (r[0] > 0) {
      const Rational lead = r[0];
      for (auto& x : r) x /= lead;
    }
    points.append_row(r);
  }
  ComputationObject obj(std::move(rb), kPolytope);
  obj.set("POINTS", std::move(points));
  return obj;
}

/// Object born with FACETS (and optionally AFFINE_HULL).
inline ComputationObject from_facets(const RatMatrix& facets, const RatMatrix& affine_hull = {},
                                     std::shared_ptr<Rulebase> rb = default_rulebase()) {
  ComputationObject obj(std::move(rb), kPolytope);
  obj.set("FACETS", facets);
  if (affine_hull.rows()) obj.set("AFFINE_HULL", affine_hull);
  return obj;
}

/// Affine points (without the homogenizing coordinate) as a homogeneous matrix.
inline RatMatrix homogenize(const std::vector<std::vector<long>>& pts) {
  RatMatrix m(0, pts.empty() ? 0 : pts.front().size() + 1);
  for (const auto& p : pts) {
    RatVector r{1};
    for (long x : p) r.push_back(x);
    m.append_row(r);
  }
  return m;
}

/// conv{0, e_1, ..., e_d}.
inline ComputationObject unit_simplex(int d, std::shared_ptr<Rulebase> rb = default_rulebase()) {
  if (d < 0) throw std::invalid_argument("unit_simplex: negative dimension");
  std::vector<std::vector<long>> pts{std::vector<long>(d, 0)};
  for (int j = 0; j < d; ++j) {
    std::vector<long> e(d, 0);
    e[j] = 1;
    pts.push_back(e);
  }
  return from_points(homogenize(pts), std::move(rb));
}

}  // namespace latpoly
