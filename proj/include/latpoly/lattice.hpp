#pragma once

// Lattice-specific invariants: lattice point enumeration, Ehrhart counts and
// the h*-vector, reflexivity, smoothness, and Hilbert bases of pointed cones.
// The lattice is always Z^n.

#include "latpoly/exactmath.hpp"
#include "latpoly/geometry.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace latpoly {

class LatticeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Every vertex of a bounded polyhedron has integer coordinates.
inline bool lattice_test(const RatMatrix& vertices) {
  if (!bounded(vertices)) return false;
  for (std::size_t i = 0; i < vertices.rows(); ++i)
    for (std::size_t j = 0; j < vertices.cols(); ++j)
      if (!is_integral(vertices(i, j) / vertices(i, 0))) return false;
  return true;
}

namespace detail {

inline std::vector<IntVector> integer_rows(const RatMatrix& m) {
  std::vector<IntVector> rows;
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(scale_to_integer(m.row(i)));
  return rows;
}

// Visits every integer point of the box [lo, hi] in lexicographic order.
template <class F>
void for_each_box_point(const IntVector& lo, const IntVector& hi, F&& visit) {
  const std::size_t d = lo.size();
  for (std::size_t j = 0; j < d; ++j)
    if (lo[j] > hi[j]) return;
  IntVector x = lo;
  while (true) {
    visit(x);
    std::size_t j = d;
    while (j > 0) {
      --j;
      if (x[j] < hi[j]) {
        ++x[j];
        for (std::size_t t = j + 1; t < d; ++t) x[t] = lo[t];
        break;
      }
      if (j == 0) return;
    }
    if (d == 0) return;
  }
}

}  // namespace detail

/// Lattice points of the dilate k*P of a bounded polyhedron given by its
/// vertices, facets and affine hull; `strict` keeps relative-interior points
/// only. Rows are (1, x) in lexicographic order.
inline RatMatrix lattice_points(const RatMatrix& vertices, const RatMatrix& facets, const RatMatrix& affine_hull,
                                bool strict = false, const Integer& k = 1) {
  if (!bounded(vertices)) throw LatticeError("lattice points: polyhedron is unbounded");
  const std::size_t n = vertices.cols();
  const std::size_t d = n - 1;
  RatMatrix out(0, n);
  if (vertices.rows() == 0) return out;
  IntVector lo(d), hi(d);
  for (std::size_t j = 0; j < d; ++j) {
    Rational mn = vertices(0, j + 1) / vertices(0, 0), mx = mn;
    for (std::size_t i = 1; i < vertices.rows(); ++i) {
      Rational c = vertices(i, j + 1) / vertices(i, 0);
      mn = std::min(mn, c);
      mx = std::max(mx, c);
    }
    lo[j] = ceil_of(mn * k);
    hi[j] = floor_of(mx * k);
  }
  auto ineq = detail::integer_rows(facets);
  auto eqs = detail::integer_rows(affine_hull);
  for (auto* rows : {&ineq, &eqs})
    for (auto& r : *rows) r[0] *= k;
  if (k == 0) {
    RatVector origin(n);
    origin[0] = 1;
    if (!strict || facets.rows() == 0) out.append_row(origin);
    return out;
  }
  detail::for_each_box_point(lo, hi, [&](const IntVector& x) {
    auto value = [&](const IntVector& a) {
      Integer s = a[0];
      for (std::size_t j = 0; j < d; ++j) s += a[j + 1] * x[j];
      return s;
    };
    for (const auto& e : eqs)
      if (value(e) != 0) return;
    for (const auto& a : ineq) {
      Integer s = value(a);
      if (s < 0 || (strict && s == 0)) return;
    }
    RatVector row(n);
    row[0] = 1;
    for (std::size_t j = 0; j < d; ++j) row[j + 1] = x[j];
    out.append_row(row);
  });
  return out;
}

inline void require_full_dimensional_lattice(const RatMatrix& vertices, const RatMatrix& affine_hull,
                                             const char* what) {
  if (!lattice_test(vertices)) throw LatticeError(std::string(what) + ": not a lattice polytope");
  if (affine_hull.rows() != 0 || static_cast<int>(rank(vertices)) != static_cast<int>(vertices.cols()))
    throw LatticeError(std::string(what) + ": polytope is not full-dimensional");
}

/// |kP ∩ Z^d| for k = 0 .. k_max.
inline std::vector<Integer> ehrhart_counts(const RatMatrix& vertices, const RatMatrix& facets,
                                           const RatMatrix& affine_hull, std::size_t k_max) {
  require_full_dimensional_lattice(vertices, affine_hull, "ehrhart_counts");
  if (k_max + 1 < vertices.cols()) throw std::invalid_argument("ehrhart_counts: k_max is below the dimension");
  std::vector<Integer> e;
  for (std::size_t k = 0; k <= k_max; ++k)
    e.push_back(static_cast<long>(lattice_points(vertices, facets, affine_hull, false, Integer(static_cast<long>(k))).rows()));
  return e;
}

/// h*-vector from E(0..d) by the binomial transform
/// h*_j = sum_{i<=j} (-1)^(j-i) C(d+1, j-i) E(i).
inline RatVector h_star(const std::vector<Integer>& counts, std::size_t d) {
  if (counts.size() < d + 1) throw std::invalid_argument("h_star: need d+1 Ehrhart counts");
  RatVector h(d + 1);
  for (std::size_t j = 0; j <= d; ++j) {
    Integer s = 0;
    for (std::size_t i = 0; i <= j; ++i) {
      Integer term = binomial(d + 1, j - i) * counts[i];
      if ((j - i) % 2) s -= term;
      else s += term;
    }
    if (s < 0) throw LatticeError("h_star: negative coefficient; the lattice point counts are inconsistent");
    h[j] = s;
  }
  return h;
}

inline Integer lattice_volume(const RatVector& hstar) {
  Rational s = 0;
  for (const auto& x : hstar) s += x;
  return s.get_num();
}

inline int lattice_degree(const RatVector& hstar) {
  int deg = 0;
  for (std::size_t i = 0; i < hstar.size(); ++i)
    if (hstar[i] != 0) deg = static_cast<int>(i);
  return deg;
}

inline int lattice_codegree(const RatVector& hstar) {
  const int d = static_cast<int>(hstar.size()) - 1;
  return d + 1 - lattice_degree(hstar);
}

inline Integer n_interior_from_hstar(const RatVector& hstar) { return hstar.back().get_num(); }

/// Origin in the interior and every primitive facet inequality has constant term 1.
inline bool reflexive(const RatMatrix& facets, int dim, int ambient) {
  if (dim != ambient) return false;
  for (std::size_t i = 0; i < facets.rows(); ++i) {
    IntVector f = primitive(scale_to_integer(facets.row(i)));
    if (f[0] != 1) return false;
  }
  return true;
}

/// Every vertex is simple and its primitive edge directions form a lattice basis.
inline bool smooth(const HasseDiagram& h, const RatMatrix& vertices) {
  const int d = h.top_dim();
  if (d != static_cast<int>(vertices.cols()) - 1) throw LatticeError("smooth: polytope is not full-dimensional");
  if (!lattice_test(vertices)) throw LatticeError("smooth: not a lattice polytope");
  Graph g = vertex_graph(h);
  for (std::size_t v = 0; v < vertices.rows(); ++v) {
    const auto& nb = g.adjacent_nodes(static_cast<int>(v));
    if (static_cast<int>(nb.size()) != d) return false;
    IntMatrix dirs(0, static_cast<std::size_t>(d));
    for (int w : nb) {
      IntVector e(d);
      for (int j = 0; j < d; ++j) e[j] = Rational(vertices(w, j + 1) - vertices(v, j + 1)).get_num();
      dirs.append_row(primitive(e));
    }
    Integer det_value = det(dirs);
    if (det_value != 1 && det_value != -1) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Hilbert bases

namespace detail {

// Rational inverse by Gauss-Jordan.
inline RatMatrix inverse(const IntMatrix& g) {
  const std::size_t n = g.rows();
  RatMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = g(i, j);
    aug(i, n + i) = 1;
  }
  auto piv = rref(aug);
  if (piv.size() < n || piv[n - 1] != n - 1) throw std::domain_error("inverse: singular matrix");
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

// Placing triangulation of the cone spanned by `gens` (rows), inserting in
// the given order. Returns simplices as index sets.
inline std::vector<IndexSet> placing_triangulation(const std::vector<IntVector>& gens) {
  std::vector<IndexSet> simplices;
  if (gens.empty()) return simplices;
  const std::size_t n = gens.front().size();
  simplices.push_back({0});
  IntMatrix placed(0, n);
  placed.append_row(gens[0]);
  std::size_t current_rank = 1;

  auto coords = [&](const IndexSet& s, const IntVector& p) {
    RatMatrix a(n, s.size());
    for (std::size_t c = 0; c < s.size(); ++c)
      for (std::size_t r = 0; r < n; ++r) a(r, c) = gens[s[c]][r];
    return lin_solve(a, to_rational(p));
  };

  for (std::size_t i = 1; i < gens.size(); ++i) {
    placed.append_row(gens[i]);
    const std::size_t r = rank(placed);
    const int pi = static_cast<int>(i);
    if (r > current_rank) {
      current_rank = r;
      for (auto& s : simplices) s.push_back(pi);
      continue;
    }
    std::map<IndexSet, int> facet_count;
    for (const auto& s : simplices)
      for (std::size_t q = 0; q < s.size(); ++q) {
        IndexSet f = s;
        f.erase(f.begin() + static_cast<long>(q));
        ++facet_count[f];
      }
    std::vector<IndexSet> added;
    for (const auto& s : simplices) {
      auto lambda = coords(s, gens[i]);
      if (!lambda) throw std::logic_error("placing triangulation: point outside the current span");
      for (std::size_t q = 0; q < s.size(); ++q) {
        if ((*lambda)[q] >= 0) continue;
        IndexSet f = s;
        f.erase(f.begin() + static_cast<long>(q));
        if (facet_count[f] != 1) continue;
        f.push_back(pi);
        added.push_back(std::move(f));
      }
    }
    simplices.insert(simplices.end(), added.begin(), added.end());
  }
  return simplices;
}

// Nonzero lattice points of the half-open parallelepiped spanned by the rows
// of a nonsingular square integer matrix. Coset representatives come from the
// diagonal of the Hermite normal form of the row lattice.
inline std::vector<IntVector> parallelepiped_points(const IntMatrix& g) {
  const std::size_t n = g.rows();
  auto hnf = hermite_normal_form(g);
  IntVector box(n);
  for (std::size_t j = 0; j < n; ++j) box[j] = hnf.h(j, j) - 1;
  RatMatrix inv = inverse(g);
  std::vector<IntVector> out;
  detail::for_each_box_point(IntVector(n, Integer(0)), box, [&](const IntVector& r) {
    RatVector lambda(n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i)
        if (r[i] != 0) lambda[j] += r[i] * inv(i, j);
    RatVector p(n);
    bool zero = true;
    for (std::size_t j = 0; j < n; ++j) {
      Rational frac = lambda[j] - floor_of(lambda[j]);
      if (frac == 0) continue;
      zero = false;
      for (std::size_t c = 0; c < n; ++c) p[c] += frac * g(j, c);
    }
    if (!zero) out.push_back(to_integer(p));
  });
  return out;
}

inline std::vector<IntVector> hilbert_basis_full_dimensional(const std::vector<IntVector>& gens) {
  const std::size_t n = gens.front().size();
  RatMatrix gm(0, n);
  for (const auto& g : gens) gm.append_row(to_rational(g));
  auto fd = facets_from_points(gm);
  if (!pointed(fd.facets, fd.affine_hull, n)) throw LatticeError("hilbert_basis: cone is not pointed (it contains a line)");
  auto facets = integer_rows(fd.facets);

  std::set<IntVector> candidates(gens.begin(), gens.end());
  for (const auto& simplex : placing_triangulation(gens)) {
    IntMatrix g(0, n);
    for (int i : simplex) g.append_row(gens[i]);
    for (auto& p : parallelepiped_points(g)) candidates.insert(std::move(p));
  }

  // grade by a functional positive on the cone minus the origin
  IntVector grading(n, Integer(0));
  for (const auto& f : facets)
    for (std::size_t j = 0; j < n; ++j) grading[j] += f[j];
  std::vector<std::pair<Integer, IntVector>> graded;
  for (const auto& c : candidates) graded.emplace_back(int_dot(grading, c), c);
  std::sort(graded.begin(), graded.end());

  auto in_cone = [&](const IntVector& x) {
    for (const auto& f : facets)
      if (int_dot(f, x) < 0) return false;
    return true;
  };
  auto reduces = [&](const IntVector& x, const IntVector& y) {
    IntVector diff(n);
    for (std::size_t j = 0; j < n; ++j) diff[j] = x[j] - y[j];
    return in_cone(diff);
  };

  std::vector<std::pair<Integer, IntVector>> survivors;
  for (const auto& [deg, x] : graded) {
    bool reducible = false;
    for (const auto& [ydeg, y] : survivors) {
      if (ydeg >= deg) break;
      if (reduces(x, y)) {
        reducible = true;
        break;
      }
    }
    if (!reducible) survivors.emplace_back(deg, x);
  }
  for (const auto& [dx, x] : survivors)
    for (const auto& [dy, y] : survivors)
      if (x != y && reduces(x, y)) throw std::logic_error("hilbert_basis: reduction is not stable");

  std::vector<IntVector> out;
  for (auto& s : survivors) out.push_back(s.second);
  return out;
}

}  // namespace detail

/// Hilbert basis of the pointed cone spanned by the rows of `generators`,
/// sorted lexicographically.
inline IntMatrix hilbert_basis(const IntMatrix& generators) {
  const std::size_t n = generators.cols();
  std::set<IntVector> uniq;
  for (std::size_t i = 0; i < generators.rows(); ++i) {
    IntVector g = generators.row_vector(i);
    if (std::all_of(g.begin(), g.end(), [](const Integer& x) { return x == 0; })) continue;
    uniq.insert(primitive(g));
  }
  IntMatrix out(0, n);
  if (uniq.empty()) return out;
  std::vector<IntVector> gens(uniq.begin(), uniq.end());
  IntMatrix gm = IntMatrix::from_rows(gens);
  const std::size_t r = rank(gm);

  std::vector<IntVector> basis;
  if (r == n) {
    basis = detail::hilbert_basis_full_dimensional(gens);
  } else {
    // work in a basis of the saturated lattice span(gens) ∩ Z^n
    IntMatrix kernel = integer_kernel(gm);
    IntMatrix lattice = integer_kernel(kernel);
    RatMatrix lt = to_rational(transpose(lattice));
    std::vector<IntVector> local;
    for (const auto& g : gens) {
      auto c = lin_solve(lt, to_rational(g));
      if (!c) throw std::logic_error("hilbert_basis: generator outside its own span");
      local.push_back(to_integer(*c));
    }
    for (const auto& h : detail::hilbert_basis_full_dimensional(local)) {
      IntVector x(n, Integer(0));
      for (std::size_t i = 0; i < h.size(); ++i)
        for (std::size_t j = 0; j < n; ++j) x[j] += h[i] * lattice(i, j);
      basis.push_back(std::move(x));
    }
  }
  std::sort(basis.begin(), basis.end());
  for (const auto& b : basis) out.append_row(b);
  return out;
}

// ---------------------------------------------------------------------------
// integral Carathéodory scan

struct WitnessRow {
  IndexSet subset;
  RatVector solution;  // coefficients y with y^T B = x
  bool integral = false;
  bool nonnegative = false;
};

struct WitnessReport {
  std::size_t subsets = 0;
  std::vector<WitnessRow> rows;  // nonsingular subsets only, lexicographic subset order
  std::size_t integral = 0;
  std::size_t nonnegative = 0;
  std::size_t nonnegative_integral = 0;
};

/// For every maximal nonsingular row subset B of `m`, solves y^T B = x.
inline WitnessReport caratheodory_witness_scan(const RatMatrix& m, const RatVector& x) {
  const std::size_t k = m.cols();
  if (x.size() != k) throw DimensionError("caratheodory_witness_scan: vector length differs from column count");
  WitnessReport report;
  for (const auto& subset : all_subsets_of_k(k, sequence(0, static_cast<int>(m.rows()) - 1))) {
    ++report.subsets;
    RatMatrix b = minor(m, subset, All);
    if (det(b) == 0) continue;
    auto y = lin_solve(transpose(b), x);
    if (!y) throw std::logic_error("caratheodory_witness_scan: nonsingular system without solution");
    WitnessRow row{subset, *y, true, true};
    for (const auto& c : row.solution) {
      row.integral = row.integral && is_integral(c);
      row.nonnegative = row.nonnegative && c >= 0;
    }
    report.integral += row.integral;
    report.nonnegative += row.nonnegative;
    report.nonnegative_integral += row.integral && row.nonnegative;
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace latpoly
