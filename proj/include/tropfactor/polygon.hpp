#pragma once

// Newton polygons and their primitive inner edge normals (tropicalizations).
// Everything here runs on exact integer arithmetic: orientation predicates
// use 128-bit products, the angle order uses half-plane + cross-product
// comparisons, and hulls come from a monotone chain sort.

#include <algorithm>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "tropfactor/polynomial.hpp"

namespace tropfactor {

/// Primitive integer direction shared by an edge of each Newton polygon:
/// gcd(|u|,|v|) == 1, (u,v) != (0,0).
struct Tropism {
  long long u = 0;
  long long v = 0;
  friend constexpr bool operator==(const Tropism&, const Tropism&) = default;
  friend constexpr auto operator<=>(const Tropism&, const Tropism&) = default;
};

inline Direction to_direction(Tropism t) { return {t.u, t.v}; }

/// Scales (u, v) down to its primitive representative.
inline Tropism primitive(long long u, long long v) {
  const long long g = std::gcd(u, v);
  if (g == 0) throw std::invalid_argument("zero direction has no primitive form");
  return {u / g, v / g};
}

namespace detail {

/// Sign of the turn o -> a -> b; exact for 64-bit coordinates.
inline __int128 cross3(Exponent o, Exponent a, Exponent b) {
  return static_cast<__int128>(a.i - o.i) * (b.j - o.j) -
         static_cast<__int128>(a.j - o.j) * (b.i - o.i);
}

inline __int128 cross2(Tropism a, Tropism b) {
  return static_cast<__int128>(a.u) * b.v - static_cast<__int128>(a.v) * b.u;
}

}  // namespace detail

/// Strict angular order counterclockwise from the positive x-axis, computed
/// by half-plane classification plus one exact cross product.
inline bool angle_less(Tropism a, Tropism b) {
  auto half = [](Tropism t) { return (t.v > 0 || (t.v == 0 && t.u > 0)) ? 0 : 1; };
  const int ha = half(a), hb = half(b);
  if (ha != hb) return ha < hb;
  return detail::cross2(a, b) > 0;
}

/// Convex hull vertices in counterclockwise order; degenerate supports give
/// a segment (two vertices) or a point (one).  Collinear non-extreme points
/// are never retained.
struct NewtonPolygon {
  std::vector<Exponent> vertices;
  bool is_point() const { return vertices.size() == 1; }
  bool is_segment() const { return vertices.size() == 2; }
};

/// Tropicalization Trop(f): the primitive inner normals of the polygon's
/// edges, sorted by angle_less.
struct Tropicalization {
  std::vector<Tropism> normals;
};

/// Exact integer hull via Andrew's monotone chain; O(n log n) from the sort.
inline NewtonPolygon convex_hull(std::span<const Exponent> support) {
  if (support.empty()) throw std::invalid_argument("convex hull of empty support");
  std::vector<Exponent> pts(support.begin(), support.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const std::size_t n = pts.size();
  if (n <= 2) return {pts};

  std::vector<Exponent> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t idx = 0; idx < n; ++idx) {  // lower chain
    while (k >= 2 && detail::cross3(hull[k - 2], hull[k - 1], pts[idx]) <= 0) --k;
    hull[k++] = pts[idx];
  }
  const std::size_t lower = k + 1;
  for (std::size_t idx = n - 1; idx-- > 0;) {  // upper chain
    while (k >= lower && detail::cross3(hull[k - 2], hull[k - 1], pts[idx]) <= 0) --k;
    hull[k++] = pts[idx];
  }
  hull.resize(k - 1);  // last point equals the first
  return {hull};
}

inline NewtonPolygon newton_polygon(const SparsePoly& p) {
  if (p.is_zero()) throw std::invalid_argument("Newton polygon of zero polynomial");
  return convex_hull(p.support());
}

/// Primitive inner normals, one per edge (two opposite ones for a segment,
/// none for a point).  With counterclockwise vertices the interior lies left
/// of each directed edge, so rotating the edge by +90 degrees points inward,
/// i.e. where <.,normal> is minimal over the polygon.
inline Tropicalization inner_normals(const NewtonPolygon& P) {
  Tropicalization trop;
  const auto& v = P.vertices;
  if (v.size() < 2) return trop;
  if (v.size() == 2) {
    const Exponent d{v[1].i - v[0].i, v[1].j - v[0].j};
    trop.normals.push_back(primitive(-d.j, d.i));
    trop.normals.push_back(primitive(d.j, -d.i));
  } else {
    for (std::size_t a = 0; a < v.size(); ++a) {
      const std::size_t b = (a + 1) % v.size();
      const Exponent d{v[b].i - v[a].i, v[b].j - v[a].j};
      trop.normals.push_back(primitive(-d.j, d.i));
    }
  }
  std::sort(trop.normals.begin(), trop.normals.end(), angle_less);
  return trop;
}

inline Tropicalization tropicalization(const SparsePoly& p) {
  return inner_normals(newton_polygon(p));
}

/// Sorted merge of the two angle-sorted normal lists, keeping exact matches;
/// linear time.
inline std::vector<Tropism> tropism_intersection(const Tropicalization& a,
                                                 const Tropicalization& b) {
  std::vector<Tropism> out;
  std::size_t ia = 0, ib = 0;
  while (ia < a.normals.size() && ib < b.normals.size()) {
    if (a.normals[ia] == b.normals[ib]) {
      out.push_back(a.normals[ia]);
      ++ia;
      ++ib;
    } else if (angle_less(a.normals[ia], b.normals[ib])) {
      ++ia;
    } else {
      ++ib;
    }
  }
  return out;
}

/// Number of C*-roots (with multiplicity) of the univariatized initial form:
/// the lattice length of the edge of the Newton polygon with inner normal t,
/// and 0 when t picks out a vertex.
inline long long tentacle_degree(const SparsePoly& p, Tropism t) {
  const SparsePoly face = initial_form(p, to_direction(t));
  if (face.term_count() <= 1) return 0;
  const Exponent lo = face.terms().front().e;
  const Exponent hi = face.terms().back().e;
  return std::gcd(hi.i - lo.i, hi.j - lo.j);
}

}  // namespace tropfactor
