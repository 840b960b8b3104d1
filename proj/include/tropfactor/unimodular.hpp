#pragma once

// Unimodular coordinate changes attached to a tropism.  For a primitive
// (u, v) the matrix M = [[u, v], [-l, k]] with k*u + l*v = 1 defines
// x = X^u Y^{-l}, y = X^v Y^k.  A monomial x^a y^b becomes
// X^{a*u + b*v} Y^{-l*a + k*b}, so the terms of an initial form all share
// one X-degree (the weighted degree) and the edge becomes univariate in Y.

#include <numeric>
#include <stdexcept>
#include <utility>

#include "tropfactor/polygon.hpp"
#include "tropfactor/polynomial.hpp"

namespace tropfactor {

/// g = gcd(|u|,|v|) together with a Bezout pair: k*u + l*v == g.
struct ExtGcd {
  long long g = 0;
  long long k = 0;
  long long l = 0;
};

namespace detail {
inline long long floor_div(long long a, long long b) {
  long long q = a / b;
  const long long r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}
}  // namespace detail

/// Extended Euclid with a canonical representative: among the solution
/// family (k + m*v/g, l - m*u/g) the one minimizing |l| is returned, ties
/// broken by minimizing |k|.
inline ExtGcd extended_gcd(long long u, long long v) {
  if (u == 0 && v == 0) throw std::invalid_argument("extended_gcd(0, 0)");
  long long old_r = u, r = v;
  long long old_s = 1, s = 0;
  long long old_t = 0, t = 1;
  while (r != 0) {
    const long long q = old_r / r;
    long long tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  long long g = old_r, k = old_s, l = old_t;
  if (g < 0) {
    g = -g;
    k = -k;
    l = -l;
  }
  const long long su = u / g, sv = v / g;
  if (su == 0) {
    // l is fixed at +-1; k = k + m*sv with sv = +-1 reaches k = 0.
    k = 0;
  } else {
    const long long m0 = detail::floor_div(l, su);
    long long best_k = 0, best_l = 0;
    bool have = false;
    for (long long m : {m0, m0 + 1}) {
      const long long cl = l - m * su;
      const long long ck = k + m * sv;
      if (!have || std::abs(cl) < std::abs(best_l) ||
          (std::abs(cl) == std::abs(best_l) && std::abs(ck) < std::abs(best_k))) {
        best_k = ck;
        best_l = cl;
        have = true;
      }
    }
    k = best_k;
    l = best_l;
  }
  return {g, k, l};
}

/// Rows (u, v) and (-l, k); determinant u*k + l*v == 1 exactly.
struct UnimodularMatrix {
  long long u = 1;
  long long v = 0;
  long long k = 1;
  long long l = 0;
  friend constexpr bool operator==(const UnimodularMatrix&,
                                   const UnimodularMatrix&) = default;
};

inline long long unimodular_det(const UnimodularMatrix& M) {
  return M.u * M.k + M.l * M.v;
}

/// Validating constructor for non-canonical representatives (tests and the
/// representative-invariance checks use it).
inline UnimodularMatrix make_unimodular(long long u, long long v, long long k,
                                        long long l) {
  UnimodularMatrix M{u, v, k, l};
  if (std::gcd(u, v) != 1) throw std::invalid_argument("first row not primitive");
  if (unimodular_det(M) != 1) throw std::invalid_argument("determinant is not 1");
  return M;
}

inline UnimodularMatrix matrix_for_tropism(Tropism t) {
  if (std::gcd(t.u, t.v) != 1)
    throw std::invalid_argument("tropism must be primitive");
  const ExtGcd eg = extended_gcd(t.u, t.v);
  return UnimodularMatrix{t.u, t.v, eg.k, eg.l};
}

/// (a, b) -> (a*u + b*v, -l*a + k*b); checked 64-bit arithmetic.
inline Exponent transform_exponent(const UnimodularMatrix& M, Exponent e) {
  const long long x = detail::checked_add(detail::checked_mul(e.i, M.u),
                                          detail::checked_mul(e.j, M.v));
  const long long y = detail::checked_add(detail::checked_mul(e.i, -M.l),
                                          detail::checked_mul(e.j, M.k));
  return {x, y};
}

/// Applies M to the support only; coefficients are untouched.
inline SparsePoly transform_support(const UnimodularMatrix& M, const SparsePoly& p) {
  std::vector<Term> out;
  out.reserve(p.term_count());
  for (const Term& t : p.terms()) out.push_back({transform_exponent(M, t.e), t.c});
  return SparsePoly::from_terms(out, 0.0);
}

/// Back-substitution x = X^u Y^{-l}, y = X^v Y^k; X and Y must be nonzero.
inline std::pair<Complex, Complex> untransform_point(const UnimodularMatrix& M,
                                                     Complex X, Complex Y) {
  if (X == Complex(0.0, 0.0) || Y == Complex(0.0, 0.0))
    throw std::domain_error("untransform_point requires torus coordinates");
  const Complex x = detail::ipow(X, M.u) * detail::ipow(Y, -M.l);
  const Complex y = detail::ipow(X, M.v) * detail::ipow(Y, M.k);
  return {x, y};
}

}  // namespace tropfactor
