#pragma once

// Stage 2: univariatize the initial-form system of a tropism and find its
// common roots in C*.  The unimodular transform makes every initial-form
// term share one X-degree; stripping the common monomial leaves honest
// univariate polynomials in Y.  A Sylvester rank test gates the root search,
// so coprime pairs exit without any root finding.

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "tropfactor/matrix.hpp"
#include "tropfactor/polygon.hpp"
#include "tropfactor/polynomial.hpp"
#include "tropfactor/rng.hpp"
#include "tropfactor/roots.hpp"
#include "tropfactor/unimodular.hpp"

namespace tropfactor {

/// Univariatized initial form: ascending coefficients with nonzero first and
/// last entries, plus the monomial (in transformed coordinates) divided out.
struct UnivariateForm {
  std::vector<Complex> coeffs;
  Exponent source_shift{0, 0};
  long long degree() const { return static_cast<long long>(coeffs.size()) - 1; }
  std::size_t nonzero_terms() const {
    std::size_t n = 0;
    for (const Complex& c : coeffs)
      if (c != Complex(0.0, 0.0)) ++n;
    return n;
  }
  friend bool operator==(const UnivariateForm&, const UnivariateForm&) = default;
};

/// A common root of an initial-form system, with the relative residuals of
/// both univariatized forms at z.
struct InitialRoot {
  Tropism tropism;
  Complex z{0.0, 0.0};
  double residual_f = 0.0;
  double residual_g = 0.0;
  friend bool operator==(const InitialRoot&, const InitialRoot&) = default;
};

struct TropismRoots {
  Tropism tropism;
  std::vector<InitialRoot> roots;
  friend bool operator==(const TropismRoots&, const TropismRoots&) = default;
};

/// Transforms initial_form(p, first row of M) by M and strips the common
/// monomial; the result depends on Y only.
inline UnivariateForm univariatize(const SparsePoly& p, const UnimodularMatrix& M) {
  const SparsePoly face = initial_form(p, Direction{M.u, M.v});
  auto [stripped, shift] = strip_monomial(transform_support(M, face));
  long long max_j = 0;
  for (const Term& t : stripped.terms()) {
    if (t.e.i != 0)
      throw std::logic_error("initial form not univariate after transform");
    max_j = std::max(max_j, t.e.j);
  }
  UnivariateForm form;
  form.coeffs.assign(static_cast<std::size_t>(max_j) + 1, Complex(0.0, 0.0));
  for (const Term& t : stripped.terms())
    form.coeffs[static_cast<std::size_t>(t.e.j)] = t.c;
  form.source_shift = shift;
  return form;
}

inline UnivariateForm univariatize(const SparsePoly& p, Tropism t) {
  return univariatize(p, matrix_for_tropism(t));
}

/// |f(z)| relative to the termwise evaluation magnitude at z.
inline double relative_residual(const UnivariateForm& f, Complex z) {
  double scale = 0.0;
  const double az = std::abs(z);
  double power = 1.0;
  for (const Complex& c : f.coeffs) {
    scale += std::abs(c) * power;
    power *= az;
  }
  if (scale == 0.0) return 0.0;
  return std::abs(horner(f.coeffs, z)) / scale;
}

/// Standard (deg p + deg q) square Sylvester matrix; det = Res(p, q).
inline CMatrix sylvester_matrix(const std::vector<Complex>& p,
                                const std::vector<Complex>& q) {
  const long long n = static_cast<long long>(p.size()) - 1;
  const long long m = static_cast<long long>(q.size()) - 1;
  if (n < 0 || m < 0 || (n == 0 && m == 0))
    throw std::invalid_argument("Sylvester matrix needs a nonconstant polynomial");
  const std::size_t size = static_cast<std::size_t>(n + m);
  CMatrix S(size, size);
  for (long long r = 0; r < m; ++r)
    for (long long s = 0; s <= n; ++s)
      S(static_cast<std::size_t>(r), static_cast<std::size_t>(r + s)) =
          p[static_cast<std::size_t>(n - s)];
  for (long long r = 0; r < n; ++r)
    for (long long s = 0; s <= m; ++s)
      S(static_cast<std::size_t>(m + r), static_cast<std::size_t>(r + s)) =
          q[static_cast<std::size_t>(m - s)];
  return S;
}

inline CMatrix sylvester_matrix(const UnivariateForm& p, const UnivariateForm& q) {
  return sylvester_matrix(p.coeffs, q.coeffs);
}

/// Count of singular values above tol * sigma_max.
inline int numeric_rank(const CMatrix& M, double tol) {
  const std::vector<double> sigma = singular_values(M);
  if (sigma.empty() || sigma.front() == 0.0) return 0;
  const double cutoff = tol * sigma.front();
  int rank = 0;
  for (double s : sigma)
    if (s > cutoff) ++rank;
  return rank;
}

namespace detail {

struct RootCluster {
  Complex centroid{0.0, 0.0};
  int multiplicity = 0;
};

/// Greedy clustering of (re, im)-sorted points within the given radius;
/// multiple roots come out of the iteration as tight clusters.
inline std::vector<RootCluster> cluster_roots(std::vector<Complex> pts,
                                              double radius) {
  std::sort(pts.begin(), pts.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  std::vector<RootCluster> out;
  for (const Complex& z : pts) {
    if (!out.empty() &&
        std::abs(z - out.back().centroid) <=
            radius * std::max(1.0, std::abs(out.back().centroid))) {
      RootCluster& cl = out.back();
      cl.centroid = (cl.centroid * static_cast<double>(cl.multiplicity) + z) /
                    static_cast<double>(cl.multiplicity + 1);
      ++cl.multiplicity;
    } else {
      out.push_back({z, 1});
    }
  }
  return out;
}

}  // namespace detail

/// All z in C* with relative residuals of both forms below tol, repeated by
/// cluster multiplicity.  A full-rank Sylvester matrix short-circuits to the
/// empty list; two-term pairs skip the rank machinery and use radicals.
inline std::vector<Complex> common_roots(const UnivariateForm& p,
                                         const UnivariateForm& q, double tol,
                                         double rank_tol = 1e-6,
                                         std::uint64_t seed = 0x5EED0ULL) {
  if (p.degree() < 1 || q.degree() < 1) return {};
  const bool both_binomial = p.nonzero_terms() == 2 && q.nonzero_terms() == 2;
  if (!both_binomial) {
    const CMatrix S = sylvester_matrix(p, q);
    if (numeric_rank(S, rank_tol) == static_cast<int>(S.rows())) return {};
  }
  const std::vector<Complex> raw = polynomial_roots(p.coeffs, seed);
  std::vector<Complex> out;
  for (const auto& cl : detail::cluster_roots(raw, 1e-6)) {
    if (std::abs(cl.centroid) == 0.0) continue;
    if (relative_residual(p, cl.centroid) <= tol &&
        relative_residual(q, cl.centroid) <= tol)
      out.insert(out.end(), static_cast<std::size_t>(cl.multiplicity), cl.centroid);
  }
  return out;
}

/// Algorithm "tropisms and initial roots": per tropism, the common roots of
/// the univariatized pair, with residuals recorded.  Tropisms whose systems
/// have no common root map to empty lists.  Deterministic in (inputs, seed).
inline std::vector<TropismRoots> solve_stage2(const SparsePoly& f,
                                              const SparsePoly& g,
                                              const std::vector<Tropism>& tropisms,
                                              double root_tol, double rank_tol,
                                              std::uint64_t seed) {
  std::vector<TropismRoots> table;
  table.reserve(tropisms.size());
  for (const Tropism& t : tropisms) {
    TropismRoots entry{t, {}};
    const UnivariateForm pf = univariatize(f, t);
    const UnivariateForm qg = univariatize(g, t);
    if (pf.degree() >= 1 && qg.degree() >= 1) {
      const std::uint64_t sub_seed =
          mix_seed(seed, static_cast<std::uint64_t>(t.u * 131071 + t.v));
      std::vector<Complex> roots = common_roots(pf, qg, root_tol, rank_tol, sub_seed);
      roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
      for (const Complex& z : roots)
        entry.roots.push_back(
            {t, z, relative_residual(pf, z), relative_residual(qg, z)});
    }
    table.push_back(std::move(entry));
  }
  return table;
}

}  // namespace tropfactor
