#pragma once

// Stage 3: existence condition and value of the second Puiseux term.  In the
// transformed coordinates of a tropism the candidate series is
//   X = t^d,  Y = c0 + c1 t^w ,
// and substituting it into the stripped transformed polynomial
//   F(X, Y) = S_0(Y) + X^k S_k(Y) + (higher X-slices)
// makes the lowest t-orders  a1*w  (from S_0, a1 = multiplicity of c0) and
// k*d (from the X^k slice).  They can only cancel when a1*w = k*d, which
// together with the same relation for g pins w; c1 then solves a linear
// system of two equations in one unknown.

#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tropfactor/initial_system.hpp"
#include "tropfactor/polygon.hpp"
#include "tropfactor/polynomial.hpp"
#include "tropfactor/roots.hpp"
#include "tropfactor/unimodular.hpp"

namespace tropfactor {

/// Reduced rational with positive denominator; only exponents of t use it.
struct Rational {
  long long num = 0;
  long long den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool is_integer() const { return den == 1; }
  friend constexpr bool operator==(const Rational&, const Rational&) = default;
};

inline Rational make_rational(long long num, long long den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const long long g = std::gcd(num, den);
  return g == 0 ? Rational{0, 1} : Rational{num / g, den / g};
}

inline std::string to_string(const Rational& r) {
  return r.den == 1 ? std::to_string(r.num)
                    : std::to_string(r.num) + "/" + std::to_string(r.den);
}

/// Exponent bookkeeping of the condition: k, l are the minimal positive
/// X-degrees of the non-initial parts of f and g after the transform; a1, b1
/// are the vanishing orders of the univariatized initial forms at c0.
struct ExponentData {
  long long k = 0;
  long long l = 0;
  long long a1 = 0;
  long long b1 = 0;
  friend constexpr bool operator==(const ExponentData&, const ExponentData&) = default;
};

/// First two terms of the Puiseux series in transformed coordinates:
/// X = t^d, Y = c0 + c1 t^w.
struct SeriesGerm {
  Tropism tropism;
  long long d = 1;
  Complex c0{0.0, 0.0};
  Rational w{1, 1};
  Complex c1{0.0, 0.0};
  friend bool operator==(const SeriesGerm&, const SeriesGerm&) = default;
};

namespace detail {

/// The transformed, monomial-stripped polynomial grouped by X-degree.
/// xdegs is ascending and starts at 0; ypolys[s] is the dense ascending
/// Y-polynomial of slice xdegs[s].
struct XSlices {
  Exponent shift{0, 0};
  std::vector<long long> xdegs;
  std::vector<std::vector<Complex>> ypolys;
};

inline XSlices transformed_slices(const SparsePoly& p, const UnimodularMatrix& M) {
  auto [stripped, shift] = strip_monomial(transform_support(M, p));
  XSlices out;
  out.shift = shift;
  for (const Term& t : stripped.terms()) {  // terms sorted lex: grouped by i
    if (out.xdegs.empty() || out.xdegs.back() != t.e.i) {
      out.xdegs.push_back(t.e.i);
      out.ypolys.emplace_back();
    }
    auto& poly = out.ypolys.back();
    if (static_cast<long long>(poly.size()) <= t.e.j)
      poly.resize(static_cast<std::size_t>(t.e.j) + 1, Complex(0.0, 0.0));
    poly[static_cast<std::size_t>(t.e.j)] = t.c;
  }
  return out;
}

/// p^(mu)(c0) without the 1/mu! normalization, plus the matching termwise
/// magnitude scale used for vanishing tests.
inline std::pair<Complex, double> derivative_at(std::span<const Complex> coeffs,
                                                Complex c0, long long mu) {
  Complex value(0.0, 0.0);
  double scale = 0.0;
  const double ac0 = std::abs(c0);
  for (std::size_t j = static_cast<std::size_t>(mu); j < coeffs.size(); ++j) {
    double fall = 1.0;
    for (long long r = 0; r < mu; ++r) fall *= static_cast<double>(j - r);
    const Complex term =
        coeffs[j] * fall * ipow(c0, static_cast<long long>(j) - mu);
    value += term;
    scale += std::abs(coeffs[j]) * fall *
             std::pow(ac0, static_cast<double>(static_cast<long long>(j) - mu));
  }
  return {value, scale};
}

/// Smallest mu with |p^(mu)(c0)| above tol * scale; mu = 0 means c0 is not a
/// root at this tolerance.  Always terminates at mu <= deg.
inline std::pair<long long, Complex> vanishing_order(std::span<const Complex> coeffs,
                                                     Complex c0, double tol) {
  const long long deg = static_cast<long long>(coeffs.size()) - 1;
  for (long long mu = 0; mu <= deg; ++mu) {
    const auto [value, scale] = derivative_at(coeffs, c0, mu);
    if (scale > 0.0 && std::abs(value) > tol * scale) {
      double fact = 1.0;
      for (long long r = 2; r <= mu; ++r) fact *= static_cast<double>(r);
      return {mu, value / fact};
    }
  }
  return {deg + 1, Complex(0.0, 0.0)};
}

/// Everything the exponent condition and the c1 solve need for one side.
struct StageThreeSide {
  bool has_rest = false;  // false when the support sits entirely on the edge
  long long min_xdeg = 0;
  long long mult = 0;          // vanishing order of slice 0 at c0
  Complex lead{0.0, 0.0};      // S_0^(a1)(c0) / a1!
  Complex rest{0.0, 0.0};      // S_k(c0)
};

inline StageThreeSide stage3_side(const SparsePoly& p, const UnimodularMatrix& M,
                                  Complex c0, double mult_tol) {
  const XSlices slices = transformed_slices(p, M);
  StageThreeSide side;
  auto [mu, lead] = vanishing_order(slices.ypolys.front(), c0, mult_tol);
  if (mu == 0)
    throw std::invalid_argument("c0 is not a root of the initial form");
  side.mult = mu;
  side.lead = lead;
  if (slices.xdegs.size() >= 2) {
    side.has_rest = true;
    side.min_xdeg = slices.xdegs[1];
    side.rest = horner(slices.ypolys[1], c0);
  }
  return side;
}

}  // namespace detail

inline constexpr double kMultiplicityTol = 1e-6;

/// Checks the exponent condition w = k*d/a1 = l*d/b1 for a verified initial
/// root c0 of the tropism t (primitive, so d = 1).  A nullopt return is the
/// "no second term" certificate: either the condition fails or one support
/// lies entirely on its edge, leaving nothing to balance the lowest order.
inline std::optional<std::pair<Rational, ExponentData>> exponent_condition(
    const SparsePoly& f, const SparsePoly& g, Tropism t, Complex c0,
    double mult_tol = kMultiplicityTol) {
  const UnimodularMatrix M = matrix_for_tropism(t);
  const detail::StageThreeSide sf = detail::stage3_side(f, M, c0, mult_tol);
  const detail::StageThreeSide sg = detail::stage3_side(g, M, c0, mult_tol);
  if (!sf.has_rest || !sg.has_rest) return std::nullopt;
  const long long d = 1;
  const ExponentData data{sf.min_xdeg, sg.min_xdeg, sf.mult, sg.mult};
  const Rational wf = make_rational(data.k * d, data.a1);
  const Rational wg = make_rational(data.l * d, data.b1);
  if (!(wf == wg)) return std::nullopt;
  return std::make_pair(wf, data);
}

/// Solves the two-equation system in the single unknown c1 that annihilates
/// the lowest t-order of both substituted polynomials.  For simple roots it
/// is the 2x1 least-squares problem
///   alpha1 c1 = -alpha2,  beta1 c1 = -beta2 ;
/// for higher multiplicities the a1-th roots of -alpha2/alpha1 are matched
/// against the second equation.  Returns nullopt if the system is
/// inconsistent at tol (relative to the row scale) or c1 would be zero.
inline std::optional<Complex> second_term(const SparsePoly& f, const SparsePoly& g,
                                          Tropism t, Complex c0, Rational w,
                                          const ExponentData& data,
                                          double tol = 1e-5) {
  if (!(make_rational(data.k, data.a1) == w))
    throw std::invalid_argument("w does not match the exponent data");
  const UnimodularMatrix M = matrix_for_tropism(t);
  const detail::StageThreeSide sf = detail::stage3_side(f, M, c0, kMultiplicityTol);
  const detail::StageThreeSide sg = detail::stage3_side(g, M, c0, kMultiplicityTol);
  if (!sf.has_rest || !sg.has_rest) return std::nullopt;
  const Complex alpha1 = sf.lead, alpha2 = sf.rest;
  const Complex beta1 = sg.lead, beta2 = sg.rest;

  auto residual_ok = [&](Complex c1) {
    const Complex r1 = alpha1 * detail::ipow(c1, data.a1) + alpha2;
    const Complex r2 = beta1 * detail::ipow(c1, data.b1) + beta2;
    const double scale =
        std::max({std::abs(alpha1) * std::pow(std::abs(c1), static_cast<double>(data.a1)) +
                      std::abs(alpha2),
                  std::abs(beta1) * std::pow(std::abs(c1), static_cast<double>(data.b1)) +
                      std::abs(beta2),
                  1e-300});
    return std::max(std::abs(r1), std::abs(r2)) <= tol * scale;
  };

  Complex c1(0.0, 0.0);
  if (data.a1 == 1 && data.b1 == 1) {
    const double denom = std::norm(alpha1) + std::norm(beta1);
    if (denom == 0.0) return std::nullopt;
    c1 = -(std::conj(alpha1) * alpha2 + std::conj(beta1) * beta2) / denom;
  } else {
    if (alpha1 == Complex(0.0, 0.0)) return std::nullopt;
    // candidates: a1-th roots of -alpha2/alpha1, matched against equation two
    const std::vector<Complex> cands =
        detail::binomial_roots(alpha2, alpha1, data.a1);
    double best = std::numeric_limits<double>::infinity();
    for (const Complex& cand : cands) {
      const double res = std::abs(beta1 * detail::ipow(cand, data.b1) + beta2);
      if (res < best) {
        best = res;
        c1 = cand;
      }
    }
  }
  if (std::abs(c1) == 0.0) return std::nullopt;
  if (!residual_ok(c1)) return std::nullopt;
  return c1;
}

/// Least-squares slope of log|F(t^d, c0 + c1 t^w)| against log t, where F is
/// the transformed, monomial-stripped f.  Samples must lie in (0, 0.1] with
/// at least two distinct magnitudes.  An identically vanishing residual is
/// reported as +infinity.
inline double residual_order(const SparsePoly& f, const SeriesGerm& germ,
                             std::span<const double> samples) {
  if (samples.size() < 2)
    throw std::invalid_argument("residual_order needs at least two samples");
  bool distinct = false;
  for (double s : samples) {
    if (!(s > 0.0 && s <= 0.1))
      throw std::invalid_argument("residual samples must lie in (0, 0.1]");
    if (s != samples[0]) distinct = true;
  }
  if (!distinct) throw std::invalid_argument("residual samples must differ");

  const UnimodularMatrix M = matrix_for_tropism(germ.tropism);
  const SparsePoly stripped = strip_monomial(transform_support(M, f)).first;
  const double w = germ.w.value();
  std::vector<double> xs, ys;
  for (double t : samples) {
    const Complex X = detail::ipow(Complex(t, 0.0), germ.d);
    const Complex Y = germ.c0 + germ.c1 * std::pow(t, w);
    Complex value(0.0, 0.0);
    double scale = 0.0;
    for (const Term& term : stripped.terms()) {
      const Complex monomial = detail::ipow(X, term.e.i) * detail::ipow(Y, term.e.j);
      value += term.c * monomial;
      scale += std::abs(term.c) * std::abs(monomial);
    }
    const double v = std::abs(value);
    // below the evaluation noise floor the residual vanishes identically
    if (v <= 1e-14 * scale) continue;
    xs.push_back(std::log(t));
    ys.push_back(std::log(v));
  }
  if (xs.size() < 2) return std::numeric_limits<double>::infinity();
  double mx = 0.0, my = 0.0;
  for (std::size_t s = 0; s < xs.size(); ++s) {
    mx += xs[s];
    my += ys[s];
  }
  mx /= static_cast<double>(xs.size());
  my /= static_cast<double>(xs.size());
  double cov = 0.0, var = 0.0;
  for (std::size_t s = 0; s < xs.size(); ++s) {
    cov += (xs[s] - mx) * (ys[s] - my);
    var += (xs[s] - mx) * (xs[s] - mx);
  }
  return cov / var;
}

}  // namespace tropfactor
