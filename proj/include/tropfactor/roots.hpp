#pragma once

// Univariate complex root finding.  Two-term polynomials are solved by
// radical extraction; everything else runs Aberth-Ehrlich simultaneous
// iteration from a seeded random starting circle (at most 200 passes,
// 1e-13 relative convergence).

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include "tropfactor/polynomial.hpp"
#include "tropfactor/rng.hpp"

namespace tropfactor {

/// Evaluates an ascending coefficient list at z.
inline Complex horner(std::span<const Complex> coeffs, Complex z) {
  Complex acc(0.0, 0.0);
  for (std::size_t idx = coeffs.size(); idx-- > 0;) acc = acc * z + coeffs[idx];
  return acc;
}

inline std::vector<Complex> derivative(std::span<const Complex> coeffs) {
  std::vector<Complex> d;
  if (coeffs.size() <= 1) return d;
  d.reserve(coeffs.size() - 1);
  for (std::size_t idx = 1; idx < coeffs.size(); ++idx)
    d.push_back(coeffs[idx] * static_cast<double>(idx));
  return d;
}

namespace detail {

inline std::vector<Complex> binomial_roots(Complex lowest, Complex leading,
                                           long long degree) {
  const Complex ratio = -lowest / leading;
  const double mag = std::pow(std::abs(ratio), 1.0 / static_cast<double>(degree));
  const double ang = std::arg(ratio) / static_cast<double>(degree);
  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>(degree));
  for (long long r = 0; r < degree; ++r) {
    const double a =
        ang + 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(degree);
    out.push_back({mag * std::cos(a), mag * std::sin(a)});
  }
  return out;
}

}  // namespace detail

/// All complex roots (with multiplicity) of the polynomial with the given
/// ascending coefficients.  Exact zero coefficients at the ends are treated
/// structurally: trailing zeros are trimmed, leading zeros become roots at 0.
/// Output is sorted by (re, im) and deterministic for a fixed seed.
inline std::vector<Complex> polynomial_roots(std::span<const Complex> ascending,
                                             std::uint64_t seed = 0x7A0B1E5ULL) {
  std::vector<Complex> c(ascending.begin(), ascending.end());
  while (!c.empty() && c.back() == Complex(0.0, 0.0)) c.pop_back();
  std::vector<Complex> roots;
  std::size_t zero_roots = 0;
  while (c.size() > 1 && c.front() == Complex(0.0, 0.0)) {
    c.erase(c.begin());
    ++zero_roots;
  }
  const std::size_t n = c.empty() ? 0 : c.size() - 1;
  if (n >= 1) {
    std::size_t nonzero = 0;
    for (const Complex& v : c)
      if (v != Complex(0.0, 0.0)) ++nonzero;
    if (nonzero == 2) {
      roots = detail::binomial_roots(c.front(), c.back(), static_cast<long long>(n));
    } else {
      Rng rng(seed);
      const double base_radius =
          std::pow(std::abs(c.front() / c.back()), 1.0 / static_cast<double>(n));
      const std::vector<Complex> dp = derivative(c);
      roots.resize(n);
      const double phase = 2.0 * std::numbers::pi * rng.uniform01();
      for (std::size_t r = 0; r < n; ++r) {
        const double a = phase + 2.0 * std::numbers::pi * static_cast<double>(r) /
                                     static_cast<double>(n);
        const double rad = base_radius * (1.0 + 0.25 * (rng.uniform01() - 0.5));
        roots[r] = {rad * std::cos(a), rad * std::sin(a)};
      }
      constexpr int kMaxIters = 200;
      constexpr double kConverged = 1e-13;
      for (int iter = 0; iter < kMaxIters; ++iter) {
        double max_step = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          const Complex pz = horner(c, roots[r]);
          if (std::abs(pz) == 0.0) continue;
          Complex dz = horner(dp, roots[r]);
          if (dz == Complex(0.0, 0.0)) dz = Complex(1e-30, 0.0);
          const Complex newton = pz / dz;
          Complex repulsion(0.0, 0.0);
          for (std::size_t other = 0; other < n; ++other) {
            if (other == r) continue;
            Complex diff = roots[r] - roots[other];
            if (diff == Complex(0.0, 0.0)) diff = Complex(1e-12, 1e-12);
            repulsion += 1.0 / diff;
          }
          const Complex denom = 1.0 - newton * repulsion;
          const Complex step = (denom == Complex(0.0, 0.0)) ? newton : newton / denom;
          roots[r] -= step;
          max_step = std::max(max_step, std::abs(step) / (1.0 + std::abs(roots[r])));
        }
        if (max_step < kConverged) break;
      }
    }
  }
  roots.insert(roots.end(), zero_roots, Complex(0.0, 0.0));
  std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return roots;
}

}  // namespace tropfactor
