#pragma once

// The staggered three-stage driver:
//   1. tropisms            -- none => no root at infinity => NoTropism
//   2. initial roots       -- none => no series           => NoInitialRoot
//   3. second Puiseux term -- none => no factor           => NoSecondTerm
// Surviving germs make the certificate FactorLikely.  The stages get
// progressively more numerical: stage 1 is exact, stage 2 approximate roots,
// stage 3 a residual-order check.  resultant_probe is an independent
// cross-check used by tests, sampling the Sylvester resultant in y.

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "tropfactor/initial_system.hpp"
#include "tropfactor/polygon.hpp"
#include "tropfactor/polynomial.hpp"
#include "tropfactor/puiseux.hpp"
#include "tropfactor/rng.hpp"

namespace tropfactor {

enum class Status { NoTropism, NoInitialRoot, NoSecondTerm, FactorLikely };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::NoTropism: return "no_tropism";
    case Status::NoInitialRoot: return "no_initial_root";
    case Status::NoSecondTerm: return "no_second_term";
    case Status::FactorLikely: return "factor_likely";
  }
  return "unknown";
}

struct Config {
  double drop_tolerance = 1e-12;
  double rank_tolerance = 1e-6;
  double root_tolerance = 1e-6;
  double residual_slope_margin = 0.3;
  std::vector<double> residual_samples = {1e-1, 3.16e-2, 1e-2, 3.16e-3, 1e-3};
  std::uint64_t seed = 0;

  void validate() const {
    if (!(drop_tolerance > 0.0 && rank_tolerance > 0.0 && root_tolerance > 0.0 &&
          residual_slope_margin > 0.0))
      throw std::invalid_argument("tolerances must be positive");
    if (residual_samples.size() < 2)
      throw std::invalid_argument("need at least two residual samples");
    for (double s : residual_samples)
      if (!(s > 0.0 && s <= 0.1))
        throw std::invalid_argument("residual samples must lie in (0, 0.1]");
  }
};

/// Consistency threshold for the stage-3 two-equations-one-unknown solve,
/// sized so that 1e-8 relative coefficient noise on well-conditioned planted
/// instances does not flip the decision.
inline constexpr double kStageThreeConsistencyTol = 1e-5;

/// Residual slopes are capped here before they enter the certificate, so an
/// exactly vanishing residual (slope +inf) still serializes.
inline constexpr double kSlopeCap = 1e6;

struct CertifiedGerm {
  SeriesGerm germ;
  double slope_f = 0.0;
  double slope_g = 0.0;
  friend bool operator==(const CertifiedGerm&, const CertifiedGerm&) = default;
};

/// A tropism/root pair that reached stage 3 but produced no germ, with the
/// exponent quadruple (k, l, a1, b1) where it was available.
struct StageThreeReject {
  Tropism tropism;
  Complex c0{0.0, 0.0};
  bool have_data = false;
  ExponentData data;
  bool have_w = false;
  Rational w{0, 1};
  std::string reason;
  friend bool operator==(const StageThreeReject&, const StageThreeReject&) = default;
};

struct StageTimings {
  double stage1_ms = 0.0;
  double stage2_ms = 0.0;
  double stage3_ms = 0.0;
};

/// Staged outcome record.  Equality ignores timings, which are diagnostic
/// only and never serialized.
struct Certificate {
  Status status = Status::NoTropism;
  std::vector<Tropism> tropisms;
  std::vector<TropismRoots> roots;
  std::vector<CertifiedGerm> germs;
  std::vector<StageThreeReject> rejects;
  std::string note;
  StageTimings timings;

  friend bool operator==(const Certificate& a, const Certificate& b) {
    return a.status == b.status && a.tropisms == b.tropisms && a.roots == b.roots &&
           a.germs == b.germs && a.rejects == b.rejects && a.note == b.note;
  }
};

/// Runs stages 1-3, stopping at the first empty stage.  Pure in (f, g, cfg);
/// identical seeds give identical certificates.
inline Certificate preprocess(const SparsePoly& f, const SparsePoly& g,
                              const Config& cfg = {}) {
  cfg.validate();
  if (f.is_zero() || g.is_zero())
    throw std::invalid_argument("preprocess requires nonzero polynomials");
  using clock = std::chrono::steady_clock;
  auto ms_since = [](clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(clock::now() - t0).count();
  };

  Certificate cert;
  const auto t1 = clock::now();
  if (f.term_count() < 2 || g.term_count() < 2) {
    cert.status = Status::NoTropism;
    cert.note = "degenerate input: a monomial has no edges";
    cert.timings.stage1_ms = ms_since(t1);
    return cert;
  }
  cert.tropisms = tropism_intersection(tropicalization(f), tropicalization(g));
  cert.timings.stage1_ms = ms_since(t1);
  if (cert.tropisms.empty()) {
    cert.status = Status::NoTropism;
    return cert;
  }

  const auto t2 = clock::now();
  cert.roots = solve_stage2(f, g, cert.tropisms, cfg.root_tolerance,
                            cfg.rank_tolerance, cfg.seed);
  cert.timings.stage2_ms = ms_since(t2);
  bool any_root = false;
  for (const TropismRoots& tr : cert.roots) any_root |= !tr.roots.empty();
  if (!any_root) {
    cert.status = Status::NoInitialRoot;
    return cert;
  }

  const auto t3 = clock::now();
  for (const TropismRoots& tr : cert.roots) {
    for (const InitialRoot& root : tr.roots) {
      StageThreeReject reject;
      reject.tropism = tr.tropism;
      reject.c0 = root.z;
      try {
        const auto cond =
            exponent_condition(f, g, tr.tropism, root.z, cfg.root_tolerance);
        if (!cond) {
          // recover the quadruple for the report when the supports allow it
          const UnimodularMatrix M = matrix_for_tropism(tr.tropism);
          const auto sf = detail::stage3_side(f, M, root.z, cfg.root_tolerance);
          const auto sg = detail::stage3_side(g, M, root.z, cfg.root_tolerance);
          if (sf.has_rest && sg.has_rest) {
            reject.have_data = true;
            reject.data = {sf.min_xdeg, sg.min_xdeg, sf.mult, sg.mult};
            reject.reason = "exponent condition k*d/a1 = l*d/b1 fails";
          } else {
            reject.reason = "support lies entirely on the edge";
          }
          cert.rejects.push_back(reject);
          continue;
        }
        const auto [w, data] = *cond;
        reject.have_data = true;
        reject.data = data;
        reject.have_w = true;
        reject.w = w;
        const auto c1 = second_term(f, g, tr.tropism, root.z, w, data,
                                    kStageThreeConsistencyTol);
        if (!c1) {
          reject.reason = "second-term system inconsistent or c1 = 0";
          cert.rejects.push_back(reject);
          continue;
        }
        SeriesGerm germ{tr.tropism, 1, root.z, w, *c1};
        const double slope_f = residual_order(f, germ, cfg.residual_samples);
        const double slope_g = residual_order(g, germ, cfg.residual_samples);
        const double expected =
            w.value() + std::min(static_cast<double>(data.a1) * w.value(),
                                 static_cast<double>(data.k));
        if (slope_f >= expected - cfg.residual_slope_margin &&
            slope_g >= expected - cfg.residual_slope_margin) {
          cert.germs.push_back({germ, std::min(slope_f, kSlopeCap),
                                std::min(slope_g, kSlopeCap)});
        } else {
          reject.reason = "residual slope below " + std::to_string(expected) +
                          " - margin";
          cert.rejects.push_back(reject);
        }
      } catch (const std::invalid_argument& err) {
        reject.reason = std::string("stage 3 rejected the root: ") + err.what();
        cert.rejects.push_back(reject);
      }
    }
  }
  cert.timings.stage3_ms = ms_since(t3);
  cert.status = cert.germs.empty() ? Status::NoSecondTerm : Status::FactorLikely;
  for (const CertifiedGerm& cg : cert.germs)
    if (!cg.germ.w.is_integer()) {
      cert.note = "non-integer Puiseux exponent w among the germs";
      break;
    }
  return cert;
}

/// Independent oracle: samples x0 on the unit circle and declares "common
/// factor likely" iff the Sylvester matrix in y is numerically singular at
/// every sample, i.e. |det| <= tol * scale with scale the product of the
/// n-1 largest singular values times sigma_max.
inline bool resultant_probe(const SparsePoly& f, const SparsePoly& g,
                            int n_samples, std::uint64_t seed,
                            double tol = 1e-8) {
  // Laurent inputs are shifted by y^{-min j}, a unit in the torus.
  auto y_span = [](const SparsePoly& p) {
    long long lo = p.terms().front().e.j, hi = lo;
    for (const Term& t : p.terms()) {
      lo = std::min(lo, t.e.j);
      hi = std::max(hi, t.e.j);
    }
    return std::pair<long long, long long>{std::min(lo, 0LL), hi};
  };
  if (f.is_zero() || g.is_zero())
    throw std::domain_error("resultant_probe needs nonzero polynomials");
  const auto [fl, fh] = y_span(f);
  const auto [gl, gh] = y_span(g);
  if (fh - fl < 1 || gh - gl < 1)
    throw std::domain_error("resultant_probe needs positive y-degree; swap variables");

  auto y_coeffs = [](const SparsePoly& p, long long lo, long long hi, Complex x0) {
    std::vector<Complex> c(static_cast<std::size_t>(hi - lo) + 1, Complex(0.0, 0.0));
    for (const Term& t : p.terms())
      c[static_cast<std::size_t>(t.e.j - lo)] += t.c * detail::ipow(x0, t.e.i);
    return c;
  };

  Rng rng(mix_seed(seed, 0xB0B3ULL));
  int done = 0, attempts = 0;
  while (done < n_samples && attempts < 8 * n_samples + 8) {
    ++attempts;
    const Complex x0 = rng.unit_circle();
    std::vector<Complex> cf = y_coeffs(f, fl, fh, x0);
    std::vector<Complex> cg = y_coeffs(g, gl, gh, x0);
    auto trim = [](std::vector<Complex>& c) {
      double m = 0.0;
      for (const Complex& v : c) m = std::max(m, std::abs(v));
      while (c.size() > 1 && std::abs(c.back()) <= 1e-12 * m) c.pop_back();
    };
    trim(cf);
    trim(cg);
    if (cf.size() < 2 || cg.size() < 2) continue;  // unlucky sample, retry
    const CMatrix S = sylvester_matrix(cf, cg);
    const std::vector<double> sigma = singular_values(S);
    const bool singular =
        sigma.front() == 0.0 || sigma.back() <= tol * sigma.front();
    if (!singular) return false;
    ++done;
  }
  return done > 0;
}

struct GroundTruth {
  bool planted = false;
  SparsePoly factor;
  friend bool operator==(const GroundTruth&, const GroundTruth&) = default;
};

struct Instance {
  SparsePoly f, g;
  GroundTruth truth;
};

/// Random polynomial of total degree <= deg: each lattice point of the
/// triangle is kept with probability `sparsity`, coefficients uniform on the
/// unit disk.  Retries until at least two terms survive.
inline SparsePoly random_poly(int deg, double sparsity, Rng& rng,
                              double drop_tolerance = SparsePoly::kDropTolerance) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<Term> terms;
    for (long long i = 0; i <= deg; ++i)
      for (long long j = 0; j + i <= deg; ++j)
        if (rng.uniform01() < sparsity) terms.push_back({{i, j}, rng.unit_disk()});
    const SparsePoly p = SparsePoly::from_terms(terms, drop_tolerance);
    if (p.term_count() >= 2) return p;
  }
  throw std::runtime_error("random_poly failed to produce two terms");
}

/// Planted instances multiply a random factor of degree deg_factor into two
/// random cofactors of degree deg_cofactor; unplanted instances draw f and g
/// independently at total degree deg_factor + deg_cofactor.
inline Instance gen_instance(int deg_factor, int deg_cofactor, bool planted,
                             double sparsity, std::uint64_t seed) {
  if (deg_factor < 1 || deg_cofactor < 1)
    throw std::invalid_argument("degrees must be >= 1");
  if (!(sparsity > 0.0 && sparsity <= 1.0))
    throw std::invalid_argument("sparsity must lie in (0, 1]");
  Rng rng(mix_seed(seed, 0x6e57ULL));
  Instance inst;
  if (planted) {
    const SparsePoly r = random_poly(deg_factor, sparsity, rng);
    const SparsePoly a = random_poly(deg_cofactor, sparsity, rng);
    const SparsePoly b = random_poly(deg_cofactor, sparsity, rng);
    inst.f = multiply(r, a);
    inst.g = multiply(r, b);
    inst.truth = {true, r};
  } else {
    inst.f = random_poly(deg_factor + deg_cofactor, sparsity, rng);
    inst.g = random_poly(deg_factor + deg_cofactor, sparsity, rng);
    inst.truth = {false, SparsePoly{}};
  }
  return inst;
}

/// Multiplies every coefficient by (1 + rel * eta) with eta on the unit disk.
inline SparsePoly perturb_coefficients(const SparsePoly& p, double rel,
                                       std::uint64_t seed) {
  Rng rng(mix_seed(seed, 0xD157ULL));
  std::vector<Term> terms;
  terms.reserve(p.term_count());
  for (const Term& t : p.terms())
    terms.push_back({t.e, t.c * (1.0 + rel * rng.unit_disk())});
  return SparsePoly::from_terms(terms, 0.0);
}

}  // namespace tropfactor
