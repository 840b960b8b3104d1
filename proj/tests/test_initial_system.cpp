#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "oracles.hpp"
#include "tropfactor/initial_system.hpp"

using namespace tropfactor;

namespace {

UnivariateForm form_from(std::initializer_list<Complex> ascending) {
  UnivariateForm f;
  f.coeffs = ascending;
  return f;
}

bool close(Complex a, Complex b, double tol = 1e-10) { return std::abs(a - b) <= tol; }

}  // namespace

TEST_CASE("univariatize the worked initial forms") {
  // in_{(1,0)} is already univariate after stripping the corner monomial
  const SparsePoly inf = parse_poly("10*x*y^5 + 55*x*y^6 + 45*x*y^7");
  const UnivariateForm pf = univariatize(inf, Tropism{1, 0});
  REQUIRE(pf.degree() == 2);
  CHECK(close(pf.coeffs[0], 10.0));
  CHECK(close(pf.coeffs[1], 55.0));
  CHECK(close(pf.coeffs[2], 45.0));
  CHECK(pf.source_shift == Exponent{1, 5});

  const SparsePoly ing = parse_poly("10*x*y^6 + 45*x*y^7");
  const UnivariateForm qg = univariatize(ing, Tropism{1, 0});
  REQUIRE(qg.degree() == 1);
  CHECK(close(qg.coeffs[0], 10.0));
  CHECK(close(qg.coeffs[1], 45.0));

  // in_{(-1,-1)}(f) = 54 x^13 y^2 + 6 x^14 y  ->  54 + 6Y
  const SparsePoly inh = parse_poly("54*x^13*y^2 + 6*x^14*y");
  const UnivariateForm h = univariatize(inh, Tropism{-1, -1});
  REQUIRE(h.degree() == 1);
  CHECK(close(h.coeffs[0], 54.0));
  CHECK(close(h.coeffs[1], 6.0));
}

TEST_CASE("sylvester_matrix conventions") {
  const UnivariateForm p = form_from({Complex(-1.0, 0.0), Complex(1.0, 0.0)});
  const UnivariateForm q = form_from({Complex(1.0, 0.0), Complex(1.0, 0.0)});
  const CMatrix S = sylvester_matrix(p, q);
  REQUIRE(S.rows() == 2);
  CHECK(S(0, 0) == Complex(1.0, 0.0));
  CHECK(S(0, 1) == Complex(-1.0, 0.0));
  CHECK(S(1, 0) == Complex(1.0, 0.0));
  CHECK(S(1, 1) == Complex(1.0, 0.0));
  CHECK(std::abs(lu_determinant(S) - Complex(2.0, 0.0)) < 1e-14);

  const CMatrix S2 = sylvester_matrix(p, p);  // shared root: det 0
  CHECK(std::abs(lu_determinant(S2)) < 1e-14);

  CHECK_THROWS_AS(sylvester_matrix(form_from({Complex(2.0, 0.0)}),
                                   form_from({Complex(3.0, 0.0)})),
                  std::invalid_argument);
}

TEST_CASE("sylvester determinant equals the root-product resultant") {
  Rng rng(201);
  for (int iter = 0; iter < 20; ++iter) {
    const int n = 1 + static_cast<int>(rng.uniform_int(0, 3));
    const int m = 1 + static_cast<int>(rng.uniform_int(0, 3));
    std::vector<Complex> pr, qr;
    for (int s = 0; s < n; ++s) pr.push_back(rng.unit_disk() * 2.0);
    for (int s = 0; s < m; ++s) qr.push_back(rng.unit_disk() * 2.0);
    const Complex lp = rng.unit_circle() * rng.uniform(0.5, 2.0);
    const Complex lq = rng.unit_circle() * rng.uniform(0.5, 2.0);
    UnivariateForm p, q;
    p.coeffs = troptest::poly_from_roots(pr, lp);
    q.coeffs = troptest::poly_from_roots(qr, lq);

    Complex expected = detail::ipow(lp, m) * detail::ipow(lq, n);
    for (const Complex& a : pr)
      for (const Complex& b : qr) expected *= (a - b);
    const Complex det = lu_determinant(sylvester_matrix(p, q));
    CHECK(std::abs(det - expected) <= 1e-8 * std::max(1.0, std::abs(expected)));
  }
}

TEST_CASE("numeric_rank on the named examples") {
  CMatrix I(3, 3);
  for (int d = 0; d < 3; ++d) I(d, d) = 1.0;
  CHECK(numeric_rank(I, 1e-8) == 3);

  CHECK(numeric_rank(CMatrix(3, 3), 1e-8) == 0);

  // (y-1)(y-2) and (y-1)(y+3): one common root, rank 3 of 4
  UnivariateForm p, q;
  p.coeffs = troptest::poly_from_roots({Complex(1, 0), Complex(2, 0)}, Complex(1, 0));
  q.coeffs = troptest::poly_from_roots({Complex(1, 0), Complex(-3, 0)}, Complex(1, 0));
  CHECK(numeric_rank(sylvester_matrix(p, q), 1e-8) == 3);
}

TEST_CASE("common_roots finds the worked root at infinity") {
  const UnivariateForm p = univariatize(
      parse_poly("10*x*y^5 + 55*x*y^6 + 45*x*y^7"), Tropism{1, 0});
  const UnivariateForm q =
      univariatize(parse_poly("10*x*y^6 + 45*x*y^7"), Tropism{1, 0});
  const auto roots = common_roots(p, q, 1e-8);
  REQUIRE(roots.size() == 1);
  CHECK(std::abs(roots[0] - Complex(-2.0 / 9.0, 0.0)) <= 1e-10);
}

TEST_CASE("common_roots solves the (-1,-1) forms by radicals") {
  const auto roots = common_roots(form_from({Complex(54, 0), Complex(6, 0)}),
                                  form_from({Complex(72, 0), Complex(8, 0)}), 1e-8);
  REQUIRE(roots.size() == 1);
  CHECK(close(roots[0], Complex(-9.0, 0.0)));

  // back-substituting the parametrization X = t, Y = -9 must annihilate the
  // initial forms themselves (54 x^13 y^2 + 6 x^14 y forces y = -x/9)
  const SparsePoly inf = parse_poly("54*x^13*y^2 + 6*x^14*y");
  const SparsePoly ing = parse_poly("72*x^9*y^10 + 8*x^10*y^9");
  const UnimodularMatrix M = matrix_for_tropism({-1, -1});
  for (double t : {0.5, 0.03}) {
    auto [x, y] = untransform_point(M, Complex(t, 0.0), roots[0]);
    CHECK(std::abs(y + x / 9.0) <= 1e-12 * std::abs(y));
    const double scale = std::pow(t, -15.0);
    CHECK(std::abs(evaluate(inf, x, y)) <= 1e-12 * scale);
    CHECK(std::abs(evaluate(ing, x, y)) <= 1e-12 * std::pow(t, -19.0));
  }
}

TEST_CASE("common_roots of coprime forms is empty with nonzero resultant") {
  Rng rng(202);
  for (int iter = 0; iter < 15; ++iter) {
    std::vector<Complex> pr, qr;
    for (int s = 0; s < 4; ++s) pr.push_back(rng.unit_disk() * 2.0);
    for (int s = 0; s < 3; ++s) qr.push_back(rng.unit_disk() * 2.0 + Complex(3.0, 0.0));
    UnivariateForm p, q;
    p.coeffs = troptest::poly_from_roots(pr, Complex(1.0, 0.0));
    q.coeffs = troptest::poly_from_roots(qr, Complex(1.0, 0.0));
    CHECK(common_roots(p, q, 1e-8).empty());
    CHECK(std::abs(lu_determinant(sylvester_matrix(p, q))) > 1e-10);
  }
}

TEST_CASE("gcd degree matches the root count on separated instances") {
  Rng rng(203);
  for (int iter = 0; iter < 10; ++iter) {
    // p = u*w, q = v*w share exactly the roots of w
    auto sep_roots = [&](int n, double offset) {
      std::vector<Complex> out;
      while (static_cast<int>(out.size()) < n) {
        const Complex z = rng.unit_disk() * 2.0 + Complex(offset, offset);
        bool ok = true;
        for (const Complex& other : out) ok = ok && std::abs(z - other) > 0.3;
        if (ok) out.push_back(z);
      }
      return out;
    };
    const auto wr = sep_roots(2, 0.0);
    const auto ur = sep_roots(2, 4.0);
    const auto vr = sep_roots(3, -4.0);
    UnivariateForm p, q;
    auto wcoef = troptest::poly_from_roots(wr, Complex(1.0, 0.0));
    std::vector<Complex> proots = wr, qroots = wr;
    proots.insert(proots.end(), ur.begin(), ur.end());
    qroots.insert(qroots.end(), vr.begin(), vr.end());
    p.coeffs = troptest::poly_from_roots(proots, Complex(1.0, 0.0));
    q.coeffs = troptest::poly_from_roots(qroots, Complex(1.0, 0.0));

    const CMatrix S = sylvester_matrix(p, q);
    const int gcd_degree = static_cast<int>(S.rows()) - numeric_rank(S, 1e-8);
    const auto roots = common_roots(p, q, 1e-6);
    CHECK(gcd_degree == 2);
    CHECK(roots.size() == 2);
    for (const Complex& z : roots) {
      CHECK(relative_residual(p, z) <= 1e-6);
      CHECK(relative_residual(q, z) <= 1e-6);
    }
  }
}

TEST_CASE("decisions are scale invariant") {
  Rng rng(204);
  for (int iter = 0; iter < 10; ++iter) {
    const auto shared = rng.unit_disk() * 1.5;
    UnivariateForm p, q, p_scaled;
    p.coeffs = troptest::poly_from_roots({shared, rng.unit_disk() * 2.0},
                                         Complex(1.0, 0.0));
    q.coeffs = troptest::poly_from_roots({shared, rng.unit_disk() * 2.0 + 3.0},
                                         Complex(1.0, 0.0));
    const Complex lambda = rng.unit_circle() * 1e4;
    p_scaled.coeffs = p.coeffs;
    for (Complex& c : p_scaled.coeffs) c *= lambda;

    const auto r1 = common_roots(p, q, 1e-6);
    const auto r2 = common_roots(p_scaled, q, 1e-6);
    REQUIRE(r1.size() == r2.size());
    for (std::size_t s = 0; s < r1.size(); ++s)
      CHECK(std::abs(r1[s] - r2[s]) <= 1e-10 * std::max(1.0, std::abs(r1[s])));
  }
}

TEST_CASE("roots are invariant under the unimodular representative") {
  Rng rng(205);
  const SparsePoly p = troptest::random_test_poly(rng, 6, 0.6);
  for (const Tropism& t : tropicalization(p).normals) {
    const UnimodularMatrix M0 = matrix_for_tropism(t);
    for (long long m : {-2LL, 1LL, 3LL}) {
      const UnimodularMatrix M1 =
          make_unimodular(M0.u, M0.v, M0.k + m * M0.v, M0.l - m * M0.u);
      const UnivariateForm f0 = univariatize(p, M0);
      const UnivariateForm f1 = univariatize(p, M1);
      REQUIRE(f0.coeffs.size() == f1.coeffs.size());
      for (std::size_t s = 0; s < f0.coeffs.size(); ++s)
        CHECK(close(f0.coeffs[s], f1.coeffs[s], 1e-12));
    }
  }
}

TEST_CASE("solve_stage2 over a planted instance and the worked pair") {
  Rng rng(206);
  const SparsePoly r = parse_poly("2*x*y + x^2*y + 9*x*y^2 + 7*x^3*y + x^4*y + 9*x^3*y^2");
  const SparsePoly f = multiply(r, troptest::random_test_poly(rng, 5));
  const SparsePoly g = multiply(r, troptest::random_test_poly(rng, 5));
  const auto tropisms = tropism_intersection(tropicalization(f), tropicalization(g));
  REQUIRE_FALSE(tropisms.empty());
  const auto table = solve_stage2(f, g, tropisms, 1e-6, 1e-6, 9);
  bool any = false;
  for (const TropismRoots& tr : table) {
    for (const InitialRoot& root : tr.roots) {
      any = true;
      CHECK(root.residual_f <= 1e-6);
      CHECK(root.residual_g <= 1e-6);
      CHECK(std::abs(root.z) > 0.0);
    }
  }
  CHECK(any);

  // all tropisms of the worked (1,0) slice produce the root -2/9
  const SparsePoly inf = parse_poly("10*x*y^5 + 55*x*y^6 + 45*x*y^7");
  const SparsePoly ing = parse_poly("10*x*y^6 + 45*x*y^7");
  const auto worked = solve_stage2(inf, ing, {{1, 0}}, 1e-8, 1e-8, 1);
  REQUIRE(worked.size() == 1);
  REQUIRE(worked[0].roots.size() == 1);
  CHECK(std::abs(worked[0].roots[0].z - Complex(-2.0 / 9.0, 0.0)) <= 1e-10);

  // empty tropism list: empty table
  CHECK(solve_stage2(f, g, {}, 1e-6, 1e-6, 1).empty());
}
