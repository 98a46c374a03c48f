#include <doctest.h>

#include <random>

#include "hhomg/quadrature.hpp"

using namespace hhomg;

namespace {

double integrate_monomial(const QuadratureRule& rule, int a, int b, int c) {
  double s = 0.0;
  for (int q = 0; q < rule.size(); ++q) {
    double m = 1.0;
    for (int i = 0; i < a; ++i) m *= rule.points[q].x();
    for (int i = 0; i < b; ++i) m *= rule.points[q].y();
    for (int i = 0; i < c; ++i) m *= rule.points[q].z();
    s += rule.weights[q] * m;
  }
  return s;
}

// int over the unit simplex of x^a y^b z^c = a! b! c! / (a+b+c+dim)!
double exact_simplex_moment(int dim, int a, int b, int c) {
  auto fact = [](int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
  };
  return fact(a) * fact(b) * fact(c) / fact(a + b + c + dim);
}

}  // namespace

TEST_CASE("gauss legendre on [0,1]") {
  std::vector<double> p, w;
  for (int n = 1; n <= 12; ++n) {
    gauss_legendre_01(n, p, w);
    for (int deg = 0; deg <= 2 * n - 1; ++deg) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += w[i] * std::pow(p[i], deg);
      CHECK(s == doctest::Approx(1.0 / (deg + 1)).epsilon(1e-13));
    }
  }
}

TEST_CASE("reference simplex rules integrate monomials exactly") {
  for (int dim = 1; dim <= 3; ++dim) {
    for (int deg = 0; deg <= 10; ++deg) {
      const QuadratureRule rule = reference_simplex_rule(dim, deg);
      for (double w : rule.weights) CHECK(w > 0.0);
      for (int a = 0; a <= deg; ++a)
        for (int b = 0; b <= (dim >= 2 ? deg - a : 0); ++b)
          for (int c = 0; c <= (dim >= 3 ? deg - a - b : 0); ++c) {
            const double got = integrate_monomial(rule, a, b, c);
            const double want = exact_simplex_moment(dim, a, b, c);
            CHECK(got == doctest::Approx(want).epsilon(1e-13));
          }
    }
  }
}

TEST_CASE("degree-1 rule on the reference triangle integrates x+y to 1/3") {
  const QuadratureRule rule = reference_simplex_rule(2, 1);
  CHECK(integrate_monomial(rule, 1, 0, 0) + integrate_monomial(rule, 0, 1, 0) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("degree-4 rule integrates x^2 y^2 on the reference triangle to 1/180") {
  const QuadratureRule rule = reference_simplex_rule(2, 4);
  CHECK(integrate_monomial(rule, 2, 2, 0) == doctest::Approx(1.0 / 180.0).epsilon(1e-14));
}

TEST_CASE("segment rule integrates x^3 on [0,1] to 1/4") {
  const QuadratureRule rule =
      simplex_rule({Eigen::Vector3d(0, 0, 0), Eigen::Vector3d(1, 0, 0)}, 3);
  CHECK(integrate_monomial(rule, 3, 0, 0) == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("physical rules carry the simplex measure") {
  const QuadratureRule tri = simplex_rule(
      {Eigen::Vector3d(1, 1, 0), Eigen::Vector3d(3, 1, 0), Eigen::Vector3d(1, 4, 0)}, 2);
  CHECK(tri.total_weight() == doctest::Approx(3.0).epsilon(1e-14));

  // a manifold triangle in R^3
  const QuadratureRule mani = simplex_rule(
      {Eigen::Vector3d(0, 0, 1), Eigen::Vector3d(1, 0, 1), Eigen::Vector3d(0, 1, 2)}, 2);
  CHECK(mani.total_weight() == doctest::Approx(0.5 * std::sqrt(2.0)).epsilon(1e-13));

  const QuadratureRule tet = simplex_rule({Eigen::Vector3d(0, 0, 0), Eigen::Vector3d(2, 0, 0),
                                           Eigen::Vector3d(0, 2, 0), Eigen::Vector3d(0, 0, 2)},
                                          3);
  CHECK(tet.total_weight() == doctest::Approx(8.0 / 6.0).epsilon(1e-13));
}

TEST_CASE("random polynomial exactness property") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int deg = 1 + static_cast<int>(rng() % 8);
    // compare a degree-`deg` rule against a higher-order one on a random polynomial
    const QuadratureRule lo = reference_simplex_rule(2, deg);
    const QuadratureRule hi = reference_simplex_rule(2, deg + 4);
    std::vector<double> coef;
    for (int a = 0; a <= deg; ++a)
      for (int b = 0; b <= deg - a; ++b) coef.push_back(dist(rng));
    auto poly = [&](const Eigen::Vector3d& x) {
      double s = 0.0;
      int k = 0;
      for (int a = 0; a <= deg; ++a)
        for (int b = 0; b <= deg - a; ++b) s += coef[k++] * std::pow(x.x(), a) * std::pow(x.y(), b);
      return s;
    };
    double slo = 0.0, shi = 0.0;
    for (int q = 0; q < lo.size(); ++q) slo += lo.weights[q] * poly(lo.points[q]);
    for (int q = 0; q < hi.size(); ++q) shi += hi.weights[q] * poly(hi.points[q]);
    CHECK(slo == doctest::Approx(shi).epsilon(1e-12));
  }
}
