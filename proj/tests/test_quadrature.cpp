#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "uthl/linear.hpp"
#include "uthl/quadrature.hpp"

using namespace uthl;

namespace {

// independent adaptive Simpson used as a cross-check oracle in this file
cplx simpson(const std::function<cplx(double)>& f, double a, double b, int depth,
             double tol) {
  const double m = 0.5 * (a + b);
  auto s = [&](double p, double q) {
    return (q - p) / 6.0 * (f(p) + 4.0 * f(0.5 * (p + q)) + f(q));
  };
  const cplx whole = s(a, b), halves = s(a, m) + s(m, b);
  if (depth <= 0 || std::abs(whole - halves) < tol) return halves;
  return simpson(f, a, m, depth - 1, tol / 2) + simpson(f, m, b, depth - 1, tol / 2);
}

}  // namespace

TEST_CASE("gauss-legendre integrates polynomials exactly") {
  auto f = [](double x) { return cplx(x * x * x * x * x - 2.0 * x * x + 1.0); };
  const cplx got = gl_integrate(f, -1.0, 2.0, 8);
  // int_{-1}^{2} (x^5 - 2x^2 + 1) dx = 63/6 - 6 + 3
  CHECK(std::abs(got - cplx(63.0 / 6.0 - 6.0 + 3.0)) < 1e-13);
}

TEST_CASE("ray nodes integrate decaying and algebraic profiles") {
  const auto nodes = ray_nodes(30.0, 12, 16, true);
  cplx acc_gauss = 0.0, acc_alg = 0.0;
  for (const auto& n : nodes) {
    acc_gauss += n.w * std::exp(-n.rho * n.rho);
    acc_alg += n.w / ((1.0 + n.rho) * (1.0 + n.rho));
  }
  CHECK(std::abs(acc_gauss - std::sqrt(pi) / 2.0) < 1e-12);
  CHECK(std::abs(acc_alg - 1.0) < 1e-10);
}

TEST_CASE("phi functions match series and quotient forms") {
  for (cplx z : {cplx(0.3, -0.2), cplx(-4.0, 3.0), cplx(1e-9, 1e-9)}) {
    const cplx e = std::exp(z);
    if (std::abs(z) > 1e-6) {
      CHECK(std::abs(phi1(z) - (e - 1.0) / z) < 1e-12);
      CHECK(std::abs(phi2(z) - (e - 1.0 - z) / (z * z)) < 1e-12);
      CHECK(std::abs(phi3(z) - (e - 1.0 - z - 0.5 * z * z) / (z * z * z)) < 1e-12);
    } else {
      CHECK(std::abs(phi1(z) - 1.0) < 1e-8);
      CHECK(std::abs(phi2(z) - 0.5) < 1e-8);
      CHECK(std::abs(phi3(z) - 1.0 / 6.0) < 1e-8);
    }
  }
}

TEST_CASE("gaussian ray closed form") {
  // int_0^inf e^{-4 i t rho^2 e^{2 i theta}} e^{i theta} d rho at theta = -3pi/8
  const double t = 0.7, theta = -3.0 * pi / 8.0;
  const cplx a = -4.0 * I * t;
  const cplx expect = simpson(
      [&](double r) {
        const cplx k = std::polar(r, theta);
        return std::exp(a * k * k) * std::polar(1.0, theta);
      },
      0.0, 12.0, 24, 1e-13);
  CHECK(std::abs(gauss_ray(theta, a) - expect) < 1e-10);
}

TEST_CASE("cubic moment ray closed form") {
  // decaying ray: outbound dD3(mKdVI) edge rotated outward by pi/12
  const double theta = -3.0 * pi / 4.0, t = 0.5;
  const cplx a = -8.0 * I * t;
  const cplx expect = simpson(
      [&](double r) {
        const cplx k = std::polar(r, theta);
        return k * std::exp(a * k * k * k) * std::polar(1.0, theta);
      },
      0.0, 8.0, 24, 1e-13);
  CHECK(std::abs(cubic_moment_ray(theta, a, 1) - expect) < 1e-10);
}

TEST_CASE("levin handles a fresnel tail") {
  // int_1^inf e^{i v^2} / (1 + v) dv against a rotated-contour oracle:
  // rotate v = 1 + s e^{i pi/4} (integrand analytic, decaying upward)
  const cplx dir = std::polar(1.0, pi / 4.0);
  const cplx oracle = simpson(
      [&](double s) {
        const cplx v = 1.0 + s * dir;
        return std::exp(I * v * v) / (1.0 + v) * dir;
      },
      0.0, 14.0, 24, 1e-13);
  const cplx got = levin_tail([](double v) { return cplx(1.0) / (1.0 + v); },
                              [](double v) { return I * v * v; },
                              [](double v) { return 2.0 * I * v; }, 1.0, 1e-11);
  CHECK(std::abs(got - oracle) < 1e-9);
}

TEST_CASE("levin handles a flat amplitude") {
  // int_2^inf e^{-3 i v^2} dv has a closed Fresnel form
  const cplx full = gauss_ray(0.0, -3.0 * I);
  const cplx head = simpson([&](double v) { return std::exp(-3.0 * I * v * v); }, 0.0,
                            2.0, 20, 1e-13);
  const cplx got = levin_tail([](double) { return cplx(1.0); },
                              [](double v) { return -3.0 * I * v * v; },
                              [](double v) { return -6.0 * I * v; }, 2.0, 1e-11);
  CHECK(std::abs(got - (full - head)) < 1e-9);
}

TEST_CASE("dense solve and least squares") {
  std::vector<cplx> A{cplx(2, 1), cplx(0, -1), cplx(1, 0), cplx(3, 2)};
  std::vector<cplx> x{cplx(1, -2), cplx(0.5, 0.25)};
  std::vector<cplx> b{A[0] * x[0] + A[1] * x[1], A[2] * x[0] + A[3] * x[1]};
  auto got = solve_dense(A, b, 2);
  CHECK(std::abs(got[0] - x[0]) < 1e-12);
  CHECK(std::abs(got[1] - x[1]) < 1e-12);

  // fit k f = P1 + P2/k + P3/k^2 from exact samples
  std::vector<cplx> M, y;
  const cplx P1(0.5, -1.0), P2(2.0, 0.0), P3(-1.0, 3.0);
  for (double k : {10.0, 14.0, 20.0, 29.0, 41.0}) {
    M.push_back(1.0);
    M.push_back(1.0 / k);
    M.push_back(1.0 / (k * k));
    y.push_back(P1 + P2 / k + P3 / (k * k));
  }
  auto c = lstsq(M, y, 5, 3);
  CHECK(std::abs(c[0] - P1) < 1e-10);
}

TEST_CASE("airy function values") {
  CHECK(airy_ai(0.0) == doctest::Approx(0.3550280538878172).epsilon(1e-12));
  CHECK(airy_ai(1.0) == doctest::Approx(0.1352924163128814).epsilon(1e-10));
  CHECK(airy_ai(5.0) == doctest::Approx(1.0834442813607441e-4).epsilon(1e-9));
  // normalization int_0^inf Ai = 1/3
  const auto nodes = ray_nodes(14.0, 10, 16, false);
  double acc = 0.0;
  for (const auto& n : nodes) acc += n.w * airy_ai(n.rho);
  CHECK(acc == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("complex erf on the oscillatory ray") {
  // erf(z) for z = r e^{i pi/4}: cross-check series vs asymptotic at the seam
  const cplx za = 4.4 * std::polar(1.0, pi / 4.0);
  const cplx zb = 4.6 * std::polar(1.0, pi / 4.0);
  // d/dz erf = 2/sqrt(pi) e^{-z^2}: integrate between the two points
  const cplx dir = std::polar(1.0, pi / 4.0);
  const cplx inc = simpson(
      [&](double r) {
        const cplx z = r * dir;
        return 2.0 / std::sqrt(pi) * std::exp(-z * z) * dir;
      },
      4.4, 4.6, 18, 1e-13);
  CHECK(std::abs((cerf(zb) - cerf(za)) - inc) < 1e-7);
  CHECK(std::abs(cerf(cplx(1.0, 0.0)) - cplx(0.8427007929497149)) < 1e-12);
}
