#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "uthl/contour.hpp"
#include "uthl/quadrature.hpp"

using namespace uthl;

namespace {

cplx gaussian_identity_value(double t) {
  // int_{dD3} e^{-4ik^2 t} dk = -(sqrt(pi)/2) e^{-i pi/4} / sqrt(t)
  return -std::sqrt(pi) / 2.0 * std::polar(1.0, -pi / 4.0) / std::sqrt(t);
}

// high-order adaptive quadrature on explicitly rotated rays; the independent
// oracle for the derived contour values in this file
cplx rotated_ray_oracle(const ContourPath& path, const std::function<cplx(cplx)>& f,
                        double delta, double R) {
  auto simpson = [&](auto&& self, const std::function<cplx(double)>& g, double a,
                     double b, int depth, double tol) -> cplx {
    const double m = 0.5 * (a + b);
    auto s = [&](double p, double q) {
      return (q - p) / 6.0 * (g(p) + 4.0 * g(0.5 * (p + q)) + g(q));
    };
    const cplx whole = s(a, b), halves = s(a, m) + s(m, b);
    if (depth <= 0 || std::abs(whole - halves) < tol) return halves;
    return self(self, g, a, m, depth - 1, tol / 2) + self(self, g, m, b, depth - 1, tol / 2);
  };
  cplx acc = 0.0;
  for (const auto& r : path.rays) {
    const double th = normalize_angle(r.angle + (r.outbound ? -delta : +delta));
    const cplx dir = std::polar(1.0, th);
    auto g = [&](double rho) { return f(r.vertex + rho * dir) * dir; };
    cplx ray_acc = 0.0;  // seed panels so the recursion cannot miss the support
    for (double a = 0.0; a < R; a += 0.5)
      ray_acc += simpson(simpson, g, a, std::min(a + 0.5, R), 20, 1e-14);
    acc += r.orientation() * ray_acc;
  }
  return acc;
}

}  // namespace

TEST_CASE("sector tables and boundary orientation") {
  const auto d3 = boundary_contour(Equation::NLS, Sector::D3);
  REQUIRE(d3.rays.size() == 2);
  CHECK(d3.rays[0].angle == doctest::Approx(-pi / 2));
  CHECK_FALSE(d3.rays[0].outbound);
  CHECK(d3.rays[1].angle == doctest::Approx(pi));
  CHECK(d3.rays[1].outbound);

  const auto m3 = boundary_contour(Equation::MKdVI, Sector::D3);
  CHECK(m3.rays[0].angle == doctest::Approx(-pi / 3));
  CHECK(m3.rays[1].angle == doctest::Approx(-2 * pi / 3));

  const auto dp = boundary_contour(Equation::NLS, Sector::DPlus);
  CHECK(dp.rays[0].angle == doctest::Approx(pi / 2));
  CHECK(dp.rays[1].angle == doctest::Approx(0.0));

  const auto m2d3 = boundary_contour(Equation::MKdVII, Sector::D3);
  CHECK(m2d3.rays.size() == 4);

  CHECK_THROWS_AS(boundary_contour(Equation::NLS, Sector::D1p), domain_error);
}

TEST_CASE("flat reference integral against brute force") {
  const auto d3 = boundary_contour(Equation::NLS, Sector::D3);
  const cplx c = d3.flat_ref;
  // large-R truncated integral of 1/(k - c) over the unrotated path
  cplx brute = 0.0;
  const double R = 4e4;
  for (const auto& r : d3.rays) {
    const cplx dir = std::polar(1.0, r.angle);
    auto g = [&](double rho) { return dir / (r.vertex + rho * dir - c); };
    const auto nodes = ray_nodes(R, 40, 16, false);
    cplx acc = 0.0;
    for (const auto& n : nodes) acc += n.w * g(n.rho);
    brute += r.orientation() * acc;
  }
  CHECK(std::abs(flat_reference_integral(d3, c) - cplx(0.0, -pi / 2.0)) < 1e-12);
  CHECK(std::abs(brute - flat_reference_integral(d3, c)) < 1e-3);

  // the mKdVII two-component boundary balances four rays
  const auto m2 = boundary_contour(Equation::MKdVII, Sector::D3);
  const cplx v = flat_reference_integral(m2, m2.flat_ref);
  cplx brute2 = 0.0;
  for (const auto& r : m2.rays) {
    const cplx dir = std::polar(1.0, r.angle);
    const auto nodes = ray_nodes(R, 40, 16, false);
    cplx acc = 0.0;
    for (const auto& n : nodes) acc += n.w * dir / (r.vertex + n.rho * dir - m2.flat_ref);
    brute2 += r.orientation() * acc;
  }
  CHECK(std::abs(v - brute2) < 1e-3);
}

TEST_CASE("gaussian contour identity") {
  const auto path = boundary_contour(Equation::NLS, Sector::D3);
  QuadratureSpec spec = quadrature_defaults(Equation::NLS);
  spec.tail_strategy = TailStrategy::truncate;
  for (double t : {0.25, 1.0, 4.0}) {
    const cplx got =
        integrate_contour(path, [&](cplx k) { return std::exp(-4.0 * I * k * k * t); }, spec);
    CHECK(std::abs(got - gaussian_identity_value(t)) < 1e-10);
  }
}

TEST_CASE("cubic contour moment matches closed form and oracle") {
  // int_{dD3(mKdVI)} k e^{-8 i k^3 t} dk = i sqrt(3) Gamma(2/3) (8t)^{-2/3} / 3
  const double t = 0.5;
  const auto path = boundary_contour(Equation::MKdVI, Sector::D3);
  QuadratureSpec spec = quadrature_defaults(Equation::MKdVI);
  spec.tail_strategy = TailStrategy::truncate;
  auto f = [&](cplx k) { return k * std::exp(-8.0 * I * k * k * k * t); };
  const cplx got = integrate_contour(path, f, spec);
  const cplx closed =
      I * std::sqrt(3.0) * std::tgamma(2.0 / 3.0) * std::pow(8.0 * t, -2.0 / 3.0) / 3.0;
  CHECK(std::abs(got - closed) < 1e-10);
  const cplx oracle = rotated_ray_oracle(path, f, pi / 12.0, 12.0);
  CHECK(std::abs(got - oracle) < 1e-9);
}

TEST_CASE("reversal negates the integral for rational-exponential integrands") {
  const auto path = boundary_contour(Equation::NLS, Sector::D3);
  const auto rpath = reversed(path);
  QuadratureSpec spec = quadrature_defaults(Equation::NLS);
  std::mt19937 rng(1234);
  std::uniform_real_distribution<double> U(0.2, 2.0);
  for (int trial = 0; trial < 10; ++trial) {
    const double t = U(rng), a = U(rng), b = U(rng);
    auto f = [&](cplx k) {
      return (k + cplx(a, b)) / (k * k + cplx(4.0 + a, b)) * std::exp(-4.0 * I * k * k * t);
    };
    const cplx fwd = integrate_contour(path, f, spec);
    const cplx bwd = integrate_contour(rpath, f, spec);
    CHECK(std::abs(fwd + bwd) < 1e-9 * std::max(1.0, std::abs(fwd)));
  }
}

TEST_CASE("cauchy closure of the four sector boundaries") {
  // for an entire decaying integrand, dD1 + dD3 carries the same value as
  // -(dD2 + dD4); their sum winds around nothing
  QuadratureSpec spec = quadrature_defaults(Equation::NLS);
  spec.tail_strategy = TailStrategy::truncate;
  spec.decay_rotation = pi / 16.0;
  auto f = [](cplx k) { return k * std::exp(-0.3 * k * k * k * k); };
  cplx total = 0.0;
  for (Sector s : {Sector::D1, Sector::D2, Sector::D3, Sector::D4})
    total += integrate_contour(boundary_contour(Equation::NLS, s), f, spec);
  CHECK(std::abs(total) < 1e-10);
}

TEST_CASE("gamma deformation") {
  const auto base = boundary_contour(Equation::MKdVI, Sector::D3);

  SUBCASE("empty zero list returns the base path") {
    const auto g = deform_gamma(base, {});
    CHECK(g.label == base.label);
  }
  SUBCASE("zero on a sector boundary is rejected") {
    CHECK_THROWS_AS(deform_gamma(base, {cplx(0.5, 0.0)}), domain_error);
    CHECK_THROWS_AS(deform_gamma(base, {std::polar(1.0, pi / 3.0)}), domain_error);
  }
  SUBCASE("single zero in D1' is cleared with margin") {
    const cplx k0 = std::polar(0.6, pi / 7.0);  // inside D1'
    const auto g = deform_gamma(base, {k0}, 0.1);
    REQUIRE(g.rays.size() == 2);
    // alpha Gamma must clear k0: equivalently Gamma clears alpha^2 k0
    const cplx pole = k0 * alpha_rot * alpha_rot;
    double dmin = 1e9;
    for (const auto& r : g.rays)
      for (double rho = 0.0; rho < 8.0; rho += 1e-3)
        dmin = std::min(dmin, std::abs(r.point(rho) - pole));
    CHECK(dmin >= 0.1 - 1e-6);
    // deformation invariance for an integrand analytic between the paths
    QuadratureSpec spec = quadrature_defaults(Equation::MKdVI);
    spec.tail_strategy = TailStrategy::truncate;
    spec.subpanels = 6;
    spec.nodes_per_ray = 20;
    auto f = [](cplx k) { return std::exp(-8.0 * I * k * k * k * 0.4) / (k - 5.0 * I); };
    const cplx a = integrate_contour(base, f, spec);
    const cplx b = integrate_contour(g, f, spec);
    CHECK(std::abs(a - b) < 1e-9);
  }
  SUBCASE("wrong base is rejected") {
    CHECK_THROWS_AS(deform_gamma(boundary_contour(Equation::NLS, Sector::D3), {cplx(1.0, 0.5)}),
                    domain_error);
  }
}

TEST_CASE("filter identity") {
  QuadratureSpec spec = quadrature_defaults(Equation::NLS);
  auto one = [](double) { return cplx(1.0); };
  CHECK(std::abs(filter_identity(one, 0.5, 1.0) - cplx(pi / 4.0)) < 1e-15);
  auto zero = [](double) { return cplx(0.0); };
  CHECK(std::abs(filter_identity(zero, 0.5, 1.0)) == 0.0);
  auto ramp = [](double s) { return cplx(s); };
  CHECK(std::abs(filter_identity(ramp, 1.0, 1.0) - cplx(pi / 8.0)) < 1e-15);
  CHECK_THROWS_AS(filter_identity(one, 1.5, 1.0), domain_error);

  // direct double-integral cross-checks
  CHECK(std::abs(filter_identity_direct(one, 0.5, 1.0, spec) - cplx(pi / 4.0)) < 1e-7);
  CHECK(std::abs(filter_identity_direct(ramp, 1.0, 1.0, spec) - cplx(pi / 8.0)) < 1e-7);
  auto smooth = [](double s) { return std::exp(cplx(0.0, 1.3) * s) + 0.2 * s * s; };
  CHECK(std::abs(filter_identity_direct(smooth, 0.4, 1.0, spec) -
                 pi / 4.0 * smooth(0.4)) < 1e-7);
}

TEST_CASE("serialization round trip") {
  auto path = boundary_contour(Equation::MKdVI, Sector::D3);
  const auto text = serialize(path);
  const auto back = parse_contour(text);
  REQUIRE(back.rays.size() == path.rays.size());
  for (std::size_t i = 0; i < path.rays.size(); ++i) {
    CHECK(back.rays[i].angle == doctest::Approx(path.rays[i].angle));
    CHECK(back.rays[i].outbound == path.rays[i].outbound);
    CHECK(std::abs(back.rays[i].vertex - path.rays[i].vertex) == 0.0);
  }
  CHECK(back.label == path.label);
}

TEST_CASE("asymptotic subtraction integrates a pure 1/k tail") {
  // f = 2P/(k - c) with c inside D1: exact value 2P * (-i pi / 2)
  const auto path = boundary_contour(Equation::NLS, Sector::D3);
  const cplx P(0.7, -0.3);
  const cplx c = std::polar(1.3, pi / 4.0);
  QuadratureSpec spec = quadrature_defaults(Equation::NLS);
  const cplx got = integrate_contour(
      path, [&](cplx k) { return 2.0 * P / (k - c); }, spec);
  CHECK(std::abs(got - 2.0 * P * cplx(0.0, -pi / 2.0)) < 1e-8);
}
