#include "uthl/signal.hpp"

#include <algorithm>
#include <cmath>

#include "uthl/quadrature.hpp"

// catalog entries carry closed-form windowed transforms where elementary

namespace uthl {

namespace {

cplx csech(cplx z) { return 1.0 / std::cosh(z); }

}  // namespace

TimeSignal time_catalog(const std::string& name, double amp) {
  TimeSignal s;
  s.name = name;
  const double A = amp;
  if (name == "zero") {
    return s;  // null f marks the zero signal
  } else if (name == "one") {
    s.f = [A](double) { return cplx(A); };
    s.df = [](double) { return cplx(0.0); };
    s.fc = [A](cplx) { return cplx(A); };
    s.windowed = [A](cplx w, double t) { return A * t * phi1(-w * t); };
  } else if (name == "t") {
    s.f = [A](double t) { return cplx(A * t); };
    s.df = [A](double) { return cplx(A); };
    s.fc = [A](cplx t) { return A * t; };
    s.windowed = [A](cplx w, double t) { return A * t * t * phi2(-w * t); };
  } else if (name == "t2") {
    s.f = [A](double t) { return cplx(A * t * t); };
    s.df = [A](double t) { return cplx(2.0 * A * t); };
    s.fc = [A](cplx t) { return A * t * t; };
    s.windowed = [A](cplx w, double t) { return 2.0 * A * t * t * t * phi3(-w * t); };
  } else if (name == "sin_exp") {
    s.f = [A](double t) { return A * std::sin(t) * std::exp(-t); };
    s.df = [A](double t) { return A * std::exp(-t) * (std::cos(t) - std::sin(t)); };
    s.fc = [A](cplx t) { return A * std::sin(t) * std::exp(-t); };
    s.windowed = [A](cplx w, double t) {
      const cplx rp(-1.0, 1.0), rm(-1.0, -1.0);
      const cplx Wp = std::exp(rp * t) * t * phi1(-(w + rp) * t);
      const cplx Wm = std::exp(rm * t) * t * phi1(-(w + rm) * t);
      return A * (Wp - Wm) / (2.0 * I);
    };
  } else if (name == "sin_gauss") {
    s.f = [A](double t) { return A * std::sin(t) * (1.0 - std::exp(-5.0 * t * t)); };
    s.df = [A](double t) {
      return A * (std::cos(t) * (1.0 - std::exp(-5.0 * t * t)) +
                  std::sin(t) * 10.0 * t * std::exp(-5.0 * t * t));
    };
    s.fc = [A](cplx t) { return A * std::sin(t) * (1.0 - std::exp(-5.0 * t * t)); };
  } else if (name == "sin_exp_gauss") {
    s.f = [A](double t) {
      return A * std::sin(t) * std::exp(-t) * (1.0 - std::exp(-5.0 * t * t));
    };
    s.df = [A](double t) {
      const double g = 1.0 - std::exp(-5.0 * t * t);
      const double dg = 10.0 * t * std::exp(-5.0 * t * t);
      return A * std::exp(-t) * ((std::cos(t) - std::sin(t)) * g + std::sin(t) * dg);
    };
    s.fc = [A](cplx t) {
      return A * std::sin(t) * std::exp(-t) * (1.0 - std::exp(-5.0 * t * t));
    };
  } else if (name == "sech2t") {
    s.f = [A](double t) { return cplx(A / std::cosh(2.0 * t)); };
    s.df = [A](double t) {
      return cplx(-2.0 * A * std::tanh(2.0 * t) / std::cosh(2.0 * t));
    };
    s.fc = [A](cplx t) { return A * csech(2.0 * t); };
  } else if (name == "soliton_g1") {
    // x-derivative trace of e^{ix} sech(x-2t) at x = 0
    s.f = [A](double t) { return A * (I + std::tanh(2.0 * t)) / std::cosh(2.0 * t); };
    s.df = [A](double t) {
      const double th = std::tanh(2.0 * t), se = 1.0 / std::cosh(2.0 * t);
      return A * (2.0 * se * (1.0 - th * th) - 2.0 * th * se * (I + th));
    };
    s.fc = [A](cplx t) { return A * (I + std::tanh(2.0 * t)) * csech(2.0 * t); };
  } else {
    throw domain_error("time_catalog: unknown signal " + name);
  }
  return s;
}

SpaceSignal space_catalog(const std::string& name, double amp) {
  SpaceSignal s;
  s.name = name;
  const double A = amp;
  if (name == "zero") {
    return s;
  } else if (name == "exp_decay") {
    s.f = [A](double x) { return cplx(A * std::exp(-x)); };
    s.fc = [A](cplx x) { return A * std::exp(-x); };
    s.transform = [A](cplx k) { return A / (1.0 + I * k); };
  } else if (name == "x2exp") {
    s.f = [A](double x) { return cplx(A * x * x * std::exp(-x)); };
    s.fc = [A](cplx x) { return A * x * x * std::exp(-x); };
    s.transform = [A](cplx k) {
      const cplx d = 1.0 + I * k;
      return 2.0 * A / (d * d * d);
    };
  } else if (name == "sech") {
    s.f = [A](double x) { return cplx(A / std::cosh(x)); };
    s.fc = [A](cplx x) { return A * csech(x); };
  } else if (name == "soliton_q0") {
    // e^{ix} sech(x): the soliton profile at t = 0
    s.f = [A](double x) { return A * std::exp(I * x) / std::cosh(x); };
    s.fc = [A](cplx x) { return A * std::exp(I * x) * csech(x); };
  } else {
    throw domain_error("space_catalog: unknown signal " + name);
  }
  return s;
}

namespace {

cplx interp(const std::vector<double>& t, const std::vector<cplx>& v, double x) {
  if (t.empty() || x < t.front() || x > t.back()) return 0.0;
  auto it = std::upper_bound(t.begin(), t.end(), x);
  if (it == t.begin()) return v.front();
  if (it == t.end()) return v.back();
  const std::size_t j = static_cast<std::size_t>(it - t.begin());
  const double w = (x - t[j - 1]) / (t[j] - t[j - 1]);
  return (1.0 - w) * v[j - 1] + w * v[j];
}

}  // namespace

TimeSignal sampled_time_signal(const std::vector<double>& t, const std::vector<cplx>& v) {
  if (t.size() != v.size() || t.size() < 2)
    throw domain_error("sampled_time_signal: need matching sample arrays");
  TimeSignal s;
  s.name = "sampled";
  s.f = [t, v](double x) { return interp(t, v, x); };
  const double h = (t.back() - t.front()) / (8.0 * static_cast<double>(t.size()));
  s.df = [t, v, h](double x) { return (interp(t, v, x + h) - interp(t, v, x - h)) / (2.0 * h); };
  return s;
}

SpaceSignal sampled_space_signal(const std::vector<double>& x, const std::vector<cplx>& v) {
  if (x.size() != v.size() || x.size() < 2)
    throw domain_error("sampled_space_signal: need matching sample arrays");
  SpaceSignal s;
  s.name = "sampled";
  s.f = [x, v](double q) { return interp(x, v, q); };
  return s;
}

cplx numeric_halfline_transform(const SpaceSignal& u, cplx k, double xmax) {
  if (u.is_zero()) return 0.0;
  if (u.transform) return u.transform(k);
  const auto nodes = ray_nodes(xmax, 10, 16, false);
  cplx acc = 0.0;
  for (const auto& n : nodes) acc += n.w * std::exp(-I * k * n.rho) * u(n.rho);
  return acc;
}

}  // namespace uthl
