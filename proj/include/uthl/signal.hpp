#pragma once

// Analytic data catalog plus file-backed sampled signals.  Catalog entries
// carry their derivative and (where the solvers need it) an analytic
// continuation to complex arguments and a closed-form half-line transform.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "uthl/core.hpp"

namespace uthl {

struct TimeSignal {
  std::function<cplx(double)> f;
  std::function<cplx(double)> df;   // optional
  std::function<cplx(cplx)> fc;     // analytic continuation, optional
  // closed form of int_0^t e^{w (tau - t)} f(tau) dtau where available
  std::function<cplx(cplx, double)> windowed;
  std::string name = "custom";

  cplx operator()(double t) const { return f ? f(t) : cplx(0.0); }
  bool is_zero() const { return !f; }
};

struct SpaceSignal {
  std::function<cplx(double)> f;
  std::function<cplx(cplx)> fc;        // analytic continuation, optional
  std::function<cplx(cplx)> transform; // uhat(k) = int_0^inf e^{-ikx} f dx, optional
  std::string name = "custom";

  cplx operator()(double x) const { return f ? f(x) : cplx(0.0); }
  bool is_zero() const { return !f; }
};

// Named catalog entries used across the tests and the CLI; "amp*name" scales.
TimeSignal time_catalog(const std::string& name, double amp = 1.0);
SpaceSignal space_catalog(const std::string& name, double amp = 1.0);

// Sampled signal from (abscissa, re, im) rows; linear interpolation, zero
// outside the sampled range, derivative by central differences.
TimeSignal sampled_time_signal(const std::vector<double>& t, const std::vector<cplx>& v);
SpaceSignal sampled_space_signal(const std::vector<double>& x, const std::vector<cplx>& v);

// Half-line transform by quadrature on [0, xmax] (used when no closed form).
cplx numeric_halfline_transform(const SpaceSignal& u, cplx k, double xmax);

}  // namespace uthl
