#pragma once

// Closed-form unified-transform solvers for the linearized equations on the
// half-line: the Schrodinger-type equation (Dirichlet and Neumann), the third
// order linearized equation, and the advected variant with its Neumann-data
// representation, plus the classical sine-transform comparator.

#include <functional>

#include "uthl/contour.hpp"
#include "uthl/core.hpp"
#include "uthl/signal.hpp"

namespace uthl {

enum class LinearEquation { linNLS, linmKdV, advected };
enum class BoundaryKind { dirichlet, neumann };

struct LinearProblem {
  LinearEquation eq = LinearEquation::linNLS;
  BoundaryKind bc = BoundaryKind::dirichlet;
  double advect_alpha = 0.0;
  SpaceSignal u0;
  TimeSignal g0;  // Dirichlet datum
  TimeSignal g1;  // Neumann datum
  double T = 2.0;
  double xmax = 40.0;
};

struct TransformedData {
  std::function<cplx(cplx)> uhat0;       // int_0^inf e^{-ikx} u0 dx
  std::function<cplx(cplx)> gtilde0;     // int_0^T e^{k tau} g0 dtau (entire)
  std::function<cplx(cplx)> gtilde_eff;  // effective boundary transform
};

// Validates decay/compatibility and builds the transforms.
TransformedData transform_data(const LinearProblem& p);

cplx effective_gtilde(const TransformedData& td, LinearEquation eq, cplx k);

// Solution of the half-line problem at (x, t), 0 <= x, 0 < t <= T.
cplx evaluate_solution(const LinearProblem& p, double x, double t);

// Classical sine-transform representation (Dirichlet linNLS only); refuses
// x = 0 where the representation is not uniformly convergent.
cplx classical_sine_solution(const LinearProblem& p, double x, double t);

// Neumann problem for i u_t + u_xx + i alpha u_x = 0 on the half-line.
cplx advected_neumann_solution(double alpha, const SpaceSignal& u0, const TimeSignal& g1,
                               double x, double t, double xmax = 40.0);

// Direct expression of the Dirichlet transform from Neumann data; the
// elimination only closes for alpha = 0.
cplx dms_g0_transform(const SpaceSignal& u0, const TimeSignal& g1, cplx k, double t,
                      double alpha = 0.0);

// Airy function on the nonnegative axis (series + saddle-point integral).
double airy_ai(double xi);

// erf on the whole complex plane, accurate along the e^{+-i pi/4} directions
// used by the oscillatory layer kernels.
cplx cerf(cplx z);

// Adaptive Gauss panel integration of a complex integrand on [a, b].
cplx adaptive_complex(const std::function<cplx(double)>& f, double a, double b,
                      double tol = 1e-11, int max_depth = 16);

}  // namespace uthl
