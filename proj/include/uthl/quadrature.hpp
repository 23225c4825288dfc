#pragma once

// Quadrature building blocks used by the contour and boundary-value modules:
// Gauss-Legendre panel rules, geometric ray subdivision with an algebraic
// mapped tail, a Levin collocation scheme for oscillatory rays, and the
// closed-form Gaussian/cubic ray integrals that back asymptotic subtraction.

#include <functional>
#include <vector>

#include "uthl/core.hpp"

namespace uthl {

// Nodes/weights of the n-point Gauss-Legendre rule on [-1, 1].
const std::vector<double>& gl_nodes(int n);
const std::vector<double>& gl_weights(int n);

// \int_a^b f(x) dx with one n-point rule.
cplx gl_integrate(const std::function<cplx(double)>& f, double a, double b, int n);

// Node/weight pair for a half-line parameter rho in [0, inf).
struct RhoNode {
  double rho;
  double w;
};

// Geometric panels on [0, R] (clustered at 0) followed, when with_tail is set,
// by nodes for the algebraically mapped tail rho = R/s, s in (0,1].  The tail
// weights include the Jacobian R/s^2, so summing w*F(rho) integrates F over
// [0, inf) for F smooth in 1/rho beyond R and O(1/rho^2) or better.
std::vector<RhoNode> ray_nodes(double R, int panels, int gl_order, bool with_tail,
                               int tail_order = 24, int subpanels = 1);

// phi-functions for exact product integration of exp(z s) against linears:
//   phi1(z) = (e^z - 1)/z,  phi2(z) = (e^z - 1 - z)/z^2.
cplx phi1(cplx z);
cplx phi2(cplx z);
cplx phi3(cplx z);  // (e^z - 1 - z - z^2/2)/z^3

// Closed-form ray integrals (outbound ray k = v + rho e^{i theta}, v = 0):
//   gauss_ray(theta, a)          = int_ray e^{a k^2} dk,    Re(a e^{2 i theta}) <= 0
//   cubic_moment_ray(theta, a, m)= int_ray k^m e^{a k^3} dk, Re(a e^{3 i theta}) <= 0
// Boundary (purely oscillatory) cases are the Fresnel limits of the same
// formulas and are valid for m >= 0 integrands considered here.
cplx gauss_ray(double theta, cplx a);
cplx cubic_moment_ray(double theta, cplx a, int m);

// Dense complex linear solve (partial-pivot LU), A is n x n row-major.
std::vector<cplx> solve_dense(std::vector<cplx> A, std::vector<cplx> b, int n);

// Levin collocation for I = int_A^B h(r) e^{g(r)} dr on one panel.  g must be
// smooth with moderate variation of g' inside the panel; h smooth.
cplx levin_panel(const std::function<cplx(double)>& h,
                 const std::function<cplx(double)>& g,
                 const std::function<cplx(double)>& gprime,
                 double A, double B, int m = 12);

// Oscillatory half-line tail int_{K0}^{inf} h e^{g} dr via geometric Levin
// panels; stops once the endpoint estimate |h/g'| drops below tol and applies
// the asymptotic endpoint correction. Throws convergence_error past max_B.
cplx levin_tail(const std::function<cplx(double)>& h,
                const std::function<cplx(double)>& g,
                const std::function<cplx(double)>& gprime,
                double K0, double tol, double max_B = 1e7, int m = 12);

// Least squares solve of the overdetermined system M c = y (rows >= cols)
// through the normal equations; M row-major rows x cols.
std::vector<cplx> lstsq(const std::vector<cplx>& M, const std::vector<cplx>& y,
                        int rows, int cols);

}  // namespace uthl
