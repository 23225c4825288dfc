#pragma once

// Oriented contours in the complex k-plane: sector boundaries for the three
// integrable equations, the deformed contour that clears zeros of a(k), and a
// contour integrator that rotates rays into decay regions and repairs the
// conditionally convergent 1/k part by asymptotic subtraction.

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "uthl/core.hpp"
#include "uthl/quadrature.hpp"

namespace uthl {

enum class Equation { NLS, MKdVI, MKdVII };

enum class Sector { D1, D2, D3, D4, D1p, D1pp, DPlus };

std::string to_string(Equation eq);
std::string to_string(Sector s);
Equation equation_from_string(const std::string& s);
Sector sector_from_string(const std::string& s);

struct Ray {
  cplx vertex = 0.0;
  double angle = 0.0;   // normalized to (-pi, pi]
  bool outbound = true; // outbound: vertex -> infinity; inbound: reversed
  // sign of the decay rotation for this ray; +1 rotates counterclockwise.
  // Sector boundaries set it so the rotation points away from the sector,
  // and reversal keeps the rotated geometry fixed.
  int rot_sign = 0;

  cplx point(double rho) const { return vertex + std::polar(rho, angle); }
  cplx direction() const { return std::polar(1.0, angle); }
  double orientation() const { return outbound ? 1.0 : -1.0; }
};

double normalize_angle(double a);

struct ContourPath {
  std::vector<Ray> rays;
  std::string label;
  // Reference point for the 1/k subtraction; must lie off the path and away
  // from the sectors swept by decay rotations.
  cplx flat_ref = cplx(0.0, 1.0);
};

ContourPath reversed(const ContourPath& path);

enum class TailStrategy { truncate, asymptotic_subtraction, rational_map };

struct QuadratureSpec {
  double truncation_radius = 50.0;
  int nodes_per_ray = 16;  // Gauss-Legendre order per panel
  double decay_rotation = pi / 8.0;
  TailStrategy tail_strategy = TailStrategy::asymptotic_subtraction;
  int panels = 13;
  int subpanels = 1;  // uniform refinement of each geometric panel
  int tail_order = 24;
  double tail_tol = 1e-9;
  Exec exec = Exec::parallel;
};

QuadratureSpec quadrature_defaults(Equation eq);

// Angular support (theta_lo, theta_hi) pairs of a sector; one or two wedges.
std::vector<std::pair<double, double>> sector_wedges(Equation eq, Sector s);

// Boundary of the sector, oriented with the sector on the left of traversal.
ContourPath boundary_contour(Equation eq, Sector s);

// Deform dD3 of mKdVI so that the rotated copies clear the zeros of a(k) in
// D1' and D1''; reduces to the base path for an empty zero list.
ContourPath deform_gamma(const ContourPath& base, const std::vector<cplx>& a_zeros,
                         double clearance = 0.1);

// Contour integral of f along the path.  With a nonzero decay rotation every
// ray is rotated away from the sector it bounds (inbound +delta, outbound
// -delta), which is valid for integrands analytic in the swept wedges whose
// oscillatory factors decay there.
cplx integrate_contour(const ContourPath& path, const std::function<cplx(cplx)>& f,
                       const QuadratureSpec& spec);

// Closed form of int_path dk/(k - c) for ray paths sharing one vertex.
cplx flat_reference_integral(const ContourPath& path, cplx c);

// Time-filter action of the kernel k e^{4ik^2(t''-t')} integrated over dD3 of
// NLS: (pi/4) f(t') for 0 < t' < t and (pi/8) f(t') at t' = t.
cplx filter_identity(const std::function<cplx(double)>& f, double tprime, double t);

// Direct-quadrature evaluation of the same double integral (cross-check).
cplx filter_identity_direct(const std::function<cplx(double)>& f, double tprime,
                            double t, const QuadratureSpec& spec);

// Plain-text round trip, one ray per line: vertex_re vertex_im angle direction.
std::string serialize(const ContourPath& path);
ContourPath parse_contour(const std::string& text);

}  // namespace uthl
