#pragma once

// Lax-pair data for the three equations, product-integration solvers for the
// x- and t-eigenfunction Volterra systems, spectral functions, zero location
// by the argument principle, and assembly of the piecewise jump matrices.

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "uthl/contour.hpp"
#include "uthl/core.hpp"
#include "uthl/signal.hpp"

namespace uthl {

struct LaxSpec {
  Equation eq = Equation::NLS;
  int lambda = -1;  // +1 defocusing, -1 focusing

  cplx f1(cplx k) const { return eq == Equation::MKdVII ? -k : k; }
  cplx f2(cplx k) const {
    return eq == Equation::NLS ? 2.0 * k * k : 4.0 * k * k * k;
  }

  // Entries of Qtilde evaluated at x = 0 from boundary values.
  std::array<cplx, 4> qtilde0(cplx k, cplx g0, cplx g1, cplx g2) const;
};

struct EigenfunctionTrace {
  cplx k;
  std::vector<double> grid;
  std::vector<cplx> first;   // Phi_1 (or Psi_1)
  std::vector<cplx> second;  // Phi_2 (or Psi_2)

  cplx first_at(double t) const;
  cplx second_at(double t) const;
};

// Backward x-march of the x-part Volterra system from xmax to 0.
// Returns the trace plus a(k) = Psi_2(0,k), b(k) = Psi_1(0,k).
struct PsiResult {
  EigenfunctionTrace trace;
  cplx a;
  cplx b;
};
PsiResult solve_psi(const LaxSpec& spec, const SpaceSignal& q0, cplx k,
                    double xmax = 40.0, int steps = 4000);

// k-sweep over a node set; parallel across k.
std::vector<PsiResult> solve_psi_sweep(const LaxSpec& spec, const SpaceSignal& q0,
                                       const std::vector<cplx>& kset, double xmax = 40.0,
                                       int steps = 4000, Exec exec = Exec::parallel);

// Forward t-march of the t-part Volterra system on [0, T].
EigenfunctionTrace solve_phi(const LaxSpec& spec, const TimeSignal& g0,
                             const TimeSignal& g1, const TimeSignal& g2, cplx k,
                             double T, int steps = 2000);

// Trace of W(t,k) = e^{-2 i f2(k) t} conj(Phi(t, conj(k))): first = W2, the
// factor the jump/boundary formulas multiply against b/a, second = W1.
EigenfunctionTrace solve_phi_hatconj(const LaxSpec& spec, const TimeSignal& g0,
                                     const TimeSignal& g1, const TimeSignal& g2, cplx k,
                                     double T, int steps = 2000);

// A(k) and B(k) from traces at conj(k) and k run through t = T.
struct ABValue {
  cplx A;
  cplx B;
};
ABValue spectral_AB(const LaxSpec& spec, const EigenfunctionTrace& trace_at_k,
                    const EigenfunctionTrace& trace_at_kbar);

// Global-relation combination c(t,k) = Phi_1 + (b/a) e^{-2 i f2 t} conj(Phi_2(t, kbar)).
cplx c_function(cplx a, cplx b, const EigenfunctionTrace& phi_at_k,
                const EigenfunctionTrace& what_at_k, double t);

struct ZeroSearchResult {
  std::vector<std::pair<cplx, cplx>> zeros;  // (k_j, da/dk at k_j)
  std::vector<std::string> notes;
};

// Argument-principle sweep over side-1 rectangles tiling |Re k| <= 5,
// 0 < Im k <= 5, followed by Newton polish.  boundary_rays lists the sector
// edges on which zeros violate the theorem hypotheses.
ZeroSearchResult find_a_zeros(const std::function<cplx(cplx)>& a,
                              const std::vector<double>& boundary_rays,
                              double clearance = 0.05, Exec exec = Exec::parallel);

// Numerical derivative by a Cauchy circle of radius r.
cplx cauchy_derivative(const std::function<cplx(cplx)>& f, cplx k0, double r = 0.1,
                       int npts = 16);

using Mat2 = std::array<cplx, 4>;  // row-major 2x2

Mat2 mat_mul(const Mat2& a, const Mat2& b);
Mat2 mat_inv(const Mat2& a);
cplx mat_det(const Mat2& a);

enum class JumpPiece { J1, J2, J3, J4 };

struct JumpData {
  Mat2 J;
  cplx d;
  cplx theta;
  JumpPiece which;
};

// Spectral-function evaluators for the jump assembly; a, b on closure of C+,
// A, B entire.
struct SpectralEvaluators {
  std::function<cplx(cplx)> a, b, A, B;
  int lambda = -1;
};

JumpData jump_data(const SpectralEvaluators& sf, const LaxSpec& spec, double x,
                   double t, cplx k, double dtol = 1e-12);

}  // namespace uthl
