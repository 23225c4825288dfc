#pragma once

// Independent oracles and asymptotic checks: the explicit one-soliton
// eigenfunctions, large-k coefficient extraction, global-relation residual
// reports, the low-order symmetry relations of the spectral functions, and a
// Crank-Nicolson finite-difference oracle that shares no code with the
// spectral solvers.

#include <utility>
#include <vector>

#include "uthl/lax.hpp"
#include "uthl/signal.hpp"

namespace uthl {

// Closed-form eigenfunctions attached to q(x,t) = e^{ix} sech(x - 2t), lambda = -1.
std::pair<cplx, cplx> soliton_exact_phi(double t, cplx k);

// Least-squares extraction of inverse-power (and leading oscillatory)
// coefficients from traces sampled on a dyadic family of k.
struct ExtractionResult {
  std::vector<double> tgrid;
  // first component coefficients of 1/k, 1/k^2, 1/k^3
  std::vector<cplx> phi1_c1, phi1_c2, phi1_c3;
  // second component coefficients of 1/k, 1/k^2 (about the unit limit)
  std::vector<cplx> phi2_c1, phi2_c2;
  // coefficient of e^{-2 i f2 t}/k in the first component when requested
  std::vector<cplx> phi1_osc1;
  double max_fit_residual = 0.0;
};
ExtractionResult extract_large_k_coeffs(const LaxSpec& spec,
                                        const std::vector<EigenfunctionTrace>& traces,
                                        int depth, bool fit_oscillatory,
                                        double residual_threshold = 1e-3);

// sup_m |k_m^{p+1} (c(t,k_m) - sum_j coeffs[j]/k_m^{j+1})| along a dyadic set.
struct ResidualReport {
  std::vector<double> values;
  bool bounded = false;
};
ResidualReport asymptotic_residual_c(const std::vector<cplx>& ks,
                                     const std::vector<cplx>& cvals,
                                     const std::vector<cplx>& coeffs);

// Compatibility of the data corner: b^{(1)} = Phi_1^{(1)}(0), i.e. q0(0) = g0(0).
bool compatibility_flag(cplx b1, cplx phi11_at_zero, double tol = 1e-3);

// Order-by-order symmetry relations of B(k) under k -> -k, and the order-3
// correction U(k) that fails to vanish for generic data.
struct BSeriesReport {
  double max_b1_residual = 0.0;
  double max_b2_residual = 0.0;
  double max_U = 0.0;
};
BSeriesReport b_series_symmetry(const TimeSignal& g01, const TimeSignal& g11,
                                const TimeSignal& g02, const TimeSignal& g12,
                                double T, const std::vector<cplx>& ks, int lambda = -1);

// Crank-Nicolson oracle for i q_t + q_xx - 2 lambda |q|^2 q = 0 on [0, L]
// with Dirichlet data at x = 0 and a padded far boundary.
struct FdOracleResult {
  std::vector<double> xgrid;
  std::vector<double> tgrid;             // stored slices
  std::vector<std::vector<cplx>> field;  // field[slice][i]
  std::vector<double> trace_t;           // every step
  std::vector<cplx> neumann;             // one-sided 4th order q_x(0, t)
};
FdOracleResult fd_oracle_nls(const SpaceSignal& q0, const TimeSignal& g0, int lambda,
                             double L, int nx, double T, int nt, int store_every = 0,
                             int iterations = 3);

}  // namespace uthl
