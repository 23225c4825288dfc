#include "uthl/verify.hpp"

#include <cmath>

#include "uthl/quadrature.hpp"

namespace uthl {

std::pair<cplx, cplx> soliton_exact_phi(double t, cplx k) {
  const cplx den = (2.0 * k + 1.0) * (2.0 * k + 1.0) + 1.0;
  if (std::abs(den) < 1e-10)
    throw domain_error("soliton_exact_phi: k at a pole of the closed form");
  const double e4 = std::exp(4.0 * t);
  const cplx osc = std::exp(-4.0 * I * k * k * t);
  const cplx phi1 =
      (I * (2.0 * k + 1.0) * (-2.0 * std::exp(2.0 * t) + (e4 + 1.0) * osc) +
       (1.0 - e4) * osc) /
      (den * (e4 + 1.0));
  const cplx phi2 = (2.0 * std::exp(2.0 * t) * osc / (e4 + 1.0) +
                     (2.0 * k + 1.0) * (2.0 * k - I * std::tanh(2.0 * t) + 1.0)) /
                    den;
  return {phi1, phi2};
}

ExtractionResult extract_large_k_coeffs(const LaxSpec& spec,
                                        const std::vector<EigenfunctionTrace>& traces,
                                        int depth, bool fit_oscillatory,
                                        double residual_threshold) {
  if (traces.size() < static_cast<std::size_t>(depth + 2))
    throw domain_error("extract_large_k_coeffs: need more k samples than coefficients");
  ExtractionResult out;
  out.tgrid = traces.front().grid;
  const std::size_t nt = out.tgrid.size();
  out.phi1_c1.resize(nt);
  out.phi1_c2.resize(nt);
  out.phi1_c3.assign(nt, 0.0);
  out.phi2_c1.resize(nt);
  out.phi2_c2.resize(nt);
  out.phi1_osc1.assign(nt, 0.0);

  const int m = static_cast<int>(traces.size());
  for (std::size_t j = 0; j < nt; ++j) {
    const double t = out.tgrid[j];
    {
      const int cols = depth + (fit_oscillatory ? 1 : 0);
      std::vector<cplx> M, y;
      for (int i = 0; i < m; ++i) {
        const cplx k = traces[i].k;
        cplx basis = 1.0 / k;
        for (int p = 0; p < depth; ++p) {
          M.push_back(basis);
          basis /= k;
        }
        if (fit_oscillatory) M.push_back(std::exp(-2.0 * I * spec.f2(k) * t) / k);
        y.push_back(traces[i].first[j]);
      }
      const auto c = lstsq(M, y, m, cols);
      out.phi1_c1[j] = c[0];
      out.phi1_c2[j] = depth > 1 ? c[1] : 0.0;
      if (depth > 2) out.phi1_c3[j] = c[2];
      if (fit_oscillatory) out.phi1_osc1[j] = c[depth];
      cplx fitv = 0.0;
      cplx basis = 1.0 / traces[m - 1].k;
      for (int p = 0; p < depth; ++p) {
        fitv += c[p] * basis;
        basis /= traces[m - 1].k;
      }
      if (fit_oscillatory)
        fitv += c[depth] * std::exp(-2.0 * I * spec.f2(traces[m - 1].k) * t) /
                traces[m - 1].k;
      out.max_fit_residual =
          std::max(out.max_fit_residual, std::abs(fitv - traces[m - 1].first[j]));
    }
    {
      std::vector<cplx> M, y;
      for (int i = 0; i < m; ++i) {
        const cplx k = traces[i].k;
        M.push_back(1.0 / k);
        M.push_back(1.0 / (k * k));
        y.push_back(traces[i].second[j] - 1.0);
      }
      const auto c = lstsq(M, y, m, 2);
      out.phi2_c1[j] = c[0];
      out.phi2_c2[j] = c[1];
    }
  }
  if (out.max_fit_residual > residual_threshold)
    throw convergence_error("extract_large_k_coeffs: ill-conditioned fit, residual " +
                            std::to_string(out.max_fit_residual));
  return out;
}

ResidualReport asymptotic_residual_c(const std::vector<cplx>& ks,
                                     const std::vector<cplx>& cvals,
                                     const std::vector<cplx>& coeffs) {
  if (ks.size() != cvals.size())
    throw domain_error("asymptotic_residual_c: size mismatch");
  ResidualReport rep;
  const int p = static_cast<int>(coeffs.size());
  for (std::size_t i = 0; i < ks.size(); ++i) {
    cplx sum = 0.0, basis = 1.0 / ks[i];
    for (int j = 0; j < p; ++j) {
      sum += coeffs[j] * basis;
      basis /= ks[i];
    }
    rep.values.push_back(std::abs(std::pow(ks[i], p + 1) * (cvals[i] - sum)));
  }
  double head = 0.0, tail = 0.0;
  const std::size_t half = rep.values.size() / 2;
  for (std::size_t i = 0; i < rep.values.size(); ++i) {
    double& slot = (i < half) ? head : tail;
    slot = std::max(slot, rep.values[i]);
  }
  rep.bounded = tail <= 4.0 * std::max(head, 1e-12);
  return rep;
}

bool compatibility_flag(cplx b1, cplx phi11_at_zero, double tol) {
  return std::abs(b1 - phi11_at_zero) <= tol * std::max(1.0, std::abs(phi11_at_zero));
}

namespace {

// int_0^T e^{4 i k^2 tau} f(tau) dtau
cplx osc_transform(const TimeSignal& f, cplx k, double T, int n = 1600) {
  if (f.is_zero()) return 0.0;
  const cplx w = 4.0 * I * k * k;
  if (f.windowed) return std::exp(w * T) * f.windowed(-w, T);
  if (std::real(w) * T > 600.0)
    throw domain_error("osc_transform: kernel overflow at this k");
  const double h = T / n;
  const cplx z = w * h;
  const cplx w0 = h * phi2(z), w1 = h * (phi1(z) - phi2(z));
  cplx acc = 0.0, E = 1.0;
  const cplx ez = std::exp(z);
  for (int j = 0; j < n; ++j) {
    acc += E * (w0 * f(j * h) + w1 * f((j + 1) * h));
    E *= ez;
  }
  return acc;
}

}  // namespace

BSeriesReport b_series_symmetry(const TimeSignal& g01, const TimeSignal& g11,
                                const TimeSignal& g02, const TimeSignal& g12,
                                double T, const std::vector<cplx>& ks, int lambda) {
  BSeriesReport rep;
  auto B1 = [&](cplx k) {
    return -(2.0 * k * osc_transform(g01, k, T) + I * osc_transform(g11, k, T));
  };
  auto B2 = [&](cplx k) {
    return -(2.0 * k * osc_transform(g02, k, T) + I * osc_transform(g12, k, T));
  };
  auto phi11_march = [&](cplx k, int n, std::vector<cplx>& out) {
    const double h = T / n;
    const cplx zeta = -4.0 * I * k * k * h;
    const cplx ez = std::exp(zeta);
    const cplx w_impl = h * phi2(zeta), w_expl = h * (phi1(zeta) - phi2(zeta));
    out.assign(n + 1, 0.0);
    for (int j = 0; j < n; ++j) {
      const cplx Gj = 2.0 * k * g01(j * h) + I * g11(j * h);
      const cplx Gj1 = 2.0 * k * g01((j + 1) * h) + I * g11((j + 1) * h);
      out[j + 1] = ez * out[j] + w_expl * Gj + w_impl * Gj1;
    }
  };
  auto A2bar = [&](cplx k) {  // conj(A2(kbar)) = Phi_22(T, k)
    const int n = 1600;
    std::vector<cplx> p11;
    phi11_march(k, n, p11);
    const double h = T / n;
    const double lam = lambda;
    auto term = [&](int jj) {
      const double tau = jj * h;
      const cplx m2 = g01(tau) * std::conj(g01(tau));
      return lam * ((2.0 * k * std::conj(g01(tau)) - I * std::conj(g11(tau))) * p11[jj] +
                    I * m2);
    };
    cplx acc = 0.0;
    for (int j = 0; j < n; ++j) acc += 0.5 * h * (term(j) + term(j + 1));
    return acc;
  };

  TimeSignal g01c = g01;  // conj data for the reversed-phase transform
  if (!g01.is_zero()) {
    const auto f01 = g01.f;
    g01c.f = [f01](double t) { return std::conj(f01(t)); };
    g01c.df = nullptr;
    g01c.fc = nullptr;
    g01c.windowed = nullptr;
  }

  for (cplx k : ks) {
    const cplx resid1 = B1(-k) - B1(k) - 4.0 * k * osc_transform(g01, k, T);
    rep.max_b1_residual = std::max(rep.max_b1_residual, std::abs(resid1));
    const cplx resid2 = B2(-k) - B2(k) - 4.0 * k * osc_transform(g02, k, T);
    rep.max_b2_residual = std::max(rep.max_b2_residual, std::abs(resid2));

    const cplx b1 = B1(k), b1h = B1(-k);
    const cplx a2 = A2bar(k), a2h = A2bar(-k);
    const cplx ig1 = osc_transform(g01, k, T);
    // int_0^T e^{-4ik^2 tau} conj(g01) dtau = transform of conj data at i k
    const cplx ig1c = osc_transform(g01c, I * k, T);
    const cplx U = b1 * a2h - b1h * a2 + 4.0 * k * ((a2 + a2h) * ig1 - b1 * b1h * ig1c);
    rep.max_U = std::max(rep.max_U, std::abs(U));
  }
  return rep;
}

FdOracleResult fd_oracle_nls(const SpaceSignal& q0, const TimeSignal& g0, int lambda,
                             double L, int nx, double T, int nt, int store_every,
                             int iterations) {
  FdOracleResult res;
  const double h = L / nx, dt = T / nt;
  res.xgrid.resize(nx + 1);
  for (int i = 0; i <= nx; ++i) res.xgrid[i] = i * h;
  std::vector<cplx> q(nx + 1, 0.0), qn(nx + 1), rhs(nx + 1), mid(nx + 1);
  for (int i = 0; i <= nx; ++i) q[i] = q0.is_zero() ? cplx(0.0) : q0(i * h);
  if (!g0.is_zero()) q[0] = g0(0.0);

  const cplx r = I / dt;
  const double ih2 = 1.0 / (h * h);
  std::vector<cplx> d(nx + 1), cp(nx + 1), dp(nx + 1);
  const cplx bdiag = r - ih2;
  const double off = 0.5 * ih2;

  auto push_slice = [&](int n) {
    if (store_every > 0 && n % store_every == 0) {
      res.tgrid.push_back(n * dt);
      res.field.push_back(q);
    }
  };
  auto push_trace = [&](int n) {
    res.trace_t.push_back(n * dt);
    res.neumann.push_back(
        (-25.0 * q[0] + 48.0 * q[1] - 36.0 * q[2] + 16.0 * q[3] - 3.0 * q[4]) /
        (12.0 * h));
  };
  push_slice(0);
  push_trace(0);

  for (int n = 0; n < nt; ++n) {
    const double tn1 = (n + 1) * dt;
    for (int i = 1; i < nx; ++i)
      rhs[i] = r * q[i] - 0.5 * ih2 * (q[i + 1] - 2.0 * q[i] + q[i - 1]);
    qn = q;
    qn[0] = g0.is_zero() ? cplx(0.0) : g0(tn1);
    qn[nx] = 0.0;
    for (int it = 0; it < iterations; ++it) {
      for (int i = 0; i <= nx; ++i) mid[i] = 0.5 * (q[i] + qn[i]);
      for (int i = 1; i < nx; ++i)
        d[i] = rhs[i] + 2.0 * static_cast<double>(lambda) * std::norm(mid[i]) * mid[i];
      d[1] -= off * qn[0];
      d[nx - 1] -= off * qn[nx];
      cp[1] = off / bdiag;
      dp[1] = d[1] / bdiag;
      for (int i = 2; i < nx; ++i) {
        const cplx m = bdiag - off * cp[i - 1];
        cp[i] = off / m;
        dp[i] = (d[i] - off * dp[i - 1]) / m;
      }
      qn[nx - 1] = dp[nx - 1];
      for (int i = nx - 2; i >= 1; --i) qn[i] = dp[i] - cp[i] * qn[i + 1];
    }
    q = qn;
    push_slice(n + 1);
    push_trace(n + 1);
  }
  return res;
}

}  // namespace uthl
