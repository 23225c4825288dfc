#include "uthl/lax.hpp"

#include <algorithm>
#include <cmath>

#include "uthl/quadrature.hpp"

namespace uthl {

std::array<cplx, 4> LaxSpec::qtilde0(cplx k, cplx g0, cplx g1, cplx g2) const {
  const double lam = lambda;
  switch (eq) {
    case Equation::NLS: {
      const cplx mod2 = g0 * std::conj(g0);
      return {-I * lam * mod2, 2.0 * k * g0 + I * g1,
              lam * (2.0 * k * std::conj(g0) - I * std::conj(g1)), I * lam * mod2};
    }
    case Equation::MKdVI: {
      const cplx g03 = g0 * g0 * g0;
      return {-2.0 * I * k * lam * g0 * g0,
              2.0 * lam * g03 + 4.0 * k * k * g0 + 2.0 * I * k * g1 - g2,
              lam * (2.0 * lam * g03 + 4.0 * k * k * g0 - 2.0 * I * k * g1 - g2),
              2.0 * I * k * lam * g0 * g0};
    }
    case Equation::MKdVII: {
      const cplx g03 = g0 * g0 * g0;
      return {-2.0 * I * k * lam * g0 * g0,
              -2.0 * lam * g03 - 4.0 * k * k * g0 + 2.0 * I * k * g1 + g2,
              lam * (-2.0 * lam * g03 - 4.0 * k * k * g0 - 2.0 * I * k * g1 + g2),
              2.0 * I * k * lam * g0 * g0};
    }
  }
  throw domain_error("qtilde0: bad equation");
}

cplx EigenfunctionTrace::first_at(double t) const {
  if (grid.empty()) return 0.0;
  if (t <= grid.front()) return first.front();
  if (t >= grid.back()) return first.back();
  const double h = grid[1] - grid[0];
  const auto j = static_cast<std::size_t>((t - grid.front()) / h);
  const std::size_t j1 = std::min(j + 1, grid.size() - 1);
  const double w = (t - grid[j]) / h;
  return (1.0 - w) * first[j] + w * first[j1];
}

cplx EigenfunctionTrace::second_at(double t) const {
  if (grid.empty()) return 0.0;
  if (t <= grid.front()) return second.front();
  if (t >= grid.back()) return second.back();
  const double h = grid[1] - grid[0];
  const auto j = static_cast<std::size_t>((t - grid.front()) / h);
  const std::size_t j1 = std::min(j + 1, grid.size() - 1);
  const double w = (t - grid[j]) / h;
  return (1.0 - w) * second[j] + w * second[j1];
}

PsiResult solve_psi(const LaxSpec& spec, const SpaceSignal& q0, cplx k, double xmax,
                    int steps) {
  const double h = xmax / steps;
  EigenfunctionTrace tr;
  tr.k = k;
  tr.grid.resize(steps + 1);
  tr.first.assign(steps + 1, 0.0);
  tr.second.assign(steps + 1, 0.0);
  for (int j = 0; j <= steps; ++j) tr.grid[j] = j * h;
  tr.second[steps] = 1.0;

  if (q0.is_zero()) {
    for (int j = 0; j <= steps; ++j) tr.second[j] = 1.0;
    return {tr, 1.0, 0.0};
  }

  const cplx z = 2.0 * I * spec.f1(k) * h;
  if (std::real(z) > 1e-9 * std::abs(z) + 1e-300 && std::real(z) * steps > 600.0)
    throw domain_error("solve_psi: x-kernel grows; k outside analyticity half-plane");
  const cplx ez = std::exp(z);
  const cplx w_new = h * phi2(z);             // weight of the implicit endpoint
  const cplx w_old = h * (phi1(z) - phi2(z)); // weight of the known endpoint

  // off-diagonal potential entries: q12 = q0, q21 = lambda * conj(q0) for NLS,
  // q21 = lambda * q0 for mKdV (real potential in the pair)
  auto q21 = [&](cplx q) {
    return spec.eq == Equation::NLS ? cplx(spec.lambda) * std::conj(q) : cplx(spec.lambda) * q;
  };

  std::vector<cplx> qv(steps + 1);
  for (int j = 0; j <= steps; ++j) qv[j] = q0(j * h);

  for (int j = steps - 1; j >= 0; --j) {
    const cplx Gnext = qv[j + 1] * tr.second[j + 1];
    const cplx Hnext = q21(qv[j + 1]) * tr.first[j + 1];
    const cplx A = ez * tr.first[j + 1] - w_old * Gnext;
    const cplx B = tr.second[j + 1] - 0.5 * h * Hnext;
    // Psi1_j = A - w_new * q_j * Psi2_j ; Psi2_j = B - (h/2) q21_j * Psi1_j
    const cplx c1 = w_new * qv[j];
    const cplx c2 = 0.5 * h * q21(qv[j]);
    const cplx v = (B - c2 * A) / (1.0 - c1 * c2);
    tr.second[j] = v;
    tr.first[j] = A - c1 * v;
  }
  return {tr, tr.second[0], tr.first[0]};
}

std::vector<PsiResult> solve_psi_sweep(const LaxSpec& spec, const SpaceSignal& q0,
                                       const std::vector<cplx>& kset, double xmax,
                                       int steps, Exec exec) {
  std::vector<PsiResult> out(kset.size());
  for_each_index(exec, static_cast<std::ptrdiff_t>(kset.size()),
                 [&](std::size_t i) { out[i] = solve_psi(spec, q0, kset[i], xmax, steps); });
  return out;
}

namespace {

// Shared forward march for the t-part columns: the `first` component carries
// the e^{-2 i f2 (t - tau)} kernel, with prescribed initial values.
EigenfunctionTrace march_column(
    const LaxSpec& spec, cplx k, double T, int steps,
    const std::function<std::array<cplx, 4>(double)>& coeffs, cplx first0,
    cplx second0) {
  const double h = T / steps;
  EigenfunctionTrace tr;
  tr.k = k;
  tr.grid.resize(steps + 1);
  tr.first.assign(steps + 1, 0.0);
  tr.second.assign(steps + 1, 0.0);
  for (int j = 0; j <= steps; ++j) tr.grid[j] = j * h;
  tr.first[0] = first0;
  tr.second[0] = second0;

  const cplx zeta = -2.0 * I * spec.f2(k) * h;
  if (std::real(zeta) * steps > 600.0)
    throw domain_error("solve_phi: t-kernel growth overflows at this k");
  const cplx ez = std::exp(zeta);
  const cplx w_impl = h * phi2(zeta);
  const cplx w_expl = h * (phi1(zeta) - phi2(zeta));

  std::array<cplx, 4> q = coeffs(0.0);
  for (int j = 0; j < steps; ++j) {
    const cplx G = q[0] * tr.first[j] + q[1] * tr.second[j];
    const cplx H = q[2] * tr.first[j] + q[3] * tr.second[j];
    const cplx A = ez * tr.first[j] + w_expl * G;
    const cplx B = tr.second[j] + 0.5 * h * H;
    q = coeffs((j + 1) * h);
    // u = A + w_impl (q0 u + q1 v); v = B + h/2 (q2 u + q3 v)
    const cplx a11 = 1.0 - w_impl * q[0];
    const cplx a12 = -w_impl * q[1];
    const cplx a21 = -0.5 * h * q[2];
    const cplx a22 = 1.0 - 0.5 * h * q[3];
    const cplx det = a11 * a22 - a12 * a21;
    tr.first[j + 1] = (A * a22 - a12 * B) / det;
    tr.second[j + 1] = (a11 * B - a21 * A) / det;
  }
  return tr;
}

}  // namespace

EigenfunctionTrace solve_phi(const LaxSpec& spec, const TimeSignal& g0,
                             const TimeSignal& g1, const TimeSignal& g2, cplx k,
                             double T, int steps) {
  if (g0.is_zero() && g1.is_zero() && g2.is_zero()) {
    EigenfunctionTrace tr;
    tr.k = k;
    const double h = T / steps;
    tr.grid.resize(steps + 1);
    for (int j = 0; j <= steps; ++j) tr.grid[j] = j * h;
    tr.first.assign(steps + 1, 0.0);
    tr.second.assign(steps + 1, 1.0);
    return tr;
  }
  return march_column(
      spec, k, T, steps,
      [&](double t) { return spec.qtilde0(k, g0(t), g1(t), g2(t)); }, 0.0, 1.0);
}

EigenfunctionTrace solve_phi_hatconj(const LaxSpec& spec, const TimeSignal& g0,
                                     const TimeSignal& g1, const TimeSignal& g2, cplx k,
                                     double T, int steps) {
  // W = e^{-2 i f2(k) t} conj(Phi(t, kbar)).  The pair (W2, W1) obeys the same
  // kernel structure with the lambda-twisted off-diagonal entries of
  // Qtilde(k) and starts from (1, 0): W2 carries the oscillatory factor.
  auto coeffs = [&](double t) {
    const auto q = spec.qtilde0(k, g0(t), g1(t), g2(t));
    const cplx lam(static_cast<double>(spec.lambda));
    return std::array<cplx, 4>{q[0], lam * q[1], lam * q[2], q[3]};
  };
  if (g0.is_zero() && g1.is_zero() && g2.is_zero()) {
    EigenfunctionTrace tr;
    tr.k = k;
    const double h = T / steps;
    tr.grid.resize(steps + 1);
    for (int j = 0; j <= steps; ++j) tr.grid[j] = j * h;
    tr.first.assign(steps + 1, 0.0);
    tr.second.assign(steps + 1, 0.0);
    for (int j = 0; j <= steps; ++j)
      tr.first[j] = std::exp(-2.0 * I * spec.f2(k) * tr.grid[j]);
    return tr;
  }
  return march_column(spec, k, T, steps, coeffs, 1.0, 0.0);
}

ABValue spectral_AB(const LaxSpec& spec, const EigenfunctionTrace& trace_at_k,
                    const EigenfunctionTrace& trace_at_kbar) {
  const double T = trace_at_k.grid.back();
  const cplx A = std::conj(trace_at_kbar.second.back());
  const cplx B = -trace_at_k.first.back() * std::exp(2.0 * I * spec.f2(trace_at_k.k) * T);
  return {A, B};
}

cplx c_function(cplx a, cplx b, const EigenfunctionTrace& phi_at_k,
                const EigenfunctionTrace& what_at_k, double t) {
  if (std::abs(a) < 1e-6)
    throw domain_error("c_function: k within tolerance of a zero of a(k)");
  return phi_at_k.first_at(t) + (b / a) * what_at_k.first_at(t);
}

cplx cauchy_derivative(const std::function<cplx(cplx)>& f, cplx k0, double r, int npts) {
  cplx acc = 0.0;
  for (int j = 0; j < npts; ++j) {
    const double th = 2.0 * pi * j / npts;
    acc += f(k0 + std::polar(r, th)) * std::polar(1.0, -th);
  }
  return acc / (static_cast<double>(npts) * r);
}

namespace {

int winding_on_rectangle(const std::function<cplx(cplx)>& a, double x0, double x1,
                         double y0, double y1, int per_edge) {
  std::vector<cplx> pts;
  pts.reserve(static_cast<std::size_t>(4 * per_edge));
  for (int j = 0; j < per_edge; ++j) pts.push_back(cplx(x0 + (x1 - x0) * j / per_edge, y0));
  for (int j = 0; j < per_edge; ++j) pts.push_back(cplx(x1, y0 + (y1 - y0) * j / per_edge));
  for (int j = 0; j < per_edge; ++j) pts.push_back(cplx(x1 - (x1 - x0) * j / per_edge, y1));
  for (int j = 0; j < per_edge; ++j) pts.push_back(cplx(x0, y1 - (y1 - y0) * j / per_edge));
  double total = 0.0;
  cplx prev = a(pts[0]);
  for (std::size_t j = 1; j <= pts.size(); ++j) {
    const cplx cur = a(pts[j % pts.size()]);
    total += normalize_angle(std::arg(cur) - std::arg(prev));
    prev = cur;
  }
  return static_cast<int>(std::lround(total / (2.0 * pi)));
}

}  // namespace

ZeroSearchResult find_a_zeros(const std::function<cplx(cplx)>& a,
                              const std::vector<double>& boundary_rays,
                              double clearance, Exec exec) {
  ZeroSearchResult result;
  result.notes.push_back("search window |Re k| <= 5, 0 < Im k <= 5; zeros outside assumed absent");

  // side-1 tiles, edges nudged off the axes to avoid sampling through zeros
  const double eps = 0.013;
  struct Tile {
    double x0, x1, y0, y1;
    int winding = 0;
  };
  std::vector<Tile> tiles;
  for (int ix = -5; ix < 5; ++ix)
    for (int iy = 0; iy < 5; ++iy)
      tiles.push_back({ix + eps, ix + 1 + eps, iy + eps, iy + 1 + eps});

  for_each_index(exec, static_cast<std::ptrdiff_t>(tiles.size()), [&](std::size_t i) {
    tiles[i].winding = winding_on_rectangle(a, tiles[i].x0, tiles[i].x1, tiles[i].y0,
                                            tiles[i].y1, 64);
  });

  for (const auto& tile : tiles) {
    if (tile.winding == 0) continue;
    // Newton polish from the tile center; repeat with deflation if several.
    std::vector<cplx> found;
    cplx seed(0.5 * (tile.x0 + tile.x1), 0.5 * (tile.y0 + tile.y1));
    for (int root = 0; root < tile.winding; ++root) {
      cplx z = seed + 0.07 * static_cast<double>(root) * cplx(0.31, 0.17);
      bool ok = false;
      for (int it = 0; it < 60; ++it) {
        cplx val = a(z);
        for (const cplx& f : found) val /= (z - f);  // deflate earlier roots
        const cplx der = cauchy_derivative(
            [&](cplx q) {
              cplx v = a(q);
              for (const cplx& f : found) v /= (q - f);
              return v;
            },
            z, 0.05);
        const cplx step = val / der;
        z -= step;
        if (std::abs(step) < 1e-12) {
          ok = true;
          break;
        }
      }
      if (!ok) throw convergence_error("find_a_zeros: Newton polish failed");
      found.push_back(z);
    }
    for (const cplx& z : found) {
      const int local = winding_on_rectangle(a, std::real(z) - 0.04, std::real(z) + 0.04,
                                             std::imag(z) - 0.04, std::imag(z) + 0.04, 32);
      if (local > 1)
        throw domain_error("find_a_zeros: multiple zero detected; simple-zero hypothesis violated");
      for (double ray : boundary_rays) {
        const cplx u = z * std::polar(1.0, -ray);
        const double dist = std::real(u) <= 0.0 ? std::abs(u) : std::abs(std::imag(u));
        if (dist < clearance)
          throw domain_error("find_a_zeros: zero of a(k) within clearance of a sector boundary");
      }
      result.zeros.emplace_back(z, cauchy_derivative(a, z, 0.05));
    }
  }
  std::sort(result.zeros.begin(), result.zeros.end(),
            [](const auto& p, const auto& q) { return std::real(p.first) < std::real(q.first); });
  return result;
}

Mat2 mat_mul(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

cplx mat_det(const Mat2& a) { return a[0] * a[3] - a[1] * a[2]; }

Mat2 mat_inv(const Mat2& a) {
  const cplx d = mat_det(a);
  if (std::abs(d) == 0.0) throw domain_error("mat_inv: singular matrix");
  return {a[3] / d, -a[1] / d, -a[2] / d, a[0] / d};
}

namespace {

// Sector pair adjacent to the boundary ray through k (vertex 0).
std::pair<Sector, Sector> adjacent_sectors(const LaxSpec& spec, cplx k, double tol) {
  const double th = std::arg(k);
  const Sector all[4] = {Sector::D1, Sector::D2, Sector::D3, Sector::D4};
  Sector before = Sector::D1, after = Sector::D1;
  bool found = false;
  for (Sector s : all) {
    for (const auto& [lo, hi] : sector_wedges(spec.eq, s)) {
      if (std::abs(normalize_angle(th - lo)) < tol) {
        after = s;  // sector counterclockwise of the ray
        found = true;
      }
      if (std::abs(normalize_angle(th - hi)) < tol) before = s;
    }
  }
  if (!found) throw domain_error("jump_data: k not on a sector boundary ray");
  return {before, after};
}

}  // namespace

JumpData jump_data(const SpectralEvaluators& sf, const LaxSpec& spec, double x, double t,
                   cplx k, double dtol) {
  const cplx kb = std::conj(k);
  const cplx a = sf.a(k), b = sf.b(k);
  const cplx Abar = std::conj(sf.A(kb)), Bbar = std::conj(sf.B(kb));
  const cplx abar = std::conj(sf.a(kb)), bbar = std::conj(sf.b(kb));
  const double lam = sf.lambda;
  const cplx theta = spec.f1(k) * x + spec.f2(k) * t;
  const cplx e2 = std::exp(2.0 * I * theta), em2 = std::exp(-2.0 * I * theta);

  const cplx d = a * Abar - lam * b * Bbar;
  const cplx dbar = std::conj(sf.a(kb) * std::conj(sf.A(k)) -
                              lam * sf.b(kb) * std::conj(sf.B(k)));
  if (std::abs(d) < dtol || std::abs(dbar) < dtol)
    throw domain_error("jump_data: d(k) vanishes; jump singular at this k");

  const Mat2 J1{1.0, 0.0, lam * Bbar / (a * d) * e2, 1.0};
  const Mat2 J3{1.0, -sf.B(k) / (abar * dbar) * em2, 0.0, 1.0};
  const Mat2 J4{1.0, -b / abar * em2, lam * bbar / a * e2, 1.0 / (a * abar)};

  const auto [before, after] = adjacent_sectors(spec, k, 1e-9);
  auto pair_is = [&](Sector p, Sector q) {
    return (before == p && after == q) || (before == q && after == p);
  };

  JumpData out;
  out.d = d;
  out.theta = theta;
  if (pair_is(Sector::D1, Sector::D2)) {
    out.J = J1;
    out.which = JumpPiece::J1;
  } else if (pair_is(Sector::D2, Sector::D3)) {
    out.J = mat_mul(mat_mul(J3, mat_inv(J4)), J1);
    out.which = JumpPiece::J2;
  } else if (pair_is(Sector::D3, Sector::D4)) {
    out.J = J3;
    out.which = JumpPiece::J3;
  } else if (pair_is(Sector::D4, Sector::D1)) {
    out.J = J4;
    out.which = JumpPiece::J4;
  } else {
    throw domain_error("jump_data: ray does not separate adjacent sectors");
  }
  return out;
}

}  // namespace uthl
