#include "uthl/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace uthl {

namespace {

// Newton iteration on the Legendre polynomial; deterministic and cached.
void build_gl(int n, std::vector<double>& x, std::vector<double>& w) {
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < n; ++i) {
    double t = std::cos(pi * (i + 0.75) / (n + 0.5));
    double p0 = 0, p1 = 0;
    for (int it = 0; it < 100; ++it) {
      p0 = 1.0;
      p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * t * p1 - j * p2) / (j + 1.0);
      }
      double dp = n * (t * p0 - p1) / (t * t - 1.0);
      double dt = p0 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    p0 = 1.0;
    p1 = 0.0;
    for (int j = 0; j < n; ++j) {
      double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * j + 1.0) * t * p1 - j * p2) / (j + 1.0);
    }
    double dp = n * (t * p0 - p1) / (t * t - 1.0);
    x[n - 1 - i] = t;
    w[n - 1 - i] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
}

struct GlCache {
  std::mutex mu;
  std::map<int, std::pair<std::vector<double>, std::vector<double>>> rules;
  const std::pair<std::vector<double>, std::vector<double>>& get(int n) {
    std::lock_guard<std::mutex> lock(mu);
    auto it = rules.find(n);
    if (it == rules.end()) {
      std::pair<std::vector<double>, std::vector<double>> r;
      build_gl(n, r.first, r.second);
      it = rules.emplace(n, std::move(r)).first;
    }
    return it->second;
  }
};

GlCache& cache() {
  static GlCache c;
  return c;
}

}  // namespace

const std::vector<double>& gl_nodes(int n) { return cache().get(n).first; }
const std::vector<double>& gl_weights(int n) { return cache().get(n).second; }

cplx gl_integrate(const std::function<cplx(double)>& f, double a, double b, int n) {
  const auto& x = gl_nodes(n);
  const auto& w = gl_weights(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  cplx acc = 0.0;
  for (int i = 0; i < n; ++i) acc += w[i] * f(mid + half * x[i]);
  return half * acc;
}

std::vector<RhoNode> ray_nodes(double R, int panels, int gl_order, bool with_tail,
                               int tail_order, int subpanels) {
  if (R <= 0 || panels < 1 || gl_order < 2 || subpanels < 1)
    throw domain_error("ray_nodes: bad scheme");
  const auto& x = gl_nodes(gl_order);
  const auto& w = gl_weights(gl_order);
  std::vector<RhoNode> out;
  out.reserve(static_cast<std::size_t>(panels * subpanels * gl_order +
                                       (with_tail ? tail_order : 0)));
  // breakpoints R*2^{-(panels-1)}, ..., R/2, R with [0, first] innermost
  double lo = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double hi = R * std::pow(2.0, -(panels - 1 - p));
    for (int s = 0; s < subpanels; ++s) {
      const double a = lo + (hi - lo) * s / subpanels;
      const double b = lo + (hi - lo) * (s + 1) / subpanels;
      const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
      for (int i = 0; i < gl_order; ++i) out.push_back({mid + half * x[i], half * w[i]});
    }
    lo = hi;
  }
  if (with_tail) {
    const auto& xs = gl_nodes(tail_order);
    const auto& ws = gl_weights(tail_order);
    // rho = R/s, d rho = -R/s^2 ds; s from 0..1 traversed increasing
    for (int i = 0; i < tail_order; ++i) {
      double s = 0.5 + 0.5 * xs[i];
      out.push_back({R / s, 0.5 * ws[i] * R / (s * s)});
    }
  }
  return out;
}

cplx phi1(cplx z) {
  if (std::abs(z) < 0.5) {
    cplx term = 1.0, acc = 1.0;
    for (int j = 2; j <= 18; ++j) {
      term *= z / static_cast<double>(j);
      acc += term;
    }
    return acc;
  }
  return (std::exp(z) - 1.0) / z;
}

cplx phi2(cplx z) {
  if (std::abs(z) < 0.5) {
    cplx term = 0.5, acc = 0.5;
    for (int j = 3; j <= 19; ++j) {
      term *= z / static_cast<double>(j);
      acc += term;
    }
    return acc;
  }
  return (std::exp(z) - 1.0 - z) / (z * z);
}

cplx phi3(cplx z) {
  if (std::abs(z) < 0.5) {
    cplx term = 1.0 / 6.0, acc = term;
    for (int j = 4; j <= 20; ++j) {
      term *= z / static_cast<double>(j);
      acc += term;
    }
    return acc;
  }
  return (std::exp(z) - 1.0 - z - 0.5 * z * z) / (z * z * z);
}

cplx gauss_ray(double theta, cplx a) {
  const cplx dir = std::polar(1.0, theta);
  const cplx m = -a * dir * dir;  // Re m >= 0 on valid rays
  if (std::real(m) < -1e-12 * std::abs(m)) throw domain_error("gauss_ray: growing Gaussian");
  return dir * 0.5 * std::sqrt(pi) / std::sqrt(m);
}

cplx cubic_moment_ray(double theta, cplx a, int m) {
  const cplx dir = std::polar(1.0, theta);
  const cplx w = -a * dir * dir * dir;
  if (std::real(w) < -1e-12 * std::abs(w)) throw domain_error("cubic_moment_ray: growth");
  const double s = (m + 1) / 3.0;
  // int_0^inf r^m e^{-w r^3} dr = Gamma(s)/(3 w^s)
  return std::pow(dir, m + 1) * std::tgamma(s) / (3.0 * std::pow(w, s));
}

std::vector<cplx> solve_dense(std::vector<cplx> A, std::vector<cplx> b, int n) {
  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = std::abs(A[col * n + col]);
    for (int r = col + 1; r < n; ++r) {
      double v = std::abs(A[r * n + col]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best == 0.0) throw convergence_error("solve_dense: singular system");
    if (piv != col) {
      for (int c = col; c < n; ++c) std::swap(A[piv * n + c], A[col * n + c]);
      std::swap(b[piv], b[col]);
    }
    const cplx d = A[col * n + col];
    for (int r = col + 1; r < n; ++r) {
      const cplx f = A[r * n + col] / d;
      if (f == 0.0) continue;
      for (int c = col; c < n; ++c) A[r * n + c] -= f * A[col * n + c];
      b[r] -= f * b[col];
    }
  }
  std::vector<cplx> x(n);
  for (int r = n - 1; r >= 0; --r) {
    cplx acc = b[r];
    for (int c = r + 1; c < n; ++c) acc -= A[r * n + c] * x[c];
    x[r] = acc / A[r * n + r];
  }
  return x;
}

cplx levin_panel(const std::function<cplx(double)>& h,
                 const std::function<cplx(double)>& g,
                 const std::function<cplx(double)>& gprime,
                 double A, double B, int m) {
  // Collocate p' + g' p = h in the monomial basis at Chebyshev points of [A,B];
  // then int = e^{g(B)} p(B) - e^{g(A)} p(A).
  const double mid = 0.5 * (A + B), half = 0.5 * (B - A);
  std::vector<double> tau(m);
  for (int i = 0; i < m; ++i) tau[i] = std::cos(pi * (2 * i + 1) / (2.0 * m));
  std::vector<cplx> M(static_cast<std::size_t>(m) * m), rhs(m);
  for (int i = 0; i < m; ++i) {
    const double r = mid + half * tau[i];
    const cplx gp = gprime(r);
    double tj = 1.0;       // tau^j
    double tjm1 = 0.0;     // tau^{j-1}
    for (int j = 0; j < m; ++j) {
      const double dbasis = j == 0 ? 0.0 : j * tjm1 / half;
      M[static_cast<std::size_t>(i) * m + j] = dbasis + gp * tj;
      tjm1 = tj;
      tj *= tau[i];
    }
    rhs[i] = h(r);
  }
  const auto c = solve_dense(std::move(M), std::move(rhs), m);
  auto eval_p = [&](double tau_pt) {
    cplx acc = 0.0;
    double tj = 1.0;
    for (int j = 0; j < m; ++j) {
      acc += c[j] * tj;
      tj *= tau_pt;
    }
    return acc;
  };
  return std::exp(g(B)) * eval_p(1.0) - std::exp(g(A)) * eval_p(-1.0);
}

cplx levin_tail(const std::function<cplx(double)>& h,
                const std::function<cplx(double)>& g,
                const std::function<cplx(double)>& gprime,
                double K0, double tol, double max_B, int m) {
  // int_A^inf e^g h = -e^{g(A)} (p - p'/g' + ...) with p = h/g' once the
  // asymptotic series terms fall below tol; Levin panels carry us there.
  auto p0 = [&](double r) { return h(r) / gprime(r); };
  auto correction = [&](double A) {
    const double dr = 1e-4 * A;
    const cplx dp = (p0(A + dr) - p0(A - dr)) / (2.0 * dr);
    return -std::exp(g(A)) * (p0(A) - dp / gprime(A));
  };
  cplx acc = 0.0;
  double A = K0;
  for (int p = 0; p < 64; ++p) {
    const double dr = 1e-4 * A;
    const cplx second = (p0(A + dr) - p0(A - dr)) / (2.0 * dr) / gprime(A);
    if (std::abs(second) < tol) return acc + correction(A);
    const double B = 2.0 * A;
    acc += levin_panel(h, g, gprime, A, B, m);
    A = B;
    if (A > max_B) break;
  }
  if (std::abs(p0(A)) < tol) return acc + correction(A);
  throw convergence_error("levin_tail: endpoint estimate above tolerance at max_B");
}

std::vector<cplx> lstsq(const std::vector<cplx>& M, const std::vector<cplx>& y,
                        int rows, int cols) {
  std::vector<cplx> N(static_cast<std::size_t>(cols) * cols, 0.0), rhs(cols, 0.0);
  for (int i = 0; i < rows; ++i)
    for (int a = 0; a < cols; ++a) {
      const cplx mia = std::conj(M[static_cast<std::size_t>(i) * cols + a]);
      rhs[a] += mia * y[i];
      for (int b = 0; b < cols; ++b)
        N[static_cast<std::size_t>(a) * cols + b] += mia * M[static_cast<std::size_t>(i) * cols + b];
    }
  return solve_dense(std::move(N), std::move(rhs), cols);
}

}  // namespace uthl
