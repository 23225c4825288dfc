#include "uthl/contour.hpp"

#include <cmath>
#include <sstream>

namespace uthl {

double normalize_angle(double a) {
  while (a > pi) a -= 2.0 * pi;
  while (a <= -pi) a += 2.0 * pi;
  return a;
}

std::string to_string(Equation eq) {
  switch (eq) {
    case Equation::NLS: return "nls";
    case Equation::MKdVI: return "mkdvI";
    case Equation::MKdVII: return "mkdvII";
  }
  return "?";
}

std::string to_string(Sector s) {
  switch (s) {
    case Sector::D1: return "D1";
    case Sector::D2: return "D2";
    case Sector::D3: return "D3";
    case Sector::D4: return "D4";
    case Sector::D1p: return "D1'";
    case Sector::D1pp: return "D1''";
    case Sector::DPlus: return "D+";
  }
  return "?";
}

Equation equation_from_string(const std::string& s) {
  if (s == "nls") return Equation::NLS;
  if (s == "mkdvI" || s == "mkdv1") return Equation::MKdVI;
  if (s == "mkdvII" || s == "mkdv2") return Equation::MKdVII;
  throw domain_error("unknown equation id: " + s);
}

Sector sector_from_string(const std::string& s) {
  if (s == "D1") return Sector::D1;
  if (s == "D2") return Sector::D2;
  if (s == "D3") return Sector::D3;
  if (s == "D4") return Sector::D4;
  if (s == "D1'") return Sector::D1p;
  if (s == "D1''") return Sector::D1pp;
  if (s == "D+") return Sector::DPlus;
  throw domain_error("unknown sector id: " + s);
}

ContourPath reversed(const ContourPath& path) {
  ContourPath out;
  out.label = path.label + "~rev";
  out.flat_ref = path.flat_ref;
  for (auto it = path.rays.rbegin(); it != path.rays.rend(); ++it) {
    Ray r = *it;
    r.outbound = !r.outbound;
    out.rays.push_back(r);
  }
  return out;
}

QuadratureSpec quadrature_defaults(Equation eq) {
  QuadratureSpec spec;
  spec.decay_rotation = (eq == Equation::NLS) ? pi / 8.0 : pi / 12.0;
  return spec;
}

std::vector<std::pair<double, double>> sector_wedges(Equation eq, Sector s) {
  const double a = pi / 3.0;
  using W = std::vector<std::pair<double, double>>;
  switch (eq) {
    case Equation::NLS:
      switch (s) {
        case Sector::D1: return W{{0, pi / 2}};
        case Sector::D2: return W{{pi / 2, pi}};
        case Sector::D3: return W{{-pi, -pi / 2}};
        case Sector::D4: return W{{-pi / 2, 0}};
        case Sector::DPlus: return W{{0, pi / 2}};
        default: break;
      }
      break;
    case Equation::MKdVI:
      switch (s) {
        case Sector::D1: return W{{0, a}, {2 * a, pi}};
        case Sector::D2: return W{{a, 2 * a}};
        case Sector::D3: return W{{-2 * a, -a}};
        case Sector::D4: return W{{-pi, -2 * a}, {-a, 0}};
        case Sector::D1p: return W{{0, a}};
        case Sector::D1pp: return W{{2 * a, pi}};
        case Sector::DPlus: return W{{a, 2 * a}};
      }
      break;
    case Equation::MKdVII:
      switch (s) {
        case Sector::D1: return W{{-2 * a, -a}};
        case Sector::D2: return W{{-pi, -2 * a}, {-a, 0}};
        case Sector::D3: return W{{0, a}, {2 * a, pi}};
        case Sector::D4: return W{{a, 2 * a}};
        case Sector::DPlus: return W{{0, a}, {2 * a, pi}};
        default: break;
      }
      break;
  }
  throw domain_error("sector " + to_string(s) + " not defined for " + to_string(eq));
}

ContourPath boundary_contour(Equation eq, Sector s) {
  const auto wedges = sector_wedges(eq, s);
  ContourPath path;
  path.label = "d" + to_string(s) + "[" + to_string(eq) + "]";
  double mid0 = 0.0;
  for (std::size_t i = 0; i < wedges.size(); ++i) {
    const auto& [lo, hi] = wedges[i];
    if (i == 0) mid0 = 0.5 * (lo + hi);
    Ray in{0.0, normalize_angle(hi), false, +1};
    Ray out{0.0, normalize_angle(lo), true, -1};
    path.rays.push_back(in);
    path.rays.push_back(out);
  }
  path.flat_ref = std::polar(1.0, normalize_angle(mid0 + pi));
  return path;
}

namespace {

double dist_to_ray(cplx p, cplx vertex, double angle) {
  const cplx u = (p - vertex) * std::polar(1.0, -angle);
  if (std::real(u) <= 0.0) return std::abs(u);
  return std::abs(std::imag(u));
}

bool in_open_wedge(cplx p, cplx vertex, double lo, double hi) {
  if (p == vertex) return false;
  const double a = std::arg(p - vertex);
  return a > lo && a < hi;
}

}  // namespace

ContourPath deform_gamma(const ContourPath& base, const std::vector<cplx>& a_zeros,
                         double clearance) {
  if (base.label != "dD3[mkdvI]")
    throw domain_error("deform_gamma: base must be dD3 of mKdVI");
  if (a_zeros.empty()) return base;

  const double a = pi / 3.0;
  // Poles of the rotated integrands inside D3: z in D1' maps through the
  // alpha^2 rotation, z in D1'' through alpha.
  std::vector<cplx> poles;
  for (cplx z : a_zeros) {
    for (double edge : {0.0, a, 2 * a, pi})
      if (dist_to_ray(z, 0.0, edge) < clearance)
        throw domain_error("deform_gamma: zero of a(k) on a sector boundary");
    const double th = std::arg(z);
    if (th > 0 && th < a)
      poles.push_back(z * alpha_rot * alpha_rot);
    else if (th > 2 * a && th < pi)
      poles.push_back(z * alpha_rot);
    else
      throw domain_error("deform_gamma: zero outside D1' and D1''");
  }

  double d = clearance;
  for (int iter = 0; iter < 2000; ++iter) {
    const cplx v(0.0, -d);
    bool ok = true;
    for (cplx p : poles) {
      if (in_open_wedge(p, v, -2 * a, -a) || dist_to_ray(p, v, -a) < clearance ||
          dist_to_ray(p, v, -2 * a) < clearance) {
        ok = false;
        break;
      }
    }
    if (ok) {
      ContourPath gamma;
      gamma.label = "Gamma[mkdvI]";
      gamma.flat_ref = base.flat_ref;
      gamma.rays.push_back(Ray{v, -a, false, +1});
      gamma.rays.push_back(Ray{v, -2 * a, true, -1});
      return gamma;
    }
    d += 0.5 * clearance;
  }
  throw convergence_error("deform_gamma: could not clear zero images");
}

cplx flat_reference_integral(const ContourPath& path, cplx c) {
  double balance = 0.0;
  cplx acc = 0.0;
  for (const auto& r : path.rays) {
    balance += r.orientation();
    const double base = std::arg(r.vertex - c);
    double th = r.angle;
    while (th - base > pi) th -= 2.0 * pi;
    while (th - base < -pi) th += 2.0 * pi;
    acc += r.orientation() * (I * th - std::log(r.vertex - c));
  }
  if (std::abs(balance) > 1e-12)
    throw domain_error("flat_reference_integral: unbalanced ray orientations");
  return acc;
}

namespace {

struct RotRay {
  cplx vertex;
  double angle;
  double sign;
  cplx dir;
};

std::vector<RotRay> rotated_rays(const ContourPath& path, double delta) {
  std::vector<RotRay> out;
  out.reserve(path.rays.size());
  for (const auto& r : path.rays) {
    const int sign = r.rot_sign != 0 ? r.rot_sign : (r.outbound ? -1 : +1);
    const double th = normalize_angle(r.angle + sign * delta);
    out.push_back({r.vertex, th, r.orientation(), std::polar(1.0, th)});
  }
  return out;
}

}  // namespace

cplx integrate_contour(const ContourPath& path, const std::function<cplx(cplx)>& f,
                       const QuadratureSpec& spec) {
  if (path.rays.empty()) return 0.0;
  const auto rays = rotated_rays(path, spec.decay_rotation);
  double R = spec.truncation_radius;
  int panels = spec.panels;

  for (int attempt = 0;; ++attempt) {
    const bool with_tail = spec.tail_strategy != TailStrategy::truncate;
    const auto nodes = ray_nodes(R, panels, spec.nodes_per_ray, with_tail,
                                 spec.tail_order, spec.subpanels);

    cplx p1 = 0.0;
    if (spec.tail_strategy == TailStrategy::asymptotic_subtraction) {
      // fit k f(k) = P1 + P2/k + ... + P5/k^4 on a few radii of every ray
      const double radii[5] = {0.6 * R, 0.9 * R, 1.35 * R, 2.0 * R, 3.0 * R};
      std::vector<cplx> M, y;
      for (const auto& r : rays)
        for (double rho : radii) {
          const cplx k = r.vertex + rho * r.dir;
          cplx basis = 1.0;
          for (int j = 0; j < 5; ++j) {
            M.push_back(basis);
            basis /= k;
          }
          y.push_back(k * f(k));
        }
      p1 = lstsq(M, y, static_cast<int>(y.size()), 5)[0];
    }
    const cplx cref = path.flat_ref;

    std::vector<cplx> vals(nodes.size());
    for_each_index(spec.exec, static_cast<std::ptrdiff_t>(nodes.size()), [&](std::size_t i) {
      const double rho = nodes[i].rho;
      cplx v = 0.0;
      for (const auto& r : rays) {
        const cplx k = r.vertex + rho * r.dir;
        cplx fk = f(k);
        if (p1 != 0.0) fk -= p1 / (k - cref);
        v += r.sign * r.dir * fk;
      }
      vals[i] = nodes[i].w * v;
    });
    cplx total = 0.0;
    for (const auto& v : vals) total += v;
    if (p1 != 0.0) total += p1 * flat_reference_integral(path, cref);

    if (!std::isfinite(std::real(total)) || !std::isfinite(std::imag(total)))
      throw convergence_error("integrate_contour: non-finite result");

    if (spec.tail_strategy != TailStrategy::truncate) return total;

    // last-panel tail estimate for the truncated strategy
    cplx last = 0.0;
    const std::size_t begin =
        static_cast<std::size_t>((panels - 1) * spec.subpanels * spec.nodes_per_ray);
    for (std::size_t i = begin; i < nodes.size(); ++i) last += vals[i];
    if (std::abs(last) <= spec.tail_tol * std::max(1.0, std::abs(total))) return total;
    if (attempt >= 3)
      throw convergence_error("integrate_contour: non-convergent tail at R=" +
                              std::to_string(R));
    R *= 2.0;
    panels += 1;
  }
}

cplx filter_identity(const std::function<cplx(double)>& f, double tprime, double t) {
  if (!(tprime > 0.0) || tprime > t)
    throw domain_error("filter_identity: need 0 < t' <= t");
  return (tprime < t ? pi / 4.0 : pi / 8.0) * f(tprime);
}

cplx filter_identity_direct(const std::function<cplx(double)>& f, double tprime,
                            double t, const QuadratureSpec& spec) {
  if (!(tprime > 0.0) || tprime > t)
    throw domain_error("filter_identity_direct: need 0 < t' <= t");
  const ContourPath path = boundary_contour(Equation::NLS, Sector::D3);

  // inner windows by product integration: exact against the oscillatory kernel
  // on each step, uniformly in k
  auto inner = [&](cplx k, double L, double side) {
    if (L <= 0.0) return cplx(0.0);
    const int n = 1600;
    const double h = L / n;
    const cplx z = side * 4.0 * I * k * k * h;  // kernel increment per step
    if (std::real(z) > 1e-9 * std::abs(z))
      throw domain_error("filter_identity_direct: kernel grows on this ray");
    const cplx w0 = h * phi2(z), w1 = h * (phi1(z) - phi2(z));
    cplx acc = 0.0, E = 1.0;
    for (int j = 0; j < n; ++j) {
      acc += E * (w0 * f(tprime + side * j * h) + w1 * f(tprime + side * (j + 1) * h));
      E *= std::exp(z);
    }
    return acc;
  };

  QuadratureSpec sa = spec;
  sa.tail_strategy = TailStrategy::asymptotic_subtraction;
  cplx total = integrate_contour(
      path, [&](cplx k) { return k * inner(k, tprime, -1.0); }, sa);
  if (t > tprime) {
    QuadratureSpec sb = sa;
    sb.decay_rotation = -sa.decay_rotation;  // rotate into the sector instead
    total += integrate_contour(
        path, [&](cplx k) { return k * inner(k, t - tprime, +1.0); }, sb);
  }
  return total;
}

std::string serialize(const ContourPath& path) {
  std::ostringstream os;
  os.precision(17);
  os << "# contour " << path.label << "\n";
  for (const auto& r : path.rays)
    os << std::real(r.vertex) << " " << std::imag(r.vertex) << " " << r.angle << " "
       << (r.outbound ? "out" : "in") << "\n";
  return os.str();
}

ContourPath parse_contour(const std::string& text) {
  ContourPath path;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream ls(line.substr(1));
      std::string word;
      ls >> word >> word;
      path.label = word;
      continue;
    }
    std::istringstream ls(line);
    double re, im, ang;
    std::string dir;
    if (!(ls >> re >> im >> ang >> dir)) throw domain_error("parse_contour: bad line: " + line);
    path.rays.push_back(Ray{cplx(re, im), ang, dir == "out", dir == "out" ? -1 : +1});
  }
  return path;
}

}  // namespace uthl
