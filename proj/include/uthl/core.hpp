#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#ifdef UTHL_HAVE_OPENMP
#include <omp.h>
#endif

namespace uthl {

using cplx = std::complex<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline const cplx I{0.0, 1.0};

// Root of unity used by the cubic-dispersion symmetrizations.
inline const cplx alpha_rot = std::polar(1.0, 2.0 * pi / 3.0);

struct domain_error : std::runtime_error {
  explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

struct convergence_error : std::runtime_error {
  explicit convergence_error(const std::string& what) : std::runtime_error(what) {}
};

// Execution policy for the data-parallel kernels. Every parallel kernel has a
// serial twin with the identical reduction order, so results are bit-identical
// across policies and thread counts.
enum class Exec { serial, parallel };

inline Exec default_exec = Exec::parallel;

// Elementwise map over [0, n). Bodies must be independent per index.
template <typename F>
void for_each_index(Exec policy, std::ptrdiff_t n, F&& body) {
#ifdef UTHL_HAVE_OPENMP
  if (policy == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) body(static_cast<std::size_t>(i));
    return;
  }
#else
  (void)policy;
#endif
  for (std::ptrdiff_t i = 0; i < n; ++i) body(static_cast<std::size_t>(i));
}

// Deterministic map-then-sum: values are produced in parallel, accumulated in
// index order. Shared by both policies so sums match bitwise.
template <typename F>
cplx sum_indexed(Exec policy, std::size_t n, F&& value_at) {
  std::vector<cplx> vals(n);
  for_each_index(policy, static_cast<std::ptrdiff_t>(n),
                 [&](std::size_t i) { vals[i] = value_at(i); });
  cplx acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += vals[i];
  return acc;
}

inline double sqr(double x) { return x * x; }

}  // namespace uthl
