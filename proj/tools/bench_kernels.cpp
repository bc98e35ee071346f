#include <chrono>
#include <cstdio>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "weiltrace/curve.hpp"
#include "weiltrace/heisenberg.hpp"
#include "weiltrace/symplectic.hpp"
#include "weiltrace/trace_formulas.hpp"
#include "weiltrace/verify.hpp"

using namespace weiltrace;

namespace {

template <typename F>
double best_ms(F&& f, int reps) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
    if (ms < best) best = ms;
  }
  return best;
}

void row(const char* kernel, const char* config, double serial_ms,
         double parallel_ms, bool equal) {
  std::printf("%-16s %-24s %10.2f %10.2f %8.2fx  %s\n", kernel, config,
              serial_ms, parallel_ms, serial_ms / parallel_ms,
              equal ? "values equal" : "VALUES DIFFER");
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
  std::printf("built without OpenMP; parallel kernels fall back to serial\n");
#endif
  std::printf("%-16s %-24s %10s %10s %9s\n", "kernel", "config", "serial/ms",
              "openmp/ms", "speedup");

  {
    struct {
      std::int64_t ell;
      int n;
      const char* label;
    } cases[] = {{3, 2, "ell=3 n=2 (dim 9)"},
                 {5, 2, "ell=5 n=2 (dim 25)"},
                 {3, 3, "ell=3 n=3 (dim 27)"}};
    for (const auto& c : cases) {
      const SymplecticSpace V = SymplecticSpace::standard(c.ell, c.n);
      const FlMat g =
          random_semisimple_symplectic(V, random_profile(c.ell, c.n, 7), 7);
      const RepSpace rep = RepSpace::standard(V);
      CycScalar a, b;
      const double s = best_ms([&] { a = brute_trace_serial(rep, g); }, 3);
      const double p = best_ms([&] { b = brute_trace(rep, g); }, 3);
      row("brute_trace", c.label, s, p, a == b);
    }
  }

  {
    struct {
      std::int64_t ell;
      int size;
      const char* label;
    } cases[] = {{3, 8, "ell=3 m=8 (6561 pts)"},
                 {5, 6, "ell=5 m=6 (15625 pts)"},
                 {3, 10, "ell=3 m=10 (59049 pts)"}};
    std::mt19937_64 rng(11);
    for (const auto& c : cases) {
      const QuadraticForm Q(random_pairing(c.ell, c.size, rng));
      CycScalar a, b;
      const double s = best_ms([&] { a = quad_gauss_brute_serial(Q); }, 3);
      const double p = best_ms([&] { b = quad_gauss_brute(Q); }, 3);
      row("quad_gauss", c.label, s, p, a == b);
    }
  }

  {
    struct {
      CurveSpec spec;
      const char* label;
    } cases[] = {{{127, 2, 1, 1, 3, 1}, "q=127^2"},
                 {{449, 2, 1, 1, 7, 1}, "q=449^2"}};
    for (const auto& c : cases) {
      PointCount a{}, b{};
      const double s = best_ms([&] { a = count_points_serial(c.spec); }, 3);
      const double p = best_ms([&] { b = count_points(c.spec); }, 3);
      row("count_points", c.label, s, p,
          a.n_points == b.n_points && a.trace_a == b.trace_a);
    }
  }

  return 0;
}
