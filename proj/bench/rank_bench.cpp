#include <chrono>
#include <cstdio>
#include <functional>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "secant/cohomology.hpp"
#include "secant/linalg.hpp"

using namespace secant;

static double time_ms(const std::function<void()>& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

static DenseMatrix random_matrix(int rows, int cols, uint64_t seed, PrimeField f) {
  DenseMatrix m(rows, cols);
  FieldRng rng(seed, f);
  for (uint32_t& v : m.a) v = rng.next();
  return m;
}

static void run_case(const char* name, const DenseMatrix& m, PrimeField f) {
  int r_par = 0, r_ser = 0;
  const double par = time_ms([&] { r_par = rank(m, f); });
  const double ser = time_ms([&] { r_ser = rank_serial(m, f); });
  std::printf("%-28s %5d x %-5d rank %-5d parallel %8.2f ms   serial %8.2f ms   x%.2f%s\n", name,
              m.rows, m.cols, r_par, par, ser, ser / par, r_par == r_ser ? "" : "  MISMATCH");
}

int main() {
#ifdef _OPENMP
  std::printf("OpenMP threads: %d\n\n", omp_get_max_threads());
#else
  std::printf("OpenMP not enabled\n\n");
#endif
  PrimeField f(kDefaultPrime);
  for (int n : {200, 400, 600})
    run_case("random", random_matrix(n, n, 7 + n, f), f);

  struct {
    const char* name;
    std::vector<int> dims, degs;
    long long z;
  } cases[] = {
      {"P2xP2 deg (3,3)", {2, 2}, {3, 3}, 20},
      {"P2xP2xP2 deg (2,2,3)", {2, 2, 2}, {2, 2, 3}, 51},
      {"P1xP1xP2 deg (12,2,2)", {1, 1, 2}, {12, 2, 2}, 46},
  };
  for (const auto& c : cases) {
    const SchemeSpec scheme = double_points(SegreVeronesePair(c.dims, c.degs), c.z);
    const SampledPoints pts = sample_points(scheme, kDefaultSeed, f);
    run_case(c.name, build_matrix(scheme, pts, f), f);
  }
  return 0;
}
