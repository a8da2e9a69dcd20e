#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "secant/scheme.hpp"

namespace secant {

// Arithmetic mod a prime below 2^31, so every product of two reduced
// values fits a 64-bit accumulator.
struct PrimeField {
  uint32_t p;

  explicit PrimeField(uint32_t prime);

  uint32_t add(uint32_t a, uint32_t b) const {
    uint32_t s = a + b;
    return s >= p ? s - p : s;
  }
  uint32_t sub(uint32_t a, uint32_t b) const { return a >= b ? a - b : a + p - b; }
  uint32_t mul(uint32_t a, uint32_t b) const { return (uint32_t)((uint64_t)a * b % p); }
  uint32_t pow(uint32_t a, uint64_t e) const;
  uint32_t inv(uint32_t a) const;  // a != 0
  uint32_t reduce(long long v) const {
    long long r = v % (long long)p;
    return (uint32_t)(r < 0 ? r + p : r);
  }
};

// Largest primes below 2^31; products of two reduced values stay < 2^62.
inline constexpr uint32_t kDefaultPrime = 2147483647u;
inline constexpr uint32_t kSecondPrime = 2147483629u;
inline constexpr uint64_t kDefaultSeed = 0x9e3779b97f4a7c15ull;

struct DenseMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<uint32_t> a;  // row major

  DenseMatrix() = default;
  DenseMatrix(int r, int c) : rows(r), cols(c), a((size_t)r * c, 0) {}
  uint32_t& at(int r, int c) { return a[(size_t)r * cols + c]; }
  uint32_t at(int r, int c) const { return a[(size_t)r * cols + c]; }
  uint32_t* row(int r) { return a.data() + (size_t)r * cols; }
  const uint32_t* row(int r) const { return a.data() + (size_t)r * cols; }
};

// Deterministic stream of field elements; identical across platforms and
// independent of thread count (rejection sampling on a mt19937_64 stream).
class FieldRng {
 public:
  FieldRng(uint64_t seed, PrimeField f) : gen_(seed), p_(f.p) {}
  uint32_t next();     // uniform in [0, p)
  uint32_t nonzero();  // uniform in [1, p)

 private:
  std::mt19937_64 gen_;
  uint32_t p_;
};

// Row echelon rank by fraction-free elimination with partial pivoting on
// the first nonzero entry. The matrix argument is consumed.
// rank() runs the row-update loop in OpenMP threads; rank_serial() is the
// reference implementation used to cross-check it.
int rank(DenseMatrix m, PrimeField f);
int rank_serial(DenseMatrix m, PrimeField f);

// Coordinates for every component of a scheme: one tuple of homogeneous
// coordinates per factor, first coordinate always 1, constrained
// coordinates zero, the rest uniform. Distinct components never share all
// their coordinates (resampled on collision; throws after too many).
struct SampledPoints {
  uint64_t seed = 0;
  uint32_t prime = 0;
  // coords[component][factor][j], j = 0..n_i
  std::vector<std::vector<std::vector<uint32_t>>> coords;
};
SampledPoints sample_points(const SchemeSpec& scheme, uint64_t seed, PrimeField f);

}  // namespace secant
