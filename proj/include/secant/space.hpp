#pragma once

#include <string>
#include <vector>

namespace secant {

// Exact binomial coefficient; throws std::overflow_error if the value
// (or an intermediate) does not fit in a signed 64-bit integer.
long long binomial(long long n, long long k);

/// A product of projective spaces P^{n_1} x ... x P^{n_k} together with
/// a multidegree (d_1,...,d_k), i.e. the line bundle O(d_1,...,d_k).
struct SegreVeronesePair {
  std::vector<int> factor_dims;  // n_i >= 1, factors kept in user order
  std::vector<int> multidegree;  // d_i >= 0

  SegreVeronesePair(std::vector<int> dims, std::vector<int> degs);

  int factor_count() const { return (int)factor_dims.size(); }
  int dim() const;  // sum of the n_i

  // Number of global sections: product of C(n_i + d_i, n_i).
  long long sections() const;

  // "P2xP1 deg (3,2)", factors in user order.
  std::string to_string() const;

  // Same format with factors sorted by (n_i, d_i) descending; two pairs
  // that differ only by a permutation of factors get the same key.
  std::string canonical_key() const;

  bool operator==(const SegreVeronesePair&) const = default;
};

// Inverse of to_string; throws std::invalid_argument on malformed input.
SegreVeronesePair parse_pair(const std::string& text);

long long h0(const SegreVeronesePair& pair);

// dim of the z-th secant variety if no defect occurs: min(z*(dim+1), N) - 1.
long long expected_secant_dim(const SegreVeronesePair& pair, long long z);

// The two ranks whose verification certifies non-defectivity for every z:
// z_lo = floor(N/(dim+1)), z_hi = ceil(N/(dim+1)).
struct CriticalRanks {
  long long z_lo;
  long long z_hi;
};
CriticalRanks critical_z(const SegreVeronesePair& pair);

}  // namespace secant
