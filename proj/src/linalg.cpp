#include "secant/linalg.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace secant {

PrimeField::PrimeField(uint32_t prime) : p(prime) {
  if (prime < 2 || prime >= (1u << 31)) throw std::invalid_argument("prime out of range");
}

uint32_t PrimeField::pow(uint32_t a, uint64_t e) const {
  uint64_t base = a % p, acc = 1;
  while (e) {
    if (e & 1) acc = acc * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return (uint32_t)acc;
}

uint32_t PrimeField::inv(uint32_t a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  return pow(a, p - 2);
}

uint32_t FieldRng::next() {
  // rejection below the largest multiple of p, so the draw is uniform
  const uint64_t limit = UINT64_MAX - UINT64_MAX % p_;
  uint64_t v;
  do {
    v = gen_();
  } while (v >= limit);
  return (uint32_t)(v % p_);
}

uint32_t FieldRng::nonzero() {
  uint32_t v;
  do {
    v = next();
  } while (v == 0);
  return v;
}

int rank(DenseMatrix m, PrimeField f) {
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int pivot = -1;
    for (int i = r; i < m.rows; ++i)
      if (m.at(i, c) != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != r)
      std::swap_ranges(m.row(r), m.row(r) + m.cols, m.row(pivot));
    const uint64_t p = f.p;
    const uint32_t pinv = f.inv(m.at(r, c));
    const uint32_t* pr = m.row(r);
#pragma omp parallel for schedule(static)
    for (int i = r + 1; i < m.rows; ++i) {
      uint32_t* ri = m.row(i);
      if (ri[c] == 0) continue;
      // ri -= (ri[c]/pr[c]) * pr, from column c on
      const uint64_t mult = p - (uint64_t)ri[c] * pinv % p;
      ri[c] = 0;
      for (int j = c + 1; j < m.cols; ++j)
        ri[j] = (uint32_t)((ri[j] + mult * pr[j]) % p);
    }
    ++r;
  }
  return r;
}

// Textbook row reduction, no shared-memory tricks; the cross-check target
// for the threaded kernel.
int rank_serial(DenseMatrix m, PrimeField f) {
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int pivot = -1;
    for (int i = r; i < m.rows; ++i)
      if (m.at(i, c) != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    for (int j = c; j < m.cols; ++j) std::swap(m.at(r, j), m.at(pivot, j));
    uint32_t inv = f.inv(m.at(r, c));
    for (int j = c; j < m.cols; ++j) m.at(r, j) = f.mul(m.at(r, j), inv);
    for (int i = r + 1; i < m.rows; ++i) {
      uint32_t lead = m.at(i, c);
      if (lead == 0) continue;
      for (int j = c; j < m.cols; ++j)
        m.at(i, j) = f.sub(m.at(i, j), f.mul(lead, m.at(r, j)));
    }
    ++r;
  }
  return r;
}

SampledPoints sample_points(const SchemeSpec& scheme, uint64_t seed, PrimeField f) {
  const auto& pair = scheme.pair;
  SampledPoints out;
  out.seed = seed;
  out.prime = f.p;
  FieldRng rng(seed, f);
  std::set<std::vector<std::vector<uint32_t>>> seen;
  for (auto& comp : scheme.components) {
    std::vector<std::vector<uint32_t>> pt;
    for (int attempt = 0;; ++attempt) {
      if (attempt > 64)
        throw std::runtime_error("cannot sample distinct points for scheme " +
                                 scheme.descriptor());
      pt.clear();
      for (int i = 0; i < pair.factor_count(); ++i) {
        int n = pair.factor_dims[i];
        std::vector<uint32_t> x(n + 1, 0);
        x[0] = 1;
        switch (comp.constraints[i]) {
          case Constraint::Full:
            for (int j = 1; j <= n; ++j) x[j] = rng.next();
            break;
          case Constraint::OnHyperplane:
          case Constraint::Hyperplane:
            for (int j = 1; j < n; ++j) x[j] = rng.next();
            break;
          case Constraint::FixedPoint:
            break;
        }
        pt.push_back(std::move(x));
      }
      if (seen.insert(pt).second) break;
    }
    out.coords.push_back(std::move(pt));
  }
  return out;
}

}  // namespace secant
