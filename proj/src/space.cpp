#include "secant/space.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace secant {

long long binomial(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  __int128 acc = 1;
  for (long long i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;  // exact: C(n-k+i, i) is integral
    if (acc > (__int128)0x7fffffffffffffffLL)
      throw std::overflow_error("binomial overflows 64 bits");
  }
  return (long long)acc;
}

SegreVeronesePair::SegreVeronesePair(std::vector<int> dims, std::vector<int> degs)
    : factor_dims(std::move(dims)), multidegree(std::move(degs)) {
  if (factor_dims.empty() || factor_dims.size() != multidegree.size())
    throw std::invalid_argument("factor dims and multidegree must have equal nonzero length");
  for (int n : factor_dims)
    if (n < 1) throw std::invalid_argument("factor dimension must be positive");
  for (int d : multidegree)
    if (d < 0) throw std::invalid_argument("multidegree entries must be nonnegative");
}

int SegreVeronesePair::dim() const {
  return std::accumulate(factor_dims.begin(), factor_dims.end(), 0);
}

long long SegreVeronesePair::sections() const {
  __int128 acc = 1;
  for (int i = 0; i < factor_count(); ++i) {
    acc *= binomial(factor_dims[i] + multidegree[i], factor_dims[i]);
    if (acc > (__int128)0x7fffffffffffffffLL)
      throw std::overflow_error("section count overflows 64 bits");
  }
  return (long long)acc;
}

static std::string format_pair(const std::vector<int>& dims, const std::vector<int>& degs) {
  std::ostringstream os;
  for (size_t i = 0; i < dims.size(); ++i) {
    if (i) os << 'x';
    os << 'P' << dims[i];
  }
  os << " deg (";
  for (size_t i = 0; i < degs.size(); ++i) {
    if (i) os << ',';
    os << degs[i];
  }
  os << ')';
  return os.str();
}

std::string SegreVeronesePair::to_string() const {
  return format_pair(factor_dims, multidegree);
}

std::string SegreVeronesePair::canonical_key() const {
  std::vector<std::pair<int, int>> f;
  for (int i = 0; i < factor_count(); ++i) f.emplace_back(factor_dims[i], multidegree[i]);
  std::sort(f.begin(), f.end(), std::greater<>());
  std::vector<int> dims, degs;
  for (auto& [n, d] : f) {
    dims.push_back(n);
    degs.push_back(d);
  }
  return format_pair(dims, degs);
}

SegreVeronesePair parse_pair(const std::string& text) {
  // "P2xP2xP1 deg (2,2,3)"
  auto fail = [&]() -> SegreVeronesePair {
    throw std::invalid_argument("cannot parse pair: " + text);
  };
  size_t sp = text.find(" deg (");
  if (sp == std::string::npos || text.back() != ')') return fail();
  std::vector<int> dims, degs;
  {
    std::istringstream is(text.substr(0, sp));
    std::string tok;
    while (std::getline(is, tok, 'x')) {
      if (tok.size() < 2 || tok[0] != 'P') return fail();
      dims.push_back(std::stoi(tok.substr(1)));
    }
  }
  {
    std::istringstream is(text.substr(sp + 6, text.size() - sp - 7));
    std::string tok;
    while (std::getline(is, tok, ',')) degs.push_back(std::stoi(tok));
  }
  if (dims.empty() || dims.size() != degs.size()) return fail();
  return SegreVeronesePair(dims, degs);
}

long long h0(const SegreVeronesePair& pair) { return pair.sections(); }

long long expected_secant_dim(const SegreVeronesePair& pair, long long z) {
  if (z < 1) throw std::invalid_argument("z must be positive");
  long long n = pair.sections();
  return std::min(z * (pair.dim() + 1), n) - 1;
}

CriticalRanks critical_z(const SegreVeronesePair& pair) {
  long long n = pair.sections();
  long long m = pair.dim() + 1;
  return {n / m, (n + m - 1) / m};
}

}  // namespace secant
