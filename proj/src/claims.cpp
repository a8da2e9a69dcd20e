#include "secant/claims.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace secant {

long long a4_threshold(long long r) {
  switch (r) {
    case 2:
    case 3:
      return 60;
    case 4:
      return 98;
    case 5:
      return 133;
    case 6:
      return 176;
    case 7:
      return 231;
    default:
      if (r < 2) throw std::invalid_argument("threshold needs r >= 2");
      long long num = ((27 * r + 144) * r + 210) * r + 79;
      return (num + 80) / 81;
  }
}

long long a4old_threshold(long long r) {
  switch (r) {
    case 2:
      return 71;
    case 3:
      return 75;
    case 4:
      return 99;
    case 5:
      return 138;
    case 6:
      return 183;
    case 7:
      return 234;
    default:
      return a4_threshold(r);
  }
}

ClaimResult check_claim1(long long r, long long alpha, long long z) {
  if (r < 1 || alpha < 1 || z < 0) throw std::invalid_argument("claim 1 needs r, alpha >= 1");
  ClaimResult res;
  const long long ymax = alpha / (r + 1);
  long long y = (3 * alpha) % (r + 2);
  while (y < 2 * r + 2) y += r + 2;
  for (; y <= ymax; y += r + 2) {
    const long long x = (3 * alpha - y) / (r + 2);
    if (x < 0) break;
    const long long rest = z - x - y;
    if (x + y <= z && (r + 2) * rest + y <= 2 * alpha && rest <= alpha - (r + 1) * y) {
      res.holds = true;
      res.witness["x1"] = x;
      res.witness["y1"] = y;
      res.witness["rest"] = rest;
      break;
    }
  }
  return res;
}

ClaimResult check_claim2(long long r, long long alpha, long long z) {
  ClaimResult res = check_claim1(r, alpha, z);
  if (!res.holds) return res;
  const long long need = (alpha + r) / (r + 1);
  res.witness["needed"] = need;
  res.holds = res.witness["rest"] >= need;
  return res;
}

ClaimResult check_claim3(long long r, long long alpha) {
  ClaimResult res;
  const long long a = 4 * alpha / (r + 2);
  const long long b = 4 * alpha - (r + 2) * a;
  const long long z = (10 * alpha + r + 2) / (r + 3);
  const long long z1 = 6 * alpha / (r + 3);
  res.witness["a"] = a;
  res.witness["b"] = b;
  res.witness["z"] = z;
  res.witness["z1"] = z1;
  ClaimResult c1 = check_claim1(r, alpha, z1);
  if (!c1.holds) return res;
  const long long zbar = (z - a - b) - z1 + c1.witness["x1"];
  res.witness["x1"] = c1.witness["x1"];
  res.witness["y1"] = c1.witness["y1"];
  res.witness["z_bar"] = zbar;
  res.holds = zbar >= 0;
  return res;
}

ClaimResult check_claim7(long long a) {
  ClaimResult res;
  const long long n = 2 * a + 1;
  const long long zbar = 9 * n / 4;
  const long long zt = 9 * n - 4 * zbar;
  res.witness["z_bar"] = zbar;
  res.witness["z_tilde"] = zt;
  bool ok = a >= 6;
  for (long long z : {18 * n / 5, (18 * n + 4) / 5}) {
    const long long zp = z - zbar - zt;
    ok = ok && zp >= 2 * a + 2 && 4 * zp <= 6 * n - 6 && 4 * zp + zt <= 6 * n && zt <= n &&
         zp <= 3 * n - 3 * zt;
  }
  res.witness["z_lo"] = 18 * n / 5;
  res.witness["z_hi"] = (18 * n + 4) / 5;
  res.holds = ok;
  return res;
}

ClaimResult check_claim11(long long r, long long alpha, long long t) {
  ClaimResult res;
  const long long a = (t + 1) * alpha / (r + 2);
  const long long b = (t + 1) * alpha - (r + 2) * a;
  const long long m = (t + 2) * (t + 1) / 2 * alpha;
  res.witness["a"] = a;
  res.witness["b"] = b;
  res.witness["z_lo"] = m / (r + 3);
  res.witness["z_hi"] = (m + r + 2) / (r + 3);
  res.holds = res.witness["z_lo"] >= a + b;
  return res;
}

bool verify_threshold_gap(long long r) {
  for (long long alpha = a4_threshold(r); alpha < a4old_threshold(r); ++alpha) {
    for (long long z : {6 * alpha / (r + 3), (6 * alpha + r + 2) / (r + 3)}) {
      if (!check_claim1(r, alpha, z).holds) return false;
      if (!check_claim2(r, alpha, z).holds) return false;
    }
    if (!check_claim3(r, alpha).holds) return false;
  }
  return true;
}

static long long checked_mul(long long a, long long b) {
  long long out;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("polynomial overflow");
  return out;
}

static long long checked_add(long long a, long long b) {
  long long out;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("polynomial overflow");
  return out;
}

long long Polynomial::eval(long long x) const {
  long long acc = 0;
  for (size_t i = c.size(); i-- > 0;) acc = checked_add(checked_mul(acc, x), c[i]);
  return acc;
}

int Polynomial::degree() const {
  for (size_t i = c.size(); i-- > 0;)
    if (c[i] != 0) return (int)i;
  return -1;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.c.empty() || b.c.empty()) return {};
  Polynomial out;
  out.c.assign(a.c.size() + b.c.size() - 1, 0);
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j)
      out.c[i + j] = checked_add(out.c[i + j], checked_mul(a.c[i], b.c[j]));
  return out;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  Polynomial out = a;
  out.c.resize(std::max(a.c.size(), b.c.size()), 0);
  for (size_t i = 0; i < b.c.size(); ++i) out.c[i] = checked_add(out.c[i], -b.c[i]);
  return out;
}

Polynomial operator*(long long s, const Polynomial& a) {
  Polynomial out = a;
  for (long long& v : out.c) v = checked_mul(s, v);
  return out;
}

bool poly_nonneg_over_integer_tail(const Polynomial& p, long long from) {
  const int deg = p.degree();
  if (deg < 0) return true;
  if (deg == 0) return p.c[0] >= 0;
  const long long lead = p.c[deg];
  if (lead < 0) return false;
  long long maxabs = 0;
  for (int i = 0; i < deg; ++i) maxabs = std::max(maxabs, std::abs(p.c[i]));
  const long long cauchy = 2 + maxabs / lead;  // no root beyond this
  for (long long x = from; x <= cauchy; ++x)
    if (p.eval(x) < 0) return false;
  return true;
}

const std::vector<TailInequality>& tail_inequalities() {
  static const std::vector<TailInequality> table = {
      {"eqcon1", {{3, 5}}, {{4, 11, 15, 7, 1}}},
      {"eqcon2", {{3, 2, 1}}, {{13, 34, 37, 18, 3}}},
      {"eqcon3", {{3, 8, 3}}, {{1, 15, 29, 23, 8, 1}}},
      {"eqcon4", {{0, 2}}, {{4, 4, 1}}},
      {"eq7", {{4}}, {{11, 12, 3}}},
      {"eq8", {{0, -3, 1, 2}}, {{0, 13, 44, 46, 20, 3}}},
      {"claim2_case2", {{3, 2, 2, 1}}, {{1, 15, 39, 32, 10, 1}}},
      {"claim3_tail", {{2, 7, 3}}, {{3, 10, 12, 6, 1}}},
      {"claim11_t3", {{16, 12}}, {{14, 22, 12, 2}}},
      {"a5_t3", {{-1, 3}}, {{5, 8, 5, 1}}},
  };
  return table;
}

std::vector<TailCertification> certify_tail_inequalities() {
  // 81 * a4_threshold(r) >= threshold_num(r) exactly, for every r >= 8.
  const Polynomial threshold_num{{79, 210, 144, 27}};
  std::vector<TailCertification> out;
  for (const TailInequality& t : tail_inequalities()) {
    TailCertification cert;
    cert.name = t.name;
    cert.holds_tail = poly_nonneg_over_integer_tail(t.alpha_coeff, 8) &&
                      poly_nonneg_over_integer_tail(threshold_num * t.alpha_coeff - 81 * t.rhs, 8);
    cert.holds_small = true;
    for (long long r = 2; r <= 7; ++r) {
      const long long alpha = a4old_threshold(r);
      const long long lhs = checked_mul(alpha, t.alpha_coeff.eval(r));
      if (t.alpha_coeff.eval(r) <= 0 || lhs < t.rhs.eval(r)) {
        cert.holds_small = false;
        cert.failed_r.push_back(r);
      }
    }
    out.push_back(std::move(cert));
  }
  return out;
}

}  // namespace secant
