#pragma once

#include <map>
#include <string>
#include <vector>

namespace secant {

// Smallest alpha (= section count of the base) for which the double-point
// induction over base x P^2 is known to close, as a function of the base
// dimension r >= 2. a4old_threshold is the earlier, slightly weaker table;
// the two agree from r = 8 on.
long long a4_threshold(long long r);
long long a4old_threshold(long long r);

struct ClaimResult {
  bool holds = false;
  std::map<std::string, long long> witness;
};

// Existence of x1, y1 >= 0 with (r+2)x1 + y1 = 3 alpha, x1 + y1 <= z,
// 2r+2 <= y1 <= floor(alpha/(r+1)), (r+2)(z-x1-y1) + y1 <= 2 alpha and
// z - x1 - y1 <= alpha - (r+1)y1. Picks the smallest admissible y1.
ClaimResult check_claim1(long long r, long long alpha, long long z);

// z - x1 - y1 >= ceil(alpha/(r+1)) for the witness of claim 1.
ClaimResult check_claim2(long long r, long long alpha, long long z);

// z' - z1 + x1 >= 0 for a = floor(4 alpha/(r+2)), b = 4 alpha - (r+2)a,
// z = ceil(10 alpha/(r+3)), z' = z - a - b, z1 = floor(6 alpha/(r+3)) and
// (x1, y1) the claim-1 witness at z1.
ClaimResult check_claim3(long long r, long long alpha);

// The degree-(2a,2,1) bookkeeping on P1 x P1 x P2 for a >= 6:
// zbar = floor(9(2a+1)/4), zt = 9(2a+1) - 4 zbar, and for both critical
// z = floor/ceil(18(2a+1)/5), z' = z - zbar - zt satisfies
// z' >= 2a+2, 4z' <= 6(2a+1)-6, 4z'+zt <= 6(2a+1), zt <= 2a+1,
// z' <= 3(2a+1) - 3 zt.
ClaimResult check_claim7(long long a);

// z >= a + b for a = floor((t+1) alpha/(r+2)), b = (t+1) alpha - (r+2)a
// and both critical z = floor/ceil(C(t+2,2) alpha/(r+3)).
ClaimResult check_claim11(long long r, long long alpha, long long t);

// Claims 1-3 hold at both critical z = floor/ceil(6 alpha/(r+3)) for every
// alpha from a4_threshold(r) to a4old_threshold(r) - 1.
bool verify_threshold_gap(long long r);

// Integer polynomial with overflow-checked evaluation.
struct Polynomial {
  std::vector<long long> c;  // c[i] multiplies x^i
  long long eval(long long x) const;
  int degree() const;
};

Polynomial operator*(const Polynomial& a, const Polynomial& b);
Polynomial operator-(const Polynomial& a, const Polynomial& b);
Polynomial operator*(long long s, const Polynomial& a);

// True iff p(x) >= 0 for every integer x >= from. Decidable exactly: the
// sign is fixed past the Cauchy root bound, the finitely many integers
// before it are evaluated one by one.
bool poly_nonneg_over_integer_tail(const Polynomial& p, long long from);

// One bookkeeping inequality alpha * alpha_coeff(r) >= rhs(r).
struct TailInequality {
  std::string name;
  Polynomial alpha_coeff;
  Polynomial rhs;
};

// The inequalities the induction for base x P^2 rests on: eqcon1..eqcon4,
// eq7, eq8 gate the threshold tables, the remaining entries close the
// t = 3 cases of the degree-(2,...,2,t) product families.
const std::vector<TailInequality>& tail_inequalities();

struct TailCertification {
  std::string name;
  bool holds_tail = false;   // all r >= 8 with alpha = a4_threshold(r)
  bool holds_small = false;  // r = 2..7 with alpha = a4old_threshold(r)
  std::vector<long long> failed_r;
};

// Certifies every tail inequality for all alpha >= threshold: exactly at
// the stated thresholds and, because alpha_coeff > 0 there, for every
// larger alpha as well.
std::vector<TailCertification> certify_tail_inequalities();

}  // namespace secant
