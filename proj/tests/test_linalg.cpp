#include <doctest.h>

#include <algorithm>
#include <random>
#include <stdexcept>
#include <vector>

#include "secant/linalg.hpp"

using namespace secant;

TEST_CASE("prime field arithmetic mod 7") {
  PrimeField f(7);
  CHECK(f.add(3, 5) == 1);
  CHECK(f.add(3, 3) == 6);
  CHECK(f.sub(2, 5) == 4);
  CHECK(f.mul(3, 5) == 1);
  CHECK(f.pow(3, 0) == 1);
  CHECK(f.pow(3, 6) == 1);
  CHECK(f.pow(2, 5) == 4);
  CHECK(f.inv(3) == 5);
  CHECK(f.mul(6, f.inv(6)) == 1);
  CHECK(f.reduce(-3) == 4);
  CHECK(f.reduce(16) == 2);
  CHECK(f.reduce(-14) == 0);
  CHECK_THROWS_AS(f.inv(0), std::domain_error);
  CHECK_THROWS_AS(PrimeField(0), std::invalid_argument);
  CHECK_THROWS_AS(PrimeField(1), std::invalid_argument);
  CHECK_THROWS_AS(PrimeField(1u << 31), std::invalid_argument);
}

TEST_CASE("prime field arithmetic at the working primes") {
  for (uint32_t p : {kDefaultPrime, kSecondPrime}) {
    PrimeField f(p);
    uint32_t a = p - 1, b = p - 2;
    CHECK(f.add(a, b) == p - 3);
    CHECK(f.mul(a, a) == 1);  // (-1)^2
    CHECK(f.mul(b, f.inv(b)) == 1);
  }
}

TEST_CASE("field rng is deterministic, uniform range, nonzero variant") {
  PrimeField f(11);
  FieldRng r1(42, f), r2(42, f), r3(43, f);
  std::vector<uint32_t> s1, s2, s3;
  for (int i = 0; i < 200; ++i) {
    s1.push_back(r1.next());
    s2.push_back(r2.next());
    s3.push_back(r3.next());
  }
  CHECK(s1 == s2);
  CHECK(s1 != s3);
  CHECK(std::all_of(s1.begin(), s1.end(), [&](uint32_t v) { return v < 11; }));
  // every residue shows up in 200 draws from an 11-element field
  for (uint32_t v = 0; v < 11; ++v)
    CHECK(std::count(s1.begin(), s1.end(), v) > 0);

  FieldRng rn(7, f);
  for (int i = 0; i < 200; ++i) {
    uint32_t v = rn.nonzero();
    CHECK(v >= 1);
    CHECK(v < 11);
  }
}

namespace {

DenseMatrix random_matrix(int rows, int cols, uint64_t seed, PrimeField f) {
  DenseMatrix m(rows, cols);
  FieldRng rng(seed, f);
  for (auto& v : m.a) v = rng.next();
  return m;
}

}  // namespace

TEST_CASE("rank on handmade matrices") {
  PrimeField f(kDefaultPrime);

  DenseMatrix id(5, 5);
  for (int i = 0; i < 5; ++i) id.at(i, i) = 1;
  CHECK(rank(id, f) == 5);
  CHECK(rank_serial(id, f) == 5);

  DenseMatrix zero(4, 6);
  CHECK(rank(zero, f) == 0);
  CHECK(rank_serial(zero, f) == 0);

  // rows 1..3 with row3 = row1 + row2
  DenseMatrix sing(3, 3);
  uint32_t vals[3][3] = {{1, 2, 3}, {4, 5, 6}, {5, 7, 9}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) sing.at(i, j) = vals[i][j];
  CHECK(rank(sing, f) == 2);
  CHECK(rank_serial(sing, f) == 2);

  // duplicate rows never add rank
  DenseMatrix dup(6, 4);
  FieldRng rng(9, f);
  for (int j = 0; j < 4; ++j) {
    uint32_t v = rng.next();
    for (int i = 0; i < 6; ++i) dup.at(i, j) = v;
  }
  CHECK(rank(dup, f) <= 1);

  DenseMatrix empty;
  CHECK(rank(empty, f) == 0);
}

TEST_CASE("threaded rank matches the serial reference") {
  PrimeField f(kDefaultPrime);
  std::mt19937_64 shapes(123);
  for (int t = 0; t < 30; ++t) {
    int rows = 1 + (int)(shapes() % 40);
    int cols = 1 + (int)(shapes() % 40);
    auto m = random_matrix(rows, cols, shapes(), f);
    CHECK(rank(m, f) == rank_serial(m, f));
  }
  auto big = random_matrix(150, 170, 7, f);
  int rk = rank(big, f);
  CHECK(rk == rank_serial(big, f));
  CHECK(rk == 150);  // a random wide matrix has full row rank

  PrimeField small(101);
  for (int t = 0; t < 20; ++t) {
    auto m = random_matrix(25, 25, 1000 + t, small);
    CHECK(rank(m, small) == rank_serial(m, small));
  }
}

TEST_CASE("rank is invariant under row permutation and bounded by min dim") {
  PrimeField f(kSecondPrime);
  auto m = random_matrix(12, 9, 55, f);
  // zero a few rows so the rank is not trivially full
  for (int j = 0; j < 9; ++j) m.at(3, j) = m.at(7, j) = 0;
  int base = rank(m, f);
  CHECK(base <= 9);
  std::mt19937_64 g(77);
  for (int t = 0; t < 10; ++t) {
    DenseMatrix perm = m;
    std::vector<int> order(12);
    for (int i = 0; i < 12; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), g);
    for (int i = 0; i < 12; ++i)
      std::copy(m.row(order[i]), m.row(order[i]) + 9, perm.row(i));
    CHECK(rank(perm, f) == base);
  }
}

TEST_CASE("sample_points honors constraints and is reproducible") {
  SegreVeronesePair pair({2, 1}, {2, 3});
  auto scheme = parse_scheme(pair, "2*2pt + 1*2pt@H1 + 1*2pt@O2 + 1*1pt@E1@E2");
  PrimeField f(kDefaultPrime);
  auto pts = sample_points(scheme, 99, f);
  CHECK(pts.seed == 99);
  CHECK(pts.prime == kDefaultPrime);
  REQUIRE(pts.coords.size() == 5);
  for (auto& pt : pts.coords) {
    REQUIRE(pt.size() == 2);
    CHECK(pt[0].size() == 3);
    CHECK(pt[1].size() == 2);
    CHECK(pt[0][0] == 1);
    CHECK(pt[1][0] == 1);
  }
  // Hyperplane and OnHyperplane force the last coordinate of that factor to 0.
  CHECK(pts.coords[2][0][2] == 0);
  CHECK(pts.coords[3][1][1] == 0);
  // FixedPoint is the anchor on every factor.
  CHECK(pts.coords[4][0] == std::vector<uint32_t>{1, 0, 0});
  CHECK(pts.coords[4][1] == std::vector<uint32_t>{1, 0});
  // Unconstrained components are distinct.
  CHECK(pts.coords[0] != pts.coords[1]);

  auto again = sample_points(scheme, 99, f);
  CHECK(again.coords == pts.coords);
  auto other = sample_points(scheme, 100, f);
  CHECK(other.coords != pts.coords);
}

TEST_CASE("sample_points throws when distinct supports are impossible") {
  SegreVeronesePair pair({1}, {2});
  auto scheme = make_scheme(pair, {{2, 1, {Constraint::FixedPoint}}});
  CHECK_THROWS_AS(sample_points(scheme, 1, PrimeField(kDefaultPrime)), std::runtime_error);
}
