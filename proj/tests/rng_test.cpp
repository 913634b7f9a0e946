#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "thetalab/rng.hpp"

using thetalab::rmt::Rng;

TEST_CASE("identical seeds replay identical streams") {
  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("derived streams are independent of parent consumption") {
  Rng a(7);
  Rng child_before = a.derive(3);
  a.next_u64();
  a.next_u64();
  Rng child_after = a.derive(3);
  CHECK(child_before.next_u64() == child_after.next_u64());
}

TEST_CASE("distinct derivations do not collide") {
  Rng a(7);
  std::set<std::uint64_t> firsts;
  for (std::uint64_t s = 0; s < 200; ++s) firsts.insert(a.derive(s).next_u64());
  CHECK(firsts.size() == 200);
}

TEST_CASE("uniform doubles are in [0,1) with sane mean") {
  Rng a(1);
  double sum = 0.0;
  const int m = 200000;
  for (int i = 0; i < m; ++i) {
    const double x = a.next_double();
    REQUIRE(x >= 0.0);
    REQUIRE(x < 1.0);
    sum += x;
  }
  CHECK(std::abs(sum / m - 0.5) < 0.005);
}

TEST_CASE("normal draws have mean ~0 and variance ~1") {
  Rng a(2);
  double s = 0.0, s2 = 0.0;
  const int m = 200000;
  for (int i = 0; i < m; ++i) {
    const double x = a.next_normal();
    s += x;
    s2 += x * x;
  }
  CHECK(std::abs(s / m) < 0.01);
  CHECK(std::abs(s2 / m - 1.0) < 0.02);
}

TEST_CASE("next_below covers the range uniformly") {
  Rng a(3);
  std::vector<int> counts(10, 0);
  for (int i = 0; i < 100000; ++i) ++counts[a.next_below(10)];
  for (int c : counts) CHECK(std::abs(c - 10000) < 500);
}
