#include <doctest.h>

#include <cmath>
#include <vector>

#include "gwmlp/rng.hpp"

using namespace gwmlp;

TEST_SUITE("rng") {

TEST_CASE("same seed reproduces the same matrix") {
  RngState a(42);
  RngState b(42);
  const Matrix ma = rng_standard_normal(a, 4, 4);
  const Matrix mb = rng_standard_normal(b, 4, 4);
  for (std::size_t i = 0; i < ma.size(); ++i) {
    CHECK(ma.values()[i] == mb.values()[i]);
  }
}

TEST_CASE("re-running 1000 seeds is bit-identical") {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    RngState a(seed);
    RngState b(seed);
    for (int i = 0; i < 8; ++i) {
      CHECK(a.next_u64() == b.next_u64());
    }
    CHECK(a.next_normal() == b.next_normal());
  }
}

TEST_CASE("different seeds differ somewhere") {
  RngState a(1);
  RngState b(2);
  const Matrix ma = rng_standard_normal(a, 4, 4);
  const Matrix mb = rng_standard_normal(b, 4, 4);
  bool any_diff = false;
  for (std::size_t i = 0; i < ma.size(); ++i) {
    any_diff = any_diff || ma.values()[i] != mb.values()[i];
  }
  CHECK(any_diff);
}

TEST_CASE("normal sample mean over 1e6 draws is near zero") {
  RngState rng(20240501);
  double sum = 0.0;
  constexpr int kDraws = 1'000'000;
  for (int i = 0; i < kDraws; ++i) sum += rng.next_normal();
  const double mean = sum / kDraws;
  CHECK(std::fabs(mean) < 0.01);
}

TEST_CASE("normal sample variance is near one") {
  RngState rng(99);
  double sum = 0.0, sq = 0.0;
  constexpr int kDraws = 200'000;
  for (int i = 0; i < kDraws; ++i) {
    const double v = rng.next_normal();
    sum += v;
    sq += v * v;
  }
  const double mean = sum / kDraws;
  const double var = sq / kDraws - mean * mean;
  CHECK(var == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("uniform draws stay in [0,1)") {
  RngState rng(7);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.next_uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

} // TEST_SUITE
