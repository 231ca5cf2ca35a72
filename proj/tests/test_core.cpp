#include <doctest.h>

#include <random>

#include "swimtrack/core.hpp"

using namespace swimtrack;

TEST_CASE("iou of a box with itself is 1") {
  const BoundingBox b{3.0, 7.0, 20.0, 11.0};
  CHECK(iou(b, b) == doctest::Approx(1.0));
}

TEST_CASE("iou of disjoint boxes is 0") {
  CHECK(iou({0, 0, 10, 10}, {20, 20, 5, 5}) == 0.0);
  CHECK(iou({0, 0, 10, 10}, {10, 0, 10, 10}) == 0.0);  // touching edges
}

TEST_CASE("iou of half-overlapping boxes") {
  // intersection 5x10 = 50, union 100 + 100 - 50 = 150
  CHECK(iou({0, 0, 10, 10}, {5, 0, 10, 10}) == doctest::Approx(50.0 / 150.0));
}

TEST_CASE("iou is symmetric and bounded on random boxes") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> pos(-50.0, 50.0), size(0.5, 40.0);
  for (int k = 0; k < 500; ++k) {
    const BoundingBox a{pos(rng), pos(rng), size(rng), size(rng)};
    const BoundingBox b{pos(rng), pos(rng), size(rng), size(rng)};
    const double ab = iou(a, b);
    CHECK(ab == iou(b, a));
    CHECK(ab >= 0.0);
    CHECK(ab <= 1.0);
  }
}

TEST_CASE("state form of a unit-square box") {
  const StateForm s = to_state_form({0, 0, 10, 10});
  CHECK(s.u == 5.0);
  CHECK(s.v == 5.0);
  CHECK(s.s == 100.0);
  CHECK(s.r == 1.0);
}

TEST_CASE("state form of an off-center box") {
  const StateForm s = to_state_form({10, 20, 4, 2});
  CHECK(s.u == 12.0);
  CHECK(s.v == 21.0);
  CHECK(s.s == 8.0);
  CHECK(s.r == 2.0);
}

TEST_CASE("state form round-trips") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> pos(-100.0, 100.0), size(0.1, 80.0);
  for (int k = 0; k < 500; ++k) {
    const BoundingBox b{pos(rng), pos(rng), size(rng), size(rng)};
    const BoundingBox back = from_state_form(to_state_form(b));
    CHECK(back.x == doctest::Approx(b.x).epsilon(1e-9));
    CHECK(back.y == doctest::Approx(b.y).epsilon(1e-9));
    CHECK(back.w == doctest::Approx(b.w).epsilon(1e-9));
    CHECK(back.h == doctest::Approx(b.h).epsilon(1e-9));
  }
}
