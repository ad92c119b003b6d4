#include <doctest.h>

#include "core/hungarian.hpp"
#include "core/rng.hpp"
#include "oracles.hpp"

using namespace omni;

namespace {

double total_of(const Mat& cost, const std::vector<int>& col4row) {
  double t = 0.0;
  for (int i = 0; i < cost.rows(); ++i)
    if (col4row[i] >= 0) t += cost(i, col4row[i]);
  return t;
}

Mat random_matrix(int r, int c, Rng& rng) {
  Mat m(r, c);
  for (double& v : m.data()) v = rng.uniform();
  return m;
}

}  // namespace

TEST_CASE("assignment on tiny fixed instances") {
  Mat one(1, 1);
  one(0, 0) = 0.2;
  CHECK(min_cost_assignment(one) == std::vector<int>{0});

  Mat diag(2, 2);
  diag(0, 0) = 0.1;
  diag(0, 1) = 0.9;
  diag(1, 0) = 0.9;
  diag(1, 1) = 0.1;
  const auto a = min_cost_assignment(diag);
  CHECK(a == std::vector<int>{0, 1});
  CHECK(total_of(diag, a) == doctest::Approx(0.2));
}

TEST_CASE("square instances match the brute-force permutation minimum exactly") {
  Rng rng(101);
  for (int n = 2; n <= 7; ++n) {
    for (int rep = 0; rep < 60; ++rep) {
      const Mat cost = random_matrix(n, n, rng);
      const auto a = min_cost_assignment(cost);
      CHECK(total_of(cost, a) == oracle::brute_min_cost(cost));
    }
  }
}

TEST_CASE("rectangular instances, both orientations") {
  Rng rng(102);
  for (int rep = 0; rep < 200; ++rep) {
    const int r = 1 + rng.uniform_int(5);
    const int c = 1 + rng.uniform_int(5);
    const Mat cost = random_matrix(r, c, rng);
    const auto a = min_cost_assignment(cost);
    int assigned = 0;
    std::vector<char> used(c, 0);
    for (int i = 0; i < r; ++i) {
      if (a[i] < 0) continue;
      CHECK(!used[a[i]]);
      used[a[i]] = 1;
      ++assigned;
    }
    CHECK(assigned == std::min(r, c));
    CHECK(total_of(cost, a) == doctest::Approx(oracle::brute_min_cost(cost)).epsilon(1e-12));
  }
}

TEST_CASE("degenerate shapes") {
  CHECK(min_cost_assignment(Mat(0, 0)).empty());
  CHECK(min_cost_assignment(Mat(3, 0)) == std::vector<int>(3, -1));
  CHECK(min_cost_assignment(Mat(0, 4)).empty());
}

TEST_CASE("negative costs are handled exactly (maximization by negation)") {
  Rng rng(303);
  for (int rep = 0; rep < 300; ++rep) {
    const int r = 1 + rng.uniform_int(6);
    const int c = 1 + rng.uniform_int(6);
    Mat cost(r, c);
    for (double& v : cost.data()) v = rng.uniform(-1.0, 1.0);
    const auto a = min_cost_assignment(cost);
    CHECK(total_of(cost, a) == doctest::Approx(oracle::brute_min_cost(cost)).epsilon(1e-12));
  }
  // Integer-valued overlap matrices, as the identity-bijection search uses.
  for (int rep = 0; rep < 200; ++rep) {
    const int n = 2 + rng.uniform_int(5);
    Mat cost(n, n);
    for (double& v : cost.data()) v = -static_cast<double>(rng.uniform_int(10));
    const auto a = min_cost_assignment(cost);
    CHECK(total_of(cost, a) == oracle::brute_min_cost(cost));
  }
}
