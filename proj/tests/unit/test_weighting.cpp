#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "mwk/error.hpp"
#include "mwk/weighting.hpp"
#include "oracles.hpp"

using namespace mwk;

namespace {

std::vector<double> weights_of(const std::vector<double>& d, double p) {
  std::vector<double> w(d.size());
  update_weight_row(d, p, w);
  return w;
}

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected mwk::Error");
  return Errc::InvalidConfig;
}

}  // namespace

TEST_CASE("weight update examples") {
  auto w = weights_of({1.0, 1.0}, 2.0);
  CHECK(w[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(w[1] == doctest::Approx(0.5).epsilon(1e-15));

  w = weights_of({1.0, 4.0}, 2.0);
  CHECK(w[0] == doctest::Approx(0.8).epsilon(1e-14));
  CHECK(w[1] == doctest::Approx(0.2).epsilon(1e-14));

  w = weights_of({1.0, 4.0}, 1.5);
  CHECK(w[0] == doctest::Approx(16.0 / 17.0).epsilon(1e-14));
  CHECK(w[1] == doctest::Approx(1.0 / 17.0).epsilon(1e-14));

  DispersionMatrix dm{Matrix(2, 2)};
  dm.d(0, 0) = 1.0;
  dm.d(0, 1) = 4.0;
  dm.d(1, 0) = 3.0;
  dm.d(1, 1) = 3.0;
  const Matrix wm = update_weights(dm, 2.0);
  CHECK(wm(0, 0) == doctest::Approx(0.8));
  CHECK(wm(1, 0) == doctest::Approx(0.5));
}

TEST_CASE("weights agree with the double-sum formula") {
  std::mt19937_64 gen(11);
  for (double p : {1.05, 1.5, 2.0, 3.0, 10.0}) {
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<double> d(2 + trial % 9);
      for (double& x : d) x = testing::log_uniform(gen, 1e-3, 1e3);
      const auto w = weights_of(d, p);
      const auto ref = testing::brute_weights(d, p);
      for (std::size_t v = 0; v < d.size(); ++v) {
        CHECK(testing::relative_error(w[v], ref[v]) <= 1e-10);
      }
    }
  }
}

TEST_CASE("weights lie on the simplex even for extreme dispersions") {
  std::mt19937_64 gen(12);
  for (double p : {1.001, 1.1, 2.0, 50.0}) {
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<double> d(1 + trial % 12);
      for (double& x : d) x = testing::log_uniform(gen, 1e-150, 1e150);
      const auto w = weights_of(d, p);
      double sum = 0.0;
      for (double x : w) {
        CHECK(std::isfinite(x));
        CHECK(x >= 0.0);
        CHECK(x <= 1.0);
        sum += x;
      }
      CHECK(std::abs(sum - 1.0) <= 1e-9);
    }
  }
}

TEST_CASE("ratio law, order reversal and scale invariance") {
  std::mt19937_64 gen(13);
  for (double p : {1.1, 1.5, 2.0, 4.0}) {
    for (int trial = 0; trial < 300; ++trial) {
      std::vector<double> d(2 + trial % 7);
      for (double& x : d) x = testing::log_uniform(gen, 1e-4, 1e4);
      const auto w = weights_of(d, p);
      for (std::size_t u = 0; u < d.size(); ++u) {
        for (std::size_t v = 0; v < d.size(); ++v) {
          const double expected = std::pow(d[v] / d[u], 1.0 / (p - 1.0));
          CHECK(testing::relative_error(w[u] / w[v], expected) <= 1e-9);
          CHECK(testing::relative_error(weight_ratio(d[u], d[v], p), expected) <= 1e-12);
          if (d[u] > d[v]) CHECK(w[u] < w[v]);
        }
      }
      const double a = testing::log_uniform(gen, 1e-6, 1e6);
      std::vector<double> scaled(d);
      for (double& x : scaled) x *= a;
      const auto ws = weights_of(scaled, p);
      for (std::size_t v = 0; v < d.size(); ++v) CHECK(std::abs(ws[v] - w[v]) <= 1e-12);
    }
  }
}

TEST_CASE("small p concentrates weight on the least dispersed feature") {
  const auto w = weights_of({1.0, 2.0, 2.0}, 1.01);
  CHECK(w[0] > 0.99);
}

TEST_CASE("weights flatten as p grows") {
  const std::vector<double> d{0.5, 1.0, 3.0, 7.0};
  double prev_spread = 1.0;
  for (double p : {2.0, 5.0, 10.0, 100.0}) {
    const auto w = weights_of(d, p);
    const auto [lo, hi] = std::minmax_element(w.begin(), w.end());
    const double spread = *hi - *lo;
    CHECK(spread < prev_spread);
    prev_spread = spread;
  }
  CHECK(prev_spread < 0.02);
}

TEST_CASE("zero dispersions share the weight") {
  auto w = weights_of({0.0, 2.0, 0.0}, 2.0);
  CHECK(w == std::vector<double>{0.5, 0.0, 0.5});
  w = weights_of({0.0, 0.0}, 3.0);
  CHECK(w == std::vector<double>{0.5, 0.5});
  w = weights_of({5.0, 0.0, 1.0, 1.0}, 1.2);
  CHECK(w == std::vector<double>{0.0, 1.0, 0.0, 0.0});

  CHECK(code_of([] { weights_of({1.0, -1.0}, 2.0); }) == Errc::NonpositiveDispersion);
  CHECK(code_of([] { weights_of({1.0, std::nan("")}, 2.0); }) == Errc::NonpositiveDispersion);
}

TEST_CASE("suppression bounds") {
  CHECK(pairwise_suppression_bound(4.0, 2.0) == doctest::Approx(0.25));
  CHECK(pairwise_suppression_bound(4.0, 3.0) == doctest::Approx(0.5));
  CHECK(global_suppression_bound(4.0, 3, 2.0) == doctest::Approx(1.0 / 9.0));
  CHECK(global_suppression_bound(9.0, 2, 3.0) == doctest::Approx(0.25));

  CHECK(code_of([] { pairwise_suppression_bound(1.0, 2.0); }) == Errc::InvalidC);
  CHECK(code_of([] { global_suppression_bound(0.5, 3, 2.0); }) == Errc::InvalidC);
  CHECK(code_of([] { global_suppression_bound(2.0, 1, 2.0); }) == Errc::InvalidM);
}

TEST_CASE("suppression bounds hold and are attained") {
  std::mt19937_64 gen(14);
  for (double p : {1.2, 2.0, 3.5}) {
    for (int trial = 0; trial < 300; ++trial) {
      const std::size_t m = 2 + trial % 8;
      const double c = 1.0 + testing::log_uniform(gen, 1e-3, 1e3);
      std::vector<double> d(m);
      for (double& x : d) x = testing::log_uniform(gen, 1e-2, 1e2);
      // Feature 0 is at least C times every other dispersion.
      const double max_other = *std::max_element(d.begin() + 1, d.end());
      d[0] = c * max_other * (1.0 + std::uniform_real_distribution<double>(0.0, 1.0)(gen));
      const auto w = weights_of(d, p);
      const double global = global_suppression_bound(c, m, p);
      CHECK(w[0] <= global * (1.0 + 1e-12));
      for (std::size_t v = 1; v < m; ++v) {
        CHECK(w[0] <= pairwise_suppression_bound(c, p) * w[v] * (1.0 + 1e-12));
      }

      // Equality case: D_u = C * D_v for all other v, which all coincide.
      std::vector<double> tight(m, 1.0);
      tight[0] = c;
      const auto wt = weights_of(tight, p);
      CHECK(testing::relative_error(wt[0], global) <= 1e-12);
      CHECK(testing::relative_error(wt[0], pairwise_suppression_bound(c, p) * wt[1]) <= 1e-12);
    }
  }
}
