#include "tvpsvm/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "support/stats.hpp"

using namespace tvpsvm;
using test_support::ks_statistic;
using test_support::ks_two_sample;

TEST_CASE("streams are deterministic and substreams differ") {
  RngStream a(42, 7);
  RngStream b(42, 7);
  RngStream c(42, 8);
  bool any_diff = false;
  for (int i = 0; i < 256; ++i) {
    const auto va = a.next_u64();
    CHECK(va == b.next_u64());
    any_diff = any_diff || (va != c.next_u64());
  }
  CHECK(any_diff);
}

TEST_CASE("gaussian sampler") {
  RngStream rng(1);

  SUBCASE("zero variance returns the mean exactly") {
    CHECK(sample_gaussian(3.0, 0.0, rng) == 3.0);
  }

  SUBCASE("negative variance is rejected") {
    CHECK_THROWS_AS(sample_gaussian(0.0, -1.0, rng), std::domain_error);
  }

  SUBCASE("moments of large samples") {
    const int n = 1000000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = sample_gaussian(0.0, 1.0, rng);
      sum += x;
    }
    CHECK(std::fabs(sum / n) < 0.004);  // 3 / sqrt(n) CLT bound, rounded up

    double m = 0.0;
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i) {
      xs[i] = sample_gaussian(0.0, 4.0, rng);
      m += xs[i];
    }
    m /= n;
    for (double x : xs) sumsq += (x - m) * (x - m);
    CHECK(sumsq / (n - 1) == doctest::Approx(4.0).epsilon(0.005));
  }
}

TEST_CASE("inverse gamma sampler") {
  RngStream rng(2);

  SUBCASE("analytic mean of IG(3,4)") {
    const int n = 1000000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += sample_inverse_gamma(3.0, 4.0, rng);
    CHECK(sum / n == doctest::Approx(2.0).epsilon(0.01));
  }

  SUBCASE("reciprocal is gamma: E[1/X] for X ~ IG(2,5)") {
    const int n = 1000000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      sum += 1.0 / sample_inverse_gamma(2.0, 5.0, rng);
    }
    CHECK(sum / n == doctest::Approx(0.4).epsilon(0.01));
  }

  SUBCASE("invalid parameters") {
    CHECK_THROWS_AS(sample_inverse_gamma(0.0, 1.0, rng), std::domain_error);
    CHECK_THROWS_AS(sample_inverse_gamma(1.0, 0.0, rng), std::domain_error);
  }
}

TEST_CASE("polya-gamma moments match (b/(2c)) tanh(c/2)") {
  RngStream rng(3);
  const int n = 200000;

  auto empirical_mean = [&](double b, double c) {
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += sample_polya_gamma(b, c, rng);
    return sum / n;
  };

  CHECK(empirical_mean(1.0, 0.0) == doctest::Approx(0.25).epsilon(0.01));
  CHECK(empirical_mean(1.0, 2.0) ==
        doctest::Approx(std::tanh(1.0) / 4.0).epsilon(0.01));
  // Integer composition and fractional remainder paths.
  CHECK(empirical_mean(2.0, 1.0) ==
        doctest::Approx(2.0 / 2.0 * std::tanh(0.5)).epsilon(0.01));
  CHECK(empirical_mean(1.5, 0.0) == doctest::Approx(1.5 / 4.0).epsilon(0.01));
  CHECK(empirical_mean(0.5, 1.5) ==
        doctest::Approx(0.5 / 3.0 * std::tanh(0.75)).epsilon(0.015));
}

TEST_CASE("polya-gamma is symmetric in the tilt") {
  RngStream rng(4);
  const int n = 100000;
  std::vector<double> pos(n), neg(n);
  for (int i = 0; i < n; ++i) pos[i] = sample_polya_gamma(1.0, 2.0, rng);
  for (int i = 0; i < n; ++i) neg[i] = sample_polya_gamma(1.0, -2.0, rng);
  CHECK(ks_two_sample(pos, neg) < 0.01);
}

TEST_CASE("polya-gamma rejects b <= 0") {
  RngStream rng(5);
  CHECK_THROWS_AS(sample_polya_gamma(0.0, 1.0, rng), std::domain_error);
  CHECK_THROWS_AS(sample_polya_gamma(-1.0, 0.0, rng), std::domain_error);
}

TEST_CASE("z innovation sampler") {
  RngStream rng(6);

  SUBCASE("symmetric case has zero median and positive auxiliaries") {
    const int n = 300000;
    std::vector<double> vals(n);
    for (int i = 0; i < n; ++i) {
      const auto draw = sample_z_innovation(0.5, 0.5, rng);
      REQUIRE(draw.aux > 0.0);
      vals[i] = draw.value;
    }
    CHECK(std::fabs(test_support::median(vals)) < 0.01);
  }

  SUBCASE("a > b shifts the distribution to the right") {
    // E[Z(1, 1/2)] = digamma(1) - digamma(1/2) = 2 log 2 ~ 1.386.
    const int n = 100000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      sum += sample_z_innovation(1.0, 0.5, rng).value;
    }
    CHECK(sum / n > 0.5);
  }

  SUBCASE("marginal matches the Z(1/2,1/2,0,1) CDF") {
    const int n = 100000;
    std::vector<double> vals(n);
    for (int i = 0; i < n; ++i) {
      vals[i] = sample_z_innovation(0.5, 0.5, rng).value;
    }
    const double ks = ks_statistic(
        vals, [](double z) { return test_support::z_dist_cdf(0.5, 0.5, z); });
    CHECK(ks < 0.015);
  }

  SUBCASE("invalid parameters") {
    CHECK_THROWS_AS(sample_z_innovation(0.0, 1.0, rng), std::domain_error);
    CHECK_THROWS_AS(sample_z_innovation(1.0, -0.5, rng), std::domain_error);
  }
}

TEST_CASE("beta sampler") {
  RngStream rng(7);

  SUBCASE("analytic mean of Beta(5, 1.5)") {
    const int n = 1000000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += sample_beta(5.0, 1.5, rng);
    CHECK(sum / n == doctest::Approx(5.0 / 6.5).epsilon(0.01));
  }

  SUBCASE("Beta(1,1) is uniform") {
    const int n = 100000;
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i) xs[i] = sample_beta(1.0, 1.0, rng);
    CHECK(ks_statistic(xs, [](double x) { return x; }) < 0.01);
  }

  SUBCASE("invalid parameters") {
    CHECK_THROWS_AS(sample_beta(0.0, 1.0, rng), std::domain_error);
  }
}
