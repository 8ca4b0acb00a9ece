#include <doctest.h>

#include <cmath>
#include <random>

#include "fcub/errors.hpp"
#include "fcub/measure.hpp"

using namespace fcub;

namespace {

Ifs similar_ifs(const std::vector<double>& rhos) {
  std::vector<AffineMap> maps;
  double shift = 0.0;
  for (double rho : rhos) {
    Matrix a(1, 1);
    a << rho;
    Vector b(1);
    b << shift;
    maps.emplace_back(a, b);
    shift += 0.1;
  }
  return Ifs(std::move(maps));
}

}  // namespace

TEST_CASE("Hausdorff dimension closed forms") {
  SUBCASE("equal factors: d = log L / log(1/rho)") {
    for (int count : {2, 3, 5}) {
      for (double rho : {0.2, 1.0 / 3.0, 0.45}) {
        const std::vector<double> rhos(count, rho);
        const double expected = std::log(static_cast<double>(count)) / std::log(1.0 / rho);
        CHECK(hausdorff_dimension(rhos) == doctest::Approx(expected).epsilon(1e-12));
      }
    }
  }
  SUBCASE("Cantor: d = log 2 / log 3") {
    CHECK(hausdorff_dimension({1.0 / 3.0, 1.0 / 3.0}) ==
          doctest::Approx(std::log(2.0) / std::log(3.0)).epsilon(1e-13));
  }
  SUBCASE("rho = (1/2, 1/4): d = log2 of the golden ratio") {
    // Substituting t = 2^{-d} turns the dimension equation into t + t^2 = 1,
    // so t = (sqrt(5)-1)/2 and d = log2(1/t).
    const double t = (std::sqrt(5.0) - 1.0) / 2.0;
    const double expected = std::log2(1.0 / t);
    CHECK(hausdorff_dimension({0.5, 0.25}) == doctest::Approx(expected).epsilon(1e-13));
  }
}

TEST_CASE("Hausdorff dimension residual meets the tolerance") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> unif(0.05, 0.85);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> rhos(2 + trial % 4);
    for (double& r : rhos) r = unif(rng);
    const double d = hausdorff_dimension(rhos);
    double sum = 0.0;
    for (double r : rhos) sum += std::pow(r, d);
    CHECK(std::abs(sum - 1.0) <= 1e-12);
  }
}

TEST_CASE("Hausdorff dimension is monotone in each factor") {
  const double base = hausdorff_dimension({0.3, 0.4});
  CHECK(hausdorff_dimension({0.35, 0.4}) > base);
  CHECK(hausdorff_dimension({0.3, 0.45}) > base);
}

TEST_CASE("Hausdorff weights") {
  SUBCASE("equal contractions share the mass equally") {
    const MeasureSpec mu = hausdorff_weights(similar_ifs({0.25, 0.25, 0.25}));
    for (int ell = 0; ell < 3; ++ell) {
      CHECK(mu.weight(ell) == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
    }
    CHECK(mu.origin() == MeasureSpec::Origin::hausdorff);
  }
  SUBCASE("Cantor gives (1/2, 1/2)") {
    const MeasureSpec mu = hausdorff_weights(similar_ifs({1.0 / 3.0, 1.0 / 3.0}));
    CHECK(mu.weight(0) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(mu.weight(1) == doctest::Approx(0.5).epsilon(1e-13));
  }
  SUBCASE("rho = (1/2, 1/4) gives (t, t^2) with t + t^2 = 1") {
    const double t = (std::sqrt(5.0) - 1.0) / 2.0;
    const MeasureSpec mu = hausdorff_weights(similar_ifs({0.5, 0.25}));
    CHECK(mu.weight(0) == doctest::Approx(t).epsilon(1e-12));
    CHECK(mu.weight(1) == doctest::Approx(t * t).epsilon(1e-12));
  }
}

TEST_CASE("Hausdorff weights sum to 1 over random systems") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> unif(0.05, 0.8);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> rhos(2 + trial % 3);
    for (double& r : rhos) r = unif(rng);
    const MeasureSpec mu = hausdorff_weights(similar_ifs(rhos));
    CHECK(std::abs(mu.weights().sum() - 1.0) <= 1e-12);
    for (int ell = 0; ell < mu.size(); ++ell) CHECK(mu.weight(ell) > 0.0);
  }
}

TEST_CASE("explicit weights validation") {
  SUBCASE("small drift is renormalized") {
    Vector w(2);
    w << 0.5000001, 0.4999998;
    const MeasureSpec mu = MeasureSpec::from_weights(w);
    CHECK(mu.weights().sum() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(mu.origin() == MeasureSpec::Origin::explicit_weights);
  }
  SUBCASE("weights summing to 0.9 are rejected") {
    Vector w(2);
    w << 0.45, 0.45;
    CHECK_THROWS_AS(MeasureSpec::from_weights(w), ValidationError);
  }
  SUBCASE("nonpositive weights are rejected") {
    Vector w(2);
    w << 1.0, 0.0;
    CHECK_THROWS_AS(MeasureSpec::from_weights(w), ValidationError);
  }
}
