#include <doctest.h>

#include <cmath>
#include <random>

#include "fcub/errors.hpp"
#include "fcub/moments.hpp"

using namespace fcub;

namespace {

MultiIndex mi(std::vector<int> exponents) { return MultiIndex{std::move(exponents)}; }

Ifs cantor_ifs() {
  Matrix a(1, 1);
  a << 1.0 / 3.0;
  Vector b0(1), b1(1);
  b0 << 0.0;
  b1 << 2.0 / 3.0;
  std::vector<AffineMap> maps;
  maps.emplace_back(a, b0);
  maps.emplace_back(a, b1);
  return Ifs(std::move(maps));
}

Ifs vicsek_ifs(double theta) {
  std::vector<AffineMap> maps;
  Matrix r(2, 2);
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  maps.emplace_back(r / 3.0, Vector::Zero(2));
  for (double sx : {1.0, -1.0}) {
    for (double sy : {1.0, -1.0}) {
      Vector b(2);
      b << (2.0 / 3.0) * sx, (2.0 / 3.0) * sy;
      maps.emplace_back(Matrix::Identity(2, 2) / 3.0, b);
    }
  }
  return Ifs(std::move(maps));
}

Ifs dust_ifs() {
  std::vector<AffineMap> maps;
  for (double sx : {1.0, -1.0}) {
    for (double sy : {1.0, -1.0}) {
      Vector b(2);
      b << (2.0 / 3.0) * sx, (2.0 / 3.0) * sy;
      maps.emplace_back(Matrix::Identity(2, 2) / 3.0, b);
    }
  }
  return Ifs(std::move(maps));
}

Polynomial random_polynomial(int dim, int degree, std::mt19937& rng) {
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Polynomial p(dim);
  for (const MultiIndex& alpha : SpaceSpec::total(dim, degree).basis) {
    p.add_term(alpha, unif(rng));
  }
  return p;
}

}  // namespace

TEST_CASE("Cantor moments from the hand-solved recursion") {
  const Ifs ifs = cantor_ifs();
  const MeasureSpec mu = hausdorff_weights(ifs);
  const MomentTable table = compute_moments(ifs, mu, 6);

  CHECK(table.moment(mi({0})) == 1.0);

  // m1: the measure is symmetric about 1/2.
  CHECK(table.moment(mi({1})) == doctest::Approx(0.5).epsilon(1e-14));

  // m2 by hand: m2 = rho^2 m2 + mean over b of (2 rho b m1 + b^2), b in {0, 2/3}:
  // (1 - 1/9) m2 = (1/2)(2*(1/3)*(2/3)*(1/2) + (2/3)^2) = 1/3, so m2 = 3/8.
  const double m2 = ((0.5) * (2.0 * (1.0 / 3.0) * (2.0 / 3.0) * 0.5 + 4.0 / 9.0)) /
                    (1.0 - 1.0 / 9.0);
  CHECK(m2 == doctest::Approx(3.0 / 8.0).epsilon(1e-15));
  CHECK(table.moment(mi({2})) == doctest::Approx(3.0 / 8.0).epsilon(1e-13));
}

TEST_CASE("moment solve residuals stay at the tolerance across the gallery") {
  SUBCASE("Cantor to degree 20") {
    const Ifs ifs = cantor_ifs();
    const MomentTable table = compute_moments(ifs, hausdorff_weights(ifs), 20);
    for (double r : table.residuals()) CHECK(r <= 1e-12);
    CHECK(table.residuals().size() == 20);
  }
  SUBCASE("Vicsek variants and dust to degree 12") {
    for (double theta : {0.0, 0.4, std::atan(1.0)}) {
      const Ifs ifs = vicsek_ifs(theta);
      Vector w(5);
      w.setConstant(0.2);
      const MomentTable table = compute_moments(ifs, MeasureSpec::from_weights(w), 12);
      for (double r : table.residuals()) CHECK(r <= 1e-12);
    }
    const Ifs dust = dust_ifs();
    const MomentTable table = compute_moments(dust, hausdorff_weights(dust), 12);
    for (double r : table.residuals()) CHECK(r <= 1e-12);
  }
  SUBCASE("a fat contraction (rho = 0.618) stays well-conditioned to degree 12") {
    std::vector<AffineMap> maps;
    const double rho = (std::sqrt(5.0) - 1.0) / 2.0;
    for (const std::pair<double, double>& vertex :
         {std::pair{0.0, 0.0}, {1.0, 0.0}, {0.5, std::sqrt(3.0) / 2.0}}) {
      Vector b(2);
      b << (1.0 - rho) * vertex.first, (1.0 - rho) * vertex.second;
      maps.emplace_back(rho * Matrix::Identity(2, 2), b);
    }
    const Ifs fat{std::move(maps)};
    const MomentTable table = compute_moments(fat, hausdorff_weights(fat), 12);
    for (double r : table.residuals()) CHECK(r <= 1e-12);
  }
}

TEST_CASE("dust moments obey symmetry and the corner bound") {
  const Ifs dust = dust_ifs();
  const MomentTable table = compute_moments(dust, hausdorff_weights(dust), 8);
  // Odd moments vanish by the four-fold symmetry.
  CHECK(std::abs(table.moment(mi({1, 0}))) <= 1e-14);
  CHECK(std::abs(table.moment(mi({3, 2}))) <= 1e-14);
  // Support lies in [-1,1]^2: every moment is bounded by the corner value 1.
  for (const auto& [alpha, value] : table.values()) {
    CHECK(std::abs(value) <= 1.0 + 1e-13);
  }
}

TEST_CASE("integrate_polynomial pairs coefficients with moments") {
  const Ifs ifs = cantor_ifs();
  const MeasureSpec mu = hausdorff_weights(ifs);
  const MomentTable table = compute_moments(ifs, mu, 4);

  CHECK(integrate_polynomial(Polynomial::constant(1, 1.0), table) ==
        doctest::Approx(1.0).epsilon(1e-15));

  Polynomial centered(1);  // x - 1/2 integrates to zero
  centered.add_term(mi({1}), 1.0);
  centered.add_term(mi({0}), -0.5);
  CHECK(integrate_polynomial(centered, table) == doctest::Approx(0.0));

  CHECK(integrate_polynomial(Polynomial::monomial(mi({2})), table) ==
        doctest::Approx(3.0 / 8.0).epsilon(1e-13));

  Polynomial too_big(1);
  too_big.add_term(mi({5}), 1.0);
  CHECK_THROWS_AS(integrate_polynomial(too_big, table), std::invalid_argument);
}

TEST_CASE("the integral is invariant under the Ruelle operator") {
  struct System {
    Ifs ifs;
    MeasureSpec mu;
    int degree;
  };
  std::vector<System> systems;
  {
    const Ifs ifs = cantor_ifs();
    systems.push_back({ifs, hausdorff_weights(ifs), 12});
  }
  for (double theta : {0.0, 0.4, std::atan(1.0)}) {
    Vector w(5);
    w.setConstant(0.2);
    systems.push_back({vicsek_ifs(theta), MeasureSpec::from_weights(w), 8});
  }
  {
    const Ifs dust = dust_ifs();
    systems.push_back({dust, hausdorff_weights(dust), 8});
  }

  std::mt19937 rng(59);
  for (const System& system : systems) {
    const MomentTable table = compute_moments(system.ifs, system.mu, system.degree);
    for (int trial = 0; trial < 200; ++trial) {
      const Polynomial p =
          random_polynomial(system.ifs.dim(), 1 + trial % system.degree, rng);
      const double direct = integrate_polynomial(p, table);
      const double through =
          integrate_polynomial(ruelle_apply(p, system.ifs, system.mu), table);
      CHECK(std::abs(direct - through) <= 1e-11 * (1.0 + std::abs(direct)));
    }
  }
}
