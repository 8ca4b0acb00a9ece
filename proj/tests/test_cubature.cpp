#include <doctest.h>

#include <cmath>
#include <complex>
#include <set>

#include "fcub/cubature.hpp"
#include "fcub/errors.hpp"
#include "fcub/integrands.hpp"
#include "fcub/moments.hpp"

using namespace fcub;

namespace {

Vector vec1(double x) {
  Vector v(1);
  v << x;
  return v;
}

Ifs cantor_ifs() {
  Matrix a(1, 1);
  a << 1.0 / 3.0;
  std::vector<AffineMap> maps;
  maps.emplace_back(a, vec1(0.0));
  maps.emplace_back(a, vec1(2.0 / 3.0));
  return Ifs(std::move(maps));
}

Ifs uneven_ifs() {
  // rho = (1/2, 1/4) on [0,1].
  Matrix a0(1, 1), a1(1, 1);
  a0 << 0.5;
  a1 << 0.25;
  std::vector<AffineMap> maps;
  maps.emplace_back(a0, vec1(0.0));
  maps.emplace_back(a1, vec1(0.75));
  return Ifs(std::move(maps));
}

// The two-point unit-box rule exact on P_1: w = (1/2, 1/2) at {0, 1}.
CubatureRule p1_unit_rule() {
  CubatureRule rule;
  rule.points = {vec1(0.0), vec1(1.0)};
  rule.weights = Vector(2);
  rule.weights << 0.5, 0.5;
  rule.space = SpaceSpec::tensor(1, 1);
  return rule;
}

Integrand monomial_integrand(int degree) {
  return Integrand{[degree](const Vector& x) {
                     double value = 1.0;
                     for (int e = 0; e < degree; ++e) value *= x[0];
                     return std::complex<double>(value, 0.0);
                   },
                   "x^" + std::to_string(degree)};
}

}  // namespace

TEST_CASE("apply_rule basics") {
  const CubatureRule rule = p1_unit_rule();

  SUBCASE("constants integrate to the weight sum") {
    CHECK(apply_rule(rule, monomial_integrand(0)).real() == doctest::Approx(1.0));
  }
  SUBCASE("x integrates to the first Cantor moment") {
    CHECK(apply_rule(rule, monomial_integrand(1)).real() ==
          doctest::Approx(0.5).epsilon(1e-15));
  }
  SUBCASE("x^2 shows the non-exactness outside P_1") {
    // Q[x^2] = 1/2 while the invariant integral is 3/8.
    CHECK(apply_rule(rule, monomial_integrand(2)).real() ==
          doctest::Approx(0.5).epsilon(1e-15));
    const Ifs ifs = cantor_ifs();
    const MomentTable table = compute_moments(ifs, hausdorff_weights(ifs), 2);
    CHECK(table.moment(MultiIndex{{2}}) == doctest::Approx(3.0 / 8.0));
  }
  SUBCASE("non-finite integrand values name the point") {
    const Integrand bad = helmholtz_integrand(5.0, vec1(1.0));  // pole at a node
    CHECK_THROWS_WITH_AS(apply_rule(rule, bad),
                         doctest::Contains("non-finite at point (1)"), NumericalError);
  }
}

TEST_CASE("mesh construction") {
  const MeasureSpec cantor_mu = hausdorff_weights(cantor_ifs());

  SUBCASE("h at least the diameter keeps only the empty word") {
    const Mesh mesh = build_mesh(cantor_ifs(), cantor_mu, 1.0, 1.0);
    REQUIRE(mesh.size() == 1);
    CHECK(mesh.words[0].length() == 0);
    CHECK(mesh.mu[0] == 1.0);
    CHECK(mesh.iterations == 0);
  }
  SUBCASE("Cantor at h = 0.4: both one-letter words") {
    const Mesh mesh = build_mesh(cantor_ifs(), cantor_mu, 0.4, 1.0);
    REQUIRE(mesh.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
      CHECK(mesh.words[i].length() == 1);
      CHECK(mesh.words[i].rho == doctest::Approx(1.0 / 3.0));
      CHECK(mesh.mu[i] == doctest::Approx(0.5));
    }
    CHECK(mesh.iterations == 1);
  }
  SUBCASE("uneven contractions at h = 0.3: words (2), (1,1), (1,2)") {
    const Ifs ifs = uneven_ifs();
    const MeasureSpec mu = hausdorff_weights(ifs);
    const Mesh mesh = build_mesh(ifs, mu, 0.3, 1.0);
    REQUIRE(mesh.size() == 3);
    // Depth-first letter order: (1,1), (1,2), (2).
    CHECK(mesh.words[0].letters == std::vector<int>{0, 0});
    CHECK(mesh.words[1].letters == std::vector<int>{0, 1});
    CHECK(mesh.words[2].letters == std::vector<int>{1});
    double total = 0.0;
    for (double m : mesh.mu) total += m;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("word cap rejects oversized requests before building") {
    MeshConfig config;
    config.max_words = 100;
    CHECK_THROWS_AS(build_mesh(cantor_ifs(), cantor_mu, 1e-5, 1.0, config),
                    ValidationError);
  }
  SUBCASE("invalid inputs") {
    CHECK_THROWS_AS(build_mesh(cantor_ifs(), cantor_mu, 0.0, 1.0), ValidationError);
    CHECK_THROWS_AS(build_mesh(cantor_ifs(), cantor_mu, 0.1, -1.0), ValidationError);
  }
}

TEST_CASE("mesh invariants across three decades of h") {
  struct Case {
    Ifs ifs;
    MeasureSpec mu;
    std::vector<double> h_values;
  };
  std::vector<Case> cases;
  cases.push_back(
      {cantor_ifs(), hausdorff_weights(cantor_ifs()), {0.5, 0.1, 0.02, 0.004, 0.0008}});
  cases.push_back(
      {uneven_ifs(), hausdorff_weights(uneven_ifs()), {0.5, 0.1, 0.02, 0.004, 0.0008}});
  {
    // Fat contraction: three maps with rho = 0.618 (word counts grow fast,
    // so the sweep stops earlier).
    std::vector<AffineMap> maps;
    const double rho = (std::sqrt(5.0) - 1.0) / 2.0;
    Matrix a(1, 1);
    a << rho;
    maps.emplace_back(a, vec1(0.0));
    maps.emplace_back(a, vec1(0.5 * (1 - rho)));
    maps.emplace_back(a, vec1(1.0 - rho));
    Ifs fat{std::move(maps)};
    MeasureSpec mu = hausdorff_weights(fat);
    cases.push_back({std::move(fat), std::move(mu), {0.5, 0.05, 0.005}});
  }

  for (const Case& c : cases) {
    for (double h : c.h_values) {
      const Mesh mesh = build_mesh(c.ifs, c.mu, h, 1.0);
      // Compensated sum: meshes reach 1e5 words here and a naive sum would
      // swamp the 1e-13 property with its own rounding.
      double total = 0.0, carry = 0.0;
      for (double m : mesh.mu) {
        const double y = m - carry;
        const double t = total + y;
        carry = (t - total) - y;
        total = t;
      }
      CHECK(std::abs(total - 1.0) <= 1e-13);
      CHECK(mesh.iterations <= mesh_iteration_bound(c.ifs, h, 1.0));

      // Minimality: each word obeys the bound, its parent does not.
      for (const Word& word : mesh.words) {
        CHECK(word.rho * 1.0 <= h * (1.0 + 1e-12));
        if (word.length() >= 1) {
          const double parent_rho =
              word.rho / c.ifs.map(word.letters.back()).contraction();
          CHECK(parent_rho * 1.0 > h);
        }
      }
    }
  }
}

TEST_CASE("h-version integration") {
  const Ifs ifs = cantor_ifs();
  const MeasureSpec mu = hausdorff_weights(ifs);
  const CubatureRule rule = p1_unit_rule();

  SUBCASE("constants stay 1 for any mesh") {
    for (double h : {1.0, 0.3, 0.05}) {
      const Mesh mesh = build_mesh(ifs, mu, h, 1.0);
      CHECK(h_integrate(rule, mesh, ifs, monomial_integrand(0)).real() ==
            doctest::Approx(1.0).epsilon(1e-14));
    }
  }
  SUBCASE("exactness on P_1 transfers to every mesh level") {
    for (double h : {1.0, 0.3, 0.1, 0.01}) {
      const Mesh mesh = build_mesh(ifs, mu, h, 1.0);
      CHECK(std::abs(h_integrate(rule, mesh, ifs, monomial_integrand(1)).real() - 0.5) <=
            1e-10);
    }
  }
  SUBCASE("x^2 with the P_1 rule converges at second order") {
    // Steps of ratio 3 track the contraction 1/3, so every step refines the
    // mesh by exactly one level and the pairwise order is clean.
    const double exact = 3.0 / 8.0;
    std::vector<double> errors;
    std::vector<double> hs = {0.9, 0.3, 0.1, 1.0 / 30.0, 1.0 / 90.0};
    for (double h : hs) {
      const Mesh mesh = build_mesh(ifs, mu, h, 1.0);
      errors.push_back(
          std::abs(h_integrate(rule, mesh, ifs, monomial_integrand(2)).real() - exact));
    }
    for (std::size_t i = 1; i < errors.size(); ++i) {
      const double order = std::log(errors[i - 1] / errors[i]) / std::log(3.0);
      CHECK(order > 1.7);
      CHECK(order < 2.3);
    }
  }
  SUBCASE("non-finite integrand values name word and point") {
    const Mesh mesh = build_mesh(ifs, mu, 0.3, 1.0);
    const Integrand bad = helmholtz_integrand(5.0, vec1(0.0));  // pole at S_1(0)
    CHECK_THROWS_WITH_AS(h_integrate(rule, mesh, ifs, bad),
                         doctest::Contains("word 1-1"), NumericalError);
  }
}

TEST_CASE("equal contractions reduce the mesh to the full product decomposition") {
  const Ifs ifs = cantor_ifs();
  const MeasureSpec mu = hausdorff_weights(ifs);
  const int level = 4;
  const double h = std::pow(1.0 / 3.0, level) * 1.0;
  const Mesh mesh = build_mesh(ifs, mu, h, 1.0);
  CHECK(mesh.size() == 16);  // 2^4

  // Against the plain L^p product sum.
  const CubatureRule rule = p1_unit_rule();
  const Integrand f = monomial_integrand(2);
  std::complex<double> manual{0.0, 0.0};
  for (int code = 0; code < 16; ++code) {
    Word word;
    for (int pos = 0; pos < level; ++pos) {
      word = extend_word(word, (code >> pos) & 1, ifs);
    }
    const AffineMap map = compose_word(ifs, word);
    std::complex<double> partial{0.0, 0.0};
    for (int i = 0; i < rule.size(); ++i) {
      partial += rule.weights[i] * f(map(rule.points[i]));
    }
    manual += std::pow(0.5, level) * partial;
  }
  const std::complex<double> meshed = h_integrate(rule, mesh, ifs, f);
  CHECK(std::abs(meshed - manual) <= 1e-14);
}

TEST_CASE("mesh boxes are the mapped parallelotopes") {
  const Ifs ifs = cantor_ifs();
  const MeasureSpec mu = hausdorff_weights(ifs);
  const BoundingBox box(vec1(0.0), vec1(1.0));

  SUBCASE("empty-word mesh returns the box itself") {
    const Mesh mesh = build_mesh(ifs, mu, 2.0, 1.0);
    const auto boxes = mesh_boxes(mesh, ifs, box);
    REQUIRE(boxes.size() == 1);
    CHECK(boxes[0][0][0] == doctest::Approx(0.0));
    CHECK(boxes[0][1][0] == doctest::Approx(1.0));
  }
  SUBCASE("level-1 Cantor mesh gives [0,1/3] and [2/3,1]") {
    const Mesh mesh = build_mesh(ifs, mu, 0.4, 1.0);
    const auto boxes = mesh_boxes(mesh, ifs, box);
    REQUIRE(boxes.size() == 2);
    CHECK(boxes[0][0][0] == doctest::Approx(0.0));
    CHECK(boxes[0][1][0] == doctest::Approx(1.0 / 3.0));
    CHECK(boxes[1][0][0] == doctest::Approx(2.0 / 3.0));
    CHECK(boxes[1][1][0] == doctest::Approx(1.0));
  }
  SUBCASE("every evaluation point lies in its word's interval") {
    const CubatureRule rule = p1_unit_rule();
    const Mesh mesh = build_mesh(ifs, mu, 0.1, 1.0);
    const auto boxes = mesh_boxes(mesh, ifs, box);
    for (std::size_t m = 0; m < mesh.size(); ++m) {
      const AffineMap map = compose_word(ifs, mesh.words[m]);
      const double lo = std::min(boxes[m][0][0], boxes[m][1][0]);
      const double hi = std::max(boxes[m][0][0], boxes[m][1][0]);
      for (int i = 0; i < rule.size(); ++i) {
        const double y = map(rule.points[i])[0];
        CHECK(y >= lo - 1e-14);
        CHECK(y <= hi + 1e-14);
      }
    }
  }
}
