#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "tmcm/oracle.hpp"
#include "tmcm/range_expansion.hpp"
#include "tmcm/synthetic.hpp"

using namespace tmcm;

namespace {

Model pairwise(int c, int m) {
  std::vector<int> members(c);
  for (int a = 0; a < c; ++a) members[a] = a;
  return Model(3, std::vector<std::vector<Energy>>(c, std::vector<Energy>(3, 0)),
               {{members, 1}}, DistanceSpec::linear(2, m));
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("reference energy agrees with the model") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    TinyFamily family;
    family.kind = seed % 2 ? DistanceKind::linear : DistanceKind::quadratic;
    const auto model = random_tiny_model(seed, family);
    std::mt19937_64 rng(seed);
    Labeling x(model.num_vars());
    for (auto& v : x) v = 1 + static_cast<Label>(rng() % model.num_labels());
    CHECK(reference_energy(model, x) == energy(model, x));
    CHECK(reference_clique_energy(model, x) == clique_energy_total(model, x));
  }
}

TEST_CASE("brute force on small cases") {
  SUBCASE("unary only") {
    const Model model(3, {{4, 2, 9}, {1, 1, 0}, {7, 3, 3}}, {}, DistanceSpec::linear(1));
    const auto best = brute_force_min(model);
    CHECK(best.labeling == Labeling{2, 3, 2});
    CHECK(best.energy == 5);
  }
  SUBCASE("2x2 lattice with one 4-clique") {
    const Model model(3, {{0, 5, 9}, {6, 0, 9}, {9, 5, 0}, {0, 1, 2}},
                      {{{0, 1, 2, 3}, 2}}, DistanceSpec::linear(2, 2));
    const auto best = brute_force_min(model);
    Energy expected = std::numeric_limits<Energy>::max();
    for (Label a = 1; a <= 3; ++a)
      for (Label b = 1; b <= 3; ++b)
        for (Label c = 1; c <= 3; ++c)
          for (Label d = 1; d <= 3; ++d)
            expected = std::min(expected, energy(model, Labeling{a, b, c, d}));
    CHECK(best.energy == expected);
    CHECK(energy(model, best.labeling) == expected);
    CHECK(best.energy <= run(model).energy);
  }
}

TEST_CASE("brute force over move labelings") {
  const Model model(3, {{4, 2, 9}, {1, 1, 0}}, {}, DistanceSpec::linear(1));
  const IntervalProblem problem(model, {3, 1}, 1, 2);
  const auto best = brute_force_min_overestimate(problem);
  CHECK(best.y == MoveLabeling{2, 0});
  CHECK(best.energy == 3);
  CHECK(best.energy <= overestimate_energy(problem, expand(problem).y));
}

TEST_CASE("budget is enforced") {
  const Model model(10, std::vector<std::vector<Energy>>(8, std::vector<Energy>(10, 0)),
                    {}, DistanceSpec::linear(1));
  CHECK_THROWS_AS(brute_force_min(model), BudgetExceeded);
  CHECK_NOTHROW(brute_force_min(model, 200'000'000));
}

TEST_CASE("bound factors") {
  CHECK(bound_factor(pairwise(2, 1)) == doctest::Approx(2 + std::sqrt(2.0)));
  CHECK(bound_factor(pairwise(4, 1)) == doctest::Approx((6 + std::sqrt(20.0)) / 2));
  CHECK(bound_factor(pairwise(4, 2)) == doctest::Approx(6 + std::sqrt(20.0)));
  CHECK(bound_factor(pairwise(2, 2)) == doctest::Approx(2 + std::sqrt(2.0)));
  const Model table(3, {{0, 0, 0}, {0, 0, 0}}, {{{0, 1}, 1}},
                    DistanceSpec::tabulated({0, 1, 2}, 2));
  CHECK_THROWS_AS(bound_factor(table), UnsupportedDistance);
}

TEST_CASE("reference alpha expansion") {
  const Model model(3, {{0, 4, 4}, {4, 0, 4}, {4, 4, 0}}, {{{0, 1, 2}, 5}},
                    DistanceSpec::linear(1));
  // Every single-label switch of one variable costs its unary plus the clique.
  const auto result = reference_alpha_expansion(model, {1, 1, 1});
  CHECK(result.labeling == Labeling{1, 1, 1});
  CHECK(result.energy == 8);
  const auto spread = reference_alpha_expansion(model, {1, 2, 3});
  CHECK(spread.energy <= reference_energy(model, Labeling{1, 2, 3}));
}

TEST_CASE("audits") {
  const Model free_model(3, {{3, 1, 2}, {0, 5, 5}}, {}, DistanceSpec::linear(1));
  const auto report = audit_bound(free_model, run(free_model).labeling, 1, "free");
  CHECK(report.satisfied);
  CHECK(report.final_energy == report.optimal_unary);
  CHECK(report.optimal_clique == 0);

  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto model = random_tiny_model(seed);
    const auto result = run(model);
    const auto r = audit_bound(model, result.labeling, result.log.interval_length);
    CHECK(r.satisfied);
    CHECK_FALSE(r.advisory);
  }

  std::vector<BoundReport> reports{report};
  std::ostringstream out;
  write_bound_csv(out, reports, {"x"});
  CHECK(out.str().rfind("# x\ninstance,energy,", 0) == 0);
}

}
