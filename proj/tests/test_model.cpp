#include <doctest.h>

#include <algorithm>
#include <random>

#include "tmcm/model.hpp"

using namespace tmcm;

namespace {

struct GoldenRow {
  Labeling labels;
  Energy by_m[3];
};

const GoldenRow golden[] = {
    {{1, 1, 1, 1, 2, 2}, {1, 2, 2}}, {{1, 2, 3, 4, 5, 6}, {3, 6, 7}},
    {{1, 1, 1, 9, 9, 9}, {3, 6, 9}}, {{1, 1, 1, 8, 8, 9}, {3, 6, 9}},
    {{1, 1, 1, 1, 1, 7}, {3, 3, 3}}, {{1, 1, 1, 2, 3, 4}, {3, 5, 6}},
};

// The i-th smallest and i-th largest labels coincide iff some label v has
// fewer than i labels strictly below it and fewer than i strictly above.
int robust_count(const Labeling& x, int pairs) {
  int count = 0;
  for (int i = 1; i <= pairs; ++i) {
    bool same = false;
    for (Label v : x) {
      const auto below = std::count_if(x.begin(), x.end(), [v](Label u) { return u < v; });
      const auto above = std::count_if(x.begin(), x.end(), [v](Label u) { return u > v; });
      same = same || (below < i && above < i);
    }
    count += same ? 0 : 1;
  }
  return count;
}

bool next_labeling(Labeling& x, int h) {
  for (auto& v : x) {
    if (v < h) {
      ++v;
      return true;
    }
    v = 1;
  }
  return false;
}

}  // namespace

TEST_SUITE("model") {

TEST_CASE("clique potential matches the golden table") {
  for (const auto& row : golden) {
    for (int m = 1; m <= 3; ++m) {
      CAPTURE(m);
      CHECK(clique_potential(row.labels, DistanceSpec::linear(3, m), 1) ==
            row.by_m[m - 1]);
    }
  }
}

TEST_CASE("constant clique costs nothing") {
  const Labeling x{5, 5, 5, 5};
  for (int m = 0; m <= 2; ++m) {
    CHECK(clique_potential(x, DistanceSpec::linear(3, m), 1) == 0);
    CHECK(clique_potential(x, DistanceSpec::quadratic(7, m), 4) == 0);
  }
}

TEST_CASE("energy sums unaries and cliques") {
  const Model split(9, std::vector<std::vector<Energy>>(6, std::vector<Energy>(9, 0)),
                    {{{0, 1, 2, 3, 4, 5}, 1}}, DistanceSpec::linear(3, 3));
  CHECK(energy(split, Labeling{1, 1, 1, 9, 9, 9}) == 9);

  const Model single(2, {{4, 7}}, {}, DistanceSpec::linear(1));
  CHECK(energy(single, Labeling{1}) == 4);

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::vector<Energy>> unary(2, std::vector<Energy>(2));
    for (auto& row : unary) {
      for (auto& v : row) v = static_cast<Energy>(rng() % 20);
    }
    const Energy w = static_cast<Energy>(rng() % 5);
    const Energy big_m = static_cast<Energy>(rng() % 3);
    const Model model(2, unary, {{{0, 1}, w}}, DistanceSpec::linear(big_m));
    for (Label a = 1; a <= 2; ++a) {
      for (Label b = 1; b <= 2; ++b) {
        const Energy pair = w * std::min<Energy>(a == b ? 0 : 1, big_m);
        CHECK(energy(model, Labeling{a, b}) == unary[0][a - 1] + unary[1][b - 1] + pair);
      }
    }
  }
}

TEST_CASE("clique potential invariants") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const int c = 2 + static_cast<int>(rng() % 7);
    const int h = 2 + static_cast<int>(rng() % 8);
    const Energy big_m = static_cast<Energy>(rng() % 10);
    const Energy w = static_cast<Energy>(rng() % 4);
    Labeling x(c);
    for (auto& v : x) v = 1 + static_cast<Label>(rng() % h);
    for (const bool quadratic : {false, true}) {
      Energy previous = 0;
      for (int m = 0; m <= 4; ++m) {
        const auto d = quadratic ? DistanceSpec::quadratic(big_m, m)
                                 : DistanceSpec::linear(big_m, m);
        const Energy value = clique_potential(x, d, w);
        CHECK(value <= w * d.pairs_for(x.size()) * big_m);
        CHECK(value >= previous);
        previous = value;
        auto shuffled = x;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        CHECK(clique_potential(shuffled, d, w) == value);
      }
    }
  }
}

TEST_CASE("two-variable cliques reduce to truncated convex pairs") {
  for (Label a = 1; a <= 6; ++a) {
    for (Label b = 1; b <= 6; ++b) {
      const auto d = DistanceSpec::quadratic(10, 1);
      const Label pair[] = {a, b};
      CHECK(clique_potential(pair, d, 3) == 3 * std::min<Energy>((a - b) * (a - b), 10));
    }
  }
}

TEST_CASE("unit truncation counts disagreement") {
  for (int c = 2; c <= 4; ++c) {
    for (int h = 2; h <= 4; ++h) {
      for (int m = 1; m <= 2; ++m) {
        const auto d = DistanceSpec::linear(1, m);
        Labeling x(c, 1);
        do {
          CHECK(clique_potential(x, d, 1) == robust_count(x, d.pairs_for(x.size())));
        } while (next_labeling(x, h));
      }
    }
  }
}

TEST_CASE("negative unaries are shifted up") {
  const Model model(3, {{-2, 0, 1}, {4, 5, 6}, {-1, -3, 0}}, {},
                    DistanceSpec::linear(1));
  CHECK(model.unary_shift() == 5);
  CHECK(model.unary(0, 1) == 0);
  CHECK(model.unary(0, 3) == 3);
  CHECK(model.unary(1, 1) == 4);
  CHECK(model.unary(2, 2) == 0);
}

TEST_CASE("invalid models are rejected") {
  const auto d = DistanceSpec::linear(2);
  const std::vector<std::vector<Energy>> u(3, {0, 0});
  CHECK_THROWS_AS(Model(2, u, {{{0}, 1}}, d), std::invalid_argument);
  CHECK_THROWS_AS(Model(2, u, {{{0, 0}, 1}}, d), std::invalid_argument);
  CHECK_THROWS_AS(Model(2, u, {{{0, 3}, 1}}, d), std::invalid_argument);
  CHECK_THROWS_AS(Model(2, u, {{{0, 1}, -1}}, d), std::invalid_argument);
  CHECK_THROWS_AS(Model(3, u, {}, d), std::invalid_argument);
  CHECK_THROWS_AS(Model(3, {{0, 0, 0}}, {}, DistanceSpec::tabulated({0, 1}, 1)),
                  std::invalid_argument);

  const Model ok(2, u, {{{0, 1, 2}, 1}}, d);
  CHECK(ok.max_clique_size() == 3);
  CHECK_THROWS_AS(ok.check_labeling(Labeling{1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(ok.check_labeling(Labeling{1, 2, 3}), std::invalid_argument);
  CHECK_NOTHROW(ok.check_labeling(Labeling{1, 2, 2}));
}

}
