#include "mtrans/construct.hpp"
#include "mtrans/error.hpp"
#include "mtrans/transversal.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace mtrans;

namespace {

ParamSet ones(Dimensions dims, int k) { return ParamSet::uniform(std::move(dims), k, 1); }

MultiTransversal random_multiset(const Dimensions& dims, std::mt19937& rng, int max_mult) {
  MultiTransversal t(dims);
  for (const auto& v : enumerate_pi(dims)) {
    if (rng() % 3 == 0) t.add(v, 1 + static_cast<int>(rng() % static_cast<unsigned>(max_mult)));
  }
  return t;
}

}  // namespace

TEST_CASE("transversal check on small cases") {
  const auto p = ones(Dimensions{2, 3}, 1);
  CHECK(check_transversal(MultiTransversal(Dimensions{2, 3}, {{0, 0}, {1, 2}}), p).ok);
  CHECK(check_transversal(MultiTransversal(Dimensions{2, 3}), p).ok);

  const auto bad = check_transversal(MultiTransversal(Dimensions{2, 3}, {{0, 0}, {0, 1}}), p);
  CHECK_FALSE(bad.ok);
  REQUIRE(bad.witnesses.size() == 1);
  CHECK(bad.witnesses[0].P == Subset{1});
  CHECK(bad.witnesses[0].fixed == std::vector<int>{0});
  CHECK(bad.witnesses[0].count == 2);
  CHECK(bad.witnesses[0].bound == 1);

  CHECK_THROWS_AS(check_transversal(MultiTransversal(Dimensions{2, 2}), p), PreconditionError);
}

TEST_CASE("transversal check agrees with the brute-force definition") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const int M = 1 + static_cast<int>(rng() % 3);
    std::vector<int> n;
    for (int j = 0; j < M; ++j) n.push_back(1 + static_cast<int>(rng() % 4));
    const int k = 1 + static_cast<int>(rng() % static_cast<unsigned>(M));
    std::map<Subset, std::int64_t> bounds;
    for (const auto& P : k_subsets(M, k)) bounds[P] = 1 + static_cast<int>(rng() % 3);
    const ParamSet p(Dimensions(n), k, bounds);
    const auto t = random_multiset(p.dims(), rng, 2);
    CHECK(check_transversal(t, p).ok == oracle::is_transversal(t, p));
  }
}

TEST_CASE("fullness") {
  const auto p = ones(Dimensions{2, 3}, 1);
  const auto full = fullness(MultiTransversal(Dimensions{2, 3}, {{0, 0}, {1, 2}}), p);
  CHECK(full.is_full);
  CHECK(full.tight_sets == std::vector<Subset>{{1}});
  CHECK_FALSE(fullness(MultiTransversal(Dimensions{2, 3}, {{0, 0}}), p).is_full);

  const auto both = fullness(MultiTransversal(Dimensions{2, 2}, {{0, 0}, {1, 1}}), ones(Dimensions{2, 2}, 1));
  CHECK(both.is_full);
  CHECK(both.tight_sets == std::vector<Subset>{{0}, {1}});

  CHECK_THROWS_AS(fullness(MultiTransversal(Dimensions{2, 3}, {{0, 0}, {0, 1}}), p), PreconditionError);
}

TEST_CASE("constant box-to-bound ratio") {
  CHECK(konstant_holds(ones(Dimensions{2, 2}, 1)));
  CHECK_FALSE(konstant_holds(ones(Dimensions{2, 3}, 1)));
  CHECK(konstant_holds(ParamSet(Dimensions{2, 4, 8}, 2, {{{0, 1}, 2}, {{0, 2}, 4}, {{1, 2}, 8}})));
}

TEST_CASE("simplicity") {
  MultiTransversal t(Dimensions{2, 2}, {{0, 0}, {1, 1}});
  CHECK(is_simple(t));
  t.add({0, 0});
  CHECK_FALSE(is_simple(t));
  CHECK(is_simple(MultiTransversal(Dimensions{2, 2})));
}

TEST_CASE("array expansion and strength") {
  const auto p = ones(Dimensions{2, 2}, 1);
  const MultiTransversal diag(Dimensions{2, 2}, {{0, 0}, {1, 1}});
  const Moa a = to_moa(diag, p);
  CHECK(a.rows == std::vector<std::vector<int>>{{0, 0}, {1, 1}});
  CHECK(a.strength == 1);
  CHECK(a.lambda == std::map<Subset, std::int64_t>{{{0}, 1}, {{1}, 1}});

  const auto s1 = moa_strength(a, 1);
  CHECK(s1.holds);
  CHECK(s1.lambda == std::map<Subset, std::int64_t>{{{0}, 1}, {{1}, 1}});

  const auto s2 = moa_strength(a, 2);
  CHECK_FALSE(s2.holds);
  CHECK(s2.columns == Subset{0, 1});
  CHECK(s2.first_tuple == std::vector<int>{0, 0});
  CHECK(s2.first_count == 1);
  CHECK(s2.second_tuple == std::vector<int>{0, 1});
  CHECK(s2.second_count == 0);

  const auto s0 = moa_strength(a, 0);
  CHECK(s0.holds);
  CHECK(s0.lambda.at(Subset{}) == 2);

  CHECK_THROWS_AS(moa_strength(a, 3), RangeError);
  CHECK_THROWS_AS(to_moa(MultiTransversal(Dimensions{2, 2}, {{0, 0}}), p), ConstructionError);
  CHECK_THROWS_AS(to_moa(MultiTransversal(Dimensions{2, 3}, {{0, 0}, {1, 2}}), ones(Dimensions{2, 3}, 1)),
                  ConstructionError);
}

TEST_CASE("full grid is a strength-one array") {
  const auto p = ParamSet::uniform(Dimensions{2, 2}, 1, 2);
  MultiTransversal grid(Dimensions{2, 2});
  for (const auto& v : enumerate_pi(grid.dims())) grid.add(v);
  const Moa a = to_moa(grid, p);
  CHECK(a.rows.size() == 4);
  CHECK(moa_strength(a, 1).holds);

  const auto back = from_moa(a, 1);
  CHECK(back.params.k() == 1);
  CHECK(back.params.bound({0}) == 2);
  CHECK(back.params.bound({1}) == 2);
  CHECK(back.transversal == grid);
}

TEST_CASE("array round trip on the (2,4,8) instance") {
  const ParamSet p(Dimensions{2, 4, 8}, 2, {{{0, 1}, 2}, {{0, 2}, 4}, {{1, 2}, 8}});
  const auto t = construct_full(p, Rational(0));
  REQUIRE(t.size() == 16);
  const Moa a = to_moa(t, p);
  const auto back = from_moa(a, 1);
  CHECK(back.transversal == t);
  CHECK(back.params == p);
  CHECK(rows_as_multiset(a) == t);

  Moa broken = a;
  broken.rows.pop_back();
  CHECK_THROWS_AS(from_moa(broken, 1), ConstructionError);
  CHECK_THROWS_AS(from_moa(a, 3), ConstructionError);
}
