#include "mtrans/error.hpp"
#include "mtrans/optimize.hpp"
#include "mtrans/transversal.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace mtrans;

namespace {

// Plain enumeration of all simple transversals, weight by binomials.
long long brute_max_weight(const ParamSet& p, const std::vector<int>& m) {
  const auto cells = oracle::box(p.dims().sizes());
  long long best = 0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << cells.size()); ++mask) {
    std::map<std::vector<int>, long long> t;
    long long w = 0;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (!(mask >> c & 1u)) continue;
      t[cells[c]] = 1;
      long long term = 1;
      for (std::size_t j = 0; j < m.size(); ++j) term *= oracle::binom(m[j], cells[c][j]);
      w += term;
    }
    if (w > best && oracle::is_transversal(t, p.dims().sizes(), p.k(), oracle::plain(p))) best = w;
  }
  return best;
}

std::vector<std::vector<int>> part_size_lists(int max_cells) {
  std::vector<std::vector<int>> out;
  std::vector<std::vector<int>> frontier{{}};
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& m : frontier) {
      for (int x = 1; x <= max_cells; ++x) {
        auto grown = m;
        grown.push_back(x);
        int cells = 1;
        for (const int y : grown) cells *= y + 1;
        if (cells > max_cells) continue;
        out.push_back(grown);
        next.push_back(grown);
      }
    }
    frontier = next;
  }
  return out;
}

}  // namespace

TEST_CASE("solver examples") {
  const std::vector<int> m{2, 2};
  const auto p2 = ParamSet::uniform(Dimensions{3, 3}, 2, 1);
  for (const auto mode : {SolveMode::exhaustive, SolveMode::branch_and_bound}) {
    const auto r = max_weight_transversal(p2, m, mode);
    CHECK(r.weight == 4);
    CHECK(r.best == MultiTransversal(Dimensions{3, 3}, {{1, 1}}));
    CHECK(r.optimal);
  }

  const auto p1 = ParamSet::uniform(Dimensions{3, 3}, 1, 1);
  for (const auto mode : {SolveMode::exhaustive, SolveMode::branch_and_bound}) {
    const auto r = max_weight_transversal(p1, m, mode);
    CHECK(r.weight == 6);
    CHECK(r.best == MultiTransversal(Dimensions{3, 3}, {{0, 0}, {1, 1}, {2, 2}}));
    CHECK(check_transversal(r.best, p1).ok);
  }

  const ParamSet open(Dimensions{2, 3}, 1, {{{0}, 2}, {{1}, 3}});
  const auto r = max_weight_transversal(open, {1, 2}, SolveMode::branch_and_bound);
  CHECK(r.weight == 8);
  CHECK(r.best.size() == 6);

  CHECK_THROWS_AS(max_weight_transversal(ParamSet::uniform(Dimensions{5, 5}, 1, 1), {4, 4}, SolveMode::exhaustive),
                  ScaleError);
  CHECK_THROWS_AS(
      max_weight_transversal(ParamSet::uniform(Dimensions{101, 101}, 1, 1), {100, 100}, SolveMode::branch_and_bound),
      ScaleError);
  CHECK_THROWS_AS(max_weight_transversal(p1, {2, 3}, SolveMode::exhaustive), PreconditionError);
}

TEST_CASE("branch and bound matches plain enumeration") {
  std::mt19937 rng(21);
  const auto lists = part_size_lists(12);
  for (int trial = 0; trial < 60; ++trial) {
    const auto& m = lists[rng() % lists.size()];
    const Dimensions dims = Dimensions::from_part_sizes(m);
    const int M = dims.parts();
    const int k = 1 + static_cast<int>(rng() % static_cast<unsigned>(M));
    std::map<Subset, std::int64_t> bounds;
    for (const auto& P : k_subsets(M, k)) bounds[P] = 1 + static_cast<int>(rng() % 2);
    const ParamSet p(dims, k, bounds);
    const long long expected = brute_max_weight(p, m);
    const auto bnb = max_weight_transversal(p, m, SolveMode::branch_and_bound);
    const auto ex = max_weight_transversal(p, m, SolveMode::exhaustive);
    CHECK(bnb.weight == expected);
    CHECK(ex.weight == expected);
    CHECK(bnb.best == ex.best);
    CHECK(check_transversal(bnb.best, p).ok);
  }
}

TEST_CASE("closed-form maxima") {
  CHECK(max_size_k_eq_M({2, 2}) == 4);
  CHECK(max_size_k_eq_M({1, 1, 1}) == 1);
  CHECK(max_size_k_eq_M({3, 2}) == 6);
  CHECK(max_size_k_eq_M_minus_1({2, 2}) == 6);
  CHECK(max_size_k_eq_M_minus_1({1, 1}) == 2);
  CHECK(max_size_k_eq_M_minus_1({3, 2}) == 10);
  CHECK_THROWS_AS(max_size_k_eq_M_minus_1({2, 3}), ParameterError);
}

TEST_CASE("rearrangement maximum") {
  using Row = std::vector<Rational>;
  CHECK(rearrangement_max({Row{Rational(3), Rational(1, 2)}}) == Rational(3, 2));
  CHECK(rearrangement_max({Row{Rational(2), Rational(2)}, Row{Rational(1), Rational(1)}}) == Rational(5));
  CHECK(rearrangement_max({Row{Rational(2), Rational(0)}, Row{Rational(1), Rational(0)}}) == Rational(0));
  CHECK_THROWS_AS(rearrangement_max({Row{Rational(1)}, Row{Rational(2)}}), ParameterError);

  std::mt19937 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const int K = 1 + static_cast<int>(rng() % 4);
    const int M = 1 + static_cast<int>(rng() % 3);
    std::vector<std::vector<int>> cols(static_cast<std::size_t>(M));
    for (auto& col : cols) {
      for (int l = 0; l < K; ++l) col.push_back(static_cast<int>(rng() % 6));
      std::sort(col.rbegin(), col.rend());
    }
    std::vector<Row> a(static_cast<std::size_t>(K), Row(static_cast<std::size_t>(M)));
    for (int l = 0; l < K; ++l) {
      for (int j = 0; j < M; ++j) a[l][j] = Rational(cols[j][l]);
    }
    const Rational best = rearrangement_max(a);
    // Every choice of per-column permutations.
    std::vector<std::vector<int>> perms;
    std::vector<int> id(static_cast<std::size_t>(K));
    std::iota(id.begin(), id.end(), 0);
    do perms.push_back(id);
    while (std::next_permutation(id.begin(), id.end()));
    std::vector<std::size_t> pick(static_cast<std::size_t>(M), 0);
    while (true) {
      long long sum = 0;
      for (int l = 0; l < K; ++l) {
        long long prod = 1;
        for (int j = 0; j < M; ++j) prod *= cols[j][perms[pick[j]][l]];
        sum += prod;
      }
      CHECK(Rational(sum) <= best);
      std::size_t j = 0;
      while (j < pick.size() && ++pick[j] == perms.size()) pick[j++] = 0;
      if (j == pick.size()) break;
    }
  }
}

TEST_CASE("maximum families and homogeneity") {
  const auto v11 = genhom_check(ParamSet::uniform(Dimensions{2, 2}, 1, 1), {1, 1});
  CHECK(v11.theorem_applies);
  CHECK(v11.hypothesis_holds);
  CHECK(v11.families_checked == 16);
  CHECK(v11.family_max == 2);
  CHECK(v11.all_maxima_homogeneous);

  const auto v22 = genhom_check(ParamSet::uniform(Dimensions{3, 3}, 2, 1), {2, 2});
  CHECK_FALSE(v22.theorem_applies);
  CHECK(v22.family_max == 4);
  CHECK(v22.maximum_families == 1);
  CHECK(v22.all_maxima_homogeneous);

  const auto v12 = genhom_check(ParamSet::uniform(Dimensions{2, 3}, 2, 1), {1, 2});
  CHECK_FALSE(v12.theorem_applies);
  CHECK(v12.family_max == 2);
  CHECK_FALSE(v12.all_maxima_homogeneous);
  REQUIRE(v12.counterexample);
  CHECK(v12.counterexample->size() == 2);

  const auto multi = genhom_check(ParamSet::uniform(Dimensions{2, 2}, 1, 1), {1, 1}, 2);
  CHECK(multi.families_checked == 81);
  CHECK(multi.all_maxima_homogeneous);

  CHECK_THROWS_AS(genhom_check(ParamSet::uniform(Dimensions{4, 4}, 1, 1), {3, 3}), ScaleError);
}
