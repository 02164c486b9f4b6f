#include "mtrans/error.hpp"
#include "mtrans/hull.hpp"
#include "mtrans/transversal.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace mtrans;

namespace {

PartedSet S(std::initializer_list<std::uint32_t> masks) { return PartedSet(std::vector<std::uint32_t>(masks)); }

std::vector<PartedSet> all_sets(const GroundSet& g) {
  std::vector<PartedSet> out;
  for (std::size_t code = 0; code < g.subset_count(); ++code) {
    std::vector<std::uint32_t> masks;
    std::size_t rest = code;
    for (int i = 0; i < g.parts(); ++i) {
      masks.push_back(static_cast<std::uint32_t>(rest & ((1u << g.part_size(i)) - 1)));
      rest >>= g.part_size(i);
    }
    out.emplace_back(masks);
  }
  return out;
}

// Every family on g with multiplicities at most cap.
template <class Fn>
void for_each_family(const GroundSet& g, int cap, Fn fn) {
  const auto sets = all_sets(g);
  std::vector<int> mult(sets.size(), 0);
  while (true) {
    SetFamily f(g);
    for (std::size_t i = 0; i < sets.size(); ++i) {
      if (mult[i] > 0) f.add(sets[i], mult[i]);
    }
    fn(f);
    std::size_t i = 0;
    while (i < sets.size() && ++mult[i] > cap) mult[i++] = 0;
    if (i == sets.size()) return;
  }
}

// All multisets over the box with multiplicities <= cap that satisfy the
// bounds, by plain enumeration.
std::set<std::map<std::vector<int>, long long>> brute_transversals(const ParamSet& p, int cap) {
  const auto cells = oracle::box(p.dims().sizes());
  std::set<std::map<std::vector<int>, long long>> out;
  std::vector<int> mult(cells.size(), 0);
  while (true) {
    std::map<std::vector<int>, long long> t;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (mult[i] > 0) t[cells[i]] = mult[i];
    }
    if (oracle::is_transversal(t, p.dims().sizes(), p.k(), oracle::plain(p))) out.insert(t);
    std::size_t i = 0;
    while (i < cells.size() && ++mult[i] > cap) mult[i++] = 0;
    if (i == cells.size()) return out;
  }
}

// The ordering definition taken literally: some ordering of supp(I) such that
// every competitor agreeing on a prefix does not beat I at the next vector.
bool brute_lem(const MultiTransversal& i, const std::vector<MultiTransversal>& competitors) {
  std::vector<ProfileVector> order;
  for (const auto& [v, c] : i.entries()) order.push_back(v);
  do {
    bool good = true;
    for (const auto& other : competitors) {
      for (std::size_t l = 0; l < order.size() && good; ++l) {
        bool prefix_equal = true;
        for (std::size_t h = 0; h < l; ++h) {
          if (other.multiplicity(order[h]) == 0 || other.multiplicity(order[h]) != i.multiplicity(order[h])) {
            prefix_equal = false;
          }
        }
        if (!prefix_equal) break;
        if (other.multiplicity(order[l]) > i.multiplicity(order[l])) good = false;
      }
      if (!good) break;
    }
    if (good) return true;
  } while (std::next_permutation(order.begin(), order.end()));
  return false;
}

}  // namespace

TEST_CASE("gamma constraints") {
  const GroundSet g{1, 1};
  const auto simple = GammaConstraint::simplicity(g.dims());
  const GammaConstraint none;
  const GammaConstraint nothing({GammaRow{0, {{{0, 0}, 1}, {{0, 1}, 1}, {{1, 0}, 1}, {{1, 1}, 1}}}});
  for_each_family(g, 2, [&](const SetFamily& f) {
    CHECK(gamma_ok_family(f, simple) == f.is_simple());
    CHECK(gamma_ok_family(f, none));
    CHECK(gamma_ok_family(f, nothing) == f.empty());
  });
  MultiTransversal t(g.dims());
  CHECK(gamma_ok_multiset(t, nothing));
  t.add({1, 0});
  CHECK_FALSE(gamma_ok_multiset(t, nothing));
  CHECK(gamma_ok_multiset(t, simple));
  t.add({1, 0});
  CHECK_FALSE(gamma_ok_multiset(t, simple));
  CHECK_THROWS_AS(GammaConstraint({GammaRow{-1, {}}}), ParameterError);
  CHECK(simple.cap_for({1, 1}) == 1);
  CHECK_FALSE(none.cap_for({1, 1}));
}

TEST_CASE("T and S matrices") {
  const GroundSet g{2, 2};
  const MultiTransversal one(g.dims(), {{1, 1}});
  CHECK(s_matrix(one, g.part_sizes()).at({1, 1}) == 4);
  CHECK(t_matrix(one).at({1, 1}) == 1);
  const MultiTransversal empty(g.dims());
  CHECK(s_matrix(empty, g.part_sizes()).total() == 0);
  CHECK(t_matrix(empty).total() == 0);

  std::mt19937 rng(2);
  for (int trial = 0; trial < 40; ++trial) {
    MultiTransversal t(g.dims());
    for (const auto& v : enumerate_pi(g.dims())) {
      if (rng() % 3 == 0) t.add(v, 1 + static_cast<int>(rng() % 3));
    }
    CHECK(s_matrix(t, g.part_sizes()) == profile_matrix(realize_homogeneous(t, g)));
  }
}

TEST_CASE("initial families") {
  const GroundSet g{2, 1};
  const MultiTransversal i(g.dims(), {{1, 0}});
  const auto id = ProductPermutation::identity(g);
  CHECK(initial_family(i, g, id) == SetFamily(g, {S({0b01, 0})}));
  const ProductPermutation swapped(g, {{1, 0}, {0}});
  CHECK(initial_family(i, g, swapped) == SetFamily(g, {S({0b10, 0})}));
  CHECK(initial_family(MultiTransversal(g.dims()), g, id).empty());
  CHECK_THROWS_AS(ProductPermutation(g, {{0, 0}, {0}}), ParameterError);
  CHECK(all_product_permutations(GroundSet{2, 3}).size() == 12);

  std::mt19937 rng(6);
  const GroundSet g22{2, 2};
  for (int trial = 0; trial < 60; ++trial) {
    MultiTransversal t(g22.dims());
    for (const auto& v : enumerate_pi(g22.dims())) {
      if (rng() % 3 == 0) t.add(v, 1 + static_cast<int>(rng() % 3));
    }
    std::vector<GammaRow> rows;
    for (int r = 0; r < 2; ++r) {
      GammaRow row{static_cast<std::int64_t>(rng() % 6), {}};
      for (const auto& v : enumerate_pi(g22.dims())) {
        if (rng() % 2 == 0) row.alpha[v] = static_cast<std::int64_t>(rng() % 3);
      }
      rows.push_back(row);
    }
    const GammaConstraint gamma(rows);
    for (const auto& order : all_product_permutations(g22)) {
      const auto h = initial_family(t, g22, order);
      CHECK(profile_matrix(h) == t_matrix(t));
      CHECK(initial_restriction(h, order) == h);
      CHECK(gamma_ok_family(h, gamma) == gamma_ok_multiset(t, gamma));
    }
  }
}

TEST_CASE("transversal enumeration") {
  const auto p22 = ParamSet::uniform(Dimensions{2, 2}, 1, 1);
  const auto simple = enumerate_transversals(p22, GammaConstraint(), true);
  REQUIRE(simple.size() == 7);
  CHECK(simple[0].empty());
  CHECK(simple[5] == MultiTransversal(Dimensions{2, 2}, {{0, 0}, {1, 1}}));
  CHECK(simple[6] == MultiTransversal(Dimensions{2, 2}, {{0, 1}, {1, 0}}));

  const auto p3 = ParamSet::uniform(Dimensions{3}, 1, 1);
  CHECK(enumerate_transversals(p3, GammaConstraint(), true).size() == 4);

  const auto loose = ParamSet::uniform(Dimensions{2, 2}, 1, 2);
  const auto all = enumerate_transversals(loose, GammaConstraint(), true);
  CHECK(all.back().size() == 4);

  for (const auto& n : std::vector<std::vector<int>>{{2, 2}, {2, 3}, {3}, {2, 2, 2}}) {
    for (int L = 1; L <= 2; ++L) {
      const auto p = ParamSet::uniform(Dimensions(n), 1, L);
      std::set<std::map<std::vector<int>, long long>> got;
      for (const auto& t : enumerate_transversals(p, GammaConstraint::multiplicity_cap(p.dims(), 2), false)) {
        got.insert(oracle::plain(t));
      }
      CHECK(got == brute_transversals(p, 2));
    }
  }
  CHECK_THROWS_AS(enumerate_transversals(ParamSet::uniform(Dimensions{3, 3, 3}, 1, 2), GammaConstraint(), false, 1000),
                  ScaleError);
}

TEST_CASE("lexicographically maximal transversals") {
  const auto p22 = ParamSet::uniform(Dimensions{2, 2}, 1, 1);
  const auto simple = GammaConstraint::simplicity(p22.dims());
  const auto competitors = enumerate_transversals(p22, simple, false);
  for (const auto& t : competitors) {
    CHECK(is_lem(t, competitors));
    CHECK(brute_lem(t, competitors));
  }
  CHECK(is_lem(MultiTransversal(p22.dims()), p22, simple));

  const auto p2 = ParamSet::uniform(Dimensions{2}, 1, 2);
  const auto cap2 = GammaConstraint::multiplicity_cap(p2.dims(), 2);
  const auto rivals = enumerate_transversals(p2, cap2, false);
  CHECK(rivals.size() == 6);
  for (const auto& t : rivals) CHECK(is_lem(t, rivals).has_value() == brute_lem(t, rivals));
  MultiTransversal twice(p2.dims());
  twice.add({0}, 2);
  CHECK(is_lem(twice, rivals));
  CHECK_FALSE(is_lem(MultiTransversal(p2.dims(), {{0}}), rivals));
  CHECK_FALSE(is_lem(MultiTransversal(p2.dims(), {{0}, {1}}), rivals));
}

TEST_CASE("convex decompositions") {
  const Dimensions d{3};
  const ProfileMatrix a(d, {1, 0, 0});
  const ProfileMatrix b(d, {0, 2, 0});
  const auto unit = convex_decomposition(a, {b, a});
  REQUIRE(unit);
  CHECK(*unit == std::vector<Rational>{Rational(0), Rational(1)});

  const auto half = convex_decomposition(ProfileMatrix(d, {1, 2, 0}), {ProfileMatrix(d, {2, 0, 0}), ProfileMatrix(d, {0, 4, 0})});
  REQUIRE(half);
  CHECK(*half == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});

  CHECK_FALSE(convex_decomposition(ProfileMatrix(d, {3, 0, 0}), {a, b}));
  CHECK_FALSE(convex_decomposition(a, {}));

  // The non-homogeneous k = M family lies in the hull of homogeneous ones.
  const GroundSet g{2, 2};
  const auto p = ParamSet::uniform(g.dims(), 2, 1);
  const auto f = example1(g, 1, {{0b01}, {0b10}}, {{0, 2}});
  std::vector<ProfileMatrix> candidates;
  for (const auto& t : enumerate_transversals(p, GammaConstraint::simplicity(p.dims()), false)) {
    candidates.push_back(s_matrix(t, g.part_sizes()));
  }
  const auto target = profile_matrix(f);
  const auto lambda = convex_decomposition(target, candidates);
  REQUIRE(lambda);
  Rational total(0);
  for (std::size_t r = 0; r < target.counts().size(); ++r) {
    Rational sum(0);
    for (std::size_t u = 0; u < candidates.size(); ++u) sum += (*lambda)[u] * Rational(candidates[u].counts()[r]);
    CHECK(sum == Rational(target.counts()[r]));
  }
  for (const auto& x : *lambda) {
    CHECK(x >= Rational(0));
    total += x;
  }
  CHECK(total == Rational(1));
}

TEST_CASE("extreme points") {
  const auto p = ParamSet::uniform(Dimensions{3}, 1, 1);
  const auto points = extreme_points(p, GammaConstraint::simplicity(p.dims()));
  const Dimensions d{3};
  CHECK(points == std::vector<ProfileMatrix>{ProfileMatrix(d, {0, 0, 0}), ProfileMatrix(d, {0, 0, 1}),
                                             ProfileMatrix(d, {0, 2, 0}), ProfileMatrix(d, {1, 0, 0})});

  const auto p22 = ParamSet::uniform(Dimensions{2, 2}, 1, 1);
  const auto simple = GammaConstraint::simplicity(p22.dims());
  std::vector<ProfileMatrix> all;
  for (const auto& t : enumerate_transversals(p22, simple, false)) all.push_back(s_matrix(t, {1, 1}));
  std::sort(all.begin(), all.end());
  CHECK(extreme_points(p22, simple) == all);

  const auto p2 = ParamSet::uniform(Dimensions{2}, 1, 2);
  const auto cap2 = GammaConstraint::multiplicity_cap(p2.dims(), 2);
  const Dimensions d2{2};
  CHECK(extreme_points(p2, cap2) ==
        std::vector<ProfileMatrix>{ProfileMatrix(d2, {0, 0}), ProfileMatrix(d2, {0, 2}), ProfileMatrix(d2, {2, 0})});

  // Every LEM transversal gives an extreme point.
  for (const auto& [pp, gamma] : {std::pair{p2, cap2}, std::pair{ParamSet::uniform(Dimensions{2, 3}, 1, 2),
                                                                  GammaConstraint::multiplicity_cap(Dimensions{2, 3}, 2)}}) {
    const auto transversals = enumerate_transversals(pp, gamma, false);
    const auto extreme = extreme_points(pp, gamma);
    const auto m = pp.dims().part_sizes();
    for (const auto& t : transversals) {
      if (is_lem(t, transversals)) {
        CHECK(std::find(extreme.begin(), extreme.end(), s_matrix(t, m)) != extreme.end());
      }
    }
  }
}

TEST_CASE("initial restrictions do not depend on the ordering") {
  const std::vector<std::pair<std::vector<int>, int>> cases{{{1, 2}, 1}, {{2, 2}, 2}};
  for (const auto& [m, k] : cases) {
    const GroundSet g(m);
    const auto p = ParamSet::uniform(g.dims(), k, 1);
    const auto orders = all_product_permutations(g);
    std::vector<std::set<std::vector<std::int64_t>>> seen(orders.size());
    for_each_family(g, 1, [&](const SetFamily& f) {
      if (!is_sperner(f, p)) return;
      for (std::size_t o = 0; o < orders.size(); ++o) {
        seen[o].insert(profile_matrix(initial_restriction(f, orders[o])).counts());
      }
    });
    for (std::size_t o = 1; o < orders.size(); ++o) CHECK(seen[o] == seen[0]);
  }
}

TEST_CASE("profile matrices of Sperner multi-families decompose over homogeneous ones") {
  const GroundSet g{1, 2};
  const auto p = ParamSet::uniform(g.dims(), 1, 1);
  const auto gamma = GammaConstraint::multiplicity_cap(p.dims(), 2);
  std::vector<ProfileMatrix> candidates;
  for (const auto& t : enumerate_transversals(p, gamma, false)) candidates.push_back(s_matrix(t, g.part_sizes()));
  int families = 0;
  for_each_family(g, 2, [&](const SetFamily& f) {
    if (!is_sperner(f, p)) return;
    ++families;
    CHECK(convex_decomposition(profile_matrix(f), candidates));
  });
  CHECK(families > 0);
}
