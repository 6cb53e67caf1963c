#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "dcm/cmtype.hpp"

using namespace dcm;

TEST_CASE("subset utilities") {
  CHECK(canonical_subset(5, {3, 1, 1}) == Subset{1, 3});
  CHECK_THROWS_AS(canonical_subset(5, {5}), std::invalid_argument);
  CHECK(complement_subset(4, {0, 2}) == Subset{1, 3});
  CHECK(subset_from_mask(4, 0b1010) == Subset{1, 3});
  CHECK(subset_str(Subset{0, 3}) == "0,3");
  CHECK(parse_subset(6, "3,0") == Subset{0, 3});
  CHECK(parse_subset(6, "3,3") == Subset{3});
  CHECK_THROWS_AS(parse_subset(6, "6"), std::invalid_argument);
  CHECK_THROWS_AS(parse_subset(6, "1,x"), std::invalid_argument);
  Subset c = {0, 1};
  std::set<Subset> seen;
  do seen.insert(c);
  while (next_combination(c, 4));
  CHECK(seen.size() == 6);
}

TEST_CASE("phi_element support, n = 3, S = {0}") {
  auto ctx = build_dihedral_cm(3);
  auto phi = phi_element(ctx, {0});
  // support: sigma, sigma^2, sigma tau, sigma^2 tau on the plain half
  // (cosets with j not in S), rho and rho tau for j in S.
  std::set<std::string> support;
  for (unsigned g = 0; g < ctx.Gc.order(); ++g)
    if (!phi.coeff[g].is_zero()) {
      CHECK(phi.coeff[g] == Cyc(1));
      support.insert(ctx.Gc.label(static_cast<gidx>(g)));
    }
  std::set<std::string> want = {"s", "s^2", "s*t", "s^2*t", "r", "t*r"};
  CHECK(support == want);
  // CM-type axiom: phi(g) + phi(rho g) = 1 for every g
  for (unsigned g = 0; g < ctx.Gc.order(); ++g)
    CHECK(phi.coeff[g] + phi.coeff[ctx.rho_shift(static_cast<gidx>(g))] == Cyc(1));
}

TEST_CASE("empty set gives the constant type") {
  auto ctx = build_dihedral_cm(5);
  auto phi = phi_element(ctx, {});
  for (unsigned g = 0; g < ctx.half(); ++g) CHECK(phi.coeff[g] == Cyc(1));
  for (unsigned g = ctx.half(); g < ctx.Gc.order(); ++g) CHECK(phi.coeff[g] == Cyc(0));
  CHECK(a_s0_oracle(ctx, {}) == Cyc(rat(1, 2)) * trace_fn(ctx));
}

TEST_CASE("a_counts pins") {
  {
    CountData c = a_counts(5, {0, 1});
    CHECK(c.r == 2);
    CHECK(c.m == 2);
    CHECK(c.a[1] == 1);
    CHECK(c.a[2] == 0);
  }
  {
    CountData c = a_counts(4, {0, 1});
    CHECK(c.m == 2);
    CHECK(c.a[1] == 1);
    CHECK(c.a[2] == 0);  // no pair at distance 2
    CHECK(c.b0 == 2);
    CHECK(c.b1 == 2);
  }
  {
    CountData c = a_counts(6, {0, 3});
    CHECK(c.a[1] == 0);
    CHECK(c.a[2] == 0);
    CHECK(c.a[3] == 1);  // distance-3 pair counted once (halved diagonal)
    CHECK(c.b0 == 2);
    CHECK(c.b1 == 2);
  }
  // sum rule: sum a_j = r(r-1)/2, both parities
  for (unsigned n = 3; n <= 9; ++n)
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
      Subset S = subset_from_mask(n, mask);
      CountData c = a_counts(n, S);
      Rat sum = 0;
      for (unsigned j = 1; j <= c.m; ++j) sum += c.a[j];
      CHECK(sum == Rat(static_cast<long>(c.r) * (static_cast<long>(c.r) - 1)) / 2);
      if (n % 2 == 0) {
        // corrected alternating rule: sum (-1)^j a_j = (b0 - b1 - r)/2
        Rat alt = 0;
        for (unsigned j = 1; j <= c.m; ++j) alt += (j % 2 ? -c.a[j] : c.a[j]);
        CHECK(alt == (c.b0 - c.b1 - Rat(static_cast<long>(c.r))) / 2);
      }
    }
}

TEST_CASE("closed form equals oracle, n = 5 and 6, all subsets") {
  for (unsigned n : {5u, 6u}) {
    auto ctx = build_dihedral_cm(n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
      Subset S = subset_from_mask(n, mask);
      ClassFunction oracle = a_s0_oracle(ctx, S);
      CHECK(oracle == a_s0_closed(ctx, S, ClosedForm::certified));
      CHECK(is_H00(ctx, oracle));
      // self-dual: A^0 is fixed by g -> g^{-1}
      CHECK(oracle == dual(oracle));
      if (n % 2 == 1 || S.size() <= 1) {
        // odd n: the printed closed form is exact; even n: the printed
        // middle coefficient r/n coincides with 1/n while r <= 1
        CHECK(oracle == a_s0_closed(ctx, S, ClosedForm::published));
      } else {
        CHECK(!(oracle == a_s0_closed(ctx, S, ClosedForm::published)));
      }
    }
  }
}

TEST_CASE("closed-form structure pin, n = 5, S = {0}") {
  auto ctx = build_dihedral_cm(5);
  ClassFunction tr = trace_fn(ctx);
  ClassFunction o0 = class_indicator(ctx.Gc, ctx.Gc.class_of(0));
  ClassFunction refl = class_indicator(ctx.Gc, ctx.Gc.class_of(ctx.tau));
  ClassFunction want = Cyc(rat(1, 2)) * tr - Cyc(rat(1, 5)) * one_minus_rho(ctx, tr) +
                       Cyc(rat(1, 5)) * one_minus_rho(ctx, o0 + Cyc(rat(1, 5)) * refl);
  CHECK(a_s0_oracle(ctx, {0}) == want);
}

TEST_CASE("A^0 is constant on type orbits") {
  auto ctx = build_dihedral_cm(6);
  Subset S = {0, 2, 3};
  ClassFunction a0 = a_s0_oracle(ctx, S);
  for (const Subset& T : orbit_subsets(ctx, S)) CHECK(a_s0_oracle(ctx, T) == a0);
}

TEST_CASE("orbit classification pins") {
  // r = 1: a single orbit; r = 2: floor(n/2) orbits
  for (unsigned n = 3; n <= 12; ++n) {
    auto ctx = build_dihedral_cm(n);
    CHECK(orbit_classify(ctx, 1).orbits.size() == 1);
    CHECK(orbit_classify(ctx, 2).orbits.size() == n / 2);
  }
  auto ctx5 = build_dihedral_cm(5);
  auto rep5 = orbit_classify(ctx5, 2);
  REQUIRE(rep5.orbits.size() == 2);
  CHECK(rep5.orbits[0].rep == Subset{0, 1});
  CHECK(rep5.orbits[0].size == 5);
  CHECK(rep5.orbits[1].rep == Subset{0, 2});
  CHECK(rep5.orbits[1].size == 5);
  // {0,i} ~ {0,j} iff i = +-j mod n (exhaustive)
  for (unsigned n = 3; n <= 10; ++n) {
    auto ctx = build_dihedral_cm(n);
    for (unsigned i = 1; i < n; ++i)
      for (unsigned j = 1; j < n; ++j) {
        bool same = same_orbit(ctx, canonical_subset(n, {0, i}), canonical_subset(n, {0, j}));
        CHECK(same == (i == j || i + j == n));
      }
  }
}

TEST_CASE("n = 5 exceptional pairs, up to translation") {
  auto ctx = build_dihedral_cm(5);
  CHECK(same_orbit(ctx, {1, 2}, {0, 1}));
  CHECK(same_orbit(ctx, {1, 3}, {0, 2}));
  CHECK(!same_orbit(ctx, {1, 2}, {1, 3}));
  // the full orbit holds the 5 translates plus their 5 complements (rho half)
  CHECK(orbit_subsets(ctx, {1, 2}).size() == 10);
  CHECK(orbit_subsets(ctx, {1, 3}).size() == 10);
}

TEST_CASE("reflex stabilizers: the three subgroup cases") {
  // case 1: i != n/2 gives <s^i t>, order 2
  {
    auto ctx = build_dihedral_cm(6);
    auto stab = reflex_stabilizer(ctx, {0, 2});
    auto prop = reflex_proposition_case(ctx, 2);
    CHECK(prop.case_id == 1);
    CHECK(stab.order == 2);
    CHECK(prop.subgroup == stab.elements);
    CHECK(ctx.Gc.label(stab.generators[0]) == "s^2*t");
  }
  // case 2: even n, i = n/2 gives <s^{n/2}, t>, order 4
  {
    auto ctx = build_dihedral_cm(6);
    auto stab = reflex_stabilizer(ctx, {0, 3});
    auto prop = reflex_proposition_case(ctx, 3);
    CHECK(prop.case_id == 2);
    CHECK(stab.order == 4);
    CHECK(prop.subgroup == stab.elements);
  }
  // case 3: n = 4, i in {1, 3} gives <s^i t, s^2 rho>, order 4
  {
    auto ctx = build_dihedral_cm(4);
    for (unsigned i : {1u, 3u}) {
      auto stab = reflex_stabilizer(ctx, {0, i});
      auto prop = reflex_proposition_case(ctx, i);
      CHECK(prop.case_id == 3);
      CHECK(stab.order == 4);
      CHECK(prop.subgroup == stab.elements);
    }
    // n = 4, i = 2: the printed subgroup <s^2, t> is a proper subgroup of
    // the full stabilizer, which has order 8 and contains s*rho.
    auto stab = reflex_stabilizer(ctx, {0, 2});
    auto prop = reflex_proposition_case(ctx, 2);
    CHECK(stab.order == 8);
    CHECK(prop.subgroup.size() == 4);
    for (gidx g : prop.subgroup)
      CHECK(std::binary_search(stab.elements.begin(), stab.elements.end(), g));
    gidx srho = ctx.Gc.mul(ctx.sigma, ctx.rho);
    CHECK(std::binary_search(stab.elements.begin(), stab.elements.end(), srho));
  }
  // stabilizer order times orbit size = |G^c| (orbit-stabilizer)
  for (unsigned n = 4; n <= 9; ++n) {
    auto ctx = build_dihedral_cm(n);
    for (unsigned i = 1; i < n; ++i) {
      Subset S = canonical_subset(n, {0, i});
      auto stab = reflex_stabilizer(ctx, S);
      CHECK(stab.order * orbit_subsets(ctx, S).size() == ctx.Gc.order());
    }
  }
}

TEST_CASE("generators returned by reflex_stabilizer generate the stabilizer") {
  auto ctx = build_dihedral_cm(8);
  for (unsigned i : {1u, 2u, 4u}) {
    auto stab = reflex_stabilizer(ctx, canonical_subset(8, {0, i}));
    CHECK(subgroup_closure(ctx.Gc, stab.generators) == stab.elements);
  }
}

TEST_CASE("f_{E/F} in the generic S_3 context") {
  auto ctx = build_generic_cm(3, {{1, 0, 2}, {1, 2, 0}});
  ClassFunction f = f_EF_classfn(ctx);
  const FiniteGroup& Gc = ctx.Gc;
  CHECK(f.val[Gc.class_of(0)] == Cyc(3));
  CHECK(f.val[Gc.class_of(ctx.rho)] == Cyc(-3));
  // transposition classes carry +-1, 3-cycles 0
  for (unsigned g = 1; g < ctx.half(); ++g) {
    gidx gg = static_cast<gidx>(g);
    bool is_transposition = (Gc.mul(gg, gg) == 0);
    if (is_transposition) {
      CHECK(f.val[Gc.class_of(gg)] == Cyc(1));
      CHECK(f.val[Gc.class_of(ctx.rho_shift(gg))] == Cyc(-1));
    } else {
      CHECK(f.val[Gc.class_of(gg)] == Cyc(0));
    }
  }
}

TEST_CASE("averages: oracle equals closed formula") {
  for (unsigned n : {4u, 5u, 7u}) {
    auto ctx = build_dihedral_cm(n);
    for (unsigned r = 1; r <= n; ++r)
      CHECK(average_a0(ctx, r, AverageMode::oracle) == average_a0(ctx, r, AverageMode::closed));
    CHECK_THROWS_AS(average_a0(ctx, n + 1, AverageMode::oracle), std::invalid_argument);
    CHECK_THROWS_AS(average_a0(ctx, 0, AverageMode::closed), std::invalid_argument);
  }
  // generic contexts: the closed formula holds with n = number of points
  auto s3 = build_generic_cm(3, {{1, 0, 2}, {1, 2, 0}});
  for (unsigned r = 1; r <= 3; ++r)
    CHECK(average_a0(s3, r, AverageMode::oracle) == average_a0(s3, r, AverageMode::closed));
}

TEST_CASE("grand average over all types, n = 4") {
  auto ctx = build_dihedral_cm(4);
  ClassFunction total = zero_fn(ctx.Gc);
  for (std::uint64_t mask = 0; mask < 16; ++mask)
    total = total + a_s0_oracle(ctx, subset_from_mask(4, mask));
  ClassFunction lhs = Cyc(rat(1, 16)) * total;
  ClassFunction rhs =
      Cyc(rat(1, 4)) * const_one_fn(ctx) + Cyc(rat(1, 16)) * f_EF_classfn(ctx);
  CHECK(lhs == rhs);
}
