#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "finspec/spectrum.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace finspec;
using finspec::testing::ideals_bruteforce;
using finspec::testing::quotient_is_domain;
using finspec::testing::small_sample_rings;

namespace {

std::vector<int> members_of(const Ideal& ideal) { return ideal.members.elements(); }

}  // namespace

TEST_CASE("ideals of Z/12") {
  auto r = mk_zmod(12);
  auto ideals = enumerate_ideals(r);
  REQUIRE(ideals.size() == 6);
  CHECK(members_of(ideals[0]) == std::vector<int>{0});
  CHECK(members_of(ideals[1]) == std::vector<int>{0, 6});
  CHECK(members_of(ideals[2]) == std::vector<int>{0, 4, 8});
  CHECK(members_of(ideals[3]) == std::vector<int>{0, 3, 6, 9});
  CHECK(members_of(ideals[4]) == std::vector<int>{0, 2, 4, 6, 8, 10});
  CHECK(members_of(ideals[5]).size() == 12);
  CHECK(ideal_label(ideals[0]) == "(0)");
  CHECK(ideal_label(ideals[1]) == "(6)");
  CHECK(ideal_label(ideals[2]) == "(4)");
  CHECK(ideal_label(ideals[3]) == "(3)");
  CHECK(ideal_label(ideals[4]) == "(2)");
  CHECK(ideal_label(ideals[5]) == "(1)");
  for (const Ideal& ideal : ideals) CHECK(validate_ideal(ideal).empty());
}

TEST_CASE("ideal enumeration matches the subset scan") {
  std::vector<RingPtr> rings;
  for (int n = 2; n <= 12; ++n) rings.push_back(mk_zmod(n));
  rings.push_back(mk_gf_poly_quotient(2, {1, 1, 1}));
  rings.push_back(mk_gf_poly_quotient(2, {0, 0, 1}));
  rings.push_back(mk_product(mk_zmod(2), mk_zmod(2)));
  rings.push_back(mk_product(mk_zmod(2), mk_zmod(3)));
  rings.push_back(mk_zmod(1));
  for (const RingPtr& r : rings) {
    CAPTURE(r->label);
    auto got = enumerate_ideals(r);
    auto expect = ideals_bruteforce(*r);
    std::sort(expect.begin(), expect.end(), canonical_set_less);
    REQUIRE(got.size() == expect.size());
    for (size_t i = 0; i < got.size(); ++i) CHECK(got[i].members == expect[i]);
  }
}

TEST_CASE("primality detection in Z/12") {
  auto r = mk_zmod(12);
  auto prime2 = is_prime_ideal(ideal_generated_by(r, {2}));
  CHECK(prime2.prime);
  CHECK(prime2.detail == "prime");
  CHECK(is_prime_ideal(ideal_generated_by(r, {3})).prime);

  auto four = is_prime_ideal(ideal_generated_by(r, {4}));
  CHECK_FALSE(four.prime);
  CHECK(four.witness_a == 2);
  CHECK(four.witness_b == 2);
  CHECK(four.detail == "2 * 2 = 4 lies in the ideal; neither factor does");

  auto six = is_prime_ideal(ideal_generated_by(r, {6}));
  CHECK_FALSE(six.prime);
  CHECK(six.witness_a == 2);
  CHECK(six.witness_b == 3);

  auto zero = is_prime_ideal(ideal_generated_by(r, {}));
  CHECK_FALSE(zero.prime);
  CHECK(r->mul(zero.witness_a, zero.witness_b) == 0);

  auto unit = is_prime_ideal(ideal_generated_by(r, {1}));
  CHECK_FALSE(unit.prime);
  CHECK(unit.detail == "improper: contains 1");

  auto z0 = mk_zmod(1);
  CHECK_FALSE(is_prime_ideal(ideal_generated_by(z0, {})).prime);
}

TEST_CASE("primality agrees with quotient domains") {
  auto rings = small_sample_rings();
  rings.push_back(mk_zmod(12));
  rings.push_back(mk_zmod(30));
  for (const RingPtr& r : rings) {
    CAPTURE(r->label);
    for (const Ideal& ideal : enumerate_ideals(r)) {
      CAPTURE(set_to_string(ideal.members));
      auto check = is_prime_ideal(ideal);
      CHECK(check.prime == quotient_is_domain(r, ideal));
      if (check.prime) {
        // Finite domains are fields, so prime quotients have all nonzero
        // elements invertible.
        auto q = mk_quotient(r, ideal);
        CHECK(units(*q.ring).count() == q.ring->size - 1);
      } else if (!ideal.members.contains(r->one)) {
        CHECK(ideal.members.contains(r->mul(check.witness_a, check.witness_b)));
        CHECK_FALSE(ideal.members.contains(check.witness_a));
        CHECK_FALSE(ideal.members.contains(check.witness_b));
      }
    }
  }
}

TEST_CASE("spectrum points") {
  auto z12 = mk_zmod(12);
  auto pts = spec_points(z12);
  REQUIRE(pts.size() == 2);
  CHECK(members_of(pts[0]) == std::vector<int>{0, 2, 4, 6, 8, 10});
  CHECK(members_of(pts[1]) == std::vector<int>{0, 3, 6, 9});

  auto field = mk_gf_poly_quotient(2, {1, 1, 1});
  auto fpts = spec_points(field);
  REQUIRE(fpts.size() == 1);
  CHECK(members_of(fpts[0]) == std::vector<int>{0});

  CHECK(spec_points(mk_zmod(1)).empty());

  auto v4 = mk_product(mk_zmod(2), mk_zmod(2));
  auto vpts = spec_points(v4);
  REQUIRE(vpts.size() == 2);
  CHECK(members_of(vpts[0]) == std::vector<int>{0, 1});
  CHECK(members_of(vpts[1]) == std::vector<int>{0, 2});

  // Point counts add across products.
  std::vector<std::pair<RingPtr, RingPtr>> pairs = {
      {mk_zmod(4), mk_zmod(9)},
      {mk_zmod(6), mk_zmod(10)},
      {mk_gf_poly_quotient(2, {1, 1, 1}), mk_zmod(8)},
  };
  for (const auto& [a, b] : pairs) {
    CAPTURE(a->label);
    CAPTURE(b->label);
    CHECK(spec_points(mk_product(a, b)).size() ==
          spec_points(a).size() + spec_points(b).size());
  }

  for (const RingPtr& r : small_sample_rings()) {
    CAPTURE(r->label);
    CHECK(spec_points(r).empty() == r->is_zero_ring());
  }
}

TEST_CASE("basic opens and vanishing sets") {
  auto z12 = mk_zmod(12);
  auto sp = mk_spec(z12);
  REQUIRE(sp.points.size() == 2);
  CHECK(basic_open(sp, 2) == IndexSet::of(2, {1}));
  CHECK(basic_open(sp, 8) == IndexSet::of(2, {1}));
  CHECK(basic_open(sp, 3) == IndexSet::of(2, {0}));
  CHECK(basic_open(sp, 6) == IndexSet(2));
  CHECK(basic_open(sp, 0) == IndexSet(2));
  CHECK(basic_open(sp, 1) == IndexSet::full(2));
  CHECK(vanishing_set(sp, ideal_generated_by(z12, {4})) == IndexSet::of(2, {0}));
  CHECK(vanishing_set(sp, ideal_generated_by(z12, {})) == IndexSet::full(2));
  CHECK(vanishing_set(sp, ideal_generated_by(z12, {1})) == IndexSet(2));
  CHECK_THROWS_AS(basic_open(sp, 12), input_error);

  auto z30 = mk_zmod(30);
  auto sp30 = mk_spec(z30);
  REQUIRE(sp30.points.size() == 3);
  CHECK(members_of(sp30.points[0])[1] == 2);
  CHECK(members_of(sp30.points[1])[1] == 3);
  CHECK(members_of(sp30.points[2])[1] == 5);
  CHECK(basic_open(sp30, 6) == IndexSet::of(3, {2}));
  CHECK(basic_open(sp30, 10) == IndexSet::of(3, {1}));
  CHECK(basic_open(sp30, 15) == IndexSet::of(3, {0}));

  for (const RingPtr& r : small_sample_rings()) {
    CAPTURE(r->label);
    auto spr = mk_spec(r);
    auto ideals = enumerate_ideals(r);
    // V reverses inclusions.
    for (const Ideal& a : ideals)
      for (const Ideal& b : ideals)
        if (a.members.subset_of(b.members))
          CHECK(vanishing_set(spr, b).subset_of(vanishing_set(spr, a)));
    // Vanishing sets are closed.
    for (const Ideal& a : ideals)
      CHECK(spr.topology.is_open(vanishing_set(spr, a).complement()));
    // The closure of one point is the vanishing set of its ideal.
    for (size_t i = 0; i < spr.points.size(); ++i) {
      IndexSet single = IndexSet::of(spr.topology.universe, {static_cast<int>(i)});
      CHECK(closure_of(spr, single) == vanishing_set(spr, spr.points[i]));
    }
  }
}

TEST_CASE("zariski topology structure") {
  auto sp = mk_spec(mk_zmod(12));
  REQUIRE(sp.topology.opens.size() == 4);
  CHECK(sp.topology.opens[0] == IndexSet(2));
  CHECK(sp.topology.opens[1] == IndexSet::of(2, {0}));
  CHECK(sp.topology.opens[2] == IndexSet::of(2, {1}));
  CHECK(sp.topology.opens[3] == IndexSet::full(2));
  CHECK(sp.point_index(sp.points[1]) == 1);
  CHECK(sp.point_index(ideal_generated_by(sp.ring, {4})) == -1);

  CHECK(mk_spec(mk_zmod(30)).topology.opens.size() == 8);

  auto rings = small_sample_rings();
  rings.push_back(mk_zmod(30));
  for (const RingPtr& r : rings) {
    CAPTURE(r->label);
    auto spr = mk_spec(r);
    CHECK(verify_topology(spr.topology).ok);
    const int n = spr.topology.universe;
    for (int p = 0; p < n; ++p) {
      // Spectra of finite rings are discrete: each point is itself open.
      IndexSet single = IndexSet::of(n, {p});
      CHECK(spr.topology.is_open(single));
      CHECK(spr.topology.minimal_open_containing(p) == single);
      // Recompute the minimal neighborhood directly from the open list.
      IndexSet acc = IndexSet::full(n);
      for (const IndexSet& open : spr.topology.opens)
        if (open.contains(p)) acc = acc.intersect(open);
      CHECK(spr.topology.minimal_open_containing(p) == acc);
    }
  }
}

TEST_CASE("verify_topology rejects broken open lists") {
  FiniteTopology t;
  t.universe = 2;
  t.opens = {IndexSet(2), IndexSet::of(2, {0}), IndexSet::of(2, {1})};
  auto missing_union = verify_topology(t);
  CHECK_FALSE(missing_union.ok);
  CHECK(missing_union.detail == "full set is not open");

  t.opens = {IndexSet::of(2, {0}), IndexSet(2), IndexSet::full(2),
             IndexSet::of(2, {1})};
  CHECK(verify_topology(t).detail == "opens are not strictly sorted at position 0");

  t.opens = {IndexSet(2), IndexSet::of(2, {0}), IndexSet::full(2)};
  CHECK(verify_topology(t).ok);

  t.opens = {IndexSet::of(2, {0}), IndexSet::full(2)};
  CHECK(verify_topology(t).detail == "empty set is not open");
}

TEST_CASE("basic opens form a basis") {
  auto rings = small_sample_rings();
  rings.push_back(mk_zmod(12));
  rings.push_back(mk_zmod(30));
  for (const RingPtr& r : rings) {
    CAPTURE(r->label);
    auto spr = mk_spec(r);
    CHECK(basis_check(spr).ok);
  }

  // Damage a space by dropping one basic open from its topology.
  auto sp = mk_spec(mk_zmod(12));
  sp.topology.opens.erase(sp.topology.opens.begin() + 2);
  auto broken = basis_check(sp);
  CHECK_FALSE(broken.ok);
  CHECK(broken.detail == "D(2) is missing from the topology");
}

TEST_CASE("zero ring has an empty spectrum") {
  auto sp = mk_spec(mk_zmod(1));
  CHECK(sp.points.empty());
  CHECK(sp.topology.universe == 0);
  REQUIRE(sp.topology.opens.size() == 1);
  CHECK(sp.topology.opens[0].empty());
  CHECK(sp.topology.opens[0].is_full());
  CHECK(verify_topology(sp.topology).ok);
  CHECK(basis_check(sp).ok);
  CHECK(basic_open(sp, 0).empty());
}
