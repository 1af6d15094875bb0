#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "finspec/ring.hpp"

using namespace finspec;

namespace {

std::vector<int> set_elems(const IndexSet& s) { return s.elements(); }

}  // namespace

TEST_CASE("zmod construction and axioms") {
  for (int n : {1, 2, 3, 4, 6, 12, 24}) {
    RingPtr r = mk_zmod(n);
    CHECK(r->size == n);
    CHECK(verify_ring_axioms(*r).all_pass());
  }
  CHECK_THROWS_AS(mk_zmod(0), input_error);

  RingPtr zero = mk_zmod(1);
  CHECK(zero->is_zero_ring());
  CHECK(zero->zero == zero->one);
  CHECK(set_elems(units(*zero)) == std::vector<int>{0});
}

TEST_CASE("gf polynomial quotients") {
  // x^2 + x + 1 over GF(2): the four-element field.
  RingPtr f4 = mk_gf_poly_quotient(2, {1, 1, 1});
  CHECK(f4->size == 4);
  CHECK(verify_ring_axioms(*f4).all_pass());
  CHECK(units(*f4).count() == 3);
  CHECK(f4->mul(2, 2) == 3);  // x * x = x + 1

  // x^2 over GF(2): local with a nilpotent.
  RingPtr dual = mk_gf_poly_quotient(2, {0, 0, 1});
  CHECK(dual->size == 4);
  CHECK(verify_ring_axioms(*dual).all_pass());
  CHECK(dual->mul(2, 2) == 0);  // x * x = 0
  CHECK(is_nilpotent(*dual, 2));
  CHECK(is_local_ring(dual).local);

  CHECK_THROWS_AS(mk_gf_poly_quotient(4, {1, 1, 1}), input_error);  // p not prime
  CHECK_THROWS_AS(mk_gf_poly_quotient(3, {1, 1, 2}), input_error);  // not monic
}

TEST_CASE("products") {
  RingPtr z4 = mk_zmod(4), z3 = mk_zmod(3);
  RingPtr p = mk_product(z4, z3);
  CHECK(p->size == 12);
  CHECK(verify_ring_axioms(*p).all_pass());

  // Componentwise sanity: (a1,b1)+(a2,b2) with index a*|B|+b.
  const int x = 1 * 3 + 2, y = 3 * 3 + 2;  // (1,2), (3,2)
  CHECK(p->add(x, y) == ((1 + 3) % 4) * 3 + ((2 + 2) % 3));

  RingPtr z2 = mk_zmod(2);
  RingPtr klein = mk_product(z2, z2);
  int nontrivial_idempotents = 0;
  for (int e = 0; e < klein->size; ++e)
    if (klein->mul(e, e) == e && e != klein->zero && e != klein->one)
      ++nontrivial_idempotents;
  CHECK(nontrivial_idempotents == 2);

  // Product with the zero ring changes nothing but the label.
  RingPtr zr = mk_zmod(1);
  CHECK(*mk_product(zr, z4) == *z4);
}

TEST_CASE("units of Z/12") {
  RingPtr r = mk_zmod(12);
  CHECK(set_elems(units(*r)) == std::vector<int>{1, 5, 7, 11});
}

TEST_CASE("ideal generation in Z/12") {
  RingPtr r = mk_zmod(12);
  // 3*3 + 4 = 13 = 1, so (3,4) is the unit ideal.
  CHECK(ideal_generated_by(r, {3, 4}).members.is_full());
  CHECK(set_elems(ideal_generated_by(r, {8}).members) == std::vector<int>{0, 4, 8});
  CHECK(set_elems(ideal_generated_by(r, {}).members) == std::vector<int>{0});
  CHECK(ideal_label(ideal_generated_by(r, {8})) == "(4)");
}

TEST_CASE("submonoid generation in Z/12") {
  RingPtr r = mk_zmod(12);
  CHECK(set_elems(submonoid_generated_by(r, {3}).members) == std::vector<int>{1, 3, 9});
  CHECK(set_elems(submonoid_generated_by(r, {2}).members) == std::vector<int>{1, 2, 4, 8});
  CHECK(set_elems(submonoid_generated_by(r, {}).members) == std::vector<int>{1});
}

TEST_CASE("quotients") {
  RingPtr r = mk_zmod(12);
  Ideal four = ideal_generated_by(r, {4});
  QuotientResult q = mk_quotient(r, four);
  CHECK(q.ring->size == 4);
  CHECK(verify_ring_axioms(*q.ring).all_pass());
  CHECK(is_ring_hom(q.projection));
  // Kernel of the projection is exactly the ideal.
  for (int a = 0; a < r->size; ++a)
    CHECK((q.projection(a) == q.ring->zero) == four.members.contains(a));
  // The quotient is Z/4 up to isomorphism.
  bool found_iso = false;
  for (const RingHom& h : enumerate_homs(q.ring, mk_zmod(4)))
    if (h.is_bijective()) found_iso = true;
  CHECK(found_iso);

  // Malformed ideal rejected.
  Ideal bogus{r, IndexSet::of(r->size, {0, 5})};
  CHECK_THROWS_AS(mk_quotient(r, bogus), input_error);
}

TEST_CASE("axiom verifier reports defects with witnesses") {
  RingPtr r = mk_zmod(6);
  std::vector<int> add = r->add_table, mul = r->mul_table;
  mul[static_cast<size_t>(2) * 6 + 3] = 1;  // break 2*3
  RingPtr broken = mk_raw_ring(6, add, mul, 0, 1, "broken", false);
  AxiomReport rep = verify_ring_axioms(*broken);
  CHECK_FALSE(rep.all_pass());
  bool commut_failed = false;
  for (const AxiomCheck& c : rep.checks)
    if (c.name == "mul_commutative" && !c.pass) {
      commut_failed = true;
      CHECK(c.a >= 0);
      CHECK(c.b >= 0);
    }
  CHECK(commut_failed);

  // Out-of-range entries are reported, not crashed on.
  mul[0] = 99;
  AxiomReport rep2 = verify_ring_axioms(*mk_raw_ring(6, add, mul, 0, 1, "broken2", false));
  CHECK_FALSE(rep2.all_pass());
  CHECK_FALSE(rep2.checks.front().pass);  // tables_closed
}

TEST_CASE("hom enumeration") {
  RingPtr z12 = mk_zmod(12), z4 = mk_zmod(4), z3 = mk_zmod(3);

  std::vector<RingHom> h12_4 = enumerate_homs(z12, z4);
  REQUIRE(h12_4.size() == 1);
  for (int a = 0; a < 12; ++a) CHECK(h12_4[0](a) == a % 4);

  CHECK(enumerate_homs(z3, z4).empty());

  // Identity shows up for R -> R, and everything returned is a hom.
  for (RingPtr r : {mk_zmod(6), mk_gf_poly_quotient(2, {1, 1, 1}), mk_product(z4, z3)}) {
    std::vector<RingHom> homs = enumerate_homs(r, r);
    bool has_identity = false;
    for (const RingHom& h : homs) {
      CHECK(is_ring_hom(h));
      if (h.map == identity_hom(r).map) has_identity = true;
    }
    CHECK(has_identity);
  }

  // Zero ring: unique hom from anything, none into it from nonzero... the
  // other way around: no hom out of the zero ring into a nonzero ring.
  RingPtr zr = mk_zmod(1);
  CHECK(enumerate_homs(z4, zr).size() == 1);
  CHECK(enumerate_homs(zr, z4).empty());
  CHECK(enumerate_homs(zr, zr).size() == 1);

  HomBudget tiny;
  tiny.max_pairs = 4;
  CHECK_THROWS_AS(enumerate_homs(z12, z4, tiny), budget_error);
}

TEST_CASE("s-torsion") {
  RingPtr r = mk_zmod(12);
  Submonoid s3 = submonoid_generated_by(r, {3});
  CHECK(set_elems(s_torsion(r, s3).members) == std::vector<int>{0, 4, 8});
  Submonoid s5 = submonoid_generated_by(r, {5});
  CHECK(set_elems(s_torsion(r, s5).members) == std::vector<int>{0});

  // Torsion for S equals the annihilator of the product of all of S.
  for (int n : {6, 8, 12, 18}) {
    RingPtr zn = mk_zmod(n);
    for (int g = 0; g < n; ++g) {
      Submonoid s = submonoid_generated_by(zn, {g});
      int prod = zn->one;
      for (int e : s.members.elements()) prod = zn->mul(prod, e);
      IndexSet expect(n);
      for (int a = 0; a < n; ++a)
        if (zn->mul(prod, a) == zn->zero) expect.insert(a);
      CHECK(s_torsion(zn, s).members == expect);
    }
  }
}

TEST_CASE("local ring detection") {
  CHECK_FALSE(is_local_ring(mk_zmod(1)).local);

  LocalRingCheck z4 = is_local_ring(mk_zmod(4));
  CHECK(z4.local);
  REQUIRE(z4.maximal_ideal.has_value());
  CHECK(set_elems(z4.maximal_ideal->members) == std::vector<int>{0, 2});

  LocalRingCheck z12 = is_local_ring(mk_zmod(12));
  CHECK_FALSE(z12.local);
  REQUIRE(z12.incomparable_pair.has_value());
  const auto& [ma, mb] = *z12.incomparable_pair;
  CHECK_FALSE(ma.members.subset_of(mb.members));
  CHECK_FALSE(mb.members.subset_of(ma.members));
  // The two witnesses are the maximal ideals (2) and (3) in some order.
  IndexSet two = ideal_generated_by(mk_zmod(12), {2}).members;
  IndexSet three = ideal_generated_by(mk_zmod(12), {3}).members;
  const bool match = (ma.members == two && mb.members == three) ||
                     (ma.members == three && mb.members == two);
  CHECK(match);

  CHECK(is_local_ring(mk_gf_poly_quotient(3, {0, 0, 1})).local);  // GF(3)[x]/(x^2)
  CHECK_FALSE(is_local_ring(mk_product(mk_zmod(2), mk_zmod(2))).local);
}

TEST_CASE("constructed rings satisfy axioms across a small corpus") {
  std::vector<RingPtr> sample;
  for (int n = 1; n <= 16; ++n) sample.push_back(mk_zmod(n));
  sample.push_back(mk_gf_poly_quotient(2, {1, 1, 1}));
  sample.push_back(mk_gf_poly_quotient(2, {0, 0, 1}));
  sample.push_back(mk_gf_poly_quotient(3, {2, 0, 1}));
  sample.push_back(mk_product(mk_zmod(4), mk_zmod(3)));
  sample.push_back(mk_product(mk_zmod(2), mk_zmod(8)));
  for (const RingPtr& r : sample) {
    CAPTURE(r->label);
    CHECK(verify_ring_axioms(*r).all_pass());
    // Unit set is closed under multiplication and contains 1.
    IndexSet u = units(*r);
    CHECK(u.contains(r->one));
    for (int a : u.elements())
      for (int b : u.elements()) CHECK(u.contains(r->mul(a, b)));
  }
}
