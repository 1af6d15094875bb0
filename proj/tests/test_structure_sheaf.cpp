#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "finspec/structure_sheaf.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace finspec;
using finspec::testing::colimit_stalk_oracle;

namespace {

std::vector<int> section_sizes(const PresheafOfRings& f) {
  std::vector<int> out;
  for (const auto& s : f.sections) out.push_back(s->size);
  return out;
}

}  // namespace

TEST_CASE("multiplicative sets attached to point sets") {
  auto r = mk_zmod(12);
  ZariskiSpace sp = mk_spec(r);
  REQUIRE(sp.points.size() == 2);  // (2) before (3)

  CHECK(s_of_open(sp, IndexSet(2)).members.is_full());
  CHECK(s_of_open(sp, IndexSet::of(2, {0})).members.elements() ==
        std::vector<int>{1, 3, 5, 7, 9, 11});
  CHECK(s_of_open(sp, IndexSet::of(2, {1})).members.elements() ==
        std::vector<int>{1, 2, 4, 5, 7, 8, 10, 11});
  CHECK(s_of_open(sp, IndexSet::full(2)).members == units(*r));

  CHECK_THROWS_AS(s_of_open(sp, IndexSet::of(5, {0})), input_error);

  auto zero = mk_zmod(1);
  ZariskiSpace zsp = mk_spec(zero);
  CHECK(s_of_open(zsp, IndexSet(0)).members.elements() == std::vector<int>{0});

  // More points can only shrink the set, and the full spectrum leaves the
  // units exactly.
  auto r30 = mk_zmod(30);
  ZariskiSpace sp30 = mk_spec(r30);
  const int n = static_cast<int>(sp30.points.size());
  REQUIRE(n == 3);
  for (const IndexSet& u : sp30.topology.opens) {
    Submonoid su = s_of_open(sp30, u);
    CHECK(validate_submonoid(su).empty());
    for (const IndexSet& v : sp30.topology.opens)
      if (u.subset_of(v)) CHECK(s_of_open(sp30, v).members.subset_of(su.members));
  }
  CHECK(s_of_open(sp30, IndexSet::full(n)).members == units(*r30));
}

TEST_CASE("basis presheaf over Z/12") {
  auto r = mk_zmod(12);
  BasisPresheaf b = presheaf_on_basis(r);

  REQUIRE(b.opens.size() == 4);
  CHECK(b.opens[0] == IndexSet(2));
  CHECK(b.opens[1] == IndexSet::of(2, {0}));
  CHECK(b.opens[2] == IndexSet::of(2, {1}));
  CHECK(b.opens[3] == IndexSet::full(2));

  REQUIRE(b.sections.size() == 4);
  CHECK(b.sections[0].ring->size == 1);
  CHECK(b.sections[1].ring->size == 4);
  CHECK(b.sections[2].ring->size == 3);
  CHECK(b.sections[3].ring->size == 12);
  CHECK(b.sections[3].monoid.members.elements() == std::vector<int>{1, 5, 7, 11});

  // One restriction per nested pair, equal pairs included.
  CHECK(b.restrictions.size() == 9);
  for (int i = 0; i < 4; ++i) CHECK(same_hom(b.res(i, i), identity_hom(b.sections[i].ring)));
  CHECK_THROWS_AS(b.res(1, 2), input_error);

  // Every restriction factors the outer canonical map into the inner one.
  for (const auto& [key, hom] : b.restrictions)
    CHECK(same_hom(compose(hom, b.sections[key.first].canonical),
                   b.sections[key.second].canonical));

  // The factoring map is the only algebra map between the localizations.
  auto forced = unique_algebra_map(b.sections[3].canonical, b.sections[3].monoid,
                                   b.sections[1].canonical);
  REQUIRE(forced.has_value());
  CHECK(same_hom(*forced, b.res(3, 1)));

  CHECK(b.index_of(IndexSet::of(2, {1})) == 2);
  CHECK(b.index_of(IndexSet::of(5, {0, 1})) == -1);
}

TEST_CASE("one ring per distinct basic open") {
  for (const auto& r : {mk_zmod(12), mk_zmod(30)}) {
    BasisPresheaf b = presheaf_on_basis(r);
    ZariskiSpace& sp = b.space;

    std::set<std::vector<int>> distinct;
    for (const IndexSet& d : sp.basic_of) distinct.insert(d.elements());
    CHECK(b.opens.size() == distinct.size());

    for (int f = 0; f < r->size; ++f) {
      int i = b.index_of(sp.basic_of[f]);
      REQUIRE(i >= 0);
      // The stored section is a localization at the powers of f, and the
      // localization at the powers of f answers to the stored multiplicative
      // set; saturation makes both presentations interchangeable.
      CHECK(strickland_check(b.sections[i].canonical, submonoid_generated_by(r, {f}))
                .verdict());
      LocalizedRing at_f = localize_at_element(r, f);
      CHECK(strickland_check(at_f.canonical, b.sections[i].monoid).verdict());
      CHECK(at_f.ring->size == b.sections[i].ring->size);
    }
  }
}

TEST_CASE("limit extension over Z/12") {
  auto r = mk_zmod(12);
  ExtendedSheaf e = extend_from_basis(presheaf_on_basis(r));

  CHECK(check_presheaf(e.presheaf).ok);
  CHECK(section_sizes(e.presheaf) == std::vector<int>{1, 4, 3, 12});

  for (int bi = 0; bi < 4; ++bi) {
    RingHom proj = basis_agreement(e, bi);
    CHECK(describe_hom_failure(proj).empty());
    CHECK(proj.is_bijective());
  }
  CHECK_THROWS_AS(basis_agreement(e, 9), input_error);

  // Restriction off the full open is the localization-style projection, so
  // it is onto the smaller section ring.
  const RingHom& down = e.presheaf.res(IndexSet::full(2), IndexSet::of(2, {0}));
  std::set<int> image(down.map.begin(), down.map.end());
  CHECK(image.size() == 4);

  SheafVerdict sv = is_sheaf(e.presheaf);
  CHECK(sv.ok);
  CHECK_FALSE(sv.truncated);
}

TEST_CASE("limit extension over Z/30 and small rings") {
  auto r = mk_zmod(30);
  ExtendedSheaf e = extend_from_basis(presheaf_on_basis(r));
  CHECK(section_sizes(e.presheaf) == std::vector<int>{1, 2, 3, 5, 6, 10, 15, 30});
  SheafVerdict sv = is_sheaf(e.presheaf);
  CHECK(sv.ok);
  CHECK_FALSE(sv.truncated);

  // A field sees two opens; the zero ring sees one.
  auto gf4 = mk_gf_poly_quotient(2, {1, 1, 1});
  ExtendedSheaf ef = extend_from_basis(presheaf_on_basis(gf4));
  CHECK(section_sizes(ef.presheaf) == std::vector<int>{1, 4});

  ExtendedSheaf ez = extend_from_basis(presheaf_on_basis(mk_zmod(1)));
  CHECK(section_sizes(ez.presheaf) == std::vector<int>{1});
  CHECK(is_sheaf(ez.presheaf).ok);
}

TEST_CASE("pointwise construction over Z/12") {
  auto r = mk_zmod(12);
  BasisPresheaf b = presheaf_on_basis(r);
  HartshorneSheaf h = hartshorne_presheaf(b);

  CHECK(check_presheaf(h.presheaf).ok);
  CHECK(section_sizes(h.presheaf) == std::vector<int>{1, 4, 3, 12});
  REQUIRE(h.stalks.size() == 2);
  CHECK(h.stalks[0].ring->size == 4);
  CHECK(h.stalks[1].ring->size == 3);
  CHECK(is_sheaf(h.presheaf).ok);

  // Re-verify every certificate from scratch: the named basic neighborhood
  // contains the point, sits inside the open, and its fraction reproduces
  // the value at every point it covers.
  const FiniteTopology& topo = h.presheaf.space;
  for (size_t u = 0; u < topo.opens.size(); ++u) {
    const std::vector<int> pts = topo.opens[u].elements();
    for (const PointwiseSection& sec : h.data[u]) {
      REQUIRE(sec.value.size() == pts.size());
      REQUIRE(sec.cert.size() == pts.size());
      for (size_t i = 0; i < pts.size(); ++i) {
        const GermCertificate& c = sec.cert[i];
        const IndexSet& w = h.basis.opens[c.basis_index];
        CHECK(w.contains(pts[i]));
        CHECK(w.subset_of(topo.opens[u]));
        CHECK(h.basis.sections[c.basis_index].monoid.members.contains(c.den));
        for (int q : w.elements()) {
          auto at = std::lower_bound(pts.begin(), pts.end(), q);
          REQUIRE(at != pts.end());
          CHECK(h.stalks[q].class_of(c.num, c.den) == sec.value[at - pts.begin()]);
        }
      }
    }
  }
}

TEST_CASE("the two constructions agree") {
  for (const auto& r : {mk_zmod(12), mk_zmod(30), mk_zmod(1),
                        mk_gf_poly_quotient(2, {1, 1, 1}),
                        mk_product(mk_zmod(2), mk_zmod(3))}) {
    BasisPresheaf b = presheaf_on_basis(r);
    ExtendedSheaf e = extend_from_basis(b);
    HartshorneSheaf h = hartshorne_presheaf(b);
    ConstructionComparison cc = compare_constructions(e, h);
    CHECK(cc.ok);
    CHECK(cc.maps.size() == e.presheaf.sections.size());
    for (const RingHom& m : cc.maps) CHECK(m.is_bijective());
  }
  CHECK(compare_constructions(mk_zmod(12)).ok);
  CHECK_THROWS_AS(
      compare_constructions(extend_from_basis(presheaf_on_basis(mk_zmod(12))),
                            hartshorne_presheaf(mk_zmod(30))),
      input_error);
}

TEST_CASE("global sections recover the ring") {
  for (const auto& r : {mk_zmod(12), mk_zmod(30), mk_zmod(1),
                        mk_gf_poly_quotient(2, {0, 0, 1})}) {
    GlobalSectionsCheck gc = global_sections_check(r);
    CHECK(gc.ok);
    CHECK(gc.detail.empty());
    CHECK(gc.to_global.target->size == r->size);
  }

  // The count for the running example, pinned.
  ExtendedSheaf e = extend_from_basis(presheaf_on_basis(mk_zmod(12)));
  GlobalSectionsCheck gc = global_sections_check(e);
  REQUIRE(gc.ok);
  CHECK(gc.to_global.target->size == 12);
  CHECK(gc.to_global.target->label == "limit sections over {0,1}");
}

TEST_CASE("stalks are the local rings") {
  auto r = mk_zmod(12);
  ExtendedSheaf e = extend_from_basis(presheaf_on_basis(r));

  StalkIdentification s0 = stalk_identification(e, 0);
  REQUIRE(s0.ok);
  CHECK(s0.stalk.nbhd == IndexSet::of(2, {0}));
  CHECK(s0.stalk.ring->size == 4);
  CHECK(s0.complement.members.elements() == std::vector<int>{1, 3, 5, 7, 9, 11});
  CHECK(s0.predicate.verdict());
  REQUIRE(s0.local.local);
  REQUIRE(s0.local.maximal_ideal.has_value());
  CHECK(s0.local.maximal_ideal->members.count() == 2);
  // The maximal ideal is the image of the non-units of the direct
  // localization under the forced algebra map.
  {
    LocalizedRing direct = localize(r, s0.complement);
    IndexSet expected(s0.stalk.ring->size);
    for (int a = 0; a < direct.ring->size; ++a)
      if (!direct.ring->is_unit(a)) expected.insert(s0.iso->map[a]);
    CHECK(s0.local.maximal_ideal->members == expected);
  }

  StalkIdentification s1 = stalk_identification(e, 1);
  REQUIRE(s1.ok);
  CHECK(s1.stalk.ring->size == 3);
  CHECK(s1.local.maximal_ideal->members.count() == 1);

  CHECK_THROWS_AS(stalk_identification(e, 2), input_error);
  CHECK_THROWS_AS(stalk_identification(mk_zmod(1), 0), input_error);

  // Z/30 localized away from (5) is the 5-element field.
  StalkIdentification s5 = stalk_identification(mk_zmod(30), 2);
  REQUIRE(s5.ok);
  CHECK(s5.stalk.ring->size == 5);
  CHECK(s5.local.maximal_ideal->members.count() == 1);

  for (const auto& ring : {mk_zmod(12), mk_zmod(30), mk_gf_poly_quotient(2, {1, 1, 1}),
                           mk_product(mk_zmod(2), mk_zmod(3))}) {
    ExtendedSheaf ex = extend_from_basis(presheaf_on_basis(ring));
    for (int p = 0; p < static_cast<int>(ex.basis.space.points.size()); ++p) {
      StalkIdentification si = stalk_identification(ex, p);
      CHECK(si.ok);
      CHECK(si.local.local);
      CHECK(si.stalk.ring->size == localize(ring, si.complement).ring->size);
      CHECK(colimit_stalk_oracle(ex.presheaf, p, si.stalk).matches(si.stalk));
    }
  }
}

TEST_CASE("basic opens behave like spectra downstairs") {
  for (const auto& r : {mk_zmod(12), mk_zmod(30), mk_product(mk_zmod(2), mk_zmod(3))}) {
    ZariskiSpace sp = mk_spec(r);
    for (int f = 0; f < r->size; ++f) {
      LocalizedRing at_f = localize_at_element(r, f);
      std::vector<Ideal> downstairs = spec_points(at_f.ring);
      const IndexSet df = basic_open(sp, f);
      CHECK(static_cast<int>(downstairs.size()) == df.count());

      std::set<std::vector<int>> seen;
      for (const Ideal& q : downstairs) {
        Ideal pulled{r, IndexSet(r->size)};
        for (int a = 0; a < r->size; ++a)
          if (q.members.contains(at_f.canonical(a))) pulled.members.insert(a);
        CHECK(validate_ideal(pulled).empty());
        CHECK(is_prime_ideal(pulled).prime);
        CHECK_FALSE(pulled.members.contains(f));
        int idx = sp.point_index(pulled);
        REQUIRE(idx >= 0);
        CHECK(df.contains(idx));
        seen.insert(pulled.members.elements());
      }
      CHECK(static_cast<int>(seen.size()) == df.count());
    }
  }
}
