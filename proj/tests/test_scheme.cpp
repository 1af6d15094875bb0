#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "finspec/scheme.hpp"
#include "finspec/spectrum.hpp"
#include "support/corpus.hpp"

using namespace finspec;

namespace {

// Inverse of a bijective hom, for symmetry checks.
RingHom invert(const RingHom& h) {
  RingHom out;
  out.source = h.target;
  out.target = h.source;
  out.map.assign(h.map.size(), 0);
  for (std::size_t i = 0; i < h.map.size(); ++i)
    out.map[static_cast<std::size_t>(h.map[i])] = static_cast<int>(i);
  return out;
}

std::vector<RingHom> identity_section_maps(const RingedSpace& x) {
  std::vector<RingHom> out;
  for (std::size_t v = 0; v < x.space.opens.size(); ++v)
    out.push_back(identity_hom(x.sheaf.at(static_cast<int>(v))));
  return out;
}

}  // namespace

TEST_CASE("affine spaces expose the expected points and stalks") {
  LocallyRingedSpace f = mk_affine(mk_zmod(7));
  CHECK(f.base.space.universe == 1);
  CHECK(f.base.space.opens.size() == 2);
  CHECK(f.base.sheaf_certificate.ok);
  CHECK(!f.base.sheaf_certificate.truncated);
  REQUIRE(f.stalk_certificates.size() == 1);
  CHECK(f.stalk_certificates[0].local);
  REQUIRE(f.stalk_certificates[0].maximal_ideal.has_value());
  CHECK(f.stalk_certificates[0].maximal_ideal->members.count() == 1);
  CHECK(f.base.sheaf.at(0)->size == 1);
  CHECK(f.base.sheaf.at(1)->size == 7);

  LocallyRingedSpace x = mk_affine(mk_zmod(12));
  CHECK(x.base.space.universe == 2);
  CHECK(x.base.space.opens.size() == 4);
  REQUIRE(x.stalk_certificates.size() == 2);
  CHECK(x.stalk_certificates[0].local);
  CHECK(x.stalk_certificates[1].local);
  CHECK(stalk_at(x.base.sheaf, 0).ring->size == 4);
  CHECK(stalk_at(x.base.sheaf, 1).ring->size == 3);
  CHECK(x.stalk_certificates[0].maximal_ideal->members.count() == 2);
  CHECK(x.stalk_certificates[1].maximal_ideal->members.count() == 1);

  // One fat point: nilpotents stay inside the only stalk.
  LocallyRingedSpace d = mk_affine(mk_gf_poly_quotient(2, {0, 0, 1}));
  CHECK(d.base.space.universe == 1);
  CHECK(stalk_at(d.base.sheaf, 0).ring->size == 4);
  CHECK(d.stalk_certificates[0].local);
}

TEST_CASE("the zero ring gives the empty scheme") {
  RingPtr z1 = mk_zmod(1);
  LocallyRingedSpace x = mk_affine(z1);
  CHECK(x.base.space.universe == 0);
  CHECK(x.base.space.opens.size() == 1);
  CHECK(x.base.sheaf_certificate.ok);
  CHECK(x.stalk_certificates.empty());

  SchemeCheck sc = scheme_check(x, affine_is_scheme(z1));
  CHECK(sc.ok);
  CHECK(sc.detail.empty());
  REQUIRE(sc.member_failures.size() == 1);
  CHECK(sc.member_failures[0].empty());
}

TEST_CASE("every sample affine passes its own certificate") {
  for (const RingPtr& r : testing::small_sample_rings()) {
    CAPTURE(r->label);
    ExtendedSheaf e = extend_from_basis(presheaf_on_basis(r));
    LocallyRingedSpace x = mk_affine(e);
    SchemeCertificate cert = affine_is_scheme(e);
    SchemeCheck sc = scheme_check(x, cert);
    CAPTURE(sc.detail);
    CHECK(sc.ok);

    REQUIRE(cert.members.size() == 1);
    const SchemeMember& m = cert.members[0];
    CHECK(m.open.is_full());
    // Every comparison map was fetched from the stored restriction table.
    REQUIRE(m.sheaf_iso.size() == x.base.space.opens.size());
    for (std::size_t k = 0; k < m.sheaf_iso.size(); ++k)
      CHECK(same_hom(m.sheaf_iso[k],
                     x.base.sheaf.res(static_cast<int>(k), static_cast<int>(k))));
  }
}

TEST_CASE("certificates survive independent rebuilds of the same affine") {
  RingPtr z12 = mk_zmod(12);
  LocallyRingedSpace x = mk_affine(z12);
  SchemeCertificate cert = affine_is_scheme(z12);
  SchemeCheck sc = scheme_check(x, cert);
  CAPTURE(sc.detail);
  CHECK(sc.ok);
}

TEST_CASE("the product decomposition induces an isomorphism of affines") {
  RingPtr z12 = mk_zmod(12);
  RingPtr prod = mk_product(mk_zmod(4), mk_zmod(3));
  ExtendedSheaf ex = extend_from_basis(presheaf_on_basis(prod));
  ExtendedSheaf ey = extend_from_basis(presheaf_on_basis(z12));
  LocallyRingedSpace x = mk_affine(ex);
  LocallyRingedSpace y = mk_affine(ey);

  RingHom crt;
  crt.source = z12;
  crt.target = prod;
  for (int a = 0; a < 12; ++a) crt.map.push_back((a % 4) * 3 + (a % 3));
  REQUIRE(is_ring_hom(crt));
  REQUIRE(crt.is_bijective());

  ZariskiSpace spx = mk_spec(prod);
  ZariskiSpace spy = mk_spec(z12);
  REQUIRE(spx.points.size() == 2);
  REQUIRE(spy.points.size() == 2);

  // Primes of the product pull back to primes downstairs.
  std::vector<int> point_map;
  for (const Ideal& q : spx.points) {
    IndexSet pre(12);
    for (int a = 0; a < 12; ++a)
      if (q.members.contains(crt.map[static_cast<std::size_t>(a)])) pre.insert(a);
    int found = -1;
    for (std::size_t j = 0; j < spy.points.size(); ++j)
      if (spy.points[j].members == pre) found = static_cast<int>(j);
    REQUIRE(found >= 0);
    point_map.push_back(found);
  }
  CHECK(point_map != std::vector<int>({-1, -1}));

  // One forced section map per open downstairs.
  std::vector<RingHom> open_homs;
  for (std::size_t v = 0; v < y.base.space.opens.size(); ++v) {
    IndexSet pre(x.base.space.universe);
    for (int p = 0; p < x.base.space.universe; ++p)
      if (y.base.space.opens[v].contains(point_map[static_cast<std::size_t>(p)]))
        pre.insert(p);
    int pidx = x.base.space.index_of(pre);
    REQUIRE(pidx >= 0);
    RingHom gy = canonical_section_map(ey, static_cast<int>(v));
    RingHom gx = canonical_section_map(ex, pidx);
    Submonoid sv = s_of_open(spy, y.base.space.opens[v]);
    std::optional<RingHom> h = unique_algebra_map(gy, sv, compose(gx, crt));
    REQUIRE(h.has_value());
    open_homs.push_back(*h);
  }

  IsoCheck iso = ringed_space_iso_check(x.base, y.base, point_map, open_homs);
  CAPTURE(iso.detail);
  CHECK(iso.ok);

  // Symmetry: the inverted data passes in the other direction.
  std::vector<int> inv_pm(point_map.size(), 0);
  for (std::size_t p = 0; p < point_map.size(); ++p)
    inv_pm[static_cast<std::size_t>(point_map[p])] = static_cast<int>(p);
  std::vector<RingHom> inv_homs;
  std::vector<int> image_open;  // y open index per x open
  for (std::size_t u = 0; u < x.base.space.opens.size(); ++u) {
    IndexSet img(y.base.space.universe);
    for (int p : x.base.space.opens[u].elements())
      img.insert(point_map[static_cast<std::size_t>(p)]);
    int v = y.base.space.index_of(img);
    REQUIRE(v >= 0);
    image_open.push_back(v);
    inv_homs.push_back(invert(open_homs[static_cast<std::size_t>(v)]));
  }
  IsoCheck back = ringed_space_iso_check(y.base, x.base, inv_pm, inv_homs);
  CAPTURE(back.detail);
  CHECK(back.ok);

  // Transitivity: the round trip is an automorphism over the identity.
  std::vector<int> ident;
  for (std::size_t p = 0; p < point_map.size(); ++p)
    ident.push_back(inv_pm[static_cast<std::size_t>(point_map[p])]);
  CHECK(ident == std::vector<int>({0, 1}));
  std::vector<RingHom> round;
  for (std::size_t u = 0; u < x.base.space.opens.size(); ++u)
    round.push_back(compose(open_homs[static_cast<std::size_t>(image_open[u])],
                            inv_homs[u]));
  IsoCheck loop = ringed_space_iso_check(x.base, x.base, ident, round);
  CAPTURE(loop.detail);
  CHECK(loop.ok);

  // Reflexivity with plain identity data.
  IsoCheck self =
      ringed_space_iso_check(y.base, y.base, {0, 1}, identity_section_maps(y.base));
  CHECK(self.ok);
}

TEST_CASE("swapping points without adjusting sections fails") {
  LocallyRingedSpace y = mk_affine(mk_zmod(12));
  IsoCheck iso = ringed_space_iso_check(y.base, y.base, {1, 0},
                                        identity_section_maps(y.base));
  CHECK(!iso.ok);
  CHECK(iso.detail == "the map for open {0} has the wrong target ring");
}

TEST_CASE("affines over different spectra are told apart") {
  LocallyRingedSpace a = mk_affine(mk_zmod(4));
  LocallyRingedSpace b = mk_affine(mk_product(mk_zmod(2), mk_zmod(2)));
  IsoCheck iso = ringed_space_iso_check(a.base, b.base, {0}, {});
  CHECK(!iso.ok);
  CHECK(iso.detail == "the spaces have different numbers of points");
}

TEST_CASE("a disjoint union of two affines is a scheme") {
  RingPtr z4 = mk_zmod(4);
  RingPtr z9 = mk_zmod(9);

  FiniteTopology ambient;
  ambient.universe = 2;
  ambient.opens = {IndexSet(2), IndexSet::of(2, {0}), IndexSet::of(2, {1}),
                   IndexSet::full(2)};
  REQUIRE(verify_topology(ambient).ok);

  ExtendedSheaf e4 = extend_from_basis(presheaf_on_basis(z4));
  ExtendedSheaf e9 = extend_from_basis(presheaf_on_basis(z9));

  GlueInput in;
  in.ambient = ambient;
  in.target = IndexSet::full(2);
  in.members = {IndexSet::of(2, {0}), IndexSet::of(2, {1})};
  in.locals = {e4.presheaf, e9.presheaf};
  in.overlaps = disjoint_overlaps(in);
  GluedPresheaf g = glue_presheaves(in);

  RingedSpace base{ambient, g.presheaf, is_sheaf(g.presheaf)};
  REQUIRE(base.sheaf_certificate.ok);
  CHECK(base.sheaf.at(IndexSet::full(2))->size == 36);

  // Local affineness already forces all stalks local.
  LocallyRingedSpace x{base, stalk_locality(base)};
  REQUIRE(x.stalk_certificates.size() == 2);
  CHECK(x.stalk_certificates[0].local);
  CHECK(x.stalk_certificates[1].local);
  CHECK(stalk_at(base.sheaf, 0).ring->size == 4);
  CHECK(stalk_at(base.sheaf, 1).ring->size == 9);

  // Member data: project each glued tuple onto its slot.
  auto member_for = [&](int which, const RingPtr& ring, const ExtendedSheaf& es) {
    SchemeMember m;
    m.open = in.members[static_cast<std::size_t>(which)];
    m.ring = ring;
    m.embedding = mk_open_inclusion(ambient, m.open);
    m.structure = es.presheaf;
    for (std::size_t k = 0; k < m.embedding.source.opens.size(); ++k) {
      IndexSet img = m.embedding.image_of(m.embedding.source.opens[k]);
      int gi = g.presheaf.space.index_of(img);
      REQUIRE(gi >= 0);
      RingHom h;
      h.source = g.presheaf.at(gi);
      h.target = es.presheaf.at(static_cast<int>(k));
      for (const std::vector<int>& t : g.tuples[static_cast<std::size_t>(gi)])
        h.map.push_back(t[static_cast<std::size_t>(which)]);
      m.sheaf_iso.push_back(h);
    }
    return m;
  };

  SchemeCertificate cert;
  cert.members = {member_for(0, z4, e4), member_for(1, z9, e9)};
  SchemeCheck sc = scheme_check(x, cert);
  CAPTURE(sc.detail);
  CHECK(sc.ok);
  CHECK(sc.member_failures == std::vector<std::string>({"", ""}));

  SUBCASE("dropping a member leaves a point uncovered") {
    SchemeCertificate partial;
    partial.members = {cert.members[0]};
    SchemeCheck missing = scheme_check(x, partial);
    CHECK(!missing.ok);
    CHECK(missing.detail == "the cover misses point 1");
    REQUIRE(missing.member_failures.size() == 1);
    CHECK(missing.member_failures[0].empty());
  }

  SUBCASE("claiming the wrong ring for a member is caught") {
    SchemeCertificate wrong = cert;
    wrong.members[0].ring = z9;
    SchemeCheck bad = scheme_check(x, wrong);
    CHECK(!bad.ok);
    CHECK(bad.member_failures[0].find("not the structure sheaf") !=
          std::string::npos);
  }

  SUBCASE("tampering with a comparison map is caught") {
    SchemeCertificate tam = cert;
    std::swap(tam.members[0].sheaf_iso[1].map[0], tam.members[0].sheaf_iso[1].map[1]);
    SchemeCheck bad = scheme_check(x, tam);
    CHECK(!bad.ok);
    CHECK(bad.member_failures[0].find("the pullback comparison fails") !=
          std::string::npos);
  }
}

TEST_CASE("scheme_check refuses a failed ambient certificate") {
  RingPtr z4 = mk_zmod(4);
  LocallyRingedSpace x = mk_affine(z4);
  x.base.sheaf_certificate.ok = false;
  SchemeCheck sc = scheme_check(x, affine_is_scheme(z4));
  CHECK(!sc.ok);
  CHECK(sc.detail == "the ambient sheaf certificate does not pass");
}

TEST_CASE("mk_affine surfaces cover budget exhaustion") {
  CHECK_THROWS_AS(mk_affine(mk_zmod(12), 1), budget_error);
}

TEST_CASE("inconsistent ringed spaces are rejected") {
  LocallyRingedSpace small = mk_affine(mk_zmod(4));
  LocallyRingedSpace wide = mk_affine(mk_zmod(12));
  RingedSpace broken{wide.base.space, small.base.sheaf,
                     small.base.sheaf_certificate};
  CHECK_THROWS_AS(stalk_locality(broken), input_error);
  CHECK_THROWS_AS(ringed_space_iso_check(broken, broken, {0, 1}, {}), input_error);
}
