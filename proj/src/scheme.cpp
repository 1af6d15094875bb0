#include "finspec/scheme.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "finspec/spectrum.hpp"

namespace finspec {

namespace {

bool same_topology(const FiniteTopology& a, const FiniteTopology& b) {
  return a.universe == b.universe && a.opens == b.opens;
}

std::string open_label(const FiniteTopology& t, int idx) {
  return set_to_string(t.opens[static_cast<std::size_t>(idx)]);
}

// Presheaf-shape guard shared by the public entry points.
void require_consistent(const RingedSpace& x, const char* who) {
  if (!same_topology(x.space, x.sheaf.space))
    throw input_error(std::string(who) +
                      ": the sheaf lives on a different topology than the space");
}

IndexSet image_under(const std::vector<int>& point_map, const IndexSet& s,
                     int target_universe) {
  IndexSet out(target_universe);
  for (int p : s.elements()) out.insert(point_map[static_cast<std::size_t>(p)]);
  return out;
}

IndexSet preimage_under(const std::vector<int>& point_map, const IndexSet& s) {
  IndexSet out(static_cast<int>(point_map.size()));
  for (int p = 0; p < static_cast<int>(point_map.size()); ++p)
    if (s.contains(point_map[static_cast<std::size_t>(p)])) out.insert(p);
  return out;
}

}  // namespace

std::vector<LocalRingCheck> stalk_locality(const RingedSpace& x) {
  require_consistent(x, "stalk_locality");
  std::vector<LocalRingCheck> out;
  out.reserve(static_cast<std::size_t>(x.space.universe));
  for (int p = 0; p < x.space.universe; ++p)
    out.push_back(is_local_ring(stalk_at(x.sheaf, p).ring));
  return out;
}

LocallyRingedSpace mk_affine(const ExtendedSheaf& e, long cover_budget) {
  LocallyRingedSpace out;
  out.base.space = e.presheaf.space;
  out.base.sheaf = e.presheaf;
  out.base.sheaf_certificate = is_sheaf(e.presheaf, cover_budget);
  if (out.base.sheaf_certificate.truncated)
    throw budget_error("mk_affine: " + out.base.sheaf_certificate.detail);
  if (!out.base.sheaf_certificate.ok)
    throw std::logic_error("mk_affine: the section presheaf fails the sheaf condition: " +
                           out.base.sheaf_certificate.detail);
  for (int p = 0; p < out.base.space.universe; ++p) {
    StalkIdentification si = stalk_identification(e, p);
    if (!si.ok)
      throw std::logic_error("mk_affine: stalk identification fails at point " +
                             std::to_string(p) + ": " + si.detail);
    out.stalk_certificates.push_back(si.local);
  }
  return out;
}

LocallyRingedSpace mk_affine(const RingPtr& r, long cover_budget) {
  return mk_affine(extend_from_basis(presheaf_on_basis(r)), cover_budget);
}

IsoCheck ringed_space_iso_check(const RingedSpace& x, const RingedSpace& y,
                                const std::vector<int>& point_map,
                                const std::vector<RingHom>& open_homs) {
  require_consistent(x, "ringed_space_iso_check");
  require_consistent(y, "ringed_space_iso_check");
  IsoCheck out;

  if (static_cast<int>(point_map.size()) != x.space.universe) {
    out.detail = "expected " + std::to_string(x.space.universe) +
                 " point images, got " + std::to_string(point_map.size());
    return out;
  }
  if (x.space.universe != y.space.universe) {
    out.detail = "the spaces have different numbers of points";
    return out;
  }
  std::vector<int> hits(static_cast<std::size_t>(y.space.universe), 0);
  for (int v : point_map) {
    if (v < 0 || v >= y.space.universe) {
      out.detail = "point image " + std::to_string(v) + " is out of range";
      return out;
    }
    ++hits[static_cast<std::size_t>(v)];
  }
  for (int h : hits)
    if (h != 1) {
      out.detail = "the point map is not a bijection";
      return out;
    }

  for (const IndexSet& u : x.space.opens)
    if (!y.space.is_open(image_under(point_map, u, y.space.universe))) {
      out.detail = "the image of open " + set_to_string(u) + " is not open";
      return out;
    }
  std::vector<int> pre_idx;
  pre_idx.reserve(y.space.opens.size());
  for (const IndexSet& v : y.space.opens) {
    IndexSet pre = preimage_under(point_map, v);
    int idx = x.space.index_of(pre);
    if (idx < 0) {
      out.detail = "the preimage of open " + set_to_string(v) + " is not open";
      return out;
    }
    pre_idx.push_back(idx);
  }

  const int n = static_cast<int>(y.space.opens.size());
  if (static_cast<int>(open_homs.size()) != n) {
    out.detail = "expected " + std::to_string(n) + " section maps, got " +
                 std::to_string(open_homs.size());
    return out;
  }
  for (int v = 0; v < n; ++v) {
    const RingHom& h = open_homs[static_cast<std::size_t>(v)];
    std::string name = "the map for open " + open_label(y.space, v);
    if (!h.source || !(*h.source == *y.sheaf.at(v))) {
      out.detail = name + " has the wrong source ring";
      return out;
    }
    if (!h.target || !(*h.target == *x.sheaf.at(pre_idx[static_cast<std::size_t>(v)]))) {
      out.detail = name + " has the wrong target ring";
      return out;
    }
    std::string fail = describe_hom_failure(h);
    if (!fail.empty()) {
      out.detail = name + " is not a ring hom: " + fail;
      return out;
    }
    if (!h.is_bijective()) {
      out.detail = name + " is not bijective";
      return out;
    }
  }
  for (int v = 0; v < n; ++v) {
    for (int w = 0; w < n; ++w) {
      if (!y.space.opens[static_cast<std::size_t>(w)].subset_of(
              y.space.opens[static_cast<std::size_t>(v)]))
        continue;
      const RingHom& down_then_map =
          compose(open_homs[static_cast<std::size_t>(w)], y.sheaf.res(v, w));
      const RingHom& map_then_down =
          compose(x.sheaf.res(pre_idx[static_cast<std::size_t>(v)],
                              pre_idx[static_cast<std::size_t>(w)]),
                  open_homs[static_cast<std::size_t>(v)]);
      if (!same_hom(down_then_map, map_then_down)) {
        out.detail = "naturality square fails from " + open_label(y.space, v) +
                     " to " + open_label(y.space, w);
        return out;
      }
    }
  }
  out.ok = true;
  return out;
}

namespace {

// Empty string means the member passed; otherwise the first failure.
std::string check_member(const LocallyRingedSpace& x, const SchemeMember& m) {
  const FiniteTopology& ambient = x.base.space;
  if (m.open.universe() != ambient.universe)
    return "the member open lives in a different universe";
  if (!ambient.is_open(m.open))
    return "the member set " + set_to_string(m.open) + " is not open";
  if (!m.ring) return "the member ring is missing";

  EmbeddingCheck ec = check_open_embedding(m.embedding);
  if (!ec.ok) return "the embedding is invalid: " + ec.detail;
  if (!same_topology(m.embedding.target, ambient))
    return "the embedding lands in a different space";
  IndexSet image = m.embedding.image_of(IndexSet::full(m.embedding.source.universe));
  if (!(image == m.open))
    return "the embedding covers " + set_to_string(image) +
           " instead of the member " + set_to_string(m.open);

  ZariskiSpace sp = mk_spec(m.ring);
  if (!same_topology(m.embedding.source, sp.topology))
    return "the embedding source is not the spectrum of the member ring";

  if (!same_topology(m.structure.space, m.embedding.source))
    return "the supplied presheaf lives on the wrong space";
  PresheafOfRings rebuilt = extend_from_basis(presheaf_on_basis(m.ring)).presheaf;
  const int n = static_cast<int>(rebuilt.space.opens.size());
  for (int k = 0; k < n; ++k)
    if (!m.structure.at(k) || !(*m.structure.at(k) == *rebuilt.at(k)))
      return "the supplied presheaf is not the structure sheaf of the member ring "
             "(sections over " + open_label(rebuilt.space, k) + " differ)";
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      if (!rebuilt.space.opens[static_cast<std::size_t>(v)].subset_of(
              rebuilt.space.opens[static_cast<std::size_t>(u)]))
        continue;
      if (!same_hom(m.structure.res(u, v), rebuilt.res(u, v)))
        return "the supplied presheaf is not the structure sheaf of the member ring "
               "(restriction from " + open_label(rebuilt.space, u) + " to " +
               open_label(rebuilt.space, v) + " differs)";
    }

  PresheafOfRings pulled = pullback(m.embedding, x.base.sheaf);
  MorphismCheck mc =
      check_presheaf_morphism(pulled, m.structure, m.sheaf_iso, /*require_iso=*/true);
  if (!mc.ok) return "the pullback comparison fails: " + mc.detail;
  return "";
}

}  // namespace

SchemeCheck scheme_check(const LocallyRingedSpace& x, const SchemeCertificate& cert) {
  require_consistent(x.base, "scheme_check");
  SchemeCheck out;
  if (!x.base.sheaf_certificate.ok) {
    out.detail = "the ambient sheaf certificate does not pass";
    return out;
  }

  IndexSet covered(x.base.space.universe);
  for (const SchemeMember& m : cert.members)
    if (m.open.universe() == x.base.space.universe) covered = covered.unite(m.open);
  std::string cover_fail;
  if (!covered.is_full()) {
    for (int p = 0; p < x.base.space.universe; ++p)
      if (!covered.contains(p)) {
        cover_fail = "the cover misses point " + std::to_string(p);
        break;
      }
  }

  out.member_failures.reserve(cert.members.size());
  std::string first_member_fail;
  for (std::size_t i = 0; i < cert.members.size(); ++i) {
    std::string fail = check_member(x, cert.members[i]);
    if (!fail.empty() && first_member_fail.empty())
      first_member_fail = "member " + std::to_string(i) + ": " + fail;
    out.member_failures.push_back(std::move(fail));
  }

  if (!cover_fail.empty())
    out.detail = cover_fail;
  else
    out.detail = first_member_fail;
  out.ok = out.detail.empty();
  return out;
}

SchemeCertificate affine_is_scheme(const ExtendedSheaf& e) {
  const FiniteTopology& topo = e.presheaf.space;
  SchemeMember m;
  m.open = IndexSet::full(topo.universe);
  m.ring = e.basis.space.ring;
  m.embedding = mk_open_inclusion(topo, m.open);
  m.structure = e.presheaf;

  ComparisonResult cr = restriction_comparison_iso(m.embedding, e.presheaf);
  if (!cr.ok)
    throw std::logic_error("affine_is_scheme: restriction comparison fails: " +
                           cr.detail);
  m.sheaf_iso.resize(topo.opens.size());
  for (const ComparisonMap& c : cr.maps)
    m.sheaf_iso[static_cast<std::size_t>(c.source_open)] = c.map;

  SchemeCertificate cert;
  cert.members.push_back(std::move(m));
  return cert;
}

SchemeCertificate affine_is_scheme(const RingPtr& r) {
  return affine_is_scheme(extend_from_basis(presheaf_on_basis(r)));
}

}  // namespace finspec
