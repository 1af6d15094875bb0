#include "finspec/sheaf.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace finspec {

namespace {

std::string open_name(const FiniteTopology& top, int idx) {
  return set_to_string(top.opens[idx]);
}

std::string tuple_to_string(const std::vector<int>& t) {
  std::string out = "(";
  for (size_t i = 0; i < t.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(t[i]);
  }
  return out + ")";
}

bool same_topology(const FiniteTopology& a, const FiniteTopology& b) {
  return a.universe == b.universe && a.opens == b.opens;
}

// Enumerates tuples with tuple[k] in [0, sizes[k]) satisfying
// pairwise(i, k, tuple[i], tuple[k]) for all i < k, in lexicographic order.
void for_each_compatible(const std::vector<int>& sizes,
                         const std::function<bool(int, int, int, int)>& pairwise,
                         const std::function<void(const std::vector<int>&)>& sink) {
  const int n = static_cast<int>(sizes.size());
  std::vector<int> tuple(n, 0);
  std::function<void(int)> extend = [&](int k) {
    if (k == n) {
      sink(tuple);
      return;
    }
    for (int v = 0; v < sizes[k]; ++v) {
      tuple[k] = v;
      bool fits = true;
      for (int i = 0; i < k && fits; ++i) fits = pairwise(i, k, tuple[i], v);
      if (fits) extend(k + 1);
    }
  };
  extend(0);
}

}  // namespace

const RingPtr& PresheafOfRings::at(int open_index) const {
  if (open_index < 0 || open_index >= static_cast<int>(sections.size()))
    throw input_error("presheaf: no open with index " + std::to_string(open_index));
  return sections[open_index];
}

const RingPtr& PresheafOfRings::at(const IndexSet& open) const {
  int at_idx = space.index_of(open);
  if (at_idx < 0)
    throw input_error("presheaf: " + set_to_string(open) + " is not an open");
  return sections[at_idx];
}

const RingHom& PresheafOfRings::res(int from_index, int to_index) const {
  auto it = restrictions.find({from_index, to_index});
  if (it == restrictions.end())
    throw input_error("presheaf: no restriction entry " +
                      open_name(space, from_index) + " -> " +
                      open_name(space, to_index));
  return it->second;
}

const RingHom& PresheafOfRings::res(const IndexSet& from, const IndexSet& to) const {
  int f = space.index_of(from);
  int t = space.index_of(to);
  if (f < 0 || t < 0)
    throw input_error("presheaf: restriction endpoints must be opens");
  return res(f, t);
}

PresheafOfRings mk_constant_presheaf(const FiniteTopology& top, const RingPtr& r) {
  PresheafOfRings f;
  f.space = top;
  f.sections.assign(top.opens.size(), r);
  const int n = static_cast<int>(top.opens.size());
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (top.opens[v].subset_of(top.opens[u])) f.restrictions[{u, v}] = identity_hom(r);
  return f;
}

PresheafCheck check_presheaf(const PresheafOfRings& f) {
  PresheafCheck out;
  const int n = static_cast<int>(f.space.opens.size());
  if (static_cast<int>(f.sections.size()) != n) {
    out.detail = "section count " + std::to_string(f.sections.size()) +
                 " differs from open count " + std::to_string(n);
    return out;
  }
  for (const auto& [key, hom] : f.restrictions) {
    auto [u, v] = key;
    if (u < 0 || u >= n || v < 0 || v >= n ||
        !f.space.opens[v].subset_of(f.space.opens[u])) {
      out.detail = "restriction entry for a non-nested pair (" + std::to_string(u) +
                   ", " + std::to_string(v) + ")";
      return out;
    }
    std::string name = "restriction " + open_name(f.space, u) + " -> " +
                       open_name(f.space, v);
    if (!hom.source || !(*hom.source == *f.sections[u])) {
      out.detail = name + " has the wrong source ring";
      return out;
    }
    if (!hom.target || !(*hom.target == *f.sections[v])) {
      out.detail = name + " has the wrong target ring";
      return out;
    }
    std::string fail = describe_hom_failure(hom);
    if (!fail.empty()) {
      out.detail = name + ": " + fail;
      return out;
    }
  }
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (!f.space.opens[v].subset_of(f.space.opens[u])) continue;
      if (f.restrictions.find({u, v}) == f.restrictions.end()) {
        out.detail = "missing restriction " + open_name(f.space, u) + " -> " +
                     open_name(f.space, v);
        return out;
      }
    }
  }
  for (int u = 0; u < n; ++u) {
    const RingHom& id = f.res(u, u);
    for (int a = 0; a < f.sections[u]->size; ++a) {
      if (id.map[a] != a) {
        out.detail = "restriction " + open_name(f.space, u) + " -> " +
                     open_name(f.space, u) + " moves element " + std::to_string(a);
        return out;
      }
    }
  }
  for (int w = 0; w < n; ++w) {
    for (int v = 0; v < n; ++v) {
      if (!f.space.opens[v].subset_of(f.space.opens[w])) continue;
      for (int u = 0; u < n; ++u) {
        if (!f.space.opens[u].subset_of(f.space.opens[v])) continue;
        const RingHom& wv = f.res(w, v);
        const RingHom& vu = f.res(v, u);
        const RingHom& wu = f.res(w, u);
        for (int a = 0; a < f.sections[w]->size; ++a) {
          if (vu.map[wv.map[a]] != wu.map[a]) {
            out.detail = "restrictions " + open_name(f.space, w) + " -> " +
                         open_name(f.space, v) + " -> " + open_name(f.space, u) +
                         " disagree with the direct map at element " +
                         std::to_string(a);
            return out;
          }
        }
      }
    }
  }
  out.ok = true;
  return out;
}

CoverCheck sheaf_condition_on_cover(const PresheafOfRings& f, const IndexSet& open,
                                    const std::vector<IndexSet>& members) {
  const int u = f.space.index_of(open);
  if (u < 0)
    throw input_error("sheaf_condition_on_cover: target is not an open");
  const int n = static_cast<int>(members.size());
  IndexSet covered(f.space.universe);
  std::vector<int> midx(n);
  for (int i = 0; i < n; ++i) {
    midx[i] = f.space.index_of(members[i]);
    if (midx[i] < 0 || !members[i].subset_of(open))
      throw input_error("sheaf_condition_on_cover: member " +
                        set_to_string(members[i]) + " is not an open inside " +
                        set_to_string(open));
    covered = covered.unite(members[i]);
  }
  if (!(covered == open))
    throw input_error("sheaf_condition_on_cover: members cover " +
                      set_to_string(covered) + ", not " + set_to_string(open));

  // Restrictions of members into each pairwise intersection.
  std::vector<std::vector<const RingHom*>> left(n, std::vector<const RingHom*>(n)),
      right(n, std::vector<const RingHom*>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      int x = f.space.index_of(members[i].intersect(members[j]));
      if (x < 0)
        throw std::logic_error("sheaf_condition_on_cover: intersection not open");
      left[i][j] = &f.res(midx[i], x);
      right[i][j] = &f.res(midx[j], x);
    }
  }

  CoverCheck out;
  std::map<std::vector<int>, int> image;
  const int nu = f.sections[u]->size;
  for (int s = 0; s < nu; ++s) {
    std::vector<int> tuple(n);
    for (int i = 0; i < n; ++i) tuple[i] = f.res(u, midx[i]).map[s];
    auto [it, fresh] = image.emplace(std::move(tuple), s);
    if (!fresh) {
      out.detail = "sections " + std::to_string(it->second) + " and " +
                   std::to_string(s) + " over " + set_to_string(open) +
                   " restrict to the same family";
      return out;
    }
  }

  std::vector<int> sizes(n);
  for (int i = 0; i < n; ++i) sizes[i] = f.sections[midx[i]]->size;
  std::optional<std::vector<int>> unglued;
  for_each_compatible(
      sizes,
      [&](int i, int j, int a, int b) {
        return left[i][j]->map[a] == right[i][j]->map[b];
      },
      [&](const std::vector<int>& tuple) {
        ++out.families;
        if (image.count(tuple))
          ++out.glued;
        else if (!unglued)
          unglued = tuple;
      });
  if (unglued) {
    out.detail = "compatible family " + tuple_to_string(*unglued) +
                 " over the cover of " + set_to_string(open) +
                 " glues to no section";
    return out;
  }
  out.ok = true;
  return out;
}

SheafVerdict is_sheaf(const PresheafOfRings& f, long cover_budget) {
  SheafVerdict out;
  long budget = cover_budget;
  bool stop = false;
  std::string failure;

  const int n = static_cast<int>(f.space.opens.size());
  for (int u = 0; u < n && !stop; ++u) {
    const IndexSet& target = f.space.opens[u];
    std::vector<int> cand;
    for (int v = 0; v < n; ++v)
      if (f.space.opens[v].subset_of(target)) cand.push_back(v);

    std::vector<int> chosen;
    // Visits each antichain of candidate opens exactly once; every visit
    // charges the budget, covers additionally run the equalizer test.
    std::function<void(size_t)> visit = [&](size_t from) {
      if (stop) return;
      if (--budget < 0) {
        out.truncated = true;
        stop = true;
        return;
      }
      IndexSet un(f.space.universe);
      for (int c : chosen) un = un.unite(f.space.opens[c]);
      if (un == target) {
        ++out.covers_checked;
        std::vector<IndexSet> members;
        for (int c : chosen) members.push_back(f.space.opens[c]);
        CoverCheck check = sheaf_condition_on_cover(f, target, members);
        if (!check.ok) {
          failure = "open " + set_to_string(target) + ": " + check.detail;
          stop = true;
          return;
        }
      }
      for (size_t c = from; c < cand.size() && !stop; ++c) {
        bool antichain = true;
        for (int d : chosen) {
          const IndexSet& dc = f.space.opens[d];
          const IndexSet& cc = f.space.opens[cand[c]];
          if (dc.subset_of(cc) || cc.subset_of(dc)) {
            antichain = false;
            break;
          }
        }
        if (!antichain) continue;
        chosen.push_back(cand[c]);
        visit(c + 1);
        chosen.pop_back();
      }
    };
    visit(0);
  }

  if (!failure.empty()) {
    out.detail = failure;
    return out;
  }
  if (out.truncated) {
    out.detail = "cover budget exhausted after " + std::to_string(out.covers_checked) +
                 " covers";
    return out;
  }
  out.ok = true;
  return out;
}

Stalk stalk_at(const PresheafOfRings& f, int point) {
  Stalk s;
  s.point = point;
  s.nbhd = f.space.minimal_open_containing(point);
  s.ring = f.at(s.nbhd);
  return s;
}

IndexSet OpenEmbedding::image_of(const IndexSet& source_set) const {
  IndexSet out(target.universe);
  for (int p : source_set.elements()) out.insert(point_map[p]);
  return out;
}

EmbeddingCheck check_open_embedding(const OpenEmbedding& e) {
  EmbeddingCheck out;
  if (static_cast<int>(e.point_map.size()) != e.source.universe) {
    out.detail = "point map covers " + std::to_string(e.point_map.size()) +
                 " points, source has " + std::to_string(e.source.universe);
    return out;
  }
  std::vector<char> hit(e.target.universe, 0);
  for (int p = 0; p < e.source.universe; ++p) {
    int q = e.point_map[p];
    if (q < 0 || q >= e.target.universe) {
      out.detail = "point " + std::to_string(p) + " maps outside the target";
      return out;
    }
    if (hit[q]) {
      out.detail = "point map is not injective at target point " + std::to_string(q);
      return out;
    }
    hit[q] = 1;
  }
  for (const IndexSet& open : e.source.opens) {
    if (!e.target.is_open(e.image_of(open))) {
      out.detail = "image of source open " + set_to_string(open) + " is " +
                   set_to_string(e.image_of(open)) + ", not open in the target";
      return out;
    }
  }
  for (const IndexSet& open : e.target.opens) {
    IndexSet pre(e.source.universe);
    for (int p = 0; p < e.source.universe; ++p)
      if (open.contains(e.point_map[p])) pre.insert(p);
    if (!e.source.is_open(pre)) {
      out.detail = "preimage of target open " + set_to_string(open) + " is " +
                   set_to_string(pre) + ", not open in the source";
      return out;
    }
  }
  out.ok = true;
  return out;
}

FiniteTopology subspace_topology(const FiniteTopology& top, const IndexSet& subset) {
  if (subset.universe() != top.universe)
    throw input_error("subspace_topology: subset lives in the wrong universe");
  std::vector<int> points = subset.elements();
  std::vector<int> position(top.universe, -1);
  for (size_t i = 0; i < points.size(); ++i) position[points[i]] = static_cast<int>(i);

  FiniteTopology out;
  out.universe = static_cast<int>(points.size());
  for (const IndexSet& open : top.opens) {
    IndexSet cut(out.universe);
    for (int p : open.elements())
      if (position[p] >= 0) cut.insert(position[p]);
    if (std::find(out.opens.begin(), out.opens.end(), cut) == out.opens.end())
      out.opens.push_back(cut);
  }
  std::sort(out.opens.begin(), out.opens.end(), canonical_set_less);
  return out;
}

OpenEmbedding mk_open_inclusion(const FiniteTopology& top, const IndexSet& open) {
  if (!top.is_open(open))
    throw input_error("mk_open_inclusion: " + set_to_string(open) + " is not open");
  OpenEmbedding e;
  e.source = subspace_topology(top, open);
  e.target = top;
  e.point_map = open.elements();
  return e;
}

PresheafOfRings pullback(const OpenEmbedding& e, const PresheafOfRings& f) {
  EmbeddingCheck ec = check_open_embedding(e);
  if (!ec.ok) throw input_error("pullback: invalid embedding: " + ec.detail);
  if (!same_topology(e.target, f.space))
    throw input_error("pullback: embedding target differs from the presheaf space");

  PresheafOfRings out;
  out.space = e.source;
  const int n = static_cast<int>(e.source.opens.size());
  std::vector<int> img(n);
  for (int v = 0; v < n; ++v) {
    img[v] = f.space.index_of(e.image_of(e.source.opens[v]));
    if (img[v] < 0) throw std::logic_error("pullback: image open vanished");
    out.sections.push_back(f.sections[img[v]]);
  }
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (e.source.opens[v].subset_of(e.source.opens[u]))
        out.restrictions[{u, v}] = f.res(img[u], img[v]);

  PresheafCheck pc = check_presheaf(out);
  if (!pc.ok) throw input_error("pullback: result fails presheaf laws: " + pc.detail);
  return out;
}

ComparisonResult restriction_comparison_iso(const OpenEmbedding& e,
                                            const PresheafOfRings& f) {
  ComparisonResult out;
  EmbeddingCheck ec = check_open_embedding(e);
  if (!ec.ok) throw input_error("restriction_comparison_iso: " + ec.detail);
  if (!same_topology(e.target, f.space))
    throw input_error(
        "restriction_comparison_iso: embedding target differs from the presheaf "
        "space");
  IndexSet image = e.image_of(IndexSet::full(e.source.universe));
  if (!f.space.is_open(image) || e.point_map != image.elements() ||
      !same_topology(e.source, subspace_topology(f.space, image)))
    throw input_error(
        "restriction_comparison_iso: embedding is not the canonical inclusion of "
        "an open subspace");

  PresheafOfRings pulled = pullback(e, f);
  const int n = static_cast<int>(e.source.opens.size());
  for (int v = 0; v < n; ++v) {
    ComparisonMap c;
    c.source_open = v;
    c.table_from = f.space.index_of(e.image_of(e.source.opens[v]));
    c.table_to = c.table_from;
    c.map = f.res(c.table_from, c.table_to);
    if (!c.map.is_bijective()) {
      out.detail = "comparison map over " + open_name(e.source, v) +
                   " is not bijective";
      out.maps.push_back(c);
      return out;
    }
    out.maps.push_back(c);
  }
  for (int v = 0; v < n; ++v) {
    for (int w = 0; w < n; ++w) {
      if (!e.source.opens[w].subset_of(e.source.opens[v])) continue;
      const RingHom& down_then_c =
          compose(out.maps[w].map, pulled.res(v, w));
      const RingHom& c_then_down =
          compose(f.res(out.maps[v].table_to, out.maps[w].table_to),
                  out.maps[v].map);
      if (!same_hom(down_then_c, c_then_down)) {
        out.detail = "naturality fails between " + open_name(e.source, v) +
                     " and " + open_name(e.source, w);
        return out;
      }
    }
  }
  out.ok = true;
  return out;
}

MorphismCheck check_presheaf_morphism(const PresheafOfRings& f,
                                      const PresheafOfRings& g,
                                      const std::vector<RingHom>& maps,
                                      bool require_iso) {
  MorphismCheck out;
  if (!same_topology(f.space, g.space)) {
    out.detail = "presheaves live on different spaces";
    return out;
  }
  const int n = static_cast<int>(f.space.opens.size());
  if (static_cast<int>(maps.size()) != n) {
    out.detail = "expected " + std::to_string(n) + " maps, got " +
                 std::to_string(maps.size());
    return out;
  }
  for (int u = 0; u < n; ++u) {
    std::string name = "map over " + open_name(f.space, u);
    if (!maps[u].source || !(*maps[u].source == *f.sections[u])) {
      out.detail = name + " has the wrong source ring";
      return out;
    }
    if (!maps[u].target || !(*maps[u].target == *g.sections[u])) {
      out.detail = name + " has the wrong target ring";
      return out;
    }
    std::string fail = describe_hom_failure(maps[u]);
    if (!fail.empty()) {
      out.detail = name + ": " + fail;
      return out;
    }
    if (require_iso && !maps[u].is_bijective()) {
      out.detail = name + " is not bijective";
      return out;
    }
  }
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (!f.space.opens[v].subset_of(f.space.opens[u])) continue;
      if (!same_hom(compose(maps[v], f.res(u, v)), compose(g.res(u, v), maps[u]))) {
        out.detail = "naturality square fails from " + open_name(f.space, u) +
                     " to " + open_name(f.space, v);
        return out;
      }
    }
  }
  out.ok = true;
  return out;
}

namespace {

// Shared validation for the glue input; returns the index of each ambient
// open of the subspace of in.target.
struct GlueContext {
  std::vector<int> member_idx;                  // ambient open index per member
  std::vector<std::vector<int>> local_idx_of;   // [i][ambient open] -> local open
};

GlueContext validate_glue_input(const GlueInput& in) {
  GlueContext ctx;
  if (in.target.universe() != in.ambient.universe ||
      !in.ambient.is_open(in.target))
    throw input_error("glue_presheaves: target is not an open of the ambient space");
  const int n = static_cast<int>(in.members.size());
  if (static_cast<int>(in.locals.size()) != n)
    throw input_error("glue_presheaves: one local presheaf per member required");
  IndexSet covered(in.ambient.universe);
  for (int i = 0; i < n; ++i) {
    if (!in.ambient.is_open(in.members[i]) || !in.members[i].subset_of(in.target))
      throw input_error("glue_presheaves: member " + set_to_string(in.members[i]) +
                        " is not an open inside the target");
    covered = covered.unite(in.members[i]);
  }
  if (!(covered == in.target))
    throw input_error("glue_presheaves: members cover " + set_to_string(covered) +
                      ", not " + set_to_string(in.target));

  const int no = static_cast<int>(in.ambient.opens.size());
  ctx.member_idx.resize(n);
  ctx.local_idx_of.assign(n, std::vector<int>(no, -1));
  for (int i = 0; i < n; ++i) {
    ctx.member_idx[i] = in.ambient.index_of(in.members[i]);
    FiniteTopology sub = subspace_topology(in.ambient, in.members[i]);
    if (!same_topology(in.locals[i].space, sub))
      throw input_error("glue_presheaves: local presheaf " + std::to_string(i) +
                        " lives on the wrong space");
    PresheafCheck pc = check_presheaf(in.locals[i]);
    if (!pc.ok)
      throw input_error("glue_presheaves: local presheaf " + std::to_string(i) +
                        " is invalid: " + pc.detail);
    // Ambient opens inside the member, translated to subspace indices.
    std::vector<int> points = in.members[i].elements();
    std::vector<int> position(in.ambient.universe, -1);
    for (size_t k = 0; k < points.size(); ++k)
      position[points[k]] = static_cast<int>(k);
    for (int o = 0; o < no; ++o) {
      if (!in.ambient.opens[o].subset_of(in.members[i])) continue;
      IndexSet cut(sub.universe);
      for (int p : in.ambient.opens[o].elements()) cut.insert(position[p]);
      ctx.local_idx_of[i][o] = sub.index_of(cut);
      if (ctx.local_idx_of[i][o] < 0)
        throw std::logic_error("glue_presheaves: subspace open lookup failed");
    }
  }

  // Overlap isos: presence, shape, naturality, inverses, cocycle.
  auto iso_at = [&](int i, int j, int o) -> const RingHom& {
    auto pair_it = in.overlaps.find({i, j});
    if (pair_it == in.overlaps.end())
      throw input_error("glue_presheaves: missing overlap data for pair (" +
                        std::to_string(i) + ", " + std::to_string(j) + ")");
    auto it = pair_it->second.find(o);
    if (it == pair_it->second.end())
      throw input_error("glue_presheaves: missing overlap map for pair (" +
                        std::to_string(i) + ", " + std::to_string(j) + ") over " +
                        open_name(in.ambient, o));
    return it->second;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      IndexSet meet = in.members[i].intersect(in.members[j]);
      for (int o = 0; o < no; ++o) {
        if (!in.ambient.opens[o].subset_of(meet)) continue;
        const RingHom& h = iso_at(i, j, o);
        std::string name = "overlap map (" + std::to_string(i) + ", " +
                           std::to_string(j) + ") over " + open_name(in.ambient, o);
        const RingPtr& src = in.locals[i].sections[ctx.local_idx_of[i][o]];
        const RingPtr& dst = in.locals[j].sections[ctx.local_idx_of[j][o]];
        if (!h.source || !h.target || !(*h.source == *src) || !(*h.target == *dst))
          throw input_error("glue_presheaves: " + name + " has the wrong endpoints");
        std::string fail = describe_hom_failure(h);
        if (!fail.empty())
          throw input_error("glue_presheaves: " + name + ": " + fail);
        if (!h.is_bijective())
          throw input_error("glue_presheaves: " + name + " is not bijective");
        // Naturality toward every smaller overlap open.
        for (int o2 = 0; o2 < no; ++o2) {
          if (o2 == o || !in.ambient.opens[o2].subset_of(in.ambient.opens[o]))
            continue;
          if (!in.ambient.opens[o2].subset_of(meet)) continue;
          const RingHom& h2 = iso_at(i, j, o2);
          const RingHom down_i =
              in.locals[i].res(ctx.local_idx_of[i][o], ctx.local_idx_of[i][o2]);
          const RingHom down_j =
              in.locals[j].res(ctx.local_idx_of[j][o], ctx.local_idx_of[j][o2]);
          if (!same_hom(compose(h2, down_i), compose(down_j, h)))
            throw input_error("glue_presheaves: " + name +
                              " is not natural toward " +
                              open_name(in.ambient, o2));
        }
        if (i > j) {
          const RingHom& back = iso_at(j, i, o);
          RingHom round = compose(back, h);
          bool ident = true;
          for (int a = 0; a < src->size && ident; ++a) ident = round.map[a] == a;
          if (!ident)
            throw input_error("glue_presheaves: overlap maps for (" +
                              std::to_string(j) + ", " + std::to_string(i) +
                              ") and (" + std::to_string(i) + ", " +
                              std::to_string(j) + ") are not mutually inverse over " +
                              open_name(in.ambient, o));
        }
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        if (i == j || j == k || i == k) continue;
        IndexSet triple = in.members[i].intersect(in.members[j]).intersect(in.members[k]);
        for (int o = 0; o < no; ++o) {
          if (!in.ambient.opens[o].subset_of(triple)) continue;
          if (!same_hom(compose(iso_at(j, k, o), iso_at(i, j, o)), iso_at(i, k, o)))
            throw input_error("glue_presheaves: cocycle condition fails for the "
                              "triple (" +
                              std::to_string(i) + ", " + std::to_string(j) + ", " +
                              std::to_string(k) + ") over " +
                              open_name(in.ambient, o));
        }
      }
    }
  }
  return ctx;
}

}  // namespace

std::map<std::pair<int, int>, std::map<int, RingHom>> disjoint_overlaps(
    const GlueInput& in) {
  const int n = static_cast<int>(in.members.size());
  std::map<std::pair<int, int>, std::map<int, RingHom>> out;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (!in.members[i].intersect(in.members[j]).empty())
        throw input_error("disjoint_overlaps: members " + std::to_string(i) +
                          " and " + std::to_string(j) + " meet");
      int o = in.ambient.index_of(IndexSet(in.ambient.universe));
      if (o < 0) throw input_error("disjoint_overlaps: ambient lacks the empty open");
      const RingPtr& src = in.locals[i].at(IndexSet(in.locals[i].space.universe));
      const RingPtr& dst = in.locals[j].at(IndexSet(in.locals[j].space.universe));
      RingHom h;
      h.source = src;
      h.target = dst;
      h.map.assign(src->size, dst->zero);
      out[{i, j}][o] = h;
    }
  }
  return out;
}

GluedPresheaf glue_presheaves(const GlueInput& in) {
  GlueContext ctx = validate_glue_input(in);
  const int n = static_cast<int>(in.members.size());

  GluedPresheaf out;
  out.presheaf.space = subspace_topology(in.ambient, in.target);
  const int no = static_cast<int>(out.presheaf.space.opens.size());

  // Each subspace open corresponds to exactly one ambient open inside the
  // target, because the target itself is open.
  std::vector<int> ambient_of(no, -1);
  {
    std::vector<int> points = in.target.elements();
    for (int w = 0; w < no; ++w) {
      IndexSet amb(in.ambient.universe);
      for (int p : out.presheaf.space.opens[w].elements()) amb.insert(points[p]);
      ambient_of[w] = in.ambient.index_of(amb);
      if (ambient_of[w] < 0)
        throw std::logic_error("glue_presheaves: subspace open is not ambient-open");
    }
  }

  // Constraint data per subspace open: for every member pair, both locals
  // restricted into the pairwise overlap piece, then compared through the
  // overlap iso.
  out.tuples.resize(no);
  for (int w = 0; w < no; ++w) {
    std::vector<int> slot_open(n), sizes(n);
    for (int i = 0; i < n; ++i) {
      int amb_piece = in.ambient.index_of(
          in.ambient.opens[ambient_of[w]].intersect(in.members[i]));
      slot_open[i] = ctx.local_idx_of[i][amb_piece];
      sizes[i] = in.locals[i].sections[slot_open[i]]->size;
    }
    struct PairMaps {
      const RingHom* left;
      const RingHom* iso;
      const RingHom* right;
    };
    std::vector<std::vector<PairMaps>> pairs(n, std::vector<PairMaps>(n));
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        int amb_meet = in.ambient.index_of(in.ambient.opens[ambient_of[w]]
                                               .intersect(in.members[i])
                                               .intersect(in.members[j]));
        pairs[i][j].left =
            &in.locals[i].res(slot_open[i], ctx.local_idx_of[i][amb_meet]);
        pairs[i][j].iso = &in.overlaps.at({i, j}).at(amb_meet);
        pairs[i][j].right =
            &in.locals[j].res(slot_open[j], ctx.local_idx_of[j][amb_meet]);
      }
    }
    for_each_compatible(
        sizes,
        [&](int i, int j, int a, int b) {
          const PairMaps& m = pairs[i][j];
          return m.iso->map[m.left->map[a]] == m.right->map[b];
        },
        [&](const std::vector<int>& tuple) { out.tuples[w].push_back(tuple); });

    // Componentwise ring structure on the compatible families.
    std::map<std::vector<int>, int> index_of;
    for (size_t t = 0; t < out.tuples[w].size(); ++t)
      index_of[out.tuples[w][t]] = static_cast<int>(t);
    const int sz = static_cast<int>(out.tuples[w].size());
    auto combine = [&](int a, int b, bool add) {
      std::vector<int> got(n);
      for (int i = 0; i < n; ++i) {
        const FiniteRing& li = *in.locals[i].sections[slot_open[i]];
        got[i] = add ? li.add(out.tuples[w][a][i], out.tuples[w][b][i])
                     : li.mul(out.tuples[w][a][i], out.tuples[w][b][i]);
      }
      auto it = index_of.find(got);
      if (it == index_of.end())
        throw std::logic_error("glue_presheaves: families not closed under ops");
      return it->second;
    };
    std::vector<int> add_table(static_cast<size_t>(sz) * sz),
        mul_table(static_cast<size_t>(sz) * sz);
    for (int a = 0; a < sz; ++a) {
      for (int b = 0; b < sz; ++b) {
        add_table[static_cast<size_t>(a) * sz + b] = combine(a, b, true);
        mul_table[static_cast<size_t>(a) * sz + b] = combine(a, b, false);
      }
    }
    std::vector<int> zeros(n), ones(n);
    for (int i = 0; i < n; ++i) {
      zeros[i] = in.locals[i].sections[slot_open[i]]->zero;
      ones[i] = in.locals[i].sections[slot_open[i]]->one;
    }
    out.presheaf.sections.push_back(mk_raw_ring(
        sz, std::move(add_table), std::move(mul_table), index_of.at(zeros),
        index_of.at(ones),
        "glued sections over " + set_to_string(out.presheaf.space.opens[w])));
  }

  for (int u = 0; u < no; ++u) {
    for (int v = 0; v < no; ++v) {
      if (!out.presheaf.space.opens[v].subset_of(out.presheaf.space.opens[u]))
        continue;
      RingHom h;
      h.source = out.presheaf.sections[u];
      h.target = out.presheaf.sections[v];
      std::map<std::vector<int>, int> index_of;
      for (size_t t = 0; t < out.tuples[v].size(); ++t)
        index_of[out.tuples[v][t]] = static_cast<int>(t);
      for (const std::vector<int>& tuple : out.tuples[u]) {
        std::vector<int> down(n);
        for (int i = 0; i < n; ++i) {
          int au = in.ambient.index_of(
              in.ambient.opens[ambient_of[u]].intersect(in.members[i]));
          int av = in.ambient.index_of(
              in.ambient.opens[ambient_of[v]].intersect(in.members[i]));
          down[i] = in.locals[i]
                        .res(ctx.local_idx_of[i][au], ctx.local_idx_of[i][av])
                        .map[tuple[i]];
        }
        auto it = index_of.find(down);
        if (it == index_of.end())
          throw std::logic_error("glue_presheaves: restriction left the family set");
        h.map.push_back(it->second);
      }
      out.presheaf.restrictions[{u, v}] = std::move(h);
    }
  }

  PresheafCheck pc = check_presheaf(out.presheaf);
  if (!pc.ok)
    throw std::logic_error("glue_presheaves: glued presheaf invalid: " + pc.detail);
  return out;
}

}  // namespace finspec
