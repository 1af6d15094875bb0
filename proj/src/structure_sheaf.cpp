#include "finspec/structure_sheaf.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <utility>

namespace finspec {
namespace {

std::string open_name(const IndexSet& open) { return set_to_string(open); }

// Positions of the elements of inner within the ascending element list of
// outer; inner must be a subset of outer.
std::vector<int> positions_within(const IndexSet& inner, const IndexSet& outer) {
  std::vector<int> out;
  std::vector<int> big = outer.elements();
  for (int e : inner.elements()) {
    auto it = std::lower_bound(big.begin(), big.end(), e);
    out.push_back(static_cast<int>(it - big.begin()));
  }
  return out;
}

}  // namespace

Submonoid s_of_open(const ZariskiSpace& sp, const IndexSet& pts) {
  const int npts = static_cast<int>(sp.points.size());
  if (pts.universe() != npts)
    throw input_error("point set lives in universe " + std::to_string(pts.universe()) +
                      ", the spectrum has " + std::to_string(npts) + " points");
  Submonoid out{sp.ring, IndexSet::full(sp.ring->size)};
  for (int g = 0; g < sp.ring->size; ++g)
    for (int p : pts.elements())
      if (sp.points[p].members.contains(g)) {
        out.members.erase(g);
        break;
      }
  std::string err = validate_submonoid(out);
  if (!err.empty())
    throw std::logic_error("elements outside the primes of " + open_name(pts) +
                           " fail to form a submonoid: " + err);
  return out;
}

int BasisPresheaf::index_of(const IndexSet& open) const {
  for (size_t i = 0; i < opens.size(); ++i)
    if (opens[i] == open) return static_cast<int>(i);
  return -1;
}

const RingHom& BasisPresheaf::res(int from, int to) const {
  auto it = restrictions.find({from, to});
  if (it == restrictions.end())
    throw input_error("no restriction between basis opens " + std::to_string(from) +
                      " and " + std::to_string(to));
  return it->second;
}

BasisPresheaf presheaf_on_basis(const RingPtr& r) {
  BasisPresheaf out;
  out.space = mk_spec(r);
  for (const IndexSet& d : out.space.basic_of)
    if (std::find(out.opens.begin(), out.opens.end(), d) == out.opens.end())
      out.opens.push_back(d);
  std::sort(out.opens.begin(), out.opens.end(), canonical_set_less);

  for (const IndexSet& u : out.opens)
    out.sections.push_back(localize(r, s_of_open(out.space, u)));

  const int n = static_cast<int>(out.opens.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (out.opens[j].subset_of(out.opens[i]))
        out.restrictions.emplace(std::make_pair(i, j),
                                 induced_map(out.sections[i], out.sections[j].canonical));

  // Each induced map factors the canonical triangle, so composites along
  // nested triples are forced to agree; confirm rather than assume.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!out.opens[j].subset_of(out.opens[i])) continue;
      for (int k = 0; k < n; ++k) {
        if (!out.opens[k].subset_of(out.opens[j])) continue;
        if (!same_hom(compose(out.res(j, k), out.res(i, j)), out.res(i, k)))
          throw std::logic_error("induced restrictions fail to compose along " +
                                 open_name(out.opens[i]) + " -> " + open_name(out.opens[j]) +
                                 " -> " + open_name(out.opens[k]));
      }
    }
  return out;
}

int ExtendedSheaf::index_of_tuple(int open_index, const std::vector<int>& tuple) const {
  if (open_index < 0 || open_index >= static_cast<int>(tuples.size()))
    throw input_error("open index " + std::to_string(open_index) + " out of range");
  const auto& list = tuples[open_index];
  for (size_t i = 0; i < list.size(); ++i)
    if (list[i] == tuple) return static_cast<int>(i);
  return -1;
}

int ExtendedSheaf::topology_index_of_basic(int basis_index) const {
  if (basis_index < 0 || basis_index >= static_cast<int>(basis.opens.size()))
    throw input_error("basis index " + std::to_string(basis_index) + " out of range");
  int ti = presheaf.space.index_of(basis.opens[basis_index]);
  if (ti < 0)
    throw std::logic_error("basic open " + open_name(basis.opens[basis_index]) +
                           " is missing from the topology");
  return ti;
}

ExtendedSheaf extend_from_basis(const BasisPresheaf& b) {
  ExtendedSheaf out;
  out.basis = b;
  const FiniteTopology& topo = b.space.topology;
  const int n_opens = static_cast<int>(topo.opens.size());
  const int n_basis = static_cast<int>(b.opens.size());
  out.basics_in.resize(n_opens);
  out.tuples.resize(n_opens);
  out.presheaf.space = topo;
  out.presheaf.sections.resize(n_opens);

  std::vector<std::map<std::vector<int>, int>> index_of(n_opens);

  for (int u = 0; u < n_opens; ++u) {
    for (int bi = 0; bi < n_basis; ++bi)
      if (b.opens[bi].subset_of(topo.opens[u])) out.basics_in[u].push_back(bi);
    const std::vector<int>& slots = out.basics_in[u];

    // Backtracking over slot values in canonical basis order; every new slot
    // is checked against each assigned slot nested with it, in either
    // direction, so surviving tuples are exactly the compatible families.
    std::vector<int> cur(slots.size(), 0);
    std::function<void(size_t)> visit = [&](size_t k) {
      if (k == slots.size()) {
        out.tuples[u].push_back(cur);
        return;
      }
      const int bk = slots[k];
      const int sz = b.sections[bk].ring->size;
      for (int v = 0; v < sz; ++v) {
        cur[k] = v;
        bool fits = true;
        for (size_t i = 0; i < k && fits; ++i) {
          const int bi = slots[i];
          if (b.opens[bi].subset_of(b.opens[bk]))
            fits = b.res(bk, bi).map[v] == cur[i];
          else if (b.opens[bk].subset_of(b.opens[bi]))
            fits = b.res(bi, bk).map[cur[i]] == v;
        }
        if (fits) visit(k + 1);
      }
    };
    visit(0);

    const auto& tuples = out.tuples[u];
    const int m = static_cast<int>(tuples.size());
    for (int i = 0; i < m; ++i) index_of[u].emplace(tuples[i], i);

    auto combine = [&](const std::vector<int>& a, const std::vector<int>& c, bool mul) {
      std::vector<int> res(slots.size());
      for (size_t s = 0; s < slots.size(); ++s) {
        const FiniteRing& ring = *b.sections[slots[s]].ring;
        res[s] = mul ? ring.mul(a[s], c[s]) : ring.add(a[s], c[s]);
      }
      auto it = index_of[u].find(res);
      if (it == index_of[u].end())
        throw std::logic_error("limit sections over " + open_name(topo.opens[u]) +
                               " are not closed under the ring operations");
      return it->second;
    };
    std::vector<int> add_table(static_cast<size_t>(m) * m), mul_table(add_table.size());
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        add_table[static_cast<size_t>(i) * m + j] = combine(tuples[i], tuples[j], false);
        mul_table[static_cast<size_t>(i) * m + j] = combine(tuples[i], tuples[j], true);
      }
    std::vector<int> zero_tuple(slots.size()), one_tuple(slots.size());
    for (size_t s = 0; s < slots.size(); ++s) {
      zero_tuple[s] = b.sections[slots[s]].ring->zero;
      one_tuple[s] = b.sections[slots[s]].ring->one;
    }
    auto zit = index_of[u].find(zero_tuple);
    auto oit = index_of[u].find(one_tuple);
    if (zit == index_of[u].end() || oit == index_of[u].end())
      throw std::logic_error("the constant tuples are missing over " +
                             open_name(topo.opens[u]));
    out.presheaf.sections[u] =
        mk_raw_ring(m, std::move(add_table), std::move(mul_table), zit->second, oit->second,
                    "limit sections over " + open_name(topo.opens[u]));
  }

  for (int uo = 0; uo < n_opens; ++uo)
    for (int ui = 0; ui < n_opens; ++ui) {
      if (!topo.opens[ui].subset_of(topo.opens[uo])) continue;
      std::vector<int> where;
      for (int bi : out.basics_in[ui]) {
        auto it = std::lower_bound(out.basics_in[uo].begin(), out.basics_in[uo].end(), bi);
        where.push_back(static_cast<int>(it - out.basics_in[uo].begin()));
      }
      RingHom h;
      h.source = out.presheaf.sections[uo];
      h.target = out.presheaf.sections[ui];
      for (const auto& tuple : out.tuples[uo]) {
        std::vector<int> sub;
        sub.reserve(where.size());
        for (int w : where) sub.push_back(tuple[w]);
        auto it = index_of[ui].find(sub);
        if (it == index_of[ui].end())
          throw std::logic_error("restricting a limit section from " +
                                 open_name(topo.opens[uo]) + " to " +
                                 open_name(topo.opens[ui]) + " left the section list");
        h.map.push_back(it->second);
      }
      out.presheaf.restrictions.emplace(std::make_pair(uo, ui), std::move(h));
    }

  for (int bi = 0; bi < n_basis; ++bi) {
    RingHom proj = basis_agreement(out, bi);
    std::string err = describe_hom_failure(proj);
    if (!err.empty() || !proj.is_bijective())
      throw std::logic_error("the sections over basic open " + open_name(b.opens[bi]) +
                             " fail to match the basis ring" +
                             (err.empty() ? "" : ": " + err));
  }

  PresheafCheck pc = check_presheaf(out.presheaf);
  if (!pc.ok) throw std::logic_error("the limit construction is not a presheaf: " + pc.detail);
  return out;
}

RingHom basis_agreement(const ExtendedSheaf& e, int basis_index) {
  const int ti = e.topology_index_of_basic(basis_index);
  const auto& slots = e.basics_in[ti];
  auto pos = std::lower_bound(slots.begin(), slots.end(), basis_index);
  if (pos == slots.end() || *pos != basis_index)
    throw std::logic_error("basic open " + open_name(e.basis.opens[basis_index]) +
                           " is not among its own covering basics");
  RingHom out;
  out.source = e.presheaf.sections[ti];
  out.target = e.basis.sections[basis_index].ring;
  for (const auto& tuple : e.tuples[ti])
    out.map.push_back(tuple[pos - slots.begin()]);
  return out;
}

int HartshorneSheaf::index_of_value(int open_index, const std::vector<int>& value) const {
  if (open_index < 0 || open_index >= static_cast<int>(data.size()))
    throw input_error("open index " + std::to_string(open_index) + " out of range");
  const auto& list = data[open_index];
  for (size_t i = 0; i < list.size(); ++i)
    if (list[i].value == value) return static_cast<int>(i);
  return -1;
}

HartshorneSheaf hartshorne_presheaf(const BasisPresheaf& b) {
  HartshorneSheaf out;
  out.space = b.space;
  out.basis = b;
  const RingPtr& r = b.space.ring;
  const int npts = static_cast<int>(b.space.points.size());
  const int n_basis = static_cast<int>(b.opens.size());

  for (int p = 0; p < npts; ++p) {
    Submonoid comp{r, b.space.points[p].members.complement()};
    std::string err = validate_submonoid(comp);
    if (!err.empty())
      throw std::logic_error("the complement of a prime is not multiplicative: " + err);
    out.stalks.push_back(localize(r, comp));
  }

  // For each basic open: every fraction over its multiplicative set, recorded
  // as the function it induces on the stalks of the covered points. The first
  // fraction found for a function is kept, so certificates are deterministic.
  std::vector<std::map<std::vector<int>, std::pair<int, int>>> fraction_fn(n_basis);
  for (int w = 0; w < n_basis; ++w) {
    const std::vector<int> pts = b.opens[w].elements();
    for (int num = 0; num < r->size; ++num)
      for (int den : b.sections[w].monoid.members.elements()) {
        std::vector<int> vec(pts.size());
        for (size_t i = 0; i < pts.size(); ++i)
          vec[i] = out.stalks[pts[i]].class_of(num, den);
        fraction_fn[w].emplace(std::move(vec), std::make_pair(num, den));
      }
  }

  const FiniteTopology& topo = b.space.topology;
  const int n_opens = static_cast<int>(topo.opens.size());
  out.presheaf.space = topo;
  out.presheaf.sections.resize(n_opens);
  out.data.resize(n_opens);
  std::vector<std::map<std::vector<int>, int>> index_of(n_opens);

  for (int u = 0; u < n_opens; ++u) {
    const std::vector<int> pts = topo.opens[u].elements();
    // Per point: the basics containing it inside this open, plus where the
    // basic's points sit inside the open's point list.
    std::vector<std::vector<int>> basics_at(pts.size());
    std::vector<std::vector<int>> spots(n_basis);
    for (int w = 0; w < n_basis; ++w) {
      if (!b.opens[w].subset_of(topo.opens[u])) continue;
      spots[w] = positions_within(b.opens[w], topo.opens[u]);
      for (size_t i = 0; i < pts.size(); ++i)
        if (b.opens[w].contains(pts[i])) basics_at[i].push_back(w);
    }

    // Odometer over all stalk value functions, lexicographic order.
    std::vector<int> vec(pts.size(), 0);
    bool done = false;
    while (!done) {
      std::vector<GermCertificate> certs;
      bool certified = true;
      for (size_t i = 0; i < pts.size() && certified; ++i) {
        certified = false;
        for (int w : basics_at[i]) {
          std::vector<int> sub;
          sub.reserve(spots[w].size());
          for (int s : spots[w]) sub.push_back(vec[s]);
          auto hit = fraction_fn[w].find(sub);
          if (hit != fraction_fn[w].end()) {
            certs.push_back({w, hit->second.first, hit->second.second});
            certified = true;
            break;
          }
        }
      }
      if (certified) {
        index_of[u].emplace(vec, static_cast<int>(out.data[u].size()));
        out.data[u].push_back({vec, std::move(certs)});
      }
      done = true;
      for (size_t i = pts.size(); i-- > 0;) {
        if (++vec[i] < out.stalks[pts[i]].ring->size) {
          done = false;
          break;
        }
        vec[i] = 0;
      }
      if (pts.empty()) done = true;
    }

    const int m = static_cast<int>(out.data[u].size());
    auto combine = [&](const std::vector<int>& a, const std::vector<int>& c, bool mul) {
      std::vector<int> res(pts.size());
      for (size_t i = 0; i < pts.size(); ++i) {
        const FiniteRing& stalk = *out.stalks[pts[i]].ring;
        res[i] = mul ? stalk.mul(a[i], c[i]) : stalk.add(a[i], c[i]);
      }
      auto it = index_of[u].find(res);
      if (it == index_of[u].end())
        throw std::logic_error("pointwise sections over " + open_name(topo.opens[u]) +
                               " are not closed under the ring operations");
      return it->second;
    };
    std::vector<int> add_table(static_cast<size_t>(m) * m), mul_table(add_table.size());
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        add_table[static_cast<size_t>(i) * m + j] =
            combine(out.data[u][i].value, out.data[u][j].value, false);
        mul_table[static_cast<size_t>(i) * m + j] =
            combine(out.data[u][i].value, out.data[u][j].value, true);
      }
    std::vector<int> zero_vec(pts.size()), one_vec(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) {
      zero_vec[i] = out.stalks[pts[i]].ring->zero;
      one_vec[i] = out.stalks[pts[i]].ring->one;
    }
    auto zit = index_of[u].find(zero_vec);
    auto oit = index_of[u].find(one_vec);
    if (zit == index_of[u].end() || oit == index_of[u].end())
      throw std::logic_error("the constant functions are missing over " +
                             open_name(topo.opens[u]));
    out.presheaf.sections[u] =
        mk_raw_ring(m, std::move(add_table), std::move(mul_table), zit->second, oit->second,
                    "pointwise sections over " + open_name(topo.opens[u]));
  }

  for (int uo = 0; uo < n_opens; ++uo)
    for (int ui = 0; ui < n_opens; ++ui) {
      if (!topo.opens[ui].subset_of(topo.opens[uo])) continue;
      const std::vector<int> where = positions_within(topo.opens[ui], topo.opens[uo]);
      RingHom h;
      h.source = out.presheaf.sections[uo];
      h.target = out.presheaf.sections[ui];
      for (const auto& sec : out.data[uo]) {
        std::vector<int> sub;
        sub.reserve(where.size());
        for (int w : where) sub.push_back(sec.value[w]);
        auto it = index_of[ui].find(sub);
        if (it == index_of[ui].end())
          throw std::logic_error("restricting a certified function from " +
                                 open_name(topo.opens[uo]) + " to " +
                                 open_name(topo.opens[ui]) + " left the section list");
        h.map.push_back(it->second);
      }
      out.presheaf.restrictions.emplace(std::make_pair(uo, ui), std::move(h));
    }

  PresheafCheck pc = check_presheaf(out.presheaf);
  if (!pc.ok)
    throw std::logic_error("the functions construction is not a presheaf: " + pc.detail);
  return out;
}

HartshorneSheaf hartshorne_presheaf(const RingPtr& r) {
  return hartshorne_presheaf(presheaf_on_basis(r));
}

ConstructionComparison compare_constructions(const ExtendedSheaf& e,
                                             const HartshorneSheaf& h) {
  if (!(*e.basis.space.ring == *h.space.ring))
    throw input_error("the two constructions start from different rings");
  if (e.presheaf.space.universe != h.presheaf.space.universe ||
      e.presheaf.space.opens != h.presheaf.space.opens ||
      e.basis.opens != h.basis.opens)
    throw input_error("the two constructions live on different spaces");

  ConstructionComparison out;
  std::map<std::pair<int, int>, RingHom> germ;
  auto germ_map = [&](int w, int q) -> const RingHom& {
    auto it = germ.find({w, q});
    if (it == germ.end())
      it = germ.emplace(std::make_pair(w, q),
                        induced_map(e.basis.sections[w], h.stalks[q].canonical))
               .first;
    return it->second;
  };

  const FiniteTopology& topo = e.presheaf.space;
  for (int u = 0; u < static_cast<int>(topo.opens.size()); ++u) {
    const std::vector<int> pts = topo.opens[u].elements();
    // Germ through the first covering basic; a compatible tuple gives the
    // same germ through any of them.
    std::vector<int> via(pts.size(), -1), via_pos(pts.size(), -1);
    for (size_t i = 0; i < pts.size(); ++i)
      for (size_t k = 0; k < e.basics_in[u].size(); ++k)
        if (e.basis.opens[e.basics_in[u][k]].contains(pts[i])) {
          via[i] = e.basics_in[u][k];
          via_pos[i] = static_cast<int>(k);
          break;
        }
    RingHom m;
    m.source = e.presheaf.sections[u];
    m.target = h.presheaf.sections[u];
    for (const auto& tuple : e.tuples[u]) {
      std::vector<int> vec(pts.size());
      for (size_t i = 0; i < pts.size(); ++i)
        vec[i] = germ_map(via[i], pts[i]).map[tuple[via_pos[i]]];
      int idx = h.index_of_value(u, vec);
      if (idx < 0) {
        out.detail = "a compatible tuple over " + open_name(topo.opens[u]) +
                     " has no certified pointwise counterpart";
        return out;
      }
      m.map.push_back(idx);
    }
    out.maps.push_back(std::move(m));
  }

  MorphismCheck mc = check_presheaf_morphism(e.presheaf, h.presheaf, out.maps, true);
  out.ok = mc.ok;
  out.detail = mc.detail;
  return out;
}

ConstructionComparison compare_constructions(const RingPtr& r) {
  BasisPresheaf b = presheaf_on_basis(r);
  return compare_constructions(extend_from_basis(b), hartshorne_presheaf(b));
}

RingHom canonical_section_map(const ExtendedSheaf& e, int open_index) {
  if (open_index < 0 || open_index >= static_cast<int>(e.tuples.size()))
    throw input_error("open index " + std::to_string(open_index) + " out of range");
  const RingPtr& r = e.basis.space.ring;
  RingHom out;
  out.source = r;
  out.target = e.presheaf.sections[open_index];
  for (int a = 0; a < r->size; ++a) {
    std::vector<int> tuple;
    tuple.reserve(e.basics_in[open_index].size());
    for (int bi : e.basics_in[open_index])
      tuple.push_back(e.basis.sections[bi].canonical.map[a]);
    int idx = e.index_of_tuple(open_index, tuple);
    if (idx < 0)
      throw std::logic_error("a canonical tuple is missing from the limit sections over " +
                             open_name(e.presheaf.space.opens[open_index]));
    out.map.push_back(idx);
  }
  return out;
}

GlobalSectionsCheck global_sections_check(const ExtendedSheaf& e) {
  GlobalSectionsCheck out;
  const int full = e.presheaf.space.index_of(IndexSet::full(e.presheaf.space.universe));
  if (full < 0) throw std::logic_error("the topology has no full open");
  out.to_global = canonical_section_map(e, full);
  std::string err = describe_hom_failure(out.to_global);
  if (!err.empty()) {
    out.detail = "the canonical map into the global sections is not a hom: " + err;
    return out;
  }
  if (!out.to_global.is_bijective()) {
    out.detail = "the canonical map into the global sections is not bijective: ring has " +
                 std::to_string(e.basis.space.ring->size) + " elements, global sections " +
                 std::to_string(out.to_global.target->size);
    return out;
  }
  out.ok = true;
  return out;
}

GlobalSectionsCheck global_sections_check(const RingPtr& r) {
  return global_sections_check(extend_from_basis(presheaf_on_basis(r)));
}

StalkIdentification stalk_identification(const ExtendedSheaf& e, int point) {
  const int npts = static_cast<int>(e.basis.space.points.size());
  if (point < 0 || point >= npts)
    throw input_error("point " + std::to_string(point) + " out of range; the spectrum has " +
                      std::to_string(npts) + " points");
  StalkIdentification out;
  out.stalk = stalk_at(e.presheaf, point);
  const RingPtr& r = e.basis.space.ring;
  out.complement = Submonoid{r, e.basis.space.points[point].members.complement()};
  std::string err = validate_submonoid(out.complement);
  if (!err.empty())
    throw std::logic_error("the complement of a prime is not multiplicative: " + err);

  const int nb = e.presheaf.space.index_of(out.stalk.nbhd);
  RingHom into_stalk = canonical_section_map(e, nb);
  out.predicate = strickland_check(into_stalk, out.complement);
  LocalizedRing direct = localize(r, out.complement);
  out.iso = unique_algebra_map(direct.canonical, out.complement, into_stalk);
  out.local = is_local_ring(out.stalk.ring);

  if (!out.predicate.verdict())
    out.detail = "the canonical map into the stalk fails the localization predicate";
  else if (!out.iso)
    out.detail = "no algebra map carries the direct localization to the stalk";
  else if (!out.iso->is_bijective())
    out.detail = "the algebra map from the direct localization is not bijective";
  else if (!out.local.local)
    out.detail = "the stalk ring is not local: " + out.local.detail;
  else
    out.ok = true;
  return out;
}

StalkIdentification stalk_identification(const RingPtr& r, int point) {
  return stalk_identification(extend_from_basis(presheaf_on_basis(r)), point);
}

}  // namespace finspec
