#include "finspec/localization.hpp"

#include <algorithm>

namespace finspec {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

LocalizedRing localize_impl(const RingPtr& r, const Submonoid& s, const std::string& label) {
  {
    const std::string reason = validate_submonoid(s);
    if (!reason.empty()) throw input_error("localize: not a submonoid: " + reason);
    if (!(*s.ring == *r)) throw input_error("localize: submonoid belongs to a different ring");
  }
  const FiniteRing& ring = *r;
  const std::vector<int> selems = s.members.elements();

  // killed[x] iff some t in S has t*x = 0; the pair relation then reads
  // (r1,s1) ~ (r2,s2) iff killed[r1*s2 - r2*s1].
  std::vector<char> killed(ring.size, 0);
  for (int x = 0; x < ring.size; ++x)
    for (int t : selems)
      if (ring.mul(t, x) == ring.zero) {
        killed[x] = 1;
        break;
      }

  // Pairs in lexicographic (r, s) order.
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<size_t>(ring.size) * selems.size());
  for (int a = 0; a < ring.size; ++a)
    for (int t : selems) pairs.emplace_back(a, t);
  const int np = static_cast<int>(pairs.size());

  auto related = [&](int p, int q) {
    const auto [r1, s1] = pairs[p];
    const auto [r2, s2] = pairs[q];
    return killed[ring.sub(ring.mul(r1, s2), ring.mul(r2, s1))] != 0;
  };

  UnionFind uf(np);
  for (int p = 0; p < np; ++p)
    for (int q = p + 1; q < np; ++q)
      if (related(p, q)) uf.unite(p, q);

  // Class index by ascending least pair; with min-union roots are already
  // the least pair of each class.
  std::vector<int> root_to_class(np, -1);
  std::vector<std::pair<int, int>> class_rep;
  std::vector<int> pair_class(np);
  for (int p = 0; p < np; ++p) {
    const int root = uf.find(p);
    if (root_to_class[root] < 0) {
      root_to_class[root] = static_cast<int>(class_rep.size());
      class_rep.push_back(pairs[root]);
    }
    pair_class[p] = root_to_class[root];
  }
  const int n = static_cast<int>(class_rep.size());

  std::vector<int> class_table(static_cast<size_t>(ring.size) * ring.size, -1);
  for (int p = 0; p < np; ++p)
    class_table[static_cast<size_t>(pairs[p].first) * ring.size + pairs[p].second] =
        pair_class[p];

  // Operation tables, with well-definedness checked across every pair of
  // representative pairs rather than one chosen pair per class.
  FiniteRing q;
  q.size = n;
  q.add_table.assign(static_cast<size_t>(n) * n, -1);
  q.mul_table.assign(static_cast<size_t>(n) * n, -1);
  auto lookup = [&](int num, int den) {
    return class_table[static_cast<size_t>(num) * ring.size + den];
  };
  for (int p = 0; p < np; ++p) {
    const auto [r1, s1] = pairs[p];
    for (int o = 0; o < np; ++o) {
      const auto [r2, s2] = pairs[o];
      const int den = ring.mul(s1, s2);
      const int sum = lookup(ring.add(ring.mul(r1, s2), ring.mul(r2, s1)), den);
      const int prod = lookup(ring.mul(r1, r2), den);
      const size_t cell = static_cast<size_t>(pair_class[p]) * n + pair_class[o];
      if (q.add_table[cell] >= 0 && q.add_table[cell] != sum)
        throw std::logic_error("localize: addition not well defined on classes");
      if (q.mul_table[cell] >= 0 && q.mul_table[cell] != prod)
        throw std::logic_error("localize: multiplication not well defined on classes");
      q.add_table[cell] = sum;
      q.mul_table[cell] = prod;
    }
  }
  q.zero = lookup(ring.zero, ring.one);
  q.one = lookup(ring.one, ring.one);
  q.label = label;

  LocalizedRing out;
  out.base = r;
  out.monoid = s;
  out.ring = mk_raw_ring(q.size, std::move(q.add_table), std::move(q.mul_table), q.zero,
                         q.one, q.label);

  out.canonical.source = r;
  out.canonical.target = out.ring;
  out.canonical.map.resize(ring.size);
  for (int a = 0; a < ring.size; ++a) out.canonical.map[a] = lookup(a, ring.one);

  out.class_rep = std::move(class_rep);
  out.class_table = std::move(class_table);

  {
    const std::string why = describe_hom_failure(out.canonical);
    if (!why.empty()) throw std::logic_error("localize: canonical map is not a hom: " + why);
    for (int t : selems)
      if (!out.ring->is_unit(out.canonical.map[t]))
        throw std::logic_error("localize: canonical image of " + std::to_string(t) +
                               " is not a unit");
  }
  return out;
}

}  // namespace

int LocalizedRing::class_of(int r, int s) const {
  const int size = base->size;
  if (r < 0 || r >= size || s < 0 || s >= size)
    throw input_error("class_of: element index out of range");
  const int c = class_table[static_cast<size_t>(r) * size + s];
  if (c < 0)
    throw input_error("class_of: " + std::to_string(s) + " is not in the submonoid");
  return c;
}

LocalizedRing localize(const RingPtr& r, const Submonoid& s) {
  return localize_impl(r, s, r->label + "[1/" + set_to_string(s.members) + "]");
}

LocalizedRing localize_at_element(const RingPtr& r, int f) {
  if (f < 0 || f >= r->size)
    throw input_error("localize_at_element: element index out of range");
  Submonoid s = submonoid_generated_by(r, {f});
  return localize_impl(r, s, r->label + "[1/" + std::to_string(f) + "]");
}

RingHom induced_map(const LocalizedRing& l, const RingHom& g) {
  if (!(*g.source == *l.base))
    throw input_error("induced_map: hom does not start at the base ring");
  {
    const std::string why = describe_hom_failure(g);
    if (!why.empty()) throw input_error("induced_map: not a ring hom: " + why);
  }
  const FiniteRing& target = *g.target;
  for (int s : l.monoid.members.elements())
    if (!target.is_unit(g.map[s]))
      throw input_error("induced_map: g(" + std::to_string(s) + ") = " +
                        std::to_string(g.map[s]) + " is not a unit of " + target.label);

  RingHom h{l.ring, g.target, std::vector<int>(l.ring->size, -1)};
  const int base_size = l.base->size;
  for (int a = 0; a < base_size; ++a)
    for (int s = 0; s < base_size; ++s) {
      const int c = l.class_table[static_cast<size_t>(a) * base_size + s];
      if (c < 0) continue;
      const int value = target.mul(g.map[a], target.inv(g.map[s]));
      if (h.map[c] >= 0 && h.map[c] != value)
        throw std::logic_error("induced_map: value not well defined on classes");
      h.map[c] = value;
    }

  {
    const std::string why = describe_hom_failure(h);
    if (!why.empty()) throw std::logic_error("induced_map: induced map is not a hom: " + why);
  }
  for (int a = 0; a < base_size; ++a)
    if (h.map[l.canonical.map[a]] != g.map[a])
      throw std::logic_error("induced_map: triangle fails at " + std::to_string(a));
  return h;
}

PredicateReport strickland_check(const RingHom& f, const Submonoid& s) {
  {
    const std::string why = describe_hom_failure(f);
    if (!why.empty()) throw input_error("strickland_check: not a ring hom: " + why);
    const std::string reason = validate_submonoid(s);
    if (!reason.empty()) throw input_error("strickland_check: not a submonoid: " + reason);
    if (!(*s.ring == *f.source))
      throw input_error("strickland_check: submonoid belongs to a different ring");
  }
  const FiniteRing& source = *f.source;
  const FiniteRing& target = *f.target;
  const std::vector<int> selems = s.members.elements();
  PredicateReport rep;

  for (int t : selems)
    if (!target.is_unit(f.map[t])) {
      rep.units = {false, "s = " + std::to_string(t) + " maps to non-unit " +
                              std::to_string(f.map[t])};
      break;
    }

  for (int t = 0; t < target.size; ++t) {
    bool found = false;
    for (int a = 0; a < source.size && !found; ++a)
      for (int x : selems)
        if (target.mul(t, f.map[x]) == f.map[a]) {
          found = true;
          break;
        }
    if (!found) {
      rep.fractions = {false, "t = " + std::to_string(t) + " is not a fraction over the image"};
      break;
    }
  }

  const Ideal torsion = s_torsion(f.source, s);
  for (int a = 0; a < source.size; ++a) {
    const bool in_kernel = f.map[a] == target.zero;
    const bool in_torsion = torsion.members.contains(a);
    if (in_kernel != in_torsion) {
      rep.kernel = {false, "element " + std::to_string(a) +
                               (in_kernel ? " is in the kernel but not S-torsion"
                                          : " is S-torsion but not in the kernel")};
      break;
    }
  }
  return rep;
}

UniversalPropertyReport universal_property_check(const RingHom& f, const Submonoid& s,
                                                 const std::vector<RingPtr>& family,
                                                 const HomBudget& budget) {
  UniversalPropertyReport rep;
  const std::vector<int> selems = s.members.elements();
  for (const RingPtr& a : family) {
    rep.family_tested.push_back(a->label);
    const std::vector<RingHom> from_base = enumerate_homs(f.source, a, budget);
    const std::vector<RingHom> from_target = enumerate_homs(f.target, a, budget);
    for (const RingHom& g : from_base) {
      bool unit_ok = true;
      for (int x : selems)
        if (!a->is_unit(g.map[x])) {
          unit_ok = false;
          break;
        }
      if (!unit_ok) continue;
      int matches = 0;
      for (const RingHom& h : from_target)
        if (compose(h, f).map == g.map) ++matches;
      if (matches != 1) {
        rep.holds = false;
        rep.failure = "over " + a->label + ": " + std::to_string(matches) +
                      " factorizations for a map sending S to units";
        return rep;
      }
    }
  }
  return rep;
}

std::optional<RingHom> unique_algebra_map(const RingHom& i1, const Submonoid& s1,
                                          const RingHom& i2, bool check_pre) {
  if (!(*i1.source == *i2.source))
    throw input_error("unique_algebra_map: homs start at different rings");
  if (check_pre && !strickland_check(i1, s1).verdict())
    throw input_error("unique_algebra_map: first hom does not present a localization at S");

  const FiniteRing& t1 = *i1.target;
  const FiniteRing& t2 = *i2.target;
  const std::vector<int> selems = s1.members.elements();

  // An algebra map sends units to units, so every i2(s) must be a unit.
  for (int s : selems)
    if (!t2.is_unit(i2.map[s])) return std::nullopt;

  RingHom h{i1.target, i2.target, std::vector<int>(t1.size, -1)};
  for (int t = 0; t < t1.size; ++t) {
    int num = -1, den = -1;
    for (int a = 0; a < i1.source->size && num < 0; ++a)
      for (int x : selems)
        if (t1.mul(t, i1.map[x]) == i1.map[a]) {
          num = a;
          den = x;
          break;
        }
    if (num < 0)
      throw std::logic_error("unique_algebra_map: no fraction form for element " +
                             std::to_string(t));
    h.map[t] = t2.mul(i2.map[num], t2.inv(i2.map[den]));
  }

  // The map above is forced, so failing either check means none exists.
  if (!is_ring_hom(h)) return std::nullopt;
  for (int a = 0; a < i1.source->size; ++a)
    if (h.map[i1.map[a]] != i2.map[a]) return std::nullopt;
  return h;
}

EquivalenceReport definitions_equivalence_check(const RingHom& f, const Submonoid& s,
                                                const std::vector<RingPtr>& family,
                                                const HomBudget& budget) {
  EquivalenceReport rep;
  rep.def_predicate = strickland_check(f, s).verdict();

  UniversalPropertyReport up = universal_property_check(f, s, family, budget);
  rep.def_universal = up.holds;
  rep.family_tested = std::move(up.family_tested);

  const LocalizedRing reference = localize(f.source, s);
  for (const RingHom& h : enumerate_homs(f.target, reference.ring, budget))
    if (h.is_bijective() && compose(h, f).map == reference.canonical.map) {
      rep.def_explicit = true;
      break;
    }
  return rep;
}

DoubleLocalizationReport double_localization_check(const RingPtr& r, int f, int g) {
  if (f < 0 || f >= r->size || g < 0 || g >= r->size)
    throw input_error("double_localization_check: element index out of range");
  const LocalizedRing first = localize_at_element(r, f);
  const int g_image = first.canonical.map[g];
  const LocalizedRing second = localize_at_element(first.ring, g_image);
  const RingHom composite = compose(second.canonical, first.canonical);
  const Submonoid fg = submonoid_generated_by(r, {r->mul(f, g)});

  DoubleLocalizationReport rep;
  rep.predicate = strickland_check(composite, fg);
  rep.first_label = first.ring->label;
  rep.second_label = second.ring->label;
  return rep;
}

const LocalizedRing& LocalizeCache::at_monoid(const Submonoid& s) {
  const std::vector<int> key = s.members.elements();
  auto it = by_members_.find(key);
  if (it == by_members_.end())
    it = by_members_
             .emplace(key, std::make_shared<const LocalizedRing>(localize(base_, s)))
             .first;
  return *it->second;
}

const LocalizedRing& LocalizeCache::at_element(int f) {
  const Submonoid s = submonoid_generated_by(base_, {f});
  const std::vector<int> key = s.members.elements();
  auto it = by_members_.find(key);
  if (it == by_members_.end())
    it = by_members_
             .emplace(key,
                      std::make_shared<const LocalizedRing>(localize_at_element(base_, f)))
             .first;
  return *it->second;
}

}  // namespace finspec
