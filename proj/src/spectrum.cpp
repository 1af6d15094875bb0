#include "finspec/spectrum.hpp"

#include <algorithm>
#include <stdexcept>

namespace finspec {

namespace {

void require_valid_ideal(const Ideal& ideal, const char* who) {
  std::string err = validate_ideal(ideal);
  if (!err.empty()) throw input_error(std::string(who) + ": " + err);
}

}  // namespace

std::vector<Ideal> enumerate_ideals(const RingPtr& r) {
  std::vector<Ideal> found;
  std::vector<size_t> work;
  auto add_if_new = [&](Ideal ideal) {
    for (const Ideal& known : found)
      if (known.members == ideal.members) return;
    found.push_back(std::move(ideal));
    work.push_back(found.size() - 1);
  };

  add_if_new(ideal_generated_by(r, {}));
  while (!work.empty()) {
    size_t at = work.back();
    work.pop_back();
    IndexSet base = found[at].members;
    for (int a = 0; a < r->size; ++a) {
      if (base.contains(a)) continue;
      std::vector<int> gens = base.elements();
      gens.push_back(a);
      add_if_new(ideal_generated_by(r, gens));
    }
  }

  std::sort(found.begin(), found.end(), [](const Ideal& a, const Ideal& b) {
    return canonical_set_less(a.members, b.members);
  });
  return found;
}

PrimeCheck is_prime_ideal(const Ideal& ideal) {
  require_valid_ideal(ideal, "is_prime_ideal");
  PrimeCheck out;
  const FiniteRing& r = *ideal.ring;
  if (ideal.members.contains(r.one)) {
    out.detail = "improper: contains 1";
    return out;
  }
  for (int a = 0; a < r.size; ++a) {
    if (ideal.members.contains(a)) continue;
    for (int b = a; b < r.size; ++b) {
      if (ideal.members.contains(b)) continue;
      if (ideal.members.contains(r.mul(a, b))) {
        out.witness_a = a;
        out.witness_b = b;
        out.detail = std::to_string(a) + " * " + std::to_string(b) + " = " +
                     std::to_string(r.mul(a, b)) +
                     " lies in the ideal; neither factor does";
        return out;
      }
    }
  }
  out.prime = true;
  out.detail = "prime";
  return out;
}

std::vector<Ideal> spec_points(const RingPtr& r) {
  std::vector<Ideal> points;
  for (Ideal& ideal : enumerate_ideals(r))
    if (is_prime_ideal(ideal).prime) points.push_back(std::move(ideal));
  std::sort(points.begin(), points.end(), [](const Ideal& a, const Ideal& b) {
    return elements_less(a.members, b.members);
  });
  return points;
}

int FiniteTopology::index_of(const IndexSet& s) const {
  for (size_t i = 0; i < opens.size(); ++i)
    if (opens[i] == s) return static_cast<int>(i);
  return -1;
}

IndexSet FiniteTopology::minimal_open_containing(int point) const {
  if (point < 0 || point >= universe)
    throw input_error("minimal_open_containing: point " + std::to_string(point) +
                      " outside universe of size " + std::to_string(universe));
  IndexSet acc = IndexSet::full(universe);
  for (const IndexSet& open : opens)
    if (open.contains(point)) acc = acc.intersect(open);
  if (index_of(acc) < 0)
    throw std::logic_error("minimal_open_containing: intersection is not open");
  return acc;
}

TopologyCheck verify_topology(const FiniteTopology& t) {
  TopologyCheck out;
  for (const IndexSet& open : t.opens) {
    if (open.universe() != t.universe) {
      out.detail = "open " + set_to_string(open) + " lives in the wrong universe";
      return out;
    }
  }
  for (size_t i = 0; i + 1 < t.opens.size(); ++i) {
    if (!canonical_set_less(t.opens[i], t.opens[i + 1])) {
      out.detail = "opens are not strictly sorted at position " + std::to_string(i);
      return out;
    }
  }
  if (!t.is_open(IndexSet(t.universe))) {
    out.detail = "empty set is not open";
    return out;
  }
  if (!t.is_open(IndexSet::full(t.universe))) {
    out.detail = "full set is not open";
    return out;
  }
  for (const IndexSet& a : t.opens) {
    for (const IndexSet& b : t.opens) {
      if (!t.is_open(a.intersect(b))) {
        out.detail = "intersection of " + set_to_string(a) + " and " +
                     set_to_string(b) + " is not open";
        return out;
      }
      if (!t.is_open(a.unite(b))) {
        out.detail = "union of " + set_to_string(a) + " and " + set_to_string(b) +
                     " is not open";
        return out;
      }
    }
  }
  out.ok = true;
  return out;
}

int ZariskiSpace::point_index(const Ideal& p) const {
  for (size_t i = 0; i < points.size(); ++i)
    if (points[i].members == p.members) return static_cast<int>(i);
  return -1;
}

ZariskiSpace mk_spec(const RingPtr& r) {
  ZariskiSpace sp;
  sp.ring = r;
  sp.points = spec_points(r);
  int n = static_cast<int>(sp.points.size());
  sp.topology.universe = n;

  sp.basic_of.assign(r->size, IndexSet(n));
  for (int f = 0; f < r->size; ++f)
    for (int i = 0; i < n; ++i)
      if (!sp.points[i].members.contains(f)) sp.basic_of[f].insert(i);

  std::vector<IndexSet>& opens = sp.topology.opens;
  auto add_if_new = [&](const IndexSet& s) {
    for (const IndexSet& known : opens)
      if (known == s) return false;
    opens.push_back(s);
    return true;
  };
  add_if_new(IndexSet(n));
  for (const IndexSet& basic : sp.basic_of) add_if_new(basic);
  // Close under union; basics already cover intersections via f*g.
  for (size_t i = 0; i < opens.size(); ++i)
    for (size_t j = 0; j < i; ++j) add_if_new(opens[i].unite(opens[j]));
  std::sort(opens.begin(), opens.end(), canonical_set_less);
  return sp;
}

IndexSet basic_open(const ZariskiSpace& sp, int f) {
  if (f < 0 || f >= sp.ring->size)
    throw input_error("basic_open: element " + std::to_string(f) +
                      " outside ring of size " + std::to_string(sp.ring->size));
  return sp.basic_of[f];
}

IndexSet vanishing_set(const ZariskiSpace& sp, const Ideal& ideal) {
  require_valid_ideal(ideal, "vanishing_set");
  if (!(*ideal.ring == *sp.ring))
    throw input_error("vanishing_set: ideal belongs to a different ring");
  int n = static_cast<int>(sp.points.size());
  IndexSet out(n);
  for (int i = 0; i < n; ++i)
    if (ideal.members.subset_of(sp.points[i].members)) out.insert(i);
  return out;
}

IndexSet closure_of(const ZariskiSpace& sp, const IndexSet& pts) {
  int n = sp.topology.universe;
  if (pts.universe() != n)
    throw input_error("closure_of: point set lives in the wrong universe");
  IndexSet acc = IndexSet::full(n);
  for (const IndexSet& open : sp.topology.opens) {
    IndexSet closed = open.complement();
    if (pts.subset_of(closed)) acc = acc.intersect(closed);
  }
  return acc;
}

BasisCheck basis_check(const ZariskiSpace& sp) {
  BasisCheck out;
  const FiniteRing& r = *sp.ring;
  for (int f = 0; f < r.size; ++f) {
    if (!sp.topology.is_open(sp.basic_of[f])) {
      out.detail = "D(" + std::to_string(f) + ") is missing from the topology";
      return out;
    }
  }
  for (int f = 0; f < r.size; ++f) {
    for (int g = 0; g < r.size; ++g) {
      IndexSet meet = sp.basic_of[f].intersect(sp.basic_of[g]);
      if (!(meet == sp.basic_of[r.mul(f, g)])) {
        out.detail = "D(" + std::to_string(f) + ") intersect D(" +
                     std::to_string(g) + ") differs from D(" +
                     std::to_string(r.mul(f, g)) + ")";
        return out;
      }
    }
  }
  for (const IndexSet& open : sp.topology.opens) {
    for (int p : open.elements()) {
      bool covered = false;
      for (int f = 0; f < r.size && !covered; ++f)
        covered = sp.basic_of[f].contains(p) && sp.basic_of[f].subset_of(open);
      if (!covered) {
        out.detail = "open " + set_to_string(open) +
                     " has no basic neighborhood inside it at point " +
                     std::to_string(p);
        return out;
      }
    }
  }
  out.ok = true;
  return out;
}

}  // namespace finspec
