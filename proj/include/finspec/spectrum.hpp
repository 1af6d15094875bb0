#pragma once

#include <string>
#include <vector>

#include "finspec/ring.hpp"

namespace finspec {

// Canonical order on subsets of a fixed universe: fewer elements first, ties
// by ascending element lists. Open lists and ideal lists both use it.
inline bool canonical_set_less(const IndexSet& a, const IndexSet& b) {
  if (a.count() != b.count()) return a.count() < b.count();
  return elements_less(a, b);
}

// Every ideal of r, in canonical order. Found by growing ideals one generator
// at a time, which reaches all of them without scanning raw subsets.
std::vector<Ideal> enumerate_ideals(const RingPtr& r);

struct PrimeCheck {
  bool prime = false;
  // When not prime and the ideal is proper: a * b lies in the ideal while
  // neither factor does.
  int witness_a = -1;
  int witness_b = -1;
  std::string detail;
};

PrimeCheck is_prime_ideal(const Ideal& ideal);

// Prime ideals ordered by ascending member lists. Empty exactly for the zero
// ring, where the lone ideal is the whole ring.
std::vector<Ideal> spec_points(const RingPtr& r);

struct TopologyCheck {
  bool ok = false;
  std::string detail;
};

// A topology on {0, ..., universe-1} with its full list of opens, kept in
// canonical order with no duplicates.
struct FiniteTopology {
  int universe = 0;
  std::vector<IndexSet> opens;

  bool is_open(const IndexSet& s) const { return index_of(s) >= 0; }
  int index_of(const IndexSet& s) const;

  // Intersection of every open containing the point; open in any topology
  // with finitely many opens.
  IndexSet minimal_open_containing(int point) const;
};

// Confirms empty and full sets are present, opens are closed under pairwise
// union and intersection, and the list is strictly sorted.
TopologyCheck verify_topology(const FiniteTopology& t);

struct ZariskiSpace {
  RingPtr ring;
  std::vector<Ideal> points;
  FiniteTopology topology;
  // basic_of[f] = the points whose ideal omits f.
  std::vector<IndexSet> basic_of;

  int point_index(const Ideal& p) const;
};

// Points, basic opens, and the topology they generate under union.
ZariskiSpace mk_spec(const RingPtr& r);

IndexSet basic_open(const ZariskiSpace& sp, int f);

// Points whose ideal contains every member of the given ideal.
IndexSet vanishing_set(const ZariskiSpace& sp, const Ideal& ideal);

// Smallest closed superset: intersection of the closed sets containing pts.
IndexSet closure_of(const ZariskiSpace& sp, const IndexSet& pts);

struct BasisCheck {
  bool ok = false;
  std::string detail;
};

// The basic opens really form a basis: each lies in the topology, every open
// is covered by basics inside it, and products match intersections.
BasisCheck basis_check(const ZariskiSpace& sp);

}  // namespace finspec
