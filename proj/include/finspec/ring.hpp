#pragma once
// Finite commutative rings with identity, given by dense operation tables
// over element indices. Rings are immutable once built; every operation
// here is a pure function. The one-element ring (zero == one) is a valid
// ring everywhere in this library.

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "finspec/common.hpp"

namespace finspec {

struct FiniteRing;
using RingPtr = std::shared_ptr<const FiniteRing>;

struct FiniteRing {
  int size = 0;
  int zero = 0;
  int one = 0;
  std::vector<int> add_table;  // size*size, row-major
  std::vector<int> mul_table;
  std::string label;

  // Derived lookups, filled on construction when the tables are closed.
  std::vector<int> neg_table;  // additive inverse, -1 when none exists
  std::vector<int> inv_table;  // multiplicative inverse, -1 for non-units

  int add(int a, int b) const { return add_table[static_cast<size_t>(a) * size + b]; }
  int mul(int a, int b) const { return mul_table[static_cast<size_t>(a) * size + b]; }
  int neg(int a) const { return neg_table[a]; }
  int sub(int a, int b) const { return add(a, neg_table[b]); }
  int inv(int a) const { return inv_table[a]; }
  bool is_unit(int a) const { return inv_table[a] >= 0; }
  bool is_zero_ring() const { return size == 1; }

  // Every table entry lies in [0, size).
  bool tables_closed() const;

  // Structural equality: sizes, distinguished elements and tables. Labels
  // are display only and do not participate.
  friend bool operator==(const FiniteRing& a, const FiniteRing& b) {
    return a.size == b.size && a.zero == b.zero && a.one == b.one &&
           a.add_table == b.add_table && a.mul_table == b.mul_table;
  }
};

// Default cap on constructed ring sizes; constructions that would exceed
// the cap raise budget_error instead of allocating quadratic tables.
inline constexpr int kDefaultMaxRingSize = 256;

// Z/n for n >= 1; n == 1 yields the zero ring.
RingPtr mk_zmod(int n, int max_size = kDefaultMaxRingSize);

// GF(p)[x]/(f) for prime p and monic f given by coefficients c0..cd
// (constant term first, degree d >= 1, cd == 1 mod p). Elements are
// residue polynomials indexed by base-p digit strings: index e encodes
// sum_i ((e / p^i) mod p) x^i.
RingPtr mk_gf_poly_quotient(int p, const std::vector<int>& coeffs,
                            int max_size = kDefaultMaxRingSize);

// A x B with pair indexing (a, b) -> a * |B| + b.
RingPtr mk_product(const RingPtr& a, const RingPtr& b,
                   int max_size = kDefaultMaxRingSize);

// Arbitrary tables, for tests that inject defective structures. When
// validate is true malformed tables are rejected here; when false they are
// accepted and verify_ring_axioms will report on them.
RingPtr mk_raw_ring(int size, std::vector<int> add_table, std::vector<int> mul_table,
                    int zero, int one, std::string label, bool validate = true);

struct Ideal {
  RingPtr ring;
  IndexSet members;
};

struct Submonoid {
  RingPtr ring;
  IndexSet members;
};

// Empty string when valid; otherwise a human-readable reason.
std::string validate_ideal(const Ideal& ideal);
std::string validate_submonoid(const Submonoid& s);

// Smallest ideal containing the generators: closure of {0} u gens under
// addition and multiplication by arbitrary ring elements.
Ideal ideal_generated_by(const RingPtr& r, const std::vector<int>& gens);

// Smallest multiplicative submonoid containing 1 and the generators.
Submonoid submonoid_generated_by(const RingPtr& r, const std::vector<int>& gens);

// A short display form such as "(3)" or "(2,3)": greedily chosen generators
// that regenerate the ideal. Purely cosmetic.
std::string ideal_label(const Ideal& ideal);

struct RingHom {
  RingPtr source;
  RingPtr target;
  std::vector<int> map;  // element index -> element index

  int operator()(int a) const { return map[a]; }
  bool is_bijective() const;
};

// R/I together with the projection hom. Cosets are indexed by their least
// member, in ascending order of that representative.
struct QuotientResult {
  RingPtr ring;
  RingHom projection;
};
QuotientResult mk_quotient(const RingPtr& r, const Ideal& ideal);

struct AxiomCheck {
  std::string name;
  bool pass = true;
  // Counterexample element indices; -1 for unused slots.
  int a = -1, b = -1, c = -1;
  std::string note;
};
struct AxiomReport {
  std::vector<AxiomCheck> checks;
  bool all_pass() const;
  std::string summary() const;
};

// Exhaustive check of the commutative-unital-ring axioms, one report entry
// per axiom with a counterexample triple on failure.
AxiomReport verify_ring_axioms(const FiniteRing& r);

// Elements with a multiplicative inverse. In the zero ring this is {0}.
IndexSet units(const FiniteRing& r);

bool is_ring_hom(const RingHom& h);
// Empty string when h is a unital ring hom; otherwise the first violation.
std::string describe_hom_failure(const RingHom& h);

RingHom identity_hom(const RingPtr& r);
// (outer after inner); requires inner.target and outer.source structurally equal.
RingHom compose(const RingHom& outer, const RingHom& inner);
bool same_hom(const RingHom& a, const RingHom& b);

struct HomBudget {
  long max_pairs = 65536;        // |source| * |target|
  long max_candidates = 1 << 20;  // generator image assignments tried
};

// All unital ring homs source -> target, in a deterministic order.
// Search runs over images of a greedily grown generating set (least
// ungenerated element first); each assignment is propagated through
// recorded derivations and then verified against all relations.
// Raises budget_error ("search truncated") when the budget is exceeded.
std::vector<RingHom> enumerate_homs(const RingPtr& source, const RingPtr& target,
                                    const HomBudget& budget = {});

// {r : exists s in S with s*r = 0}. Always an ideal; that fact is verified
// here and a violation raises logic_error.
Ideal s_torsion(const RingPtr& r, const Submonoid& s);

struct LocalRingCheck {
  bool local = false;
  std::optional<Ideal> maximal_ideal;  // the ideal of non-units, when local
  // Two incomparable maximal ideals witnessing failure, when they exist.
  std::optional<std::pair<Ideal, Ideal>> incomparable_pair;
  std::string detail;
};

// A ring is local when its non-units form an ideal. The zero ring is not
// local (it has no maximal ideal).
LocalRingCheck is_local_ring(const RingPtr& r);

// True when some power of a is zero.
bool is_nilpotent(const FiniteRing& r, int a);

}  // namespace finspec
