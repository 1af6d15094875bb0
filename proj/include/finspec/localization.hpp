#pragma once
// Localization of a finite commutative ring at a multiplicative submonoid,
// built as classes of pairs (r, s) under
//   (r, s) ~ (r', s')  iff  some t in S kills r*s' - r'*s,
// together with the predicate characterization of localization maps and the
// checks tying the three definitions (explicit construction, universal
// property, predicate) to each other.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "finspec/ring.hpp"

namespace finspec {

struct LocalizedRing {
  RingPtr base;
  Submonoid monoid;
  RingPtr ring;
  RingHom canonical;  // base -> ring, r |-> class of (r, 1)

  // Per class, the lexicographically least pair (r, s); classes are indexed
  // in ascending order of that representative.
  std::vector<std::pair<int, int>> class_rep;

  // class_of(r, s) for r in base, s in S. Raises input_error when s is not
  // in the submonoid.
  int class_of(int r, int s) const;

  // Dense lookup r*|base|+s -> class, -1 where s is outside S.
  std::vector<int> class_table;
};

// Build R[1/S]. The relation above is applied to all pairs and classes are
// the connected components; both operations are checked to be well defined
// on every representative pair, not just the chosen ones. 0 in S collapses
// everything to the zero ring.
LocalizedRing localize(const RingPtr& r, const Submonoid& s);

// R[1/f]: localize at the powers of f.
LocalizedRing localize_at_element(const RingPtr& r, int f);

// The unique hom R[1/S] -> A through which g factors, g(class(r,s)) =
// g(r) * g(s)^-1. Requires g to send S into the units of A; raises
// input_error naming the offending s otherwise. Well-definedness, the hom
// property and the factoring triangle are all verified before returning.
RingHom induced_map(const LocalizedRing& l, const RingHom& g);

struct ConditionResult {
  bool pass = true;
  std::string witness;  // empty when the condition holds
};

// The three-part predicate for "f : R -> T presents T as R[1/S]":
//   units:     f maps S into the units of T
//   fractions: every t in T is f(r) * f(s)^-1 for some r in R, s in S
//   kernel:    ker f is exactly the S-torsion of R
struct PredicateReport {
  ConditionResult units, fractions, kernel;
  bool verdict() const { return units.pass && fractions.pass && kernel.pass; }
};

PredicateReport strickland_check(const RingHom& f, const Submonoid& s);

struct UniversalPropertyReport {
  bool holds = true;
  std::vector<std::string> family_tested;  // labels, in test order
  std::string failure;                     // first violation found
};

// Bounded universal property: for every ring A in the family and every
// g : R -> A with g(S) in the units of A, exactly one h : T -> A satisfies
// h o f = g. Quantification over homs uses enumerate_homs under the given
// budget.
UniversalPropertyReport universal_property_check(const RingHom& f, const Submonoid& s,
                                                 const std::vector<RingPtr>& family,
                                                 const HomBudget& budget = {});

// Given i1 : R -> T1 presenting T1 as R[1/S1] and any i2 : R -> T2, the
// at-most-one algebra map T1 -> T2 over R. The candidate h(t) for
// t * i1(s) = i1(r) is forced to be i2(r) * i2(s)^-1; when some i2(s) is
// not a unit, or the forced map fails to be a hom, no map exists.
// check_pre re-verifies the predicate for (i1, S1) and raises input_error
// when it fails.
std::optional<RingHom> unique_algebra_map(const RingHom& i1, const Submonoid& s1,
                                          const RingHom& i2, bool check_pre = true);

struct EquivalenceReport {
  bool def_explicit = false;   // ring iso onto the pair-class construction
  bool def_universal = false;  // bounded universal property over the family
  bool def_predicate = false;  // three-part predicate
  std::vector<std::string> family_tested;
  bool agree() const {
    return def_explicit == def_universal && def_universal == def_predicate;
  }
  bool verdict() const { return def_explicit && def_universal && def_predicate; }
};

// Run all three characterizations on the same (f, S) and report each
// verdict; callers treat disagreement as a hard failure.
EquivalenceReport definitions_equivalence_check(const RingHom& f, const Submonoid& s,
                                                const std::vector<RingPtr>& family,
                                                const HomBudget& budget = {});

// Localize at f, then at the image of g; the composite R -> (R[1/f])[1/g]
// must satisfy the predicate for the submonoid generated by f*g. No
// on-the-nose isomorphism with R[1/(f*g)] is ever constructed.
struct DoubleLocalizationReport {
  PredicateReport predicate;
  std::string first_label, second_label;  // the two intermediate rings
  bool verdict() const { return predicate.verdict(); }
};
DoubleLocalizationReport double_localization_check(const RingPtr& r, int f, int g);

// Memoizes localizations of one base ring, keyed by the submonoid's member
// set. Purely an accelerator: results are shared const objects built by
// localize().
class LocalizeCache {
public:
  explicit LocalizeCache(RingPtr base) : base_(std::move(base)) {}
  const LocalizedRing& at_monoid(const Submonoid& s);
  const LocalizedRing& at_element(int f);
  const RingPtr& base() const { return base_; }

private:
  RingPtr base_;
  std::map<std::vector<int>, std::shared_ptr<const LocalizedRing>> by_members_;
};

}  // namespace finspec
