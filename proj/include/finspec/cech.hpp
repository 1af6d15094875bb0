#pragma once
// The two-step exactness sequence for a family generating the unit ideal:
//   0 -> R -> prod_i T_i -> prod_{i<j} T_ij
// with alpha the tuple of the slot maps and beta the pairwise difference of
// the forced connecting maps. Slot rings default to the explicit
// localizations but any witnesses passing the localization predicate are
// accepted; the verdicts must come out the same either way.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "finspec/localization.hpp"

namespace finspec {

// One slot of the sequence: a ring together with the map from the base.
struct CechWitness {
  RingPtr ring;
  RingHom hom;
};

class CechCache;

struct CechSequence {
  RingPtr base;
  std::vector<int> elements;  // f_0..f_{n-1}
  Ideal unit_certificate;     // the ideal the elements generate; all of base
  std::vector<CechWitness> level1;                        // per slot
  std::map<std::pair<int, int>, CechWitness> level2;      // i < j only
  std::vector<PredicateReport> level1_reports;            // vs <f_i>
  std::map<std::pair<int, int>, PredicateReport> level2_reports;  // vs <f_i*f_j>
  // The unique algebra maps T_i -> T_ij and T_j -> T_ij over the base.
  std::map<std::pair<int, int>, RingHom> into_left;
  std::map<std::pair<int, int>, RingHom> into_right;

  // (hom_i(a))_i.
  std::vector<int> alpha(int a) const;
  // Per pair (i, j) ascending: image of tuple[i] minus image of tuple[j]
  // in T_ij. Additive only; never assumed multiplicative.
  std::vector<int> beta(const std::vector<int>& tuple) const;
};

// Optional overrides and acceleration for build_sequence. Slots without an
// override get the explicit localization at the generated submonoid; the
// cache only ever serves those default slots.
struct CechOptions {
  std::map<int, CechWitness> level1;
  std::map<std::pair<int, int>, CechWitness> level2;
  CechCache* cache = nullptr;
};

// Assembles and eagerly verifies the sequence: the unit-ideal certificate,
// every slot's predicate report, and the forced connecting maps. A family
// that generates a proper ideal is rejected with that ideal named; a witness
// failing its predicate is rejected with the slot identified.
CechSequence build_sequence(const RingPtr& r, const std::vector<int>& fs,
                            const CechOptions& options = {});

// The pair ring for any (i, j), diagonal included, built the default way for
// display. Exactness only ever consumes the i < j core.
CechWitness pair_witness(const CechSequence& seq, int i, int j);

struct ExactnessReport {
  bool alpha_injective = false;
  bool image_in_kernel = false;  // beta(alpha(a)) = 0 for every a
  bool kernel_in_image = false;
  IndexSet alpha_kernel;  // base elements alpha sends to the zero tuple
  long kernel_size = 0;   // tuples in ker beta, counted by enumeration
  std::string detail;     // first failure with its witness; empty on pass

  bool exact() const { return alpha_injective && image_in_kernel && kernel_in_image; }
};

// Injectivity of alpha plus both inclusions between image(alpha) and
// ker(beta). The kernel is enumerated by constraint propagation across the
// pairs rather than scanning the full product.
ExactnessReport check_exactness(const CechSequence& seq);

struct SquaresReport {
  bool ok = false;
  std::string detail;
  ExactnessReport row1, row2;
  // Composite-predicate reports for the second row's witnesses, slots first,
  // then pairs in ascending order.
  std::vector<DoubleLocalizationReport> doubles;
};

// Two sequences for the same ring downstairs: row one localizes R[1/f] at
// the images of the fs, row two plugs in the one-step rings R[1/(f*f_i)] and
// R[1/(f*f_i*f_j)] as witnesses. The vertical forced maps must make every
// square commute, verified pointwise.
SquaresReport commuting_squares_check(const RingPtr& r, int f, const std::vector<int>& fs);

// Memoizes the default slot data for one base ring: localizations, their
// predicate reports, and the forced connecting maps, keyed by the submonoid
// member sets involved. Purely an accelerator.
class CechCache {
public:
  explicit CechCache(RingPtr base) : localizations_(std::move(base)) {}

  const RingPtr& base() const { return localizations_.base(); }
  LocalizeCache& localizations() { return localizations_; }
  // Predicate report for localize-at-f's canonical map against <f>.
  const PredicateReport& canonical_report(int f);
  // The unique algebra map R[1/f] -> R[1/g] over the base; g is expected to
  // be a multiple of f so that the map exists.
  const RingHom& connecting(int f, int g);

private:
  LocalizeCache localizations_;
  std::map<int, PredicateReport> reports_;
  std::map<std::pair<std::vector<int>, std::vector<int>>, RingHom> connections_;
};

}  // namespace finspec
