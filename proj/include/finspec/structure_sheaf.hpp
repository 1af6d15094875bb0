#pragma once
// The structure sheaf on the spectrum of a finite commutative ring, built
// two independent ways and compared: once as a limit of localizations over
// the basic opens, once as certified pointwise-germ functions. Both land on
// the full topology and feed the generic presheaf checks.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "finspec/localization.hpp"
#include "finspec/sheaf.hpp"
#include "finspec/spectrum.hpp"

namespace finspec {

// {g : g lies outside every prime in pts}. Always a multiplicative submonoid:
// all of the ring for the empty set, exactly the units for the full spectrum.
Submonoid s_of_open(const ZariskiSpace& sp, const IndexSet& pts);

// Sections over the distinct basic opens only. One ring is stored per
// distinct point set, no matter how many elements cut out that open.
struct BasisPresheaf {
  ZariskiSpace space;
  std::vector<IndexSet> opens;           // distinct basic opens, canonical order
  std::vector<LocalizedRing> sections;   // aligned with opens
  // Keyed by (outer, inner) over every nested pair of basis opens, the equal
  // pairs included; each map factors the outer canonical map into the inner.
  std::map<std::pair<int, int>, RingHom> restrictions;

  int index_of(const IndexSet& open) const;  // -1 when absent
  const RingHom& res(int from, int to) const;
};

// Localize at s_of_open of each distinct basic open and connect nested opens
// by the induced maps between the localizations. The factoring triangles are
// verified by induced_map; transitivity across nested triples is checked
// here and a violation raises logic_error.
BasisPresheaf presheaf_on_basis(const RingPtr& r);

// The limit construction. A section over an arbitrary open is a compatible
// tuple of basis sections, one per basic open inside it; restriction forgets
// components. Tuples are listed in lexicographic order of their entries.
struct ExtendedSheaf {
  BasisPresheaf basis;
  PresheafOfRings presheaf;  // over basis.space.topology
  // Per topology open: the basis indices of the basics contained in it,
  // ascending.
  std::vector<std::vector<int>> basics_in;
  // tuples[open][element] = basis section indices, aligned with basics_in.
  std::vector<std::vector<std::vector<int>>> tuples;

  int index_of_tuple(int open_index, const std::vector<int>& tuple) const;
  int topology_index_of_basic(int basis_index) const;
};

// Builds the tuple rings, the forgetful restrictions, and runs the full
// presheaf check on the result. For each basic open the projection onto the
// stored basis ring is verified bijective; see basis_agreement.
ExtendedSheaf extend_from_basis(const BasisPresheaf& b);

// The projection of the section ring over a basic open onto the basis ring
// stored for it, rebuilt from the tuples and verified to be a bijective hom.
RingHom basis_agreement(const ExtendedSheaf& e, int basis_index);

// One point's evidence inside a pointwise section: a basic neighborhood on
// which a single fraction represents the value at every point it covers.
struct GermCertificate {
  int basis_index = -1;  // basic open containing the point, inside the open
  int num = -1;          // fraction over that basic open; den lies in its
  int den = -1;          // multiplicative set
};

// A section in the functions construction: a stalk element at each point of
// the open (ascending point order), each certified locally by a fraction.
struct PointwiseSection {
  std::vector<int> value;
  std::vector<GermCertificate> cert;  // aligned with value
};

struct HartshorneSheaf {
  ZariskiSpace space;
  BasisPresheaf basis;                 // certificates index into basis.opens
  std::vector<LocalizedRing> stalks;   // per point: localized away from it
  PresheafOfRings presheaf;
  std::vector<std::vector<PointwiseSection>> data;  // per open, per element

  int index_of_value(int open_index, const std::vector<int>& value) const;
};

// Sections over an open are the functions into the stalks that near every
// point agree with one fraction on a whole basic neighborhood. Certificates
// record that neighborhood and fraction; pointwise operations stay inside
// the certified functions, which is verified and raises logic_error when a
// result escapes.
HartshorneSheaf hartshorne_presheaf(const BasisPresheaf& b);
HartshorneSheaf hartshorne_presheaf(const RingPtr& r);

struct ConstructionComparison {
  bool ok = false;
  std::string detail;
  // Per open: compatible tuple |-> its pointwise germs, when construction
  // succeeded.
  std::vector<RingHom> maps;
};

// Sends a compatible tuple to the function taking each point to the germ of
// the tuple's component on the first basic covering that point, then runs
// the morphism check with bijectivity required on every open.
ConstructionComparison compare_constructions(const ExtendedSheaf& e,
                                             const HartshorneSheaf& h);
ConstructionComparison compare_constructions(const RingPtr& r);

// r |-> the tuple of canonical images across the basics inside the open.
// Raises logic_error when some canonical tuple is not among the sections.
RingHom canonical_section_map(const ExtendedSheaf& e, int open_index);

struct GlobalSectionsCheck {
  bool ok = false;
  std::string detail;
  RingHom to_global;  // the canonical map onto the sections of the full open
};

// The canonical map into the sections over the whole spectrum must be a
// bijective hom.
GlobalSectionsCheck global_sections_check(const ExtendedSheaf& e);
GlobalSectionsCheck global_sections_check(const RingPtr& r);

struct StalkIdentification {
  bool ok = false;
  std::string detail;
  Stalk stalk;           // of the limit presheaf, at the requested point
  Submonoid complement;  // ring elements outside the point's prime
  // The canonical map into the stalk, tested against the complement.
  PredicateReport predicate;
  LocalRingCheck local;
  // localize(ring, complement) -> stalk sections, through the canonical maps.
  std::optional<RingHom> iso;
};

// The stalk at a point must be the localization of the ring away from that
// prime: the canonical map passes the three-part predicate, the forced
// algebra map from the directly built localization is bijective, and the
// stalk ring is local.
StalkIdentification stalk_identification(const ExtendedSheaf& e, int point);
StalkIdentification stalk_identification(const RingPtr& r, int point);

}  // namespace finspec
