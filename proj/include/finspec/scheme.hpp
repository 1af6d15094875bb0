#pragma once
// Ringed and locally ringed spaces, explicit isomorphism checking between
// them, and scheme certificates: a cover of the space together with
// per-member identifications with the spectrum of a ring. Certificates are
// supplied and verified, never searched for.

#include <string>
#include <vector>

#include "finspec/structure_sheaf.hpp"

namespace finspec {

struct RingedSpace {
  FiniteTopology space;
  PresheafOfRings sheaf;
  SheafVerdict sheaf_certificate;
};

struct LocallyRingedSpace {
  RingedSpace base;
  std::vector<LocalRingCheck> stalk_certificates;  // per point
};

// is_local_ring on the stalk at every point, computed fresh.
std::vector<LocalRingCheck> stalk_locality(const RingedSpace& x);

// Spectrum, extended structure sheaf, sheaf certificate, and stalk locality
// certificates in one locally ringed space. Truncation of the sheaf check
// surfaces as budget_error; a failed certificate on this construction is
// impossible and raises logic_error.
LocallyRingedSpace mk_affine(const ExtendedSheaf& e, long cover_budget = kDefaultCoverBudget);
LocallyRingedSpace mk_affine(const RingPtr& r, long cover_budget = kDefaultCoverBudget);

struct IsoCheck {
  bool ok = false;
  std::string detail;
};

// An isomorphism of ringed spaces, given explicitly: point_map carries the
// points of x to the points of y and must be a homeomorphism; open_homs
// holds one hom per open of y, from y's sections over it to x's sections
// over its preimage, each bijective and natural with the restrictions.
IsoCheck ringed_space_iso_check(const RingedSpace& x, const RingedSpace& y,
                                const std::vector<int>& point_map,
                                const std::vector<RingHom>& open_homs);

// One member of a scheme certificate: an open of the ambient space, a ring,
// an embedding of that ring's spectrum onto the open, the ring's structure
// sheaf on the embedded copy, and the per-open isomorphism from the pulled
// back ambient sheaf onto that structure sheaf.
struct SchemeMember {
  IndexSet open;
  RingPtr ring;
  OpenEmbedding embedding;
  PresheafOfRings structure;
  std::vector<RingHom> sheaf_iso;  // per embedding.source open
};

struct SchemeCertificate {
  std::vector<SchemeMember> members;
};

struct SchemeCheck {
  bool ok = false;
  std::string detail;                         // first failure overall
  std::vector<std::string> member_failures;   // aligned with members; empty = clean
};

// Validates the certificate against the space: the members cover it, each
// embedding is a homeomorphism of the named ring's spectrum onto its member,
// the supplied presheaf really is that ring's structure sheaf, and the
// supplied maps are an isomorphism from the pullback of the ambient sheaf.
SchemeCheck scheme_check(const LocallyRingedSpace& x, const SchemeCertificate& cert);

// The identity-cover certificate for an affine: one member, the whole space,
// with comparison maps fetched from the sheaf's own restriction table along
// the canonical full-space inclusion. No identity map is ever synthesized.
SchemeCertificate affine_is_scheme(const ExtendedSheaf& e);
SchemeCertificate affine_is_scheme(const RingPtr& r);

}  // namespace finspec
