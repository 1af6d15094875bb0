#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "finspec/spectrum.hpp"

namespace finspec {

inline constexpr long kDefaultCoverBudget = 4096;

// Rings attached to the opens of a finite topology, with a restriction hom
// for every nested pair of opens. Indices follow topology.opens.
struct PresheafOfRings {
  FiniteTopology space;
  std::vector<RingPtr> sections;
  // Keyed by (outer open index, inner open index); inner must be a subset of
  // outer, and every such pair must be present.
  std::map<std::pair<int, int>, RingHom> restrictions;

  const RingPtr& at(int open_index) const;
  const RingPtr& at(const IndexSet& open) const;
  const RingHom& res(int from_index, int to_index) const;
  const RingHom& res(const IndexSet& from, const IndexSet& to) const;
};

// Every open carries the same ring and every restriction is the identity.
PresheafOfRings mk_constant_presheaf(const FiniteTopology& top, const RingPtr& r);

struct PresheafCheck {
  bool ok = false;
  std::string detail;  // counterexample pair or chain when not ok
};

// Shape, hom validity, identity restrictions, and transitivity over every
// chain of three nested opens.
PresheafCheck check_presheaf(const PresheafOfRings& f);

struct CoverCheck {
  bool ok = false;
  // Compatible families found across the cover members, and how many of them
  // arise by restricting a section of the covered open.
  long families = 0;
  long glued = 0;
  std::string detail;
};

// The equalizer test for one cover: sections of the covered open must match
// the compatible families over the members one-to-one.
CoverCheck sheaf_condition_on_cover(const PresheafOfRings& f, const IndexSet& open,
                                    const std::vector<IndexSet>& members);

struct SheafVerdict {
  bool ok = false;
  bool truncated = false;  // budget ran out; never reported as a pass
  long covers_checked = 0;
  std::string detail;
};

// Runs the cover test for every irredundant cover of every open: cover
// members form an antichain whose union is the covered open. The budget
// caps the number of antichains visited across the whole run.
SheafVerdict is_sheaf(const PresheafOfRings& f, long cover_budget = kDefaultCoverBudget);

struct Stalk {
  int point = -1;
  IndexSet nbhd;  // minimal open neighborhood of the point
  RingPtr ring;   // the sections over it; germ maps are res(U, nbhd)
};

Stalk stalk_at(const PresheafOfRings& f, int point);

// An injective continuous open map between finite topologies, given on
// points. Carries both spaces so it can be validated in isolation.
struct OpenEmbedding {
  FiniteTopology source;
  FiniteTopology target;
  std::vector<int> point_map;

  IndexSet image_of(const IndexSet& source_set) const;
};

struct EmbeddingCheck {
  bool ok = false;
  std::string detail;
};

EmbeddingCheck check_open_embedding(const OpenEmbedding& e);

// Subspace topology on an open subset, points renumbered ascending.
FiniteTopology subspace_topology(const FiniteTopology& top, const IndexSet& subset);

// The canonical inclusion of the subspace of an open subset.
OpenEmbedding mk_open_inclusion(const FiniteTopology& top, const IndexSet& open);

// Sections pulled back along an embedding: the source open V carries the
// target's ring over the image of V, restrictions reused unchanged.
PresheafOfRings pullback(const OpenEmbedding& e, const PresheafOfRings& f);

// One comparison map, recorded together with the restriction-table entry it
// was fetched from. Nothing here is ever synthesized as a raw identity.
struct ComparisonMap {
  int source_open = -1;  // open index in the embedding's source topology
  int table_from = -1;   // restriction key in f.space it was fetched at
  int table_to = -1;
  RingHom map;
};

struct ComparisonResult {
  bool ok = false;
  std::vector<ComparisonMap> maps;
  std::string detail;
};

// For the inclusion of an open subspace: compares the pullback presheaf with
// the subspace presheaf using maps fetched from f's restriction table, checks
// every naturality square, and requires each map to be bijective.
ComparisonResult restriction_comparison_iso(const OpenEmbedding& e,
                                            const PresheafOfRings& f);

struct MorphismCheck {
  bool ok = false;
  std::string detail;
};

// maps[i] carries F's ring over open i to G's ring over open i; both
// presheaves must share a topology. Naturality squares checked for every
// nested pair; require_iso adds bijectivity per open.
MorphismCheck check_presheaf_morphism(const PresheafOfRings& f,
                                      const PresheafOfRings& g,
                                      const std::vector<RingHom>& maps,
                                      bool require_iso);

// Gluing data for a cover of `target` inside `ambient`: a presheaf on each
// member's subspace, and for each ordered pair (i,j) a family of overlap
// isos, one per ambient open inside the pairwise intersection.
struct GlueInput {
  FiniteTopology ambient;
  IndexSet target;
  std::vector<IndexSet> members;
  std::vector<PresheafOfRings> locals;
  // overlaps[(i,j)][ambient open index of V] : locals[i](V) -> locals[j](V)
  // for every ambient open V inside members[i] and members[j].
  std::map<std::pair<int, int>, std::map<int, RingHom>> overlaps;
};

struct GluedPresheaf {
  PresheafOfRings presheaf;
  // tuples[open][element] = the per-member local section indices making up
  // that element of the glued section ring.
  std::vector<std::vector<std::vector<int>>> tuples;
};

// Identity overlap data for pairwise-disjoint cover members: every overlap
// open is empty, so each map is the unique hom between local zero rings.
// Rejects inputs whose members actually meet.
std::map<std::pair<int, int>, std::map<int, RingHom>> disjoint_overlaps(
    const GlueInput& in);

// Sections over an open V are the families (s_i) of local sections agreeing
// across overlaps; restrictions act slotwise. The overlap isos are validated
// first: hom shape, naturality, inverse pairs, and the cocycle over every
// ordered triple of members.
GluedPresheaf glue_presheaves(const GlueInput& in);

}  // namespace finspec
