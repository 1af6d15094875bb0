#include "finspec/cech.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace finspec {
namespace {

std::string tuple_to_string(const std::vector<int>& t) {
  std::string out = "(";
  for (size_t i = 0; i < t.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(t[i]);
  }
  return out + ")";
}

std::string first_failure(const PredicateReport& rep) {
  if (!rep.units.pass) return "units: " + rep.units.witness;
  if (!rep.fractions.pass) return "fractions: " + rep.fractions.witness;
  return "kernel: " + rep.kernel.witness;
}

// Either the supplied witness, validated and predicate-checked, or the
// default localization, served from the cache when one is attached.
struct SlotData {
  CechWitness witness;
  PredicateReport report;
};

SlotData make_slot(const RingPtr& r, int f, const CechWitness* override_witness,
                   CechCache* cache, const std::string& slot_name) {
  SlotData out;
  if (override_witness) {
    out.witness = *override_witness;
    if (!out.witness.hom.source || !(*out.witness.hom.source == *r))
      throw input_error("the witness for " + slot_name + " starts at the wrong ring");
    if (!out.witness.ring || !(*out.witness.hom.target == *out.witness.ring))
      throw input_error("the witness for " + slot_name + " carries a mismatched hom");
    std::string err = describe_hom_failure(out.witness.hom);
    if (!err.empty())
      throw input_error("the witness for " + slot_name + " is not a ring hom: " + err);
    out.report = strickland_check(out.witness.hom, submonoid_generated_by(r, {f}));
  } else if (cache) {
    const LocalizedRing& lr = cache->localizations().at_element(f);
    out.witness = {lr.ring, lr.canonical};
    out.report = cache->canonical_report(f);
  } else {
    LocalizedRing lr = localize_at_element(r, f);
    out.witness = {lr.ring, lr.canonical};
    out.report = strickland_check(out.witness.hom, submonoid_generated_by(r, {f}));
  }
  if (!out.report.verdict())
    throw input_error("the witness for " + slot_name +
                      " fails the localization predicate (" + first_failure(out.report) + ")");
  return out;
}

}  // namespace

std::vector<int> CechSequence::alpha(int a) const {
  std::vector<int> out;
  out.reserve(level1.size());
  for (const CechWitness& w : level1) out.push_back(w.hom(a));
  return out;
}

std::vector<int> CechSequence::beta(const std::vector<int>& tuple) const {
  if (tuple.size() != level1.size())
    throw input_error("beta expects one entry per slot, got " +
                      std::to_string(tuple.size()));
  const int n = static_cast<int>(level1.size());
  std::vector<int> out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const FiniteRing& tij = *level2.at({i, j}).ring;
      out.push_back(tij.sub(into_left.at({i, j}).map[tuple[i]],
                            into_right.at({i, j}).map[tuple[j]]));
    }
  return out;
}

CechSequence build_sequence(const RingPtr& r, const std::vector<int>& fs,
                            const CechOptions& options) {
  if (fs.empty()) throw input_error("at least one element is required");
  for (int f : fs)
    if (f < 0 || f >= r->size)
      throw input_error("element index " + std::to_string(f) + " out of range");
  if (options.cache && !(*options.cache->base() == *r))
    throw input_error("the cache belongs to a different ring");

  CechSequence seq;
  seq.base = r;
  seq.elements = fs;
  seq.unit_certificate = ideal_generated_by(r, fs);
  if (!seq.unit_certificate.members.is_full())
    throw input_error("elements do not generate the unit ideal; generated ideal = " +
                      ideal_label(seq.unit_certificate));

  const int n = static_cast<int>(fs.size());
  for (int i = 0; i < n; ++i) {
    auto it = options.level1.find(i);
    SlotData slot = make_slot(r, fs[i], it == options.level1.end() ? nullptr : &it->second,
                              options.cache, "slot " + std::to_string(i));
    seq.level1.push_back(std::move(slot.witness));
    seq.level1_reports.push_back(std::move(slot.report));
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const int fij = r->mul(fs[i], fs[j]);
      auto it = options.level2.find({i, j});
      const bool overridden = it != options.level2.end();
      SlotData slot = make_slot(r, fij, overridden ? &it->second : nullptr, options.cache,
                                "pair (" + std::to_string(i) + ", " + std::to_string(j) + ")");
      seq.level2.emplace(std::make_pair(i, j), std::move(slot.witness));
      seq.level2_reports.emplace(std::make_pair(i, j), std::move(slot.report));

      // The connecting maps are forced; they are never written out by a
      // fraction formula of our own choosing.
      for (int side = 0; side < 2; ++side) {
        const int slot_index = side == 0 ? i : j;
        const bool slot_default = options.level1.find(slot_index) == options.level1.end();
        RingHom conn;
        if (options.cache && slot_default && !overridden) {
          conn = options.cache->connecting(fs[slot_index], fij);
        } else {
          auto forced = unique_algebra_map(seq.level1[slot_index].hom,
                                           submonoid_generated_by(r, {fs[slot_index]}),
                                           seq.level2.at({i, j}).hom, false);
          if (!forced)
            throw std::logic_error("no algebra map connects slot " +
                                   std::to_string(slot_index) + " into pair (" +
                                   std::to_string(i) + ", " + std::to_string(j) + ")");
          conn = std::move(*forced);
        }
        (side == 0 ? seq.into_left : seq.into_right).emplace(std::make_pair(i, j),
                                                             std::move(conn));
      }
    }
  return seq;
}

CechWitness pair_witness(const CechSequence& seq, int i, int j) {
  const int n = static_cast<int>(seq.elements.size());
  if (i < 0 || i >= n || j < 0 || j >= n)
    throw input_error("pair index out of range");
  if (i > j) std::swap(i, j);
  if (i != j) return seq.level2.at({i, j});
  LocalizedRing lr =
      localize_at_element(seq.base, seq.base->mul(seq.elements[i], seq.elements[i]));
  return {lr.ring, lr.canonical};
}

ExactnessReport check_exactness(const CechSequence& seq) {
  const FiniteRing& base = *seq.base;
  const int n = static_cast<int>(seq.level1.size());
  ExactnessReport rep;

  rep.alpha_kernel = IndexSet(base.size);
  for (int a = 0; a < base.size; ++a) {
    bool zero = true;
    for (int i = 0; i < n && zero; ++i)
      zero = seq.level1[i].hom(a) == seq.level1[i].ring->zero;
    if (zero) rep.alpha_kernel.insert(a);
  }
  rep.alpha_injective = rep.alpha_kernel.count() == 1;
  if (!rep.alpha_injective) {
    int witness = -1;
    for (int a : rep.alpha_kernel.elements())
      if (a != base.zero) {
        witness = a;
        break;
      }
    rep.detail = "alpha identifies " + std::to_string(witness) + " with 0; kernel " +
                 set_to_string(rep.alpha_kernel);
  }

  std::set<std::vector<int>> image;
  rep.image_in_kernel = true;
  for (int a = 0; a < base.size; ++a) {
    std::vector<int> tuple = seq.alpha(a);
    std::vector<int> down = seq.beta(tuple);
    bool zero = true;
    size_t c = 0;
    for (int i = 0; i < n && zero; ++i)
      for (int j = i + 1; j < n && zero; ++j)
        zero = down[c++] == seq.level2.at({i, j}).ring->zero;
    if (!zero && rep.image_in_kernel) {
      rep.image_in_kernel = false;
      if (rep.detail.empty())
        rep.detail = "beta(alpha(" + std::to_string(a) + ")) is not zero";
    }
    image.insert(std::move(tuple));
  }

  // ker(beta) by constraint propagation: a value for slot k must agree in
  // T_ik with every assigned slot i < k. Surviving complete tuples are
  // exactly the kernel, so the full product is never scanned.
  rep.kernel_in_image = true;
  std::vector<int> cur(n, 0);
  std::function<void(int)> visit = [&](int k) {
    if (k == n) {
      ++rep.kernel_size;
      if (rep.kernel_in_image && image.find(cur) == image.end()) {
        rep.kernel_in_image = false;
        if (rep.detail.empty())
          rep.detail = "the tuple " + tuple_to_string(cur) +
                       " lies in the kernel of beta but not in the image of alpha";
      }
      return;
    }
    for (int v = 0; v < seq.level1[k].ring->size; ++v) {
      bool fits = true;
      for (int i = 0; i < k && fits; ++i)
        fits = seq.into_left.at({i, k}).map[cur[i]] == seq.into_right.at({i, k}).map[v];
      if (fits) {
        cur[k] = v;
        visit(k + 1);
      }
    }
  };
  visit(0);
  return rep;
}

SquaresReport commuting_squares_check(const RingPtr& r, int f, const std::vector<int>& fs) {
  if (f < 0 || f >= r->size)
    throw input_error("element index " + std::to_string(f) + " out of range");
  for (int fi : fs)
    if (fi < 0 || fi >= r->size)
      throw input_error("element index " + std::to_string(fi) + " out of range");

  SquaresReport rep;
  const LocalizedRing down = localize_at_element(r, f);
  std::vector<int> gs;
  gs.reserve(fs.size());
  for (int fi : fs) gs.push_back(down.canonical(fi));
  const int n = static_cast<int>(fs.size());

  CechSequence row1 = build_sequence(down.ring, gs);

  CechOptions opt;
  for (int i = 0; i < n; ++i) {
    rep.doubles.push_back(double_localization_check(r, f, fs[i]));
    if (!rep.doubles.back().verdict() && rep.detail.empty())
      rep.detail = "the composite localization for slot " + std::to_string(i) +
                   " fails the predicate";
    LocalizedRing w = localize_at_element(r, r->mul(f, fs[i]));
    opt.level1[i] = {w.ring, induced_map(down, w.canonical)};
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const int fij = r->mul(fs[i], fs[j]);
      rep.doubles.push_back(double_localization_check(r, f, fij));
      if (!rep.doubles.back().verdict() && rep.detail.empty())
        rep.detail = "the composite localization for pair (" + std::to_string(i) + ", " +
                     std::to_string(j) + ") fails the predicate";
      LocalizedRing w = localize_at_element(r, r->mul(f, fij));
      opt.level2[{i, j}] = {w.ring, induced_map(down, w.canonical)};
    }
  CechSequence row2 = build_sequence(down.ring, gs, opt);

  std::vector<RingHom> vert1;
  for (int i = 0; i < n; ++i) {
    auto v = unique_algebra_map(row1.level1[i].hom,
                                submonoid_generated_by(down.ring, {gs[i]}),
                                row2.level1[i].hom, false);
    if (!v) {
      if (rep.detail.empty())
        rep.detail = "no forced map between the rows at slot " + std::to_string(i);
      rep.row1 = check_exactness(row1);
      rep.row2 = check_exactness(row2);
      return rep;
    }
    vert1.push_back(std::move(*v));
  }

  for (int i = 0; i < n && rep.detail.empty(); ++i)
    for (int j = i + 1; j < n && rep.detail.empty(); ++j) {
      const int gij = down.ring->mul(gs[i], gs[j]);
      auto v2 = unique_algebra_map(row1.level2.at({i, j}).hom,
                                   submonoid_generated_by(down.ring, {gij}),
                                   row2.level2.at({i, j}).hom, false);
      if (!v2) {
        rep.detail = "no forced map between the rows at pair (" + std::to_string(i) +
                     ", " + std::to_string(j) + ")";
        break;
      }
      const std::string pair_name =
          "(" + std::to_string(i) + ", " + std::to_string(j) + ")";
      for (int t = 0; t < row1.level1[i].ring->size && rep.detail.empty(); ++t)
        if (v2->map[row1.into_left.at({i, j}).map[t]] !=
            row2.into_left.at({i, j}).map[vert1[i].map[t]])
          rep.detail = "the left square at pair " + pair_name + " fails at element " +
                       std::to_string(t);
      for (int t = 0; t < row1.level1[j].ring->size && rep.detail.empty(); ++t)
        if (v2->map[row1.into_right.at({i, j}).map[t]] !=
            row2.into_right.at({i, j}).map[vert1[j].map[t]])
          rep.detail = "the right square at pair " + pair_name + " fails at element " +
                       std::to_string(t);
    }

  rep.row1 = check_exactness(row1);
  rep.row2 = check_exactness(row2);
  rep.ok = rep.detail.empty();
  return rep;
}

const PredicateReport& CechCache::canonical_report(int f) {
  auto it = reports_.find(f);
  if (it != reports_.end()) return it->second;
  const LocalizedRing& lr = localizations_.at_element(f);
  PredicateReport rep = strickland_check(lr.canonical, lr.monoid);
  return reports_.emplace(f, std::move(rep)).first->second;
}

const RingHom& CechCache::connecting(int f, int g) {
  const Submonoid sf = submonoid_generated_by(base(), {f});
  const Submonoid sg = submonoid_generated_by(base(), {g});
  auto key = std::make_pair(sf.members.elements(), sg.members.elements());
  auto it = connections_.find(key);
  if (it != connections_.end()) return it->second;
  const LocalizedRing& lf = localizations_.at_monoid(sf);
  const LocalizedRing& lg = localizations_.at_monoid(sg);
  auto forced = unique_algebra_map(lf.canonical, sf, lg.canonical, false);
  if (!forced)
    throw std::logic_error("no algebra map from the localization at " + std::to_string(f) +
                           " to the localization at " + std::to_string(g));
  return connections_.emplace(std::move(key), std::move(*forced)).first->second;
}

}  // namespace finspec
