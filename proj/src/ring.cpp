#include "finspec/ring.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace finspec {

namespace {

// Fill neg/inv lookup tables. Leaves them empty when the tables are not
// closed, so malformed rings can still be inspected by verify_ring_axioms.
RingPtr seal(FiniteRing r) {
  if (r.tables_closed()) {
    r.neg_table.assign(r.size, -1);
    r.inv_table.assign(r.size, -1);
    for (int a = 0; a < r.size; ++a) {
      for (int b = 0; b < r.size; ++b) {
        if (r.add(a, b) == r.zero && r.neg_table[a] < 0) r.neg_table[a] = b;
        if (r.mul(a, b) == r.one && r.inv_table[a] < 0) r.inv_table[a] = b;
      }
    }
  }
  return std::make_shared<const FiniteRing>(std::move(r));
}

void check_size_cap(long size, int max_size, const std::string& what) {
  if (size > max_size)
    throw budget_error(what + ": ring size " + std::to_string(size) +
                       " exceeds the configured cap " + std::to_string(max_size));
}

bool is_prime_number(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

bool FiniteRing::tables_closed() const {
  if (size <= 0) return false;
  if (zero < 0 || zero >= size || one < 0 || one >= size) return false;
  const size_t cells = static_cast<size_t>(size) * size;
  if (add_table.size() != cells || mul_table.size() != cells) return false;
  for (int v : add_table)
    if (v < 0 || v >= size) return false;
  for (int v : mul_table)
    if (v < 0 || v >= size) return false;
  return true;
}

RingPtr mk_zmod(int n, int max_size) {
  if (n < 1) throw input_error("mk_zmod: modulus must be at least 1");
  check_size_cap(n, max_size, "mk_zmod");
  FiniteRing r;
  r.size = n;
  r.zero = 0;
  r.one = n == 1 ? 0 : 1;
  r.add_table.resize(static_cast<size_t>(n) * n);
  r.mul_table.resize(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      r.add_table[static_cast<size_t>(a) * n + b] = (a + b) % n;
      r.mul_table[static_cast<size_t>(a) * n + b] = (a * b) % n;
    }
  r.label = "Z/" + std::to_string(n);
  return seal(std::move(r));
}

namespace {

// Residue polynomials are base-p digit strings; these convert between the
// packed index and the coefficient vector of length deg.
std::vector<int> unpack_poly(int e, int p, int deg) {
  std::vector<int> c(deg, 0);
  for (int i = 0; i < deg; ++i) {
    c[i] = e % p;
    e /= p;
  }
  return c;
}

int pack_poly(const std::vector<int>& c, int p) {
  int e = 0;
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) e = e * p + c[i];
  return e;
}

// Reduce an arbitrary-degree polynomial modulo the monic modulus f, in place
// arithmetic over Z/p. modulus holds c0..cd with cd == 1.
std::vector<int> poly_mod(std::vector<int> a, const std::vector<int>& modulus, int p) {
  const int d = static_cast<int>(modulus.size()) - 1;
  for (int k = static_cast<int>(a.size()) - 1; k >= d; --k) {
    const int lead = a[k] % p;
    if (lead == 0) continue;
    // x^k = x^(k-d) * (x^d), and x^d = -(c_{d-1} x^{d-1} + ... + c_0).
    a[k] = 0;
    for (int i = 0; i < d; ++i) {
      int v = a[k - d + i] - lead * modulus[i];
      v %= p;
      if (v < 0) v += p;
      a[k - d + i] = v;
    }
  }
  a.resize(d);
  return a;
}

std::string poly_to_string(const std::vector<int>& coeffs) {
  // Descending powers, omitting zero terms and unit coefficients on x.
  std::string out;
  for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i) {
    const int c = coeffs[i];
    if (c == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(c);
    } else {
      if (c != 1) out += std::to_string(c);
      out += "x";
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace

RingPtr mk_gf_poly_quotient(int p, const std::vector<int>& coeffs, int max_size) {
  if (!is_prime_number(p))
    throw input_error("mk_gf_poly_quotient: " + std::to_string(p) + " is not prime");
  if (coeffs.size() < 2)
    throw input_error("mk_gf_poly_quotient: modulus must have degree at least 1");
  std::vector<int> f(coeffs.size());
  for (size_t i = 0; i < coeffs.size(); ++i) {
    f[i] = coeffs[i] % p;
    if (f[i] < 0) f[i] += p;
  }
  const int d = static_cast<int>(f.size()) - 1;
  if (f[d] != 1)
    throw input_error("mk_gf_poly_quotient: modulus must be monic");

  long size = 1;
  for (int i = 0; i < d; ++i) {
    size *= p;
    check_size_cap(size, max_size, "mk_gf_poly_quotient");
  }
  const int n = static_cast<int>(size);

  FiniteRing r;
  r.size = n;
  r.zero = 0;
  r.one = n == 1 ? 0 : 1;
  r.add_table.resize(static_cast<size_t>(n) * n);
  r.mul_table.resize(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    const std::vector<int> pa = unpack_poly(a, p, d);
    for (int b = 0; b < n; ++b) {
      const std::vector<int> pb = unpack_poly(b, p, d);
      std::vector<int> sum(d);
      for (int i = 0; i < d; ++i) sum[i] = (pa[i] + pb[i]) % p;
      r.add_table[static_cast<size_t>(a) * n + b] = pack_poly(sum, p);

      std::vector<int> prod(2 * d - 1, 0);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) prod[i + j] = (prod[i + j] + pa[i] * pb[j]) % p;
      r.mul_table[static_cast<size_t>(a) * n + b] = pack_poly(poly_mod(std::move(prod), f, p), p);
    }
  }
  r.label = "GF(" + std::to_string(p) + ")[x]/(" + poly_to_string(f) + ")";
  return seal(std::move(r));
}

RingPtr mk_product(const RingPtr& a, const RingPtr& b, int max_size) {
  const long size = static_cast<long>(a->size) * b->size;
  check_size_cap(size, max_size, "mk_product");
  const int n = static_cast<int>(size);
  const int bs = b->size;

  FiniteRing r;
  r.size = n;
  r.zero = a->zero * bs + b->zero;
  r.one = a->one * bs + b->one;
  r.add_table.resize(static_cast<size_t>(n) * n);
  r.mul_table.resize(static_cast<size_t>(n) * n);
  for (int x = 0; x < n; ++x) {
    const int xa = x / bs, xb = x % bs;
    for (int y = 0; y < n; ++y) {
      const int ya = y / bs, yb = y % bs;
      r.add_table[static_cast<size_t>(x) * n + y] = a->add(xa, ya) * bs + b->add(xb, yb);
      r.mul_table[static_cast<size_t>(x) * n + y] = a->mul(xa, ya) * bs + b->mul(xb, yb);
    }
  }
  r.label = a->label + " x " + b->label;
  return seal(std::move(r));
}

RingPtr mk_raw_ring(int size, std::vector<int> add_table, std::vector<int> mul_table,
                    int zero, int one, std::string label, bool validate) {
  FiniteRing r;
  r.size = size;
  r.zero = zero;
  r.one = one;
  r.add_table = std::move(add_table);
  r.mul_table = std::move(mul_table);
  r.label = std::move(label);
  if (validate && !r.tables_closed())
    throw input_error("mk_raw_ring: tables are not closed over the element range");
  return seal(std::move(r));
}

std::string validate_ideal(const Ideal& ideal) {
  const FiniteRing& r = *ideal.ring;
  if (ideal.members.universe() != r.size) return "member universe does not match ring size";
  if (!ideal.members.contains(r.zero)) return "0 is missing";
  const std::vector<int> elems = ideal.members.elements();
  for (int x : elems)
    for (int y : elems)
      if (!ideal.members.contains(r.add(x, y)))
        return "not closed under addition at (" + std::to_string(x) + "," + std::to_string(y) + ")";
  for (int x : elems)
    for (int a = 0; a < r.size; ++a)
      if (!ideal.members.contains(r.mul(a, x)))
        return "not absorbing at (" + std::to_string(a) + "," + std::to_string(x) + ")";
  return "";
}

std::string validate_submonoid(const Submonoid& s) {
  const FiniteRing& r = *s.ring;
  if (s.members.universe() != r.size) return "member universe does not match ring size";
  if (!s.members.contains(r.one)) return "1 is missing";
  const std::vector<int> elems = s.members.elements();
  for (int x : elems)
    for (int y : elems)
      if (!s.members.contains(r.mul(x, y)))
        return "not closed under multiplication at (" + std::to_string(x) + "," +
               std::to_string(y) + ")";
  return "";
}

Ideal ideal_generated_by(const RingPtr& r, const std::vector<int>& gens) {
  const FiniteRing& ring = *r;
  IndexSet members(ring.size);
  members.insert(ring.zero);
  for (int g : gens) {
    if (g < 0 || g >= ring.size)
      throw input_error("ideal_generated_by: generator index out of range");
    members.insert(g);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    const std::vector<int> elems = members.elements();
    for (int x : elems) {
      for (int y : elems) {
        const int s = ring.add(x, y);
        if (!members.contains(s)) {
          members.insert(s);
          changed = true;
        }
      }
      for (int a = 0; a < ring.size; ++a) {
        const int m = ring.mul(a, x);
        if (!members.contains(m)) {
          members.insert(m);
          changed = true;
        }
      }
    }
  }
  return Ideal{r, members};
}

Submonoid submonoid_generated_by(const RingPtr& r, const std::vector<int>& gens) {
  const FiniteRing& ring = *r;
  IndexSet members(ring.size);
  members.insert(ring.one);
  for (int g : gens) {
    if (g < 0 || g >= ring.size)
      throw input_error("submonoid_generated_by: generator index out of range");
    members.insert(g);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    const std::vector<int> elems = members.elements();
    for (int x : elems)
      for (int y : elems) {
        const int m = ring.mul(x, y);
        if (!members.contains(m)) {
          members.insert(m);
          changed = true;
        }
      }
  }
  return Submonoid{r, members};
}

std::string ideal_label(const Ideal& ideal) {
  // Greedy: add the least member that enlarges the span until it matches.
  std::vector<int> gens;
  Ideal span = ideal_generated_by(ideal.ring, {});
  while (!(span.members == ideal.members)) {
    int next = -1;
    for (int m : ideal.members.elements())
      if (!span.members.contains(m)) {
        next = m;
        break;
      }
    if (next < 0) break;  // ideal.members smaller than span: malformed input
    gens.push_back(next);
    span = ideal_generated_by(ideal.ring, gens);
  }
  std::string out = "(";
  for (size_t i = 0; i < gens.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(gens[i]);
  }
  if (gens.empty()) out += "0";
  return out + ")";
}

QuotientResult mk_quotient(const RingPtr& r, const Ideal& ideal) {
  if (ideal.ring.get() != r.get() && !(*ideal.ring == *r))
    throw input_error("mk_quotient: ideal belongs to a different ring");
  const std::string reason = validate_ideal(ideal);
  if (!reason.empty()) throw input_error("mk_quotient: not an ideal: " + reason);

  const FiniteRing& ring = *r;
  const std::vector<int> ielems = ideal.members.elements();
  // Coset representative: least member of r + I.
  std::vector<int> rep(ring.size);
  for (int a = 0; a < ring.size; ++a) {
    int least = a;
    for (int i : ielems) least = std::min(least, ring.add(a, i));
    rep[a] = least;
  }
  std::vector<int> reps;
  for (int a = 0; a < ring.size; ++a)
    if (rep[a] == a) reps.push_back(a);
  std::vector<int> class_of(ring.size);
  for (int a = 0; a < ring.size; ++a)
    class_of[a] = static_cast<int>(std::lower_bound(reps.begin(), reps.end(), rep[a]) - reps.begin());

  const int n = static_cast<int>(reps.size());
  FiniteRing q;
  q.size = n;
  q.zero = class_of[ring.zero];
  q.one = class_of[ring.one];
  q.add_table.resize(static_cast<size_t>(n) * n);
  q.mul_table.resize(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      q.add_table[static_cast<size_t>(i) * n + j] = class_of[ring.add(reps[i], reps[j])];
      q.mul_table[static_cast<size_t>(i) * n + j] = class_of[ring.mul(reps[i], reps[j])];
    }
  q.label = ring.label + "/" + ideal_label(ideal);
  RingPtr qr = seal(std::move(q));
  RingHom proj{r, qr, std::move(class_of)};
  return QuotientResult{qr, std::move(proj)};
}

bool AxiomReport::all_pass() const {
  for (const AxiomCheck& c : checks)
    if (!c.pass) return false;
  return !checks.empty();
}

std::string AxiomReport::summary() const {
  std::string out;
  for (const AxiomCheck& c : checks) {
    out += c.name;
    out += c.pass ? ": pass" : ": FAIL";
    if (!c.pass && c.a >= 0) {
      out += " at (" + std::to_string(c.a);
      if (c.b >= 0) out += "," + std::to_string(c.b);
      if (c.c >= 0) out += "," + std::to_string(c.c);
      out += ")";
    }
    if (!c.note.empty()) out += " [" + c.note + "]";
    out += "\n";
  }
  return out;
}

AxiomReport verify_ring_axioms(const FiniteRing& r) {
  AxiomReport report;
  const bool closed = r.tables_closed();
  report.checks.push_back({"tables_closed", closed, -1, -1, -1,
                           closed ? "" : "entries outside the element range"});
  const char* names[] = {"add_commutative", "add_associative", "add_identity",
                         "add_inverse",     "mul_commutative", "mul_associative",
                         "mul_identity",    "distributive"};
  if (!closed) {
    for (const char* n : names)
      report.checks.push_back({n, false, -1, -1, -1, "skipped: tables not closed"});
    return report;
  }

  auto find_fail2 = [&](auto&& pred) -> std::array<int, 2> {
    for (int a = 0; a < r.size; ++a)
      for (int b = 0; b < r.size; ++b)
        if (!pred(a, b)) return {a, b};
    return {-1, -1};
  };
  auto find_fail3 = [&](auto&& pred) -> std::array<int, 3> {
    for (int a = 0; a < r.size; ++a)
      for (int b = 0; b < r.size; ++b)
        for (int c = 0; c < r.size; ++c)
          if (!pred(a, b, c)) return {a, b, c};
    return {-1, -1, -1};
  };

  auto w2 = find_fail2([&](int a, int b) { return r.add(a, b) == r.add(b, a); });
  report.checks.push_back({"add_commutative", w2[0] < 0, w2[0], w2[1], -1, ""});

  auto w3 = find_fail3(
      [&](int a, int b, int c) { return r.add(r.add(a, b), c) == r.add(a, r.add(b, c)); });
  report.checks.push_back({"add_associative", w3[0] < 0, w3[0], w3[1], w3[2], ""});

  {
    int bad = -1;
    for (int a = 0; a < r.size; ++a)
      if (r.add(a, r.zero) != a) {
        bad = a;
        break;
      }
    report.checks.push_back({"add_identity", bad < 0, bad, -1, -1, ""});
  }
  {
    int bad = -1;
    for (int a = 0; a < r.size; ++a) {
      bool has = false;
      for (int b = 0; b < r.size; ++b)
        if (r.add(a, b) == r.zero) {
          has = true;
          break;
        }
      if (!has) {
        bad = a;
        break;
      }
    }
    report.checks.push_back({"add_inverse", bad < 0, bad, -1, -1, ""});
  }

  w2 = find_fail2([&](int a, int b) { return r.mul(a, b) == r.mul(b, a); });
  report.checks.push_back({"mul_commutative", w2[0] < 0, w2[0], w2[1], -1, ""});

  w3 = find_fail3(
      [&](int a, int b, int c) { return r.mul(r.mul(a, b), c) == r.mul(a, r.mul(b, c)); });
  report.checks.push_back({"mul_associative", w3[0] < 0, w3[0], w3[1], w3[2], ""});

  {
    int bad = -1;
    for (int a = 0; a < r.size; ++a)
      if (r.mul(a, r.one) != a) {
        bad = a;
        break;
      }
    report.checks.push_back({"mul_identity", bad < 0, bad, -1, -1, ""});
  }

  w3 = find_fail3([&](int a, int b, int c) {
    return r.mul(a, r.add(b, c)) == r.add(r.mul(a, b), r.mul(a, c));
  });
  report.checks.push_back({"distributive", w3[0] < 0, w3[0], w3[1], w3[2], ""});

  return report;
}

IndexSet units(const FiniteRing& r) {
  IndexSet u(r.size);
  for (int a = 0; a < r.size; ++a)
    if (r.is_unit(a)) u.insert(a);
  return u;
}

bool RingHom::is_bijective() const {
  if (source->size != target->size) return false;
  std::vector<char> seen(target->size, 0);
  for (int v : map) {
    if (v < 0 || v >= target->size || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

std::string describe_hom_failure(const RingHom& h) {
  const FiniteRing& s = *h.source;
  const FiniteRing& t = *h.target;
  if (static_cast<int>(h.map.size()) != s.size) return "map length does not match source size";
  for (int v : h.map)
    if (v < 0 || v >= t.size) return "map value out of target range";
  if (h.map[s.one] != t.one) return "1 is not sent to 1";
  for (int a = 0; a < s.size; ++a)
    for (int b = 0; b < s.size; ++b) {
      if (h.map[s.add(a, b)] != t.add(h.map[a], h.map[b]))
        return "addition not preserved at (" + std::to_string(a) + "," + std::to_string(b) + ")";
      if (h.map[s.mul(a, b)] != t.mul(h.map[a], h.map[b]))
        return "multiplication not preserved at (" + std::to_string(a) + "," +
               std::to_string(b) + ")";
    }
  return "";
}

bool is_ring_hom(const RingHom& h) { return describe_hom_failure(h).empty(); }

RingHom identity_hom(const RingPtr& r) {
  RingHom h{r, r, std::vector<int>(r->size)};
  for (int i = 0; i < r->size; ++i) h.map[i] = i;
  return h;
}

RingHom compose(const RingHom& outer, const RingHom& inner) {
  if (!(*inner.target == *outer.source))
    throw input_error("compose: inner target and outer source differ");
  RingHom h{inner.source, outer.target, std::vector<int>(inner.source->size)};
  for (int i = 0; i < inner.source->size; ++i) h.map[i] = outer.map[inner.map[i]];
  return h;
}

bool same_hom(const RingHom& a, const RingHom& b) {
  return *a.source == *b.source && *a.target == *b.target && a.map == b.map;
}

namespace {

struct Derivation {
  enum class Kind { Zero, One, Gen, Add, Mul } kind = Kind::Zero;
  int a = -1, b = -1;  // operand element indices, or generator slot in a
};

struct Closure {
  std::vector<int> order;               // discovery order
  std::vector<Derivation> derivation;   // per element index
  IndexSet span;
  bool full = false;
};

// Close {0, 1} u gens under both operations, recording one derivation per
// element. In a finite ring additive closure reaches negatives, so no
// explicit negation step is needed.
Closure close_over(const FiniteRing& r, const std::vector<int>& gens) {
  Closure c;
  c.derivation.resize(r.size);
  c.span = IndexSet(r.size);
  auto discover = [&](int e, Derivation d) {
    if (c.span.contains(e)) return;
    c.span.insert(e);
    c.derivation[e] = d;
    c.order.push_back(e);
  };
  discover(r.zero, {Derivation::Kind::Zero, -1, -1});
  discover(r.one, {Derivation::Kind::One, -1, -1});
  for (size_t k = 0; k < gens.size(); ++k)
    discover(gens[k], {Derivation::Kind::Gen, static_cast<int>(k), -1});
  for (size_t i = 0; i < c.order.size(); ++i) {
    for (size_t j = 0; j <= i; ++j) {
      const int x = c.order[i], y = c.order[j];
      discover(r.add(x, y), {Derivation::Kind::Add, x, y});
      discover(r.mul(x, y), {Derivation::Kind::Mul, x, y});
    }
  }
  c.full = c.span.is_full();
  return c;
}

}  // namespace

std::vector<RingHom> enumerate_homs(const RingPtr& source, const RingPtr& target,
                                    const HomBudget& budget) {
  const FiniteRing& s = *source;
  const FiniteRing& t = *target;
  if (static_cast<long>(s.size) * t.size > budget.max_pairs)
    throw budget_error("enumerate_homs: search truncated: |source|*|target| = " +
                       std::to_string(static_cast<long>(s.size) * t.size) +
                       " exceeds budget " + std::to_string(budget.max_pairs));

  // Greedy generating set: repeatedly adjoin the least ungenerated element.
  std::vector<int> gens;
  Closure closure = close_over(s, gens);
  while (!closure.full) {
    int next = -1;
    for (int e = 0; e < s.size; ++e)
      if (!closure.span.contains(e)) {
        next = e;
        break;
      }
    gens.push_back(next);
    closure = close_over(s, gens);
  }

  long candidates = 1;
  for (size_t k = 0; k < gens.size(); ++k) {
    candidates *= t.size;
    if (candidates > budget.max_candidates)
      throw budget_error("enumerate_homs: search truncated: " + std::to_string(gens.size()) +
                         " generators over a target of size " + std::to_string(t.size) +
                         " exceeds budget " + std::to_string(budget.max_candidates));
  }

  std::vector<RingHom> homs;
  std::vector<int> image(gens.size(), 0);
  std::vector<int> f(s.size, -1);
  while (true) {
    // Propagate this assignment through the recorded derivations, then
    // verify every pairwise relation.
    for (int e : closure.order) {
      const Derivation& d = closure.derivation[e];
      switch (d.kind) {
        case Derivation::Kind::Zero: f[e] = t.zero; break;
        case Derivation::Kind::One: f[e] = t.one; break;
        case Derivation::Kind::Gen: f[e] = image[d.a]; break;
        case Derivation::Kind::Add: f[e] = t.add(f[d.a], f[d.b]); break;
        case Derivation::Kind::Mul: f[e] = t.mul(f[d.a], f[d.b]); break;
      }
    }
    bool ok = f[s.one] == t.one && f[s.zero] == t.zero;
    for (int a = 0; ok && a < s.size; ++a)
      for (int b = a; b < s.size; ++b) {
        if (f[s.add(a, b)] != t.add(f[a], f[b]) || f[s.mul(a, b)] != t.mul(f[a], f[b])) {
          ok = false;
          break;
        }
      }
    if (ok) homs.push_back(RingHom{source, target, f});

    // Advance the assignment odometer.
    size_t k = 0;
    while (k < gens.size() && ++image[k] == t.size) {
      image[k] = 0;
      ++k;
    }
    if (k == gens.size()) break;
  }
  return homs;
}

Ideal s_torsion(const RingPtr& r, const Submonoid& s) {
  const std::string reason = validate_submonoid(s);
  if (!reason.empty()) throw input_error("s_torsion: not a submonoid: " + reason);
  const FiniteRing& ring = *r;
  IndexSet members(ring.size);
  const std::vector<int> selems = s.members.elements();
  for (int a = 0; a < ring.size; ++a)
    for (int t : selems)
      if (ring.mul(t, a) == ring.zero) {
        members.insert(a);
        break;
      }
  Ideal ideal{r, members};
  const std::string why = validate_ideal(ideal);
  if (!why.empty())
    throw std::logic_error("s_torsion: result is not an ideal: " + why);
  return ideal;
}

namespace {

// Grow a proper ideal containing a non-unit into a maximal one by greedily
// adjoining elements that keep it proper.
Ideal grow_to_maximal(const RingPtr& r, int seed) {
  std::vector<int> gens{seed};
  Ideal current = ideal_generated_by(r, gens);
  bool grew = true;
  while (grew) {
    grew = false;
    for (int b = 0; b < r->size; ++b) {
      if (current.members.contains(b)) continue;
      std::vector<int> trial = gens;
      trial.push_back(b);
      Ideal bigger = ideal_generated_by(r, trial);
      if (!bigger.members.is_full()) {
        gens = std::move(trial);
        current = std::move(bigger);
        grew = true;
        break;
      }
    }
  }
  return current;
}

}  // namespace

LocalRingCheck is_local_ring(const RingPtr& r) {
  LocalRingCheck out;
  if (r->is_zero_ring()) {
    out.local = false;
    out.detail = "zero ring: no maximal ideal exists";
    return out;
  }
  IndexSet non_units = units(*r).complement();
  Ideal candidate{r, non_units};
  const std::string reason = validate_ideal(candidate);
  if (reason.empty()) {
    out.local = true;
    out.maximal_ideal = candidate;
    return out;
  }
  out.local = false;
  out.detail = "non-units do not form an ideal: " + reason;
  // Non-units fail to be closed under addition exactly when two of them sum
  // to a unit; maximal ideals over each give an incomparable pair.
  for (int a = 0; a < r->size && !out.incomparable_pair; ++a) {
    if (r->is_unit(a)) continue;
    for (int b = 0; b < r->size; ++b) {
      if (r->is_unit(b) || !r->is_unit(r->add(a, b))) continue;
      Ideal ma = grow_to_maximal(r, a);
      Ideal mb = grow_to_maximal(r, b);
      if (!(ma.members == mb.members)) {
        out.incomparable_pair = std::make_pair(std::move(ma), std::move(mb));
        break;
      }
    }
  }
  return out;
}

bool is_nilpotent(const FiniteRing& r, int a) {
  int p = a;
  for (int steps = 0; steps <= r.size; ++steps) {
    if (p == r.zero) return true;
    p = r.mul(p, a);
  }
  return false;
}

}  // namespace finspec
