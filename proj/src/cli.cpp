#include "finspec/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "finspec/cech.hpp"
#include "finspec/localization.hpp"
#include "finspec/scheme.hpp"
#include "finspec/spectrum.hpp"
#include "finspec/structure_sheaf.hpp"

namespace finspec {

namespace {

std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out += (i + 1 == tokens.size()) ? " or " : ", ";
    out += tokens[i];
  }
  return out;
}

std::string position_prefix(int line, int column) {
  return std::to_string(line) + ":" + std::to_string(column) + ": ";
}

}  // namespace

syntax_error::syntax_error(int line_, int column_, std::vector<std::string> expected_,
                           const std::string& found)
    : input_error(position_prefix(line_, column_) + "expected " +
                  join_tokens(expected_) + "; found " + found),
      line(line_),
      column(column_),
      expected(std::move(expected_)) {}

semantic_error::semantic_error(int line_, int column_, const std::string& what_)
    : input_error(position_prefix(line_, column_) + what_),
      line(line_),
      column(column_) {}

bool RingExpr::operator==(const RingExpr& other) const {
  if (kind != other.kind) return false;
  switch (kind) {
    case Kind::zmod:
      return modulus == other.modulus;
    case Kind::gf_quot:
      return characteristic == other.characteristic && poly == other.poly &&
             var == other.var;
    case Kind::product:
      return *left == *other.left && *right == *other.right;
    case Kind::quotient:
      return *base == *other.base && gens == other.gens;
  }
  return false;
}

namespace {

constexpr int kMaxLiteral = 1000000;
constexpr int kMaxPolyDegree = 16;

bool is_prime_number(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

struct Cursor {
  const std::string& text;
  std::size_t pos = 0;
  int line = 1;
  int column = 1;

  bool at_end() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }

  void advance() {
    if (text[pos] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
    ++pos;
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) advance();
  }

  std::string found_here() const {
    if (at_end()) return "end of input";
    return std::string("'") + peek() + "'";
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    throw syntax_error(line, column, std::move(expected), found_here());
  }

  void expect(char c) {
    skip_ws();
    if (at_end() || peek() != c) fail({std::string("'") + c + "'"});
    advance();
  }

  bool try_consume(char c) {
    skip_ws();
    if (at_end() || peek() != c) return false;
    advance();
    return true;
  }

  // A natural number literal; returns the value and its start position.
  int parse_nat(int* at_line = nullptr, int* at_column = nullptr) {
    skip_ws();
    if (at_line) *at_line = line;
    if (at_column) *at_column = column;
    if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
      fail({"a number"});
    int l = line, c = column;
    long value = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      value = value * 10 + (peek() - '0');
      if (value > kMaxLiteral)
        throw semantic_error(l, c, "number is larger than " +
                                       std::to_string(kMaxLiteral));
      advance();
    }
    return static_cast<int>(value);
  }

  std::string parse_ident(int* at_line = nullptr, int* at_column = nullptr) {
    skip_ws();
    if (at_line) *at_line = line;
    if (at_column) *at_column = column;
    if (at_end() || !std::isalpha(static_cast<unsigned char>(peek())))
      fail({"an identifier"});
    std::string out;
    while (!at_end() && std::isalpha(static_cast<unsigned char>(peek()))) {
      out += peek();
      advance();
    }
    return out;
  }
};

RingExpr parse_expr(Cursor& cur);

// poly := monomial ('+' monomial)*; monomial := nat ('*'? var ('^' nat)?)?
//                                             | var ('^' nat)?
// Coefficients are reduced mod p; the reduced leading coefficient must be 1.
std::vector<int> parse_poly(Cursor& cur, const std::string& var, int p) {
  int poly_line = 0, poly_col = 0;
  cur.skip_ws();
  poly_line = cur.line;
  poly_col = cur.column;

  std::vector<long> coeffs;
  auto add_term = [&](int degree, long coeff) {
    if (degree > kMaxPolyDegree)
      throw semantic_error(poly_line, poly_col,
                           "polynomial degree exceeds " +
                               std::to_string(kMaxPolyDegree));
    if (static_cast<int>(coeffs.size()) <= degree)
      coeffs.resize(static_cast<std::size_t>(degree) + 1, 0);
    coeffs[static_cast<std::size_t>(degree)] += coeff;
  };

  while (true) {
    cur.skip_ws();
    long coeff = 1;
    bool saw_coeff = false;
    if (!cur.at_end() && std::isdigit(static_cast<unsigned char>(cur.peek()))) {
      coeff = cur.parse_nat();
      saw_coeff = true;
      cur.try_consume('*');
    }
    cur.skip_ws();
    bool saw_var = false;
    int degree = 0;
    if (!cur.at_end() && std::isalpha(static_cast<unsigned char>(cur.peek()))) {
      int vl = 0, vc = 0;
      std::string name = cur.parse_ident(&vl, &vc);
      if (name != var)
        throw syntax_error(vl, vc, {"'" + var + "'"}, "'" + name + "'");
      saw_var = true;
      degree = 1;
      if (cur.try_consume('^')) degree = cur.parse_nat();
    }
    if (!saw_coeff && !saw_var) cur.fail({"a number", "'" + var + "'"});
    add_term(saw_var ? degree : 0, coeff);
    if (!cur.try_consume('+')) break;
  }

  std::vector<int> out(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    out[i] = static_cast<int>(coeffs[i] % p);
  int top = static_cast<int>(out.size()) - 1;
  if (top < 1)
    throw semantic_error(poly_line, poly_col,
                         "the modulus polynomial must have degree at least 1");
  if (out[static_cast<std::size_t>(top)] != 1)
    throw semantic_error(poly_line, poly_col,
                         "the modulus polynomial is not monic (leading "
                         "coefficient reduces to " +
                             std::to_string(out[static_cast<std::size_t>(top)]) +
                             " mod " + std::to_string(p) + ")");
  return out;
}

RingExpr parse_atom(Cursor& cur) {
  cur.skip_ws();
  if (cur.try_consume('(')) {
    RingExpr inner = parse_expr(cur);
    cur.expect(')');
    return inner;
  }
  if (cur.at_end() || !std::isalpha(static_cast<unsigned char>(cur.peek())))
    cur.fail({"'Z'", "'GF'", "'('"});

  int id_line = 0, id_col = 0;
  std::string ident = cur.parse_ident(&id_line, &id_col);
  if (ident == "Z") {
    cur.expect('/');
    int n_line = 0, n_col = 0;
    int n = cur.parse_nat(&n_line, &n_col);
    if (n == 0)
      throw semantic_error(n_line, n_col, "modulus 0 does not give a finite ring");
    RingExpr e;
    e.kind = RingExpr::Kind::zmod;
    e.modulus = n;
    return e;
  }
  if (ident == "GF") {
    cur.expect('(');
    int p_line = 0, p_col = 0;
    int p = cur.parse_nat(&p_line, &p_col);
    if (!is_prime_number(p))
      throw semantic_error(p_line, p_col, "GF characteristic " +
                                              std::to_string(p) + " is not prime");
    cur.expect(')');
    cur.expect('[');
    std::string var = cur.parse_ident();
    cur.expect(']');
    cur.expect('/');
    cur.expect('(');
    std::vector<int> poly = parse_poly(cur, var, p);
    cur.expect(')');
    RingExpr e;
    e.kind = RingExpr::Kind::gf_quot;
    e.characteristic = p;
    e.poly = std::move(poly);
    e.var = std::move(var);
    return e;
  }
  throw syntax_error(id_line, id_col, {"'Z'", "'GF'", "'('"}, "'" + ident + "'");
}

RingExpr parse_term(Cursor& cur) {
  RingExpr atom = parse_atom(cur);
  cur.skip_ws();
  if (cur.at_end() || cur.peek() != '/') return atom;
  cur.advance();
  cur.expect('(');
  std::vector<int> gens;
  gens.push_back(cur.parse_nat());
  while (cur.try_consume(',')) gens.push_back(cur.parse_nat());
  cur.expect(')');
  RingExpr e;
  e.kind = RingExpr::Kind::quotient;
  e.base = std::make_shared<RingExpr>(std::move(atom));
  e.gens = std::move(gens);
  return e;
}

RingExpr parse_expr(Cursor& cur) {
  RingExpr acc = parse_term(cur);
  while (true) {
    cur.skip_ws();
    if (cur.at_end() || cur.peek() != 'x') return acc;
    cur.advance();
    RingExpr rhs = parse_term(cur);
    RingExpr prod;
    prod.kind = RingExpr::Kind::product;
    prod.left = std::make_shared<RingExpr>(std::move(acc));
    prod.right = std::make_shared<RingExpr>(std::move(rhs));
    acc = std::move(prod);
  }
}

std::string print_poly(const std::vector<int>& poly, const std::string& var) {
  std::string out;
  for (int d = static_cast<int>(poly.size()) - 1; d >= 0; --d) {
    int c = poly[static_cast<std::size_t>(d)];
    if (c == 0) continue;
    if (!out.empty()) out += "+";
    if (d == 0) {
      out += std::to_string(c);
      continue;
    }
    if (c != 1) out += std::to_string(c);
    out += var;
    if (d >= 2) out += "^" + std::to_string(d);
  }
  if (out.empty()) out = "0";
  return out;
}

}  // namespace

RingExpr parse_ring_expr(const std::string& text) {
  Cursor cur{text};
  RingExpr e = parse_expr(cur);
  cur.skip_ws();
  if (!cur.at_end()) cur.fail({"end of input"});
  return e;
}

std::string print_ring_expr(const RingExpr& e) {
  switch (e.kind) {
    case RingExpr::Kind::zmod:
      return "Z/" + std::to_string(e.modulus);
    case RingExpr::Kind::gf_quot:
      return "GF(" + std::to_string(e.characteristic) + ")[" + e.var + "]/(" +
             print_poly(e.poly, e.var) + ")";
    case RingExpr::Kind::product: {
      std::string l = print_ring_expr(*e.left);
      std::string r = print_ring_expr(*e.right);
      // The grammar is left associative, so only a product on the right
      // needs parentheses to keep its shape.
      if (e.right->kind == RingExpr::Kind::product) r = "(" + r + ")";
      return l + " x " + r;
    }
    case RingExpr::Kind::quotient: {
      std::string b = print_ring_expr(*e.base);
      if (e.base->kind == RingExpr::Kind::product ||
          e.base->kind == RingExpr::Kind::quotient)
        b = "(" + b + ")";
      std::string g;
      for (std::size_t i = 0; i < e.gens.size(); ++i) {
        if (i > 0) g += ",";
        g += std::to_string(e.gens[i]);
      }
      return b + "/(" + g + ")";
    }
  }
  return "";
}

RingPtr build_ring(const RingExpr& e, int max_ring_size) {
  switch (e.kind) {
    case RingExpr::Kind::zmod:
      return mk_zmod(e.modulus, max_ring_size);
    case RingExpr::Kind::gf_quot:
      return mk_gf_poly_quotient(e.characteristic, e.poly, max_ring_size);
    case RingExpr::Kind::product:
      return mk_product(build_ring(*e.left, max_ring_size),
                        build_ring(*e.right, max_ring_size), max_ring_size);
    case RingExpr::Kind::quotient: {
      RingPtr base = build_ring(*e.base, max_ring_size);
      for (int g : e.gens)
        if (g < 0 || g >= base->size)
          throw input_error("quotient generator " + std::to_string(g) +
                            " is out of range for " + base->label + " (size " +
                            std::to_string(base->size) + ")");
      return mk_quotient(base, ideal_generated_by(base, e.gens)).ring;
    }
  }
  throw std::logic_error("build_ring: unhandled expression kind");
}

namespace {

using nlohmann::json;

struct ReportState {
  json report = json::object();
  json verdicts = json::object();
  json witnesses = json::object();
  std::ostringstream human;
  bool all_pass = true;
  bool truncated = false;

  void verdict(const std::string& name, bool pass, const std::string& witness = "") {
    verdicts[name] = pass;
    if (!pass) all_pass = false;
    if (!witness.empty()) witnesses[name] = witness;
    human << (pass ? "[PASS] " : "[FAIL] ") << name << "\n";
  }
};

// Splits on commas that sit outside any parentheses or brackets, so a list
// of ring expressions can carry quotient generators unharmed.
std::vector<std::string> split_top_level(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  std::vector<std::string> trimmed;
  for (std::string& s : out) {
    std::size_t a = s.find_first_not_of(" \t\n");
    std::size_t b = s.find_last_not_of(" \t\n");
    if (a == std::string::npos)
      trimmed.push_back("");
    else
      trimmed.push_back(s.substr(a, b - a + 1));
  }
  return trimmed;
}

json set_json(const IndexSet& s) { return json(s.elements()); }

void run_spec(ReportState& st, const RingPtr& r) {
  ZariskiSpace sp = mk_spec(r);
  json points = json::array();
  json labels = json::array();
  for (const Ideal& p : sp.points) {
    points.push_back(p.members.elements());
    labels.push_back(ideal_label(p));
  }
  json opens = json::array();
  for (const IndexSet& u : sp.topology.opens) opens.push_back(u.elements());
  json basics = json::array();
  for (const IndexSet& b : sp.basic_of) basics.push_back(b.elements());
  st.report["spectrum"] = {{"ring_size", r->size},
                           {"point_count", sp.points.size()},
                           {"points", points},
                           {"point_labels", labels},
                           {"opens", opens},
                           {"basic_opens", basics}};
  st.human << r->label << ": " << sp.points.size() << " prime(s), "
           << sp.topology.opens.size() << " open(s)\n";
  for (std::size_t i = 0; i < sp.points.size(); ++i)
    st.human << "  point " << i << ": " << ideal_label(sp.points[i]) << " = "
             << set_to_string(sp.points[i].members) << "\n";
  TopologyCheck tc = verify_topology(sp.topology);
  st.verdict("topology_valid", tc.ok, tc.detail);
  BasisCheck bc = basis_check(sp);
  st.verdict("basis_valid", bc.ok, bc.detail);
}

void run_localize(ReportState& st, const RingPtr& r, const std::optional<int>& at,
                  const std::vector<int>& monoid_gens) {
  if (at.has_value() == !monoid_gens.empty())
    throw input_error("localize takes exactly one of --at and --monoid");
  LocalizedRing lr = at.has_value()
                         ? localize_at_element(r, *at)
                         : localize(r, submonoid_generated_by(r, monoid_gens));
  PredicateReport pr = strickland_check(lr.canonical, lr.monoid);
  json reps = json::array();
  for (const auto& [num, den] : lr.class_rep) reps.push_back(json::array({num, den}));
  st.report["localization"] = {{"base_size", r->size},
                               {"monoid", set_json(lr.monoid.members)},
                               {"class_count", lr.ring->size},
                               {"class_reps", reps},
                               {"ring_label", lr.ring->label}};
  st.human << lr.ring->label << ": monoid " << set_to_string(lr.monoid.members)
           << ", " << lr.ring->size << " class(es)\n";
  st.verdict("units", pr.units.pass, pr.units.witness);
  st.verdict("fractions", pr.fractions.pass, pr.fractions.witness);
  st.verdict("kernel", pr.kernel.pass, pr.kernel.witness);
  st.verdict("predicate", pr.verdict());
}

void run_sheafcheck(ReportState& st, const RingPtr& r, long max_covers) {
  BasisPresheaf b = presheaf_on_basis(r);
  ExtendedSheaf e = extend_from_basis(b);
  SheafVerdict sv = is_sheaf(e.presheaf, max_covers);
  st.truncated = st.truncated || sv.truncated;
  HartshorneSheaf h = hartshorne_presheaf(b);
  ConstructionComparison comp = compare_constructions(e, h);
  GlobalSectionsCheck gs = global_sections_check(e);
  int universe = e.presheaf.space.universe;
  st.report["sheafcheck"] = {
      {"opens", e.presheaf.space.opens.size()},
      {"covers_checked", sv.covers_checked},
      {"truncated", sv.truncated},
      {"global_section_count", e.presheaf.at(IndexSet::full(universe))->size}};
  st.human << r->label << ": " << e.presheaf.space.opens.size() << " open(s), "
           << sv.covers_checked << " cover(s) checked\n";
  st.verdict("sheaf", sv.ok, sv.detail);
  st.verdict("constructions_agree", comp.ok, comp.detail);
  st.verdict("global_sections", gs.ok, gs.detail);
}

void run_cech(ReportState& st, const RingPtr& r, const std::vector<int>& gens) {
  CechSequence seq = build_sequence(r, gens);
  ExactnessReport er = check_exactness(seq);
  json level1 = json::array();
  for (const CechWitness& w : seq.level1) level1.push_back(w.ring->size);
  st.report["cech"] = {{"elements", gens},
                       {"level1_sizes", level1},
                       {"alpha_kernel", set_json(er.alpha_kernel)},
                       {"kernel_size", er.kernel_size},
                       {"detail", er.detail}};
  st.verdict("alpha_injective", er.alpha_injective);
  st.verdict("image_in_kernel", er.image_in_kernel);
  st.verdict("kernel_in_image", er.kernel_in_image);
  st.verdict("exact", er.exact(), er.detail);
  st.human << "exact: " << (er.exact() ? "true" : "false") << "\n";
}

void run_scheme(ReportState& st, const RingPtr& r, long max_covers) {
  ExtendedSheaf e = extend_from_basis(presheaf_on_basis(r));
  LocallyRingedSpace x = mk_affine(e, max_covers);
  SchemeCertificate cert = affine_is_scheme(e);
  SchemeCheck sc = scheme_check(x, cert);
  bool stalks_local = true;
  for (const LocalRingCheck& c : x.stalk_certificates)
    stalks_local = stalks_local && c.local;
  st.report["scheme"] = {{"points", x.base.space.universe},
                         {"members", cert.members.size()},
                         {"member_failures", sc.member_failures},
                         {"detail", sc.detail},
                         {"covers_checked", x.base.sheaf_certificate.covers_checked}};
  st.human << r->label << ": " << x.base.space.universe << " point(s), "
           << cert.members.size() << " cover member(s)\n";
  st.verdict("sheaf", x.base.sheaf_certificate.ok);
  st.verdict("stalks_local", stalks_local);
  st.verdict("scheme", sc.ok, sc.detail);
}

void run_equiv(ReportState& st, const RingPtr& r, int at,
               const std::vector<std::string>& family_texts, int max_ring_size) {
  LocalizedRing lr = localize_at_element(r, at);
  std::vector<RingPtr> family;
  json family_printed = json::array();
  for (const std::string& chunk : family_texts) {
    for (const std::string& one : split_top_level(chunk)) {
      if (one.empty()) throw input_error("empty ring expression in --family");
      RingExpr fe = parse_ring_expr(one);
      family.push_back(build_ring(fe, max_ring_size));
      family_printed.push_back(print_ring_expr(fe));
    }
  }
  EquivalenceReport eq = definitions_equivalence_check(lr.canonical, lr.monoid, family);
  st.report["equiv"] = {{"at", at},
                        {"family", family_printed},
                        {"family_tested", eq.family_tested}};
  st.human << lr.ring->label << ": tested against " << family.size()
           << " ring(s)\n";
  st.verdict("def_explicit", eq.def_explicit);
  st.verdict("def_universal", eq.def_universal);
  st.verdict("def_predicate", eq.def_predicate);
  st.verdict("definitions_agree", eq.agree());
}

}  // namespace

CommandResult run_command(const std::vector<std::string>& args) {
  CommandResult out;
  ReportState st;
  st.report["schema"] = kReportSchema;
  st.report["tool_version"] = kToolVersion;
  {
    std::string echo;
    for (const std::string& a : args) {
      if (!echo.empty()) echo += " ";
      echo += a;
    }
    st.report["command_echo"] = echo;
  }

  int max_ring_size = kDefaultMaxRingSize;
  long max_covers = kDefaultCoverBudget;
  std::string json_path;
  bool quiet = false;
  std::string ring_text;
  std::vector<int> cech_gens;
  std::optional<int> loc_at;
  std::vector<int> monoid_gens;
  int equiv_at = 0;
  std::vector<std::string> family_texts;

  CLI::App app{
      "finspec: exhaustive verification of localizations, spectra, structure\n"
      "sheaves, cover sequences, and scheme certificates over finite\n"
      "commutative rings.\n\n"
      "Ring expressions: Z/n; GF(p)[x]/(poly); products joined with 'x'\n"
      "(Z/4 x Z/9); quotients by the ideal generated from element indices\n"
      "(Z/12/(3)).\n\n"
      "Element arguments are canonical indices: Z/n uses residues 0..n-1;\n"
      "A x B encodes the pair (a, b) as a*|B|+b; GF(p)[x]/(f) encodes\n"
      "c0+c1*x+... as the base-p digits c0+c1*p+...; quotient rings number\n"
      "their residue classes in construction order.",
      "finspec"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("ring", ring_text, "ring expression, e.g. Z/12")->required();
    sub->add_option("--max-ring-size", max_ring_size,
                    "largest ring any construction may allocate")
        ->capture_default_str();
    sub->add_option("--max-covers", max_covers,
                    "budget for sheaf cover enumeration")
        ->capture_default_str();
    sub->add_option("--json", json_path, "write the JSON report to this path");
    sub->add_flag("--quiet", quiet, "suppress human-readable output");
  };

  CLI::App* c_spec = app.add_subcommand("spec", "prime spectrum and its topology");
  add_common(c_spec);
  CLI::App* c_loc =
      app.add_subcommand("localize", "localization summary and predicate report");
  add_common(c_loc);
  c_loc->add_option("--at", loc_at, "invert the powers of this element");
  c_loc->add_option("--monoid", monoid_gens,
                    "invert the submonoid generated by these elements")
      ->delimiter(',');
  CLI::App* c_shf = app.add_subcommand(
      "sheafcheck",
      "structure sheaf: sheaf axiom, construction agreement, global sections");
  add_common(c_shf);
  CLI::App* c_cech =
      app.add_subcommand("cech", "exactness of the two-level cover sequence");
  add_common(c_cech);
  c_cech->add_option("--gens", cech_gens, "elements cutting out the cover")
      ->delimiter(',')
      ->required();
  CLI::App* c_sch =
      app.add_subcommand("scheme", "affine certificate and scheme check");
  add_common(c_sch);
  CLI::App* c_eqv = app.add_subcommand(
      "equiv", "three characterizations of one localization, compared");
  add_common(c_eqv);
  c_eqv->add_option("--at", equiv_at, "invert the powers of this element")
      ->required();
  c_eqv
      ->add_option("--family", family_texts,
                   "comma separated ring expressions; commas inside "
                   "parentheses stay within one expression")
      ->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    std::ostringstream os;
    int code = app.exit(e, os, os);
    if (code == 0) {
      out.human = os.str();
      st.report["command"] = "help";
      out.report_json = st.report.dump(2) + "\n";
      return out;
    }
    st.report["error"] = std::string(e.what());
    st.report["error_kind"] = "usage";
    st.report["pass"] = false;
    out.exit_code = 2;
    out.human = os.str();
    out.report_json = st.report.dump(2) + "\n";
    return out;
  }

  int error_code = 0;
  try {
    RingExpr ex = parse_ring_expr(ring_text);
    RingPtr r = build_ring(ex, max_ring_size);
    st.report["inputs"] = {{"ring", print_ring_expr(ex)}};
    if (c_spec->parsed()) {
      st.report["command"] = "spec";
      run_spec(st, r);
    } else if (c_loc->parsed()) {
      st.report["command"] = "localize";
      run_localize(st, r, loc_at, monoid_gens);
    } else if (c_shf->parsed()) {
      st.report["command"] = "sheafcheck";
      run_sheafcheck(st, r, max_covers);
    } else if (c_cech->parsed()) {
      st.report["command"] = "cech";
      run_cech(st, r, cech_gens);
    } else if (c_sch->parsed()) {
      st.report["command"] = "scheme";
      run_scheme(st, r, max_covers);
    } else if (c_eqv->parsed()) {
      st.report["command"] = "equiv";
      run_equiv(st, r, equiv_at, family_texts, max_ring_size);
    }
  } catch (const syntax_error& e) {
    st.report["error"] = std::string(e.what());
    st.report["error_kind"] = "syntax";
    st.report["error_position"] = {{"line", e.line}, {"column", e.column}};
    st.report["expected_tokens"] = e.expected;
    st.human << "error: " << e.what() << "\n";
    error_code = 2;
  } catch (const semantic_error& e) {
    st.report["error"] = std::string(e.what());
    st.report["error_kind"] = "semantic";
    st.report["error_position"] = {{"line", e.line}, {"column", e.column}};
    st.human << "error: " << e.what() << "\n";
    error_code = 2;
  } catch (const budget_error& e) {
    st.report["error"] = std::string(e.what());
    st.report["error_kind"] = "budget";
    st.human << "error: " << e.what() << "\n";
    st.truncated = true;
    error_code = 3;
  } catch (const input_error& e) {
    st.report["error"] = std::string(e.what());
    st.report["error_kind"] = "input";
    st.human << "error: " << e.what() << "\n";
    error_code = 2;
  }

  st.report["flags"] = {{"max_ring_size", max_ring_size},
                        {"max_covers", max_covers},
                        {"json", json_path},
                        {"quiet", quiet}};
  st.report["verdicts"] = st.verdicts;
  st.report["witnesses"] = st.witnesses;
  st.report["truncated"] = st.truncated;
  bool pass = error_code == 0 && st.all_pass && !st.truncated;
  st.report["pass"] = pass;

  if (error_code != 0)
    out.exit_code = error_code;
  else if (st.truncated)
    out.exit_code = 3;
  else
    out.exit_code = st.all_pass ? 0 : 1;

  out.report_json = st.report.dump(2) + "\n";
  if (!json_path.empty()) {
    std::ofstream f(json_path);
    if (f)
      f << out.report_json;
    else {
      st.human << "error: cannot write report to " << json_path << "\n";
      if (out.exit_code == 0) out.exit_code = 2;
    }
  }
  if (!quiet) out.human = st.human.str();
  return out;
}

}  // namespace finspec
