#pragma once
// Ring expression parsing, command dispatch, and machine readable reports
// for the command line front end. run_command is callable in process, so
// every path, including failures and exit codes, is testable without
// spawning a binary.

#include <memory>
#include <string>
#include <vector>

#include "finspec/ring.hpp"

namespace finspec {

inline constexpr const char* kToolVersion = "finspec 0.1.0";
inline constexpr int kReportSchema = 1;

// Abstract syntax for ring expressions:
//   expr := term ('x' term)*
//   term := atom ('/' '(' gens ')')?
//   atom := 'Z' '/' nat
//         | 'GF' '(' prime ')' '[' var ']' '/' '(' poly ')'
//         | '(' expr ')'
// Whitespace may appear between any two tokens.
struct RingExpr;
using RingExprPtr = std::shared_ptr<const RingExpr>;

struct RingExpr {
  enum class Kind { zmod, gf_quot, product, quotient };
  Kind kind = Kind::zmod;

  int modulus = 0;          // zmod
  int characteristic = 0;   // gf_quot
  std::vector<int> poly;    // gf_quot: c0..cd reduced mod p, monic
  std::string var = "x";    // gf_quot: displayed indeterminate
  RingExprPtr left, right;  // product
  RingExprPtr base;         // quotient
  std::vector<int> gens;    // quotient: ideal generators as element indices

  bool operator==(const RingExpr& other) const;
};

// Text that does not match the grammar, rejected at a position with the
// token shapes that would have been accepted there.
struct syntax_error : input_error {
  syntax_error(int line_, int column_, std::vector<std::string> expected_,
               const std::string& found);
  int line = 0;
  int column = 0;
  std::vector<std::string> expected;
};

// Grammatical text that denotes no valid ring: composite GF characteristic,
// non-monic or constant modulus polynomial, zero modulus.
struct semantic_error : input_error {
  semantic_error(int line_, int column_, const std::string& what_);
  int line = 0;
  int column = 0;
};

RingExpr parse_ring_expr(const std::string& text);

// Canonical rendering; parsing it back yields an equal expression.
std::string print_ring_expr(const RingExpr& e);

// Instantiates the expression, threading the size cap through every
// constructor. Raises budget_error past the cap and input_error for
// out-of-range quotient generators.
RingPtr build_ring(const RingExpr& e, int max_ring_size = kDefaultMaxRingSize);

struct CommandResult {
  int exit_code = 0;        // 0 pass, 1 verdict failure, 2 input error, 3 truncation
  std::string report_json;  // full report, serialized, trailing newline
  std::string human;        // terminal summary; empty under --quiet
};

// One CLI invocation; args exclude the program name. Never throws for bad
// input: parse, semantic, and budget failures become exit codes 2 and 3
// with the message in the report.
CommandResult run_command(const std::vector<std::string>& args);

}  // namespace finspec
