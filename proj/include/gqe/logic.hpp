#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gqe/ast.hpp"

namespace gqe {

/// Raised by the FO² translation on regexes containing Kleene star.
class StarNotSupported : public Error {
 public:
  StarNotSupported() : Error("star-free regexes only: Kleene star has no FO translation") {}
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// Two-variable counting logic. Variable names are carried as strings so a
/// malformed formula (third variable) can be represented and reported;
/// validate_two_var gates evaluation.
struct Formula {
  enum class Kind { NodePred, EdgePred, Not, And, Or, Exists, CountExists };

  Kind kind;
  TestPtr test;       // NodePred / EdgePred
  std::string var;    // NodePred: the variable; EdgePred: source variable;
                      // Exists/CountExists: the bound variable
  std::string var2;   // EdgePred: target variable
  int count_k = 0;    // CountExists threshold, >= 1
  FormulaPtr lhs, rhs;

  static FormulaPtr node_pred(TestPtr t, std::string v);
  static FormulaPtr edge_pred(TestPtr t, std::string u, std::string w);
  static FormulaPtr negate(FormulaPtr f);
  static FormulaPtr conj(FormulaPtr a, FormulaPtr b);
  static FormulaPtr disj(FormulaPtr a, FormulaPtr b);
  static FormulaPtr exists(std::string v, FormulaPtr f);
  static FormulaPtr count_exists(int k, std::string v, FormulaPtr f);
};

/// Concrete syntax: `label(x)`, `label(x,y)`, `p="v"(x)`, `(testexpr)(x,y)`,
/// `!f`, `f & f`, `f | f`, `exists x (f)`, `exists>=k x (f)`. `exists` is
/// reserved (quote a label named exists).
FormulaPtr parse_formula(std::string_view text, const FlavorInfo& flavor);

std::string to_string(const Formula& f);

/// ok (nullopt) iff only the variables x and y occur.
std::optional<std::string> validate_two_var(const Formula& f);

/// Relation materialized for a (sub)formula; arity never exceeds 2, which is
/// the operational content of the two-variable restriction.
struct EvalResult {
  int arity = 0;
  bool value = false;            // arity 0
  std::string var;               // arity 1: the free variable
  std::vector<std::uint8_t> set; // arity 1, indexed by node
  std::vector<std::uint8_t> rel; // arity 2, row-major [x * N + y]
};

/// Bottom-up evaluation under standard FO semantics; EdgePred(t,u,w) holds
/// iff some edge from val(u) to val(w) satisfies t. Rejects formulas that
/// fail validate_two_var.
EvalResult eval(const Graph& g, const Formula& f);

/// Nodes satisfying a unary formula (throws unless exactly one free var).
std::vector<int> eval_unary(const Graph& g, const Formula& f);

/// The FO² starts-a-conforming-path formula for a star-free regex:
/// eval(regex_to_fo2(r)) = reachable_from(r) on every graph. The
/// construction alternates the two variables along concatenation, reusing
/// the stale one under the fresh quantifier.
FormulaPtr regex_to_fo2(const RegexAst& r);

}  // namespace gqe
