#include "gqe/printer.hpp"

#include "lexer.hpp"

namespace gqe {

namespace {

bool bare_printable(const Atom& a) {
  if (a.empty() || a == "_" || a == kBottom) return false;
  for (unsigned char c : a)
    if (!detail::is_bare_char(c)) return false;
  return true;
}

std::string atom_str(const Atom& a) {
  if (bare_printable(a)) return a;
  std::string out = "\"";
  for (char c : a) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

// Test precedence: Or 0 < And 1 < Not 2 < leaf 3.
int test_prec(const TestAst& t) {
  switch (t.kind) {
    case TestAst::Kind::Or: return 0;
    case TestAst::Kind::And: return 1;
    case TestAst::Kind::Not: return 2;
    default: return 3;
  }
}

std::string print_test(const TestAst& t, int min_prec) {
  std::string s;
  switch (t.kind) {
    case TestAst::Kind::Label: s = atom_str(t.atom); break;
    case TestAst::Kind::PropEq: s = atom_str(t.atom) + "=" + atom_str(t.value); break;
    case TestAst::Kind::FeatEq:
      s = "f" + std::to_string(t.feature) + "=" + atom_str(t.value);
      break;
    case TestAst::Kind::Any: s = "_"; break;
    case TestAst::Kind::Not: s = "!" + print_test(*t.lhs, 2); break;
    case TestAst::Kind::And:
      s = print_test(*t.lhs, 1) + "&" + print_test(*t.rhs, 2);
      break;
    case TestAst::Kind::Or:
      s = print_test(*t.lhs, 0) + "|" + print_test(*t.rhs, 1);
      break;
  }
  if (test_prec(t) < min_prec) return "(" + s + ")";
  return s;
}

bool simple_test(const TestAst& t) {
  switch (t.kind) {
    case TestAst::Kind::Label:
    case TestAst::Kind::PropEq:
    case TestAst::Kind::FeatEq:
    case TestAst::Kind::Any:
      return true;
    default:
      return false;
  }
}

std::string test_operand(const TestAst& t) {
  if (simple_test(t)) return print_test(t, 3);
  return "(" + print_test(t, 0) + ")";
}

// Regex precedence: Alt 0 < Seq 1 < step/star 2.
int regex_prec(const RegexAst& r) {
  switch (r.kind) {
    case RegexAst::Kind::Alt: return 0;
    case RegexAst::Kind::Seq: return 1;
    default: return 2;
  }
}

std::string print_regex(const RegexAst& r, int min_prec) {
  std::string s;
  switch (r.kind) {
    case RegexAst::Kind::NodeTest:
      s = "?" + test_operand(*r.test);
      break;
    case RegexAst::Kind::Fwd:
      s = test_operand(*r.test);
      break;
    case RegexAst::Kind::Bwd:
      s = test_operand(*r.test) + "^-";
      break;
    case RegexAst::Kind::Alt:
      s = print_regex(*r.lhs, 0) + "+" + print_regex(*r.rhs, 1);
      break;
    case RegexAst::Kind::Seq:
      s = print_regex(*r.lhs, 1) + "/" + print_regex(*r.rhs, 2);
      break;
    case RegexAst::Kind::Star:
      return "(" + print_regex(*r.lhs, 0) + ")*";
  }
  if (regex_prec(r) < min_prec) return "(" + s + ")";
  return s;
}

}  // namespace

std::string to_string(const RegexAst& r) { return print_regex(r, 0); }

std::string to_string(const TestAst& t) { return print_test(t, 0); }

}  // namespace gqe
