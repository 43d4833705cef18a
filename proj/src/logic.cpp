#include "gqe/logic.hpp"

#include <functional>
#include <set>

#include "gqe/printer.hpp"
#include "test_parser.hpp"

namespace gqe {

FormulaPtr Formula::node_pred(TestPtr t, std::string v) {
  return std::make_shared<Formula>(
      Formula{Kind::NodePred, std::move(t), std::move(v), "", 0, nullptr, nullptr});
}
FormulaPtr Formula::edge_pred(TestPtr t, std::string u, std::string w) {
  return std::make_shared<Formula>(
      Formula{Kind::EdgePred, std::move(t), std::move(u), std::move(w), 0, nullptr, nullptr});
}
FormulaPtr Formula::negate(FormulaPtr f) {
  return std::make_shared<Formula>(
      Formula{Kind::Not, nullptr, "", "", 0, std::move(f), nullptr});
}
FormulaPtr Formula::conj(FormulaPtr a, FormulaPtr b) {
  return std::make_shared<Formula>(
      Formula{Kind::And, nullptr, "", "", 0, std::move(a), std::move(b)});
}
FormulaPtr Formula::disj(FormulaPtr a, FormulaPtr b) {
  return std::make_shared<Formula>(
      Formula{Kind::Or, nullptr, "", "", 0, std::move(a), std::move(b)});
}
FormulaPtr Formula::exists(std::string v, FormulaPtr f) {
  return std::make_shared<Formula>(
      Formula{Kind::Exists, nullptr, std::move(v), "", 0, std::move(f), nullptr});
}
FormulaPtr Formula::count_exists(int k, std::string v, FormulaPtr f) {
  if (k < 1) throw ContractViolation("counting quantifier needs k >= 1");
  return std::make_shared<Formula>(
      Formula{Kind::CountExists, nullptr, std::move(v), "", k, std::move(f), nullptr});
}

namespace {

using detail::Tok;

class FormulaParser : public detail::ParserBase {
 public:
  using ParserBase::ParserBase;

  FormulaPtr parse_top() {
    FormulaPtr f = parse_or();
    expect(Tok::End, "trailing input after formula");
    return f;
  }

 private:
  FormulaPtr parse_or() {
    FormulaPtr f = parse_and();
    while (at(Tok::Pipe)) {
      advance();
      f = Formula::disj(f, parse_and());
    }
    return f;
  }

  FormulaPtr parse_and() {
    FormulaPtr f = parse_unary();
    while (at(Tok::Amp)) {
      advance();
      f = Formula::conj(f, parse_unary());
    }
    return f;
  }

  std::string take_var() {
    if (!at(Tok::Atom) || cur().quoted) fail("expected a variable name");
    std::string v = cur().text;
    advance();
    return v;
  }

  FormulaPtr parse_unary() {
    if (at(Tok::Bang)) {
      advance();
      return Formula::negate(parse_unary());
    }
    if (at(Tok::Atom) && !cur().quoted && cur().text == "exists") {
      advance();
      int k = 0;
      if (at(Tok::GtEq)) {
        advance();
        if (!at(Tok::Atom) || cur().quoted) fail("expected a count after `>=`");
        try {
          std::size_t used = 0;
          k = std::stoi(cur().text, &used);
          if (used != cur().text.size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
          fail("expected a count after `>=`");
        }
        if (k < 1) fail("counting quantifier needs k >= 1");
        advance();
      }
      std::string v = take_var();
      expect(Tok::LParen, "expected `(` after the quantifier");
      FormulaPtr body = parse_or();
      expect(Tok::RParen, "expected `)`");
      return k ? Formula::count_exists(k, v, body) : Formula::exists(v, body);
    }
    if (at(Tok::LParen)) {
      // Either a compound-test predicate `(testexpr)(x[,y])` or a grouped
      // formula; try the predicate reading first.
      std::size_t save = pos_;
      TestPtr t;
      try {
        advance();
        t = parse_test_expr();
        expect(Tok::RParen, "expected `)`");
        if (!at(Tok::LParen)) throw ParseError("not a predicate", cur().offset);
      } catch (const ParseError&) {
        t = nullptr;
        pos_ = save;
      }
      if (t) return parse_pred_args(t);
      advance();  // '('
      FormulaPtr f = parse_or();
      expect(Tok::RParen, "expected `)`");
      return f;
    }
    if (at(Tok::Atom) || at(Tok::Wildcard)) {
      TestPtr t = parse_simple_test();
      return parse_pred_args(t);
    }
    fail("expected a predicate, quantifier, or group");
  }

  FormulaPtr parse_pred_args(TestPtr t) {
    expect(Tok::LParen, "expected `(` with predicate arguments");
    std::string u = take_var();
    if (at(Tok::Comma)) {
      advance();
      std::string w = take_var();
      expect(Tok::RParen, "expected `)`");
      return Formula::edge_pred(t, u, w);
    }
    expect(Tok::RParen, "expected `)`");
    return Formula::node_pred(t, u);
  }
};

// ---------------------------------------------------------------------------
// Evaluation: every subformula materializes as a relation of arity <= 2.

struct Rel {
  int arity = 0;
  bool value = false;
  std::string var;
  std::vector<std::uint8_t> set;
  std::vector<std::uint8_t> rel;
};

std::vector<std::uint8_t> to_binary(const Rel& r, int n) {
  std::vector<std::uint8_t> m(static_cast<std::size_t>(n) * n, 0);
  if (r.arity == 2) return r.rel;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::uint8_t v = r.arity == 0 ? r.value : (r.var == "x" ? r.set[i] : r.set[j]);
      m[static_cast<std::size_t>(i) * n + j] = v;
    }
  return m;
}

template <class Op>
Rel combine(const Rel& a, const Rel& b, int n, Op op) {
  bool binary = a.arity == 2 || b.arity == 2 ||
                (a.arity == 1 && b.arity == 1 && a.var != b.var);
  Rel out;
  if (binary) {
    out.arity = 2;
    auto ma = to_binary(a, n), mb = to_binary(b, n);
    out.rel.resize(ma.size());
    for (std::size_t i = 0; i < ma.size(); ++i) out.rel[i] = op(ma[i], mb[i]);
  } else if (a.arity == 1 || b.arity == 1) {
    out.arity = 1;
    out.var = a.arity == 1 ? a.var : b.var;
    out.set.resize(n);
    for (int i = 0; i < n; ++i) {
      std::uint8_t va = a.arity == 1 ? a.set[i] : a.value;
      std::uint8_t vb = b.arity == 1 ? b.set[i] : b.value;
      out.set[i] = op(va, vb);
    }
  } else {
    out.arity = 0;
    out.value = op(a.value, b.value);
  }
  return out;
}

bool free_in(const Rel& r, const std::string& v) {
  return (r.arity == 1 && r.var == v) || r.arity == 2;
}

Rel zero_like(const Rel& r) {
  Rel out = r;
  if (out.arity == 0) out.value = false;
  std::fill(out.set.begin(), out.set.end(), 0);
  std::fill(out.rel.begin(), out.rel.end(), 0);
  return out;
}

// Projects the bound variable out with a counting threshold (k = 1 is the
// plain existential).
Rel project(const Rel& r, const std::string& v, int k, int n) {
  if (!free_in(r, v)) {
    // The quantifier ranges over the whole domain: it only fails when the
    // domain has fewer than k elements.
    return n >= k ? r : zero_like(r);
  }
  Rel out;
  if (r.arity == 1) {
    out.arity = 0;
    int count = 0;
    for (int i = 0; i < n; ++i) count += r.set[i] != 0;
    out.value = count >= k;
    return out;
  }
  out.arity = 1;
  out.var = v == "x" ? "y" : "x";
  out.set.assign(n, 0);
  if (v == "x") {
    for (int j = 0; j < n; ++j) {
      int count = 0;
      for (int i = 0; i < n; ++i) count += r.rel[static_cast<std::size_t>(i) * n + j] != 0;
      out.set[j] = count >= k;
    }
  } else {
    for (int i = 0; i < n; ++i) {
      int count = 0;
      for (int j = 0; j < n; ++j) count += r.rel[static_cast<std::size_t>(i) * n + j] != 0;
      out.set[i] = count >= k;
    }
  }
  return out;
}

Rel eval_rec(const Graph& g, const Formula& f) {
  int n = g.node_count();
  switch (f.kind) {
    case Formula::Kind::NodePred: {
      Rel out;
      out.arity = 1;
      out.var = f.var;
      out.set.assign(n, 0);
      for (int i = 0; i < n; ++i) out.set[i] = matches_node(g, *f.test, i);
      return out;
    }
    case Formula::Kind::EdgePred: {
      if (f.var == f.var2) {
        Rel out;
        out.arity = 1;
        out.var = f.var;
        out.set.assign(n, 0);
        for (int e = 0; e < g.edge_count(); ++e) {
          auto [s, d] = g.endpoints(e);
          if (s == d && matches_edge(g, *f.test, e)) out.set[s] = 1;
        }
        return out;
      }
      Rel out;
      out.arity = 2;
      out.rel.assign(static_cast<std::size_t>(n) * n, 0);
      bool x_source = f.var == "x";
      for (int e = 0; e < g.edge_count(); ++e) {
        auto [s, d] = g.endpoints(e);
        if (!matches_edge(g, *f.test, e)) continue;
        if (x_source)
          out.rel[static_cast<std::size_t>(s) * n + d] = 1;
        else
          out.rel[static_cast<std::size_t>(d) * n + s] = 1;
      }
      return out;
    }
    case Formula::Kind::Not: {
      Rel r = eval_rec(g, *f.lhs);
      if (r.arity == 0) r.value = !r.value;
      for (auto& v : r.set) v = !v;
      for (auto& v : r.rel) v = !v;
      return r;
    }
    case Formula::Kind::And: {
      Rel a = eval_rec(g, *f.lhs), b = eval_rec(g, *f.rhs);
      return combine(a, b, n, [](std::uint8_t x, std::uint8_t y) -> std::uint8_t {
        return x && y;
      });
    }
    case Formula::Kind::Or: {
      Rel a = eval_rec(g, *f.lhs), b = eval_rec(g, *f.rhs);
      return combine(a, b, n, [](std::uint8_t x, std::uint8_t y) -> std::uint8_t {
        return x || y;
      });
    }
    case Formula::Kind::Exists:
      return project(eval_rec(g, *f.lhs), f.var, 1, n);
    case Formula::Kind::CountExists:
      return project(eval_rec(g, *f.lhs), f.var, f.count_k, n);
  }
  throw Error("corrupt formula");
}

void collect_vars(const Formula& f, std::set<std::string>& vars) {
  switch (f.kind) {
    case Formula::Kind::NodePred:
      vars.insert(f.var);
      break;
    case Formula::Kind::EdgePred:
      vars.insert(f.var);
      vars.insert(f.var2);
      break;
    case Formula::Kind::Exists:
    case Formula::Kind::CountExists:
      vars.insert(f.var);
      collect_vars(*f.lhs, vars);
      break;
    case Formula::Kind::Not:
      collect_vars(*f.lhs, vars);
      break;
    case Formula::Kind::And:
    case Formula::Kind::Or:
      collect_vars(*f.lhs, vars);
      collect_vars(*f.rhs, vars);
      break;
  }
}

// Formula precedence: Or 0 < And 1 < prefix 2 < atom 3.
int formula_prec(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::Or: return 0;
    case Formula::Kind::And: return 1;
    case Formula::Kind::Not:
    case Formula::Kind::Exists:
    case Formula::Kind::CountExists:
      return 2;
    default: return 3;
  }
}

std::string print_formula(const Formula& f, int min_prec) {
  std::string s;
  switch (f.kind) {
    case Formula::Kind::NodePred: {
      std::string t = to_string(*f.test);
      bool wrap = f.test->kind == TestAst::Kind::And ||
                  f.test->kind == TestAst::Kind::Or ||
                  f.test->kind == TestAst::Kind::Not;
      s = (wrap ? "(" + t + ")" : t) + "(" + f.var + ")";
      break;
    }
    case Formula::Kind::EdgePred: {
      std::string t = to_string(*f.test);
      bool wrap = f.test->kind == TestAst::Kind::And ||
                  f.test->kind == TestAst::Kind::Or ||
                  f.test->kind == TestAst::Kind::Not;
      s = (wrap ? "(" + t + ")" : t) + "(" + f.var + "," + f.var2 + ")";
      break;
    }
    case Formula::Kind::Not:
      s = "!" + print_formula(*f.lhs, 2);
      break;
    case Formula::Kind::And:
      s = print_formula(*f.lhs, 1) + " & " + print_formula(*f.rhs, 2);
      break;
    case Formula::Kind::Or:
      s = print_formula(*f.lhs, 0) + " | " + print_formula(*f.rhs, 1);
      break;
    case Formula::Kind::Exists:
      s = "exists " + f.var + " (" + print_formula(*f.lhs, 0) + ")";
      break;
    case Formula::Kind::CountExists:
      s = "exists>=" + std::to_string(f.count_k) + " " + f.var + " (" +
          print_formula(*f.lhs, 0) + ")";
      break;
  }
  if (formula_prec(f) < min_prec) return "(" + s + ")";
  return s;
}

}  // namespace

FormulaPtr parse_formula(std::string_view text, const FlavorInfo& flavor) {
  return FormulaParser(text, flavor).parse_top();
}

std::string to_string(const Formula& f) { return print_formula(f, 0); }

std::optional<std::string> validate_two_var(const Formula& f) {
  std::set<std::string> vars;
  collect_vars(f, vars);
  for (const auto& v : vars)
    if (v != "x" && v != "y")
      return "formula uses variable \"" + v + "\"; only x and y are allowed";
  return std::nullopt;
}

EvalResult eval(const Graph& g, const Formula& f) {
  if (auto violation = validate_two_var(f)) throw ContractViolation(*violation);
  Rel r = eval_rec(g, f);
  EvalResult out;
  out.arity = r.arity;
  out.value = r.value;
  out.var = r.var;
  out.set = std::move(r.set);
  out.rel = std::move(r.rel);
  return out;
}

std::vector<int> eval_unary(const Graph& g, const Formula& f) {
  EvalResult r = eval(g, f);
  if (r.arity != 1)
    throw ContractViolation("formula is not a unary query");
  std::vector<int> out;
  for (int i = 0; i < g.node_count(); ++i)
    if (r.set[i]) out.push_back(i);
  return out;
}

namespace {

using Continuation = std::function<FormulaPtr(const std::string&)>;

FormulaPtr with_cont(FormulaPtr pred, FormulaPtr tail) {
  return tail ? Formula::conj(std::move(pred), std::move(tail)) : pred;
}

FormulaPtr build_fo2(const RegexAst& r, const std::string& v,
                     const Continuation& cont) {
  std::string w = v == "x" ? "y" : "x";
  switch (r.kind) {
    case RegexAst::Kind::NodeTest:
      return with_cont(Formula::node_pred(r.test, v), cont(v));
    case RegexAst::Kind::Fwd:
      return Formula::exists(
          w, with_cont(Formula::edge_pred(r.test, v, w), cont(w)));
    case RegexAst::Kind::Bwd:
      return Formula::exists(
          w, with_cont(Formula::edge_pred(r.test, w, v), cont(w)));
    case RegexAst::Kind::Alt:
      return Formula::disj(build_fo2(*r.lhs, v, cont), build_fo2(*r.rhs, v, cont));
    case RegexAst::Kind::Seq:
      return build_fo2(*r.lhs, v, [&](const std::string& mid) {
        return build_fo2(*r.rhs, mid, cont);
      });
    case RegexAst::Kind::Star:
      throw StarNotSupported();
  }
  throw Error("corrupt regex");
}

}  // namespace

FormulaPtr regex_to_fo2(const RegexAst& r) {
  return build_fo2(r, "x", [](const std::string&) { return nullptr; });
}

}  // namespace gqe
