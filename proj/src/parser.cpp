#include "gqe/parser.hpp"

#include "test_parser.hpp"

namespace gqe {

namespace {

using detail::Tok;

class RegexParser : public detail::ParserBase {
 public:
  using ParserBase::ParserBase;

  RegexPtr parse_regex_top() {
    RegexPtr r = parse_alt();
    expect(Tok::End, "trailing input after regex");
    return r;
  }

  TestPtr parse_test_top() {
    TestPtr t = parse_test_expr();
    expect(Tok::End, "trailing input after test");
    return t;
  }

 private:
  RegexPtr parse_alt() {
    RegexPtr r = parse_seq();
    while (at(Tok::Plus)) {
      advance();
      r = RegexAst::alt(r, parse_seq());
    }
    return r;
  }

  RegexPtr parse_seq() {
    RegexPtr r = parse_step();
    while (at(Tok::Slash)) {
      advance();
      r = RegexAst::seq(r, parse_step());
    }
    return r;
  }

  // A parenthesized unit is first tried as a pure test expression (which as
  // an edge step means Fwd and is the only form `^-` may follow); when that
  // fails it is re-parsed as a grouped regex.
  RegexPtr parse_step() {
    if (at(Tok::Question)) {
      advance();
      if (at(Tok::LParen)) {
        advance();
        TestPtr t = parse_test_expr();
        expect(Tok::RParen, "expected `)`");
        return RegexAst::node_test(t);
      }
      return RegexAst::node_test(parse_simple_test());
    }
    if (at(Tok::Atom) || at(Tok::Wildcard)) {
      TestPtr t = parse_simple_test();
      return finish_test_step(t);
    }
    if (at(Tok::LParen)) {
      std::size_t save = pos_;
      TestPtr t;
      try {
        advance();
        t = parse_test_expr();
        expect(Tok::RParen, "expected `)`");
      } catch (const ParseError&) {
        t = nullptr;
        pos_ = save;
      }
      if (t) {
        if (at(Tok::Star)) {
          advance();
          return RegexAst::star(RegexAst::fwd(t));
        }
        return finish_test_step(t);
      }
      advance();  // '('
      RegexPtr r = parse_alt();
      expect(Tok::RParen, "expected `)`");
      if (at(Tok::Inverse)) fail("`^-` applies to tests, not groups");
      if (at(Tok::Star)) {
        advance();
        return RegexAst::star(r);
      }
      return r;
    }
    fail("expected a node test, edge test, or group");
  }

  RegexPtr finish_test_step(TestPtr t) {
    if (at(Tok::Inverse)) {
      advance();
      if (at(Tok::Star)) fail("star applies only to parenthesized groups");
      return RegexAst::bwd(t);
    }
    if (at(Tok::Star)) fail("star applies only to parenthesized groups");
    return RegexAst::fwd(t);
  }
};

}  // namespace

RegexPtr parse_regex(std::string_view text, const FlavorInfo& flavor) {
  return RegexParser(text, flavor).parse_regex_top();
}

TestPtr parse_test(std::string_view text, const FlavorInfo& flavor) {
  return RegexParser(text, flavor).parse_test_top();
}

}  // namespace gqe
