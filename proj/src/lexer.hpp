#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "gqe/errors.hpp"

namespace gqe::detail {

// Token stream shared by the regex and formula parsers. Bare atoms are runs
// of [A-Za-z0-9_.:@#-] or non-ASCII bytes; a lone `_` is the wildcard token.
// Quoted atoms use `"` with `\"` and `\\` escapes.
enum class Tok {
  Atom,     // bare or quoted
  Question, LParen, RParen, Star, Plus, Slash, Inverse /* ^- */,
  Bang, Amp, Pipe, Eq, Wildcard /* _ */, Comma, GtEq /* >= */,
  End,
};

struct Token {
  Tok kind;
  std::string text;   // Atom payload (unescaped)
  bool quoted = false;
  std::size_t offset = 0;
};

inline bool is_bare_char(unsigned char c) {
  return std::isalnum(c) || c == '_' || c == '.' || c == ':' || c == '@' ||
         c == '#' || c == '-' || c >= 0x80;
}

inline std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto push = [&](Tok k, std::size_t at) { out.push_back({k, "", false, at}); };
  while (i < text.size()) {
    unsigned char c = text[i];
    if (std::isspace(c)) { ++i; continue; }
    std::size_t at = i;
    switch (c) {
      case '?': push(Tok::Question, at); ++i; continue;
      case '(': push(Tok::LParen, at); ++i; continue;
      case ')': push(Tok::RParen, at); ++i; continue;
      case '*': push(Tok::Star, at); ++i; continue;
      case '+': push(Tok::Plus, at); ++i; continue;
      case '/': push(Tok::Slash, at); ++i; continue;
      case '!': push(Tok::Bang, at); ++i; continue;
      case '&': push(Tok::Amp, at); ++i; continue;
      case '|': push(Tok::Pipe, at); ++i; continue;
      case '=': push(Tok::Eq, at); ++i; continue;
      case ',': push(Tok::Comma, at); ++i; continue;
      case '^':
        if (i + 1 < text.size() && text[i + 1] == '-') {
          push(Tok::Inverse, at);
          i += 2;
          continue;
        }
        throw ParseError("expected `^-`", at);
      case '>':
        if (i + 1 < text.size() && text[i + 1] == '=') {
          push(Tok::GtEq, at);
          i += 2;
          continue;
        }
        throw ParseError("expected `>=`", at);
      case '"': {
        std::string val;
        ++i;
        while (i < text.size() && text[i] != '"') {
          if (text[i] == '\\') {
            if (i + 1 >= text.size()) throw ParseError("dangling escape", i);
            char e = text[i + 1];
            if (e != '"' && e != '\\')
              throw ParseError("unknown escape", i);
            val.push_back(e);
            i += 2;
          } else {
            val.push_back(text[i]);
            ++i;
          }
        }
        if (i >= text.size()) throw ParseError("unterminated quote", at);
        ++i;
        out.push_back({Tok::Atom, std::move(val), true, at});
        continue;
      }
      default: break;
    }
    if (is_bare_char(c)) {
      std::size_t j = i;
      while (j < text.size() && is_bare_char(text[j])) ++j;
      std::string val(text.substr(i, j - i));
      if (val == "_")
        push(Tok::Wildcard, at);
      else
        out.push_back({Tok::Atom, std::move(val), false, at});
      i = j;
      continue;
    }
    throw ParseError("unexpected character", at);
  }
  out.push_back({Tok::End, "", false, text.size()});
  return out;
}

}  // namespace gqe::detail
