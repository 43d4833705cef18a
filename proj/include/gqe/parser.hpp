#pragma once

#include <string_view>

#include "gqe/ast.hpp"

namespace gqe {

/// Parses the ASCII query syntax:
///   node test `?atom` / `?(testexpr)`, forward edge test `atom` /
///   `(testexpr)`, inverse suffix `^-`, alternation `+`, concatenation `/`,
///   postfix `*` on parenthesized groups; tests are bare labels, `p=v`,
///   `p="v"`, `f<i>=v`, wildcard `_`, `!t`, `t&t`, `t|t`, parentheses.
/// Precedence: `*` > `^-` > `/` > `+`; in tests `!` > `&` > `|`.
/// `flavor` gates which test atoms are legal and bounds feature indices.
RegexPtr parse_regex(std::string_view text, const FlavorInfo& flavor);

/// Parses a bare test expression (the `nodes` CLI surface and GNN rules).
TestPtr parse_test(std::string_view text, const FlavorInfo& flavor);

}  // namespace gqe
