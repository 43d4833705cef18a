#pragma once

#include <string>

#include "gqe/ast.hpp"

namespace gqe {

/// Prints with minimal parentheses; parse(print(r)) is structurally equal
/// to r under the flavor the AST was built for.
std::string to_string(const RegexAst& r);
std::string to_string(const TestAst& t);

}  // namespace gqe
