#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gqe/ast.hpp"

namespace gqe {

/// Edge-consuming move: from --test,direction--> to.
struct AutomatonMove {
  int from;
  bool backward;
  TestPtr test;
  int to;
};

/// Zero-length move gated by a node test evaluated at the current node.
/// A guard with an Any test is a plain epsilon move.
struct AutomatonGuard {
  int from;
  TestPtr test;
  int to;
};

/// Compiled form of a regex: paths accepted over a graph are exactly the
/// members of the regex's evaluation, including length-0 paths contributed
/// by node tests and by the all-nodes component of Star.
struct PathAutomaton {
  int state_count = 0;
  int initial = 0;
  std::vector<std::uint8_t> is_final;
  std::vector<AutomatonMove> moves;
  std::vector<AutomatonGuard> guards;
  std::vector<std::vector<int>> moves_from;   // state -> indices into moves
  std::vector<std::vector<int>> guards_from;  // state -> indices into guards
};

/// Thompson-style compilation with guard moves for node tests. States that
/// cannot take part in any accepting run (ignoring tests) are pruned.
PathAutomaton compile(const RegexAst& r);

std::string to_dot(const PathAutomaton& a);

}  // namespace gqe
