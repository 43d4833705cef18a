#pragma once

#include <string>
#include <utility>
#include <vector>

namespace gqe {

/// Operation -> owning CLI subcommand. Each operation is reachable from
/// exactly one subcommand; the unit tests enforce the bijection side of
/// that and the CLI builds its help from it.
const std::vector<std::pair<std::string, std::string>>& dispatch_table();

}  // namespace gqe
