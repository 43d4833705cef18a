#pragma once

#include <string>

#include "gqe/graph_io.hpp"

namespace gqe::testing {

inline Graph fixture(const std::string& name) {
  return load_graph_file(std::string(GQE_DATA_DIR) + "/" + name);
}

inline std::string fixture_path(const std::string& name) {
  return std::string(GQE_DATA_DIR) + "/" + name;
}

}  // namespace gqe::testing
