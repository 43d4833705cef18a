#include "gqe/dispatch.hpp"

namespace gqe {

const std::vector<std::pair<std::string, std::string>>& dispatch_table() {
  static const std::vector<std::pair<std::string, std::string>> table = {
      {"validate", "validate"},
      {"to_vector_labeled", "convert"},
      {"import_rdf", "convert"},
      {"select_nodes", "nodes"},
      {"enumerate", "paths"},
      {"reachable_from", "reach"},
      {"pairs", "pairs"},
      {"count_exact", "count"},
      {"count_approx", "count"},
      {"prepare_sampler", "sample"},
      {"bc", "centrality"},
      {"bc_r", "centrality"},
      {"bc_r_approx", "centrality"},
      {"run_layers", "gnn"},
      {"classify", "gnn"},
      {"wl_colors", "wl"},
      {"eval", "fo2"},
      {"regex_to_fo2", "fo2"},
      {"validate_two_var", "fo2"},
      {"xai_classify", "xai"},
      {"exists_instance", "xai"},
      {"is_sufficient_reason", "xai"},
      {"minimal_sufficient_reason", "xai"},
      {"all_minimal_sufficient_reasons", "xai"},
      {"is_biased", "xai"},
  };
  return table;
}

}  // namespace gqe
