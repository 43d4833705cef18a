#include <doctest.h>

#include <array>
#include <cstdio>
#include <map>
#include <set>
#include <string>

#include "gqe/dispatch.hpp"
#include "support/fixtures.hpp"

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(GQE_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 4096> buf{};
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (fgets(buf.data(), buf.size(), pipe)) out += buf.data();
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::string fx(const std::string& name) {
  return gqe::testing::fixture_path(name);
}

}  // namespace

TEST_CASE("golden outputs for the printed examples") {
  auto eq2 = run_cli("paths -g " + fx("fig1a.json") +
                     " -q '?person/contact/?infected' --max-len 3");
  CHECK(eq2.exit_code == 0);
  CHECK(eq2.out == "{\"nodes\":[\"n1\",\"n5\"],\"edges\":[\"e4\"]}\n");

  auto count = run_cli("count -g " + fx("fig1a.json") +
                       " -q '?person/rides/?bus/rides^-/?person' --len 2");
  CHECK(count.exit_code == 0);
  CHECK(count.out == "{\"exact\":4}\n");

  auto gnn = run_cli("gnn -g " + fx("fig2.json") + " -m " + fx("fig2_gnn.json"));
  CHECK(gnn.exit_code == 0);
  CHECK(gnn.out == "{\"true\":[\"n3\"]}\n");
}

TEST_CASE("identical invocations with identical seeds are byte-identical") {
  std::string invocation = "sample -g " + fx("fig1a.json") +
                           " -q '?person/rides/?bus/rides^-/?person' --len 2 "
                           "-n 25 --seed 11";
  auto first = run_cli(invocation);
  auto second = run_cli(invocation);
  CHECK(first.exit_code == 0);
  CHECK(first.out == second.out);

  auto other_seed = run_cli("sample -g " + fx("fig1a.json") +
                            " -q '?person/rides/?bus/rides^-/?person' --len 2 "
                            "-n 25 --seed 12");
  CHECK(other_seed.out != first.out);  // the seed actually matters
}

TEST_CASE("GQE_SEED sets the default seed") {
  std::string invocation = "sample -g " + fx("fig1a.json") +
                           " -q '((rides+(rides)^-))*' --len 3 -n 10";
  auto run_env = [&](const std::string& seed) {
    std::string cmd = "env GQE_SEED=" + seed + " " + std::string(GQE_CLI_PATH) +
                      " " + invocation + " 2>&1";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (fgets(buf.data(), buf.size(), pipe)) out += buf.data();
    pclose(pipe);
    return out;
  };
  CHECK(run_env("5") == run_env("5"));
  CHECK(run_env("5") != run_env("6"));
}

TEST_CASE("exit codes: 0 success, 1 query error, 2 usage error") {
  CHECK(run_cli("validate -g " + fx("fig1a.json")).exit_code == 0);
  auto query_error = run_cli("paths -g " + fx("fig1a.json") +
                             " -q '?person/' --max-len 2");
  CHECK(query_error.exit_code == 1);
  CHECK(query_error.out.find("\"error\"") != std::string::npos);
  CHECK(run_cli("paths --max-len 2").exit_code == 2);  // missing required flags
  CHECK(run_cli("definitely-not-a-subcommand").exit_code != 0);
}

TEST_CASE("errors surface as single-line JSON") {
  auto missing = run_cli("count -g " + fx("fig1a.json") +
                         " -q 'f1=x' --len 1");
  CHECK(missing.exit_code == 1);
  CHECK(missing.out.find("{\"error\":") == 0);
  CHECK(missing.out.find('\n') == missing.out.size() - 1);
}

TEST_CASE("tsv format") {
  auto count = run_cli("count --format tsv -g " + fx("fig1a.json") +
                       " -q 'contact' --len 1");
  CHECK(count.exit_code == 0);
  CHECK(count.out == "1\n");
}

TEST_CASE("every operation is reachable from exactly one subcommand") {
  const auto& table = gqe::dispatch_table();
  std::set<std::string> known_subcommands = {
      "nodes", "paths", "reach", "pairs", "count", "sample", "centrality",
      "gnn", "wl", "fo2", "xai", "convert", "validate"};
  std::map<std::string, std::set<std::string>> homes;
  for (const auto& [op, sub] : table) {
    CHECK(known_subcommands.count(sub) == 1);
    homes[op].insert(sub);
  }
  // exactly one home per operation
  for (const auto& [op, subs] : homes) CHECK(subs.size() == 1);
  // the operation list covers every module op named in the surface
  std::set<std::string> ops;
  for (const auto& [op, sub] : table) ops.insert(op);
  for (const char* required :
       {"validate", "to_vector_labeled", "import_rdf", "select_nodes",
        "enumerate", "reachable_from", "pairs", "count_exact", "count_approx",
        "prepare_sampler", "bc", "bc_r", "bc_r_approx", "run_layers",
        "classify", "wl_colors", "eval", "regex_to_fo2", "validate_two_var",
        "xai_classify", "exists_instance", "is_sufficient_reason",
        "minimal_sufficient_reason", "all_minimal_sufficient_reasons",
        "is_biased"})
    CHECK(ops.count(required) == 1);
  // every subcommand hosts at least one operation
  std::set<std::string> used;
  for (const auto& [op, sub] : table) used.insert(sub);
  CHECK(used == known_subcommands);
}

TEST_CASE("convert subcommand covers both directions") {
  std::string tmp = "/tmp/gqe_cli_test_vec.json";
  auto conv = run_cli("convert -g " + fx("fig1b.json") + " --to-vector -o " + tmp);
  CHECK(conv.exit_code == 0);
  auto validate = run_cli("validate -g " + tmp);
  CHECK(validate.exit_code == 0);

  std::string nt = "/tmp/gqe_cli_test.nt";
  std::FILE* f = std::fopen(nt.c_str(), "w");
  std::fputs("<a> <knows> <b> .\n", f);
  std::fclose(f);
  std::string rdf_out = "/tmp/gqe_cli_test_rdf.json";
  CHECK(run_cli("convert --from-rdf " + nt + " -o " + rdf_out).exit_code == 0);
  CHECK(run_cli("validate -g " + rdf_out).exit_code == 0);
}
