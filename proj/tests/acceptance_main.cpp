// Acceptance runner: one PASS/FAIL line per criterion.
//   acceptance_tests                 all criteria
//   acceptance_tests --criterion 4   one criterion (repeatable)

#include <cstdio>
#include <exception>
#include <vector>

#include <CLI11.hpp>

#include "pluriharm/acceptance.hpp"

int main(int argc, char** argv) {
  CLI::App app{"pluriharm acceptance suite"};
  std::vector<int> ids;
  app.add_option("--criterion", ids, "criterion number 1-12")->check(CLI::Range(1, 12));
  CLI11_PARSE(app, argc, argv);
  if (ids.empty()) ids = pluriharm::all_criteria();
  bool ok = true;
  try {
    for (const auto& r : pluriharm::run_criteria(ids)) {
      std::printf("%s\n", pluriharm::format_result(r).c_str());
      std::fflush(stdout);
      ok = ok && r.pass;
    }
  } catch (const std::exception& e) {
    std::printf("error: %s\n", e.what());
    return 2;
  }
  return ok ? 0 : 1;
}
