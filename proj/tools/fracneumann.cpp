#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "fracneumann/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Fractional p-Laplacian Neumann problems: assembly, constants, certificates and critical points"};
  std::string command, config;
  app.add_option("command", command, "assemble | constants | certify | solve | example31")
      ->required()
      ->check(CLI::IsMember({"assemble", "constants", "certify", "solve", "example31"}));
  app.add_option("config", config, "key = value config file, or a JSON report to re-run")
      ->required()
      ->check(CLI::ExistingFile);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : fracneumann::kExitInput;
  }
  return fracneumann::run(command, config, std::cout, std::cerr);
}
