#include <exception>
#include <fstream>
#include <iostream>

#include "ustat/cli.hpp"

int main(int argc, char** argv) {
  ustat::RunConfig config;
  try {
    config = ustat::parse_args(argc, argv);
  } catch (const ustat::CliExit& e) {
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    const ustat::RunOutcome out = ustat::run(config);
    const std::string text =
        config.format == "csv" ? out.csv : out.report.dump(2) + "\n";
    if (config.output_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream file(config.output_path);
      if (!file) {
        std::cerr << "error: cannot open output file " << config.output_path << "\n";
        return 1;
      }
      file << text;
    }
    return out.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
