#include <string>
#include <vector>

#include "microepi/cli.hpp"

int main(int argc, char** argv) {
  return microepi::cli::run_main(std::vector<std::string>(argv + 1, argv + argc));
}
