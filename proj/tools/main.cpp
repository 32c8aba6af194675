#include "manetsim/cli.hpp"

int main(int argc, char** argv) {
  return manetsim::cli_main(argc, argv);
}
