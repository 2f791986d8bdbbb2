#include "txbasis/cli.hpp"

int main(int argc, char** argv) { return txbasis::run_cli(argc, argv); }
