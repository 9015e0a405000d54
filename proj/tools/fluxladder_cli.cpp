#include "fluxladder/cli.hpp"

int main(int argc, char** argv) { return fluxladder::cli_main(argc, argv); }
