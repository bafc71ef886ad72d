#include "edgeclust/cli.hpp"

int main(int argc, char** argv) { return edgeclust::run_cli(argc, argv); }
