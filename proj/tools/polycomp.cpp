#include "polycomp/cli.hpp"

int main(int argc, char** argv) { return polycomp::cli::run_main(argc, argv); }
