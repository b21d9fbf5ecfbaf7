#include "svv/cli.hpp"

int main(int argc, char** argv) { return svv::cli_run(argc, argv); }
