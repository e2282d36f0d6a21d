#include "bcs/cli.hpp"

int main(int argc, char** argv) { return bcs::cli::run_main(argc, argv); }
