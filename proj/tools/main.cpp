#include "cli.hpp"

int main(int argc, char** argv) { return hyperrst::cli::run(argc, argv); }
