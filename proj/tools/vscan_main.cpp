#include "vscan/cli.hpp"

int main(int argc, char** argv) { return vscan::cli::run(argc, argv); }
