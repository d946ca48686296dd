#include "vanetsim/cli.hpp"

int main(int argc, char** argv) { return vanetsim::cli::main(argc, argv); }
