#include "latticeforge/cli.hpp"

int main(int argc, char** argv) { return latticeforge::cli::main(argc, argv); }
