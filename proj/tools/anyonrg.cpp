#include "anyonrg/cli.hpp"

int main(int argc, char** argv) { return anyonrg::cli::main(argc, argv); }
