#include "cg/cli.hpp"

int main(int argc, char** argv) { return cg::cli::main_entry(argc, argv); }
