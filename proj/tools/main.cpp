#include "cli.hpp"

int main(int argc, char** argv) { return schurcomp::cli::main_entry(argc, argv); }
