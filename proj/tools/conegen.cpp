#include "conegen/cli.hpp"

int main(int argc, char** argv) { return conegen::cli::run_command(argc, argv); }
