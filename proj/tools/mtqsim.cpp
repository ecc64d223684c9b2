#include "cli/cli.hpp"

int main(int argc, char** argv) { return mtq::cli::run_cli(argc, argv); }
