#include "coptail/cli.hpp"

int main(int argc, char** argv) { return coptail::cli::run_cli(argc, argv); }
