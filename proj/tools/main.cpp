#include "cli.hpp"

int main(int argc, char** argv) { return liftspec::cli::cli_main(argc, argv); }
