#include "gate/cli.hpp"

int main(int argc, char** argv) { return gate::cli::cli_main(argc, argv); }
