#include "metent_cli/cli.hpp"

int main(int argc, char** argv) { return metent::cli::run(argc, argv); }
