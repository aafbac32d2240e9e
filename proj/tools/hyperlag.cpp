#include "cli.hpp"

int main(int argc, char** argv) { return hyperlag::cli::run(argc, argv); }
