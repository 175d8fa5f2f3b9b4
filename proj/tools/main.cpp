#include "cli.hpp"

int main(int argc, char** argv) { return ellsurf::cli::run(argc, argv, std::cout, std::cerr); }
