#include "leafclust/cli.hpp"

int main(int argc, char** argv) { return leafclust::cli::run(argc, argv); }
