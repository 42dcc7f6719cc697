#include "stein_hn/cli.hpp"

int main(int argc, char** argv) { return stein_hn::cli::run(argc, argv); }
