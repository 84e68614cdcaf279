#include "tfi/cli.hpp"

int main(int argc, char** argv) { return tfi::cli::run(argc, argv); }
