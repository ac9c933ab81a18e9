#include "cli.hpp"

int main(int argc, char** argv) { return pdmeans::cli::run(argc, argv); }
