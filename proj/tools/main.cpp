#include "sleeve/cli.hpp"

int main(int argc, char** argv) { return sleeve::cli::run(argc, argv); }
