#include "fracstable/cli.hpp"

int main(int argc, char** argv) { return fracstable::cli::main(argc, argv); }
