#include "powersieve/cli.hpp"

int main(int argc, char** argv) { return powersieve::cli::main(argc, argv); }
