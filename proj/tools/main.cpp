#include "tchi/cli.hpp"

int main(int argc, char** argv) { return tchi::cli_main(argc, argv); }
