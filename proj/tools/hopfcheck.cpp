#include "hopfcheck/cli.hpp"

int main(int argc, char** argv) { return hopfcheck::cli_main(argc, argv); }
