#include "dasqa/cli.hpp"

int main(int argc, char** argv) { return dasqa::cli_main(argc, argv); }
