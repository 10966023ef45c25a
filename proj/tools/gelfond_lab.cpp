#include "gelfond/cli.hpp"

int main(int argc, char** argv) { return gelfond::cli_main(argc, argv); }
