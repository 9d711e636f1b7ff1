#include "fld/cli.hpp"

int main(int argc, char** argv) { return fld::run_cli(argc, argv); }
