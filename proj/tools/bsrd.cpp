#include "bsrd/cli.hpp"

int main(int argc, char** argv) { return bsrd::cli_dispatch(argc, argv); }
