#include "panet/cli.hpp"

int main(int argc, char** argv) { return panet::run_cli(argc, argv); }
