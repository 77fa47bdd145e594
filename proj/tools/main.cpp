#include "importcast/cli.hpp"

int main(int argc, char** argv) { return importcast::run_cli(argc, argv); }
