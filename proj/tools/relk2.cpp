#include "relk2/cli.hpp"

int main(int argc, char** argv) { return relk2::run_cli(argc, argv); }
