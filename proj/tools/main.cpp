#include "cli.hpp"

int main(int argc, char** argv) { return heic::cli::cli_main(argc, argv); }
