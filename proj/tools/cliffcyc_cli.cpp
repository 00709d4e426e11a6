#include "cli_app.hpp"

int main(int argc, char** argv) { return cliffcyc::cli::run_cli(argc, argv); }
