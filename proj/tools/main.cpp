#include "branchstop/cli_app.hpp"

int main(int argc, char** argv) { return branchstop::run_cli(argc, argv); }
