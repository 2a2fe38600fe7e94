#include "lbf/cli/run.hpp"

int main(int argc, char** argv) { return lbf::cli::run(argc, argv); }
