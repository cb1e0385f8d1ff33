#include "cli.hpp"

int main(int argc, char** argv) { return pluriharm::cli::run(argc, argv); }
