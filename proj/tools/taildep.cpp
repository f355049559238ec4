#include "cli/commands.hpp"

int main(int argc, char** argv) { return taildep::cli::run(argc, argv); }
