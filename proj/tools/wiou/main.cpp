#include "commands.hpp"

int main(int argc, char** argv) { return wiou::cli::run(argc, argv); }
