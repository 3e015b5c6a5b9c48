#include "commands.hpp"

int main(int argc, char** argv) { return spocs::cli::run(argc, argv); }
