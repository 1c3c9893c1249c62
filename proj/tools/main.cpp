#include <iostream>

#include "coordsynth/cli.hpp"

int main(int argc, char** argv) { return coordsynth::run_cli(argc, argv, std::cout, std::cerr); }
