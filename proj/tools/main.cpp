#include <iostream>

#include "modui/cli.hpp"

int main(int argc, char** argv) { return modui::run_cli(argc, argv, std::cout, std::cerr); }
