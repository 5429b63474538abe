#include <iostream>

#include "uiml_tools/cli.hpp"

int main(int argc, char** argv) { return uiml::tools::run_cli(argc, argv, std::cout, std::cerr); }
