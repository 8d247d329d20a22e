#include <iostream>

#include "otm/cli_report.hpp"

int main(int argc, char** argv) { return otm::report::run_cli(argc, argv, std::cout, std::cerr); }
