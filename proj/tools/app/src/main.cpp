#include <iostream>

#include "resest/app/commands.hpp"

int main(int argc, char** argv) { return resest::app::run_cli(argc, argv, std::cout, std::cerr); }
