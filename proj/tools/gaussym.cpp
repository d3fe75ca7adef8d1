#include <iostream>

#include "gaussym/cli/app.hpp"

int main(int argc, char** argv) { return gaussym::cli::run_app(argc, argv, std::cout, std::cerr); }
