#include "lambdav/cli.hpp"

#include <iostream>

int main(int argc, char **argv) { return lambdav::runCli(argc, argv, std::cout, std::cerr); }
