#include "flyfast/cli/run.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return flyfast::cli::main_entry(argc, argv, std::cout, std::cerr);
}
