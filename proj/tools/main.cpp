#include <iostream>

#include "qbloch/cli/commands.hpp"

int main(int argc, char** argv)
{
    return qbloch::cli::run(argc, argv, std::cout, std::cerr);
}
