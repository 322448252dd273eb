#include <hj/cli.hh>

#include <iostream>

auto main(int argc, char * argv[]) -> int
{
    return hj::run_cli(argc, argv, std::cout, std::cerr);
}
