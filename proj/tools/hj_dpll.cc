// Stand-alone solver obeying the external solver contract: one argument, the
// CNF path; "s" and "v" lines on stdout; exit 10 for SAT, 20 for UNSAT.

#include <hj/cnf.hh>
#include <hj/error.hh>

#include <fstream>
#include <iostream>
#include <iterator>

auto main(int argc, char * argv[]) -> int
{
    if (argc != 2) {
        std::cerr << "usage: " << argv[0] << " FILE.cnf\n";
        return 1;
    }
    std::ifstream in(argv[1], std::ios::binary);
    if (! in) {
        std::cerr << "cannot open " << argv[1] << "\n";
        return 1;
    }
    std::string text { std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>() };
    try {
        auto dimacs = hj::read_dimacs(text);
        auto result = hj::dpll(dimacs.variables, dimacs.clauses);
        std::cout << hj::format_solver_output(result);
        return result.status == hj::SolverStatus::sat ? 10 : result.status == hj::SolverStatus::unsat ? 20 : 0;
    }
    catch (const hj::Error & e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
}
