#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hj
{
    /// Exit codes: a definitive answer, a search that gave up, bad usage or
    /// unreadable input, and a failed internal self-check.
    enum ExitCode : int
    {
        exit_definitive = 0,
        exit_inconclusive = 1,
        exit_usage = 2,
        exit_verification = 3
    };

    struct RunConfig
    {
        std::string subcommand;
        int n = 0;
        std::string method = "direct";
        std::string mode = "exhaustive";
        std::string kind;
        std::uint64_t seed = 0;
        std::uint64_t budget = 100000;
        int max_intervals = 1;
        bool sym_break = false;
        bool no_symmetry = false;
        bool count = false;
        bool exhaustive_quadruples = false;
        int exhaustive_cap = 3;
        long cap_digits = 10000;
        int colour = 0;
        unsigned jobs = 0;
        std::optional<double> timeout_seconds;
        std::string quadruple;
        std::string d;
        std::string solver;
        std::string coloring_path;
        std::string cnf_path;
        std::string cert_path;
        std::string out_path;
    };

    /// Parses argv (including argv[0]) and runs one subcommand.
    auto run_cli(int argc, const char * const * argv, std::ostream & out, std::ostream & err) -> int;
    auto run_cli(const std::vector<std::string> & args, std::ostream & out, std::ostream & err) -> int;
}
