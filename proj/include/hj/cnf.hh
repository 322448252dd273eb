#pragma once

#include <hj/coloring.hh>
#include <hj/line.hh>

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hj
{
    using Clause = std::vector<int>;

    /// "Some 2-colouring of [3]^n has no monochromatic line whose active set
    /// is a union of at most m intervals". Variable rank + 1 is true iff the
    /// word of that rank has colour 1.
    struct CnfInstance
    {
        int n = 0;
        int max_intervals = 1;
        bool sym_break = false;
        int variables = 0;
        std::vector<Clause> clauses;
        /// Parallel to clauses; empty for the symmetry-breaking unit clause.
        std::vector<std::optional<Line>> provenance;
    };

    /// Two clauses per line, (p q r) and (-p -q -r), in m-interval enumeration
    /// order; with sym_break, a final unit clause giving rank 0 colour 0.
    auto encode(int n, int max_intervals, bool sym_break) -> CnfInstance;

    /// Header comment "c hj-interval n=.. max_intervals=.. sym_break=..", the
    /// "p cnf" line, then each line's clause pair preceded by
    /// "c line <active> <fixed>" (fixed is "-" when empty).
    auto write_dimacs(const CnfInstance & instance) -> std::string;

    struct Dimacs
    {
        int variables = 0;
        std::vector<Clause> clauses;
        // Recovered from the hj-interval header comment when present.
        std::optional<int> n;
        std::optional<int> max_intervals;
        std::optional<bool> sym_break;
    };

    /// Comment lines are skipped (apart from the hj-interval header).
    auto read_dimacs(std::string_view text) -> Dimacs;

    enum class SolverStatus
    {
        sat,
        unsat,
        unknown
    };

    auto status_name(SolverStatus s) -> std::string;

    struct SolverResult
    {
        SolverStatus status = SolverStatus::unknown;
        std::vector<int> model;         // literals from the v lines
        std::string diagnostics;
    };

    /// Reads "s SATISFIABLE|UNSATISFIABLE|UNKNOWN" and "v <lits> 0" lines.
    auto parse_solver_output(std::string_view output) -> SolverResult;

    /// Runs `command <cnf_path>` through /bin/sh. Crashes, signals, a missing
    /// or unparsable status line, and timeouts all give unknown.
    auto run_solver(const std::string & cnf_path, const std::string & command,
        std::optional<std::chrono::milliseconds> timeout = std::nullopt) -> SolverResult;

    struct DpllLimits
    {
        std::uint64_t max_decisions = 0;    // 0: unlimited
        std::optional<std::chrono::milliseconds> timeout;
    };

    /// Unit propagation with two watched literals, branching on the
    /// lowest-index unassigned variable, false first, chronological
    /// backtracking.
    auto dpll(int variables, const std::vector<Clause> & clauses, const DpllLimits & limits = {}) -> SolverResult;

    /// "s ..." and "v ... 0" lines in the solver-output grammar.
    auto format_solver_output(const SolverResult & result) -> std::string;

    /// Colour of unrank(i) is the value of variable i + 1. Throws
    /// InvalidArgument if some variable is unassigned, VerificationFailure if
    /// the colouring has a monochromatic m-interval line.
    auto decode_model(const std::vector<int> & model, int n, int max_intervals = 1) -> Coloring;

    /// n with 3^n == variables, if any.
    auto length_for_variables(int variables) -> std::optional<int>;
}
