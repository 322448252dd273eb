#pragma once

#include <hj/coloring.hh>
#include <hj/line.hh>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hj
{
    /// Number of monochromatic interval lines; 0 exactly for avoiders.
    auto violation_count(const Coloring & c) -> std::uint64_t;

    /// Per interval line, how many of its three members have colour 1.
    /// Flipping a cell touches only the lines through it.
    class LineTally
    {
    public:
        explicit LineTally(const Coloring & c);

        auto coloring() const noexcept -> const Coloring & { return _coloring; }
        auto monochromatic() const noexcept -> std::uint64_t { return _monochromatic; }
        auto lines_through(Rank cell) const -> const std::vector<std::uint32_t> & { return _incidence[cell]; }

        /// Change in monochromatic() if `cell` were flipped.
        auto delta(Rank cell) const -> int;
        void flip(Rank cell);

    private:
        Coloring _coloring;
        std::vector<LineRanks> _lines;
        std::vector<std::vector<std::uint32_t>> _incidence;
        std::vector<std::uint8_t> _ones;
        std::uint64_t _monochromatic = 0;
    };

    enum class SearchMode
    {
        exhaustive,
        local
    };

    enum class Outcome
    {
        avoider_found,
        refuted,
        inconclusive
    };

    auto mode_name(SearchMode m) -> std::string;
    auto outcome_name(Outcome o) -> std::string;

    struct SearchStats
    {
        std::uint64_t nodes = 0;            // partial assignments visited (exhaustive)
        std::uint64_t line_prunes = 0;
        std::uint64_t symmetry_prunes = 0;
        std::uint64_t avoiders = 0;         // canonical avoiders counted, if requested
        std::uint64_t flips = 0;            // local search
        std::uint64_t restarts = 0;
        std::uint64_t best_violations = 0;
        double elapsed_ms = 0;

        /// Ignores elapsed_ms.
        auto operator==(const SearchStats & other) const -> bool;
    };

    struct SearchReport
    {
        int n = 0;
        SearchMode mode = SearchMode::exhaustive;
        Outcome outcome = Outcome::inconclusive;
        std::optional<Coloring> avoider;
        bool symmetry = true;
        bool counted = false;
        std::uint64_t seed = 0;
        std::uint64_t budget = 0;
        SearchStats stats;

        auto operator==(const SearchReport &) const -> bool = default;
    };

    inline constexpr int default_exhaustive_cap = 3;

    struct ExhaustiveOptions
    {
        bool symmetry = true;
        int cap = default_exhaustive_cap;
        unsigned jobs = 0;                  // 0: hardware concurrency
        bool count_avoiders = false;        // count every (canonical) avoider
    };

    /// Depth-first over cells in rank order, colour 0 before 1, abandoning a
    /// branch once a line closes monochromatic. With symmetry on, partial
    /// assignments that cannot be the lexicographic minimum of their orbit
    /// under the 24-element group are pruned. Reports the lexicographically
    /// least avoider, or refuted.
    auto exhaustive_search(int n, const ExhaustiveOptions & options = {}) -> SearchReport;

    struct LocalOptions
    {
        std::uint64_t seed = 0;
        std::uint64_t budget = 100000;      // total flips
        std::uint64_t slice = 0;            // flips per independent worker; 0: automatic
        unsigned jobs = 0;
        unsigned max_sideways = 0;          // 0: automatic
    };

    /// Steepest descent on violation_count with sideways moves, re-randomizing
    /// when stuck. The budget is split into independently seeded slices; the
    /// first successful slice (by index) wins, so the report depends only on
    /// (n, options) and not on the number of jobs.
    auto local_search(int n, const LocalOptions & options) -> SearchReport;

    /// Throws VerificationFailure if the report claims an avoider that has a
    /// monochromatic interval line, or claims refuted outside exhaustive mode.
    void check_report(const SearchReport & report);
}
