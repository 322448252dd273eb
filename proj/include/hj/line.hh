#pragma once

#include <hj/word.hh>

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hj
{
    /// A combinatorial line of [3]^n, identified by its active coordinate set
    /// and the letters on the remaining coordinates. Stored as a template word
    /// in which active coordinates hold 0.
    class Line
    {
    public:
        /// cells[i] is the fixed letter of coordinate i + 1, or 0 if active.
        explicit Line(std::vector<Letter> cells);

        /// active: 1-based coordinates; fixed: letters of the other coordinates,
        /// in increasing coordinate order.
        static auto from_parts(int n, const std::vector<int> & active, const std::vector<Letter> & fixed) -> Line;

        auto n() const noexcept -> int { return static_cast<int>(_cells.size()); }
        auto is_active(int coordinate) const -> bool { return _cells[coordinate - 1] == 0; }
        /// 0 for active coordinates.
        auto fixed_letter(int coordinate) const -> Letter { return _cells[coordinate - 1]; }
        auto cells() const noexcept -> const std::vector<Letter> & { return _cells; }

        auto active() const -> std::vector<int>;
        /// Maximal runs of the active set as 1-based inclusive (lo, hi) pairs.
        auto intervals() const -> std::vector<std::pair<int, int>>;
        auto is_interval() const -> bool { return intervals().size() == 1; }

        /// Fixed letters read in coordinate order as a base-3 number.
        auto fixed_rank() const -> Rank;

        /// The member word whose active coordinates all hold `value`.
        auto word_at(Letter value) const -> Word;
        auto rank_at(Letter value) const -> Rank;

        auto operator==(const Line &) const -> bool = default;

    private:
        std::vector<Letter> _cells;
    };

    /// A line whose active set is {lo, ..., hi}.
    class IntervalLine
    {
    public:
        explicit IntervalLine(Line line);
        IntervalLine(int n, int lo, int hi, const std::vector<Letter> & fixed);

        auto line() const noexcept -> const Line & { return _line; }
        auto n() const noexcept -> int { return _line.n(); }
        auto lo() const noexcept -> int { return _lo; }
        auto hi() const noexcept -> int { return _hi; }

        auto operator==(const IntervalLine &) const -> bool = default;

    private:
        Line _line;
        int _lo, _hi;
    };

    /// Members with the active coordinates set to 1, 2 and 3 respectively.
    auto line_points(const Line & line) -> std::array<Word, 3>;
    auto line_ranks(const Line & line) -> std::array<Rank, 3>;

    /// The line whose members, in order, are a, b, c (active values 1, 2, 3),
    /// if there is one.
    auto line_through(const Word & a, const Word & b, const Word & c) -> std::optional<Line>;

    /// Number of interval lines in [3]^n: sum over L of (n - L + 1) 3^(n - L).
    auto interval_line_count(int n) -> Rank;

    /// Visits every interval line once, ordered by lo, hi, then fixed rank.
    void for_each_interval_line(int n, const std::function<void (const IntervalLine &)> & visit);
    auto interval_lines(int n) -> std::vector<IntervalLine>;

    /// Same order as for_each_interval_line, without materializing lines.
    /// Stops early (and returns false) once `visit` returns false.
    auto for_each_interval_line_ranks(int n,
        const std::function<bool (int lo, int hi, Rank fixed_rank, const std::array<Rank, 3> & members)> & visit) -> bool;

    /// The interval line on lo..hi whose fixed letters spell fixed_rank.
    auto interval_line_from(int n, int lo, int hi, Rank fixed_rank) -> IntervalLine;

    /// Visits every line whose active set is a union of at most m maximal
    /// intervals, ordered by the sorted active set (lexicographically), then
    /// fixed rank. For m = 1 the order matches for_each_interval_line.
    void for_each_m_interval_line(int n, int m, const std::function<void (const Line &)> & visit);
    auto m_interval_lines(int n, int m) -> std::vector<Line>;

    /// Member ranks of every m-interval line, in enumeration order.
    using LineRanks = std::array<Rank, 3>;
    auto m_interval_line_ranks(int n, int m) -> std::vector<LineRanks>;

    /// Renders the active set as "lo..hi" runs joined by ','.
    auto format_active(const Line & line) -> std::string;
    /// Renders fixed coordinates as "pos:letter" joined by ','; empty if none.
    auto format_fixed(const Line & line) -> std::string;
}
