#pragma once

#include <hj/word.hh>

#include <string>
#include <string_view>
#include <vector>

namespace hj
{
    /// A word with no two adjacent letters equal: the shape left after every
    /// constant run of a word is collapsed to a single letter.
    class Pattern
    {
    public:
        explicit Pattern(std::vector<Letter> letters);
        static auto from_string(std::string_view text) -> Pattern;

        auto size() const noexcept -> int { return static_cast<int>(_letters.size()); }
        auto operator[](int index) const -> Letter { return _letters[index]; }
        auto letters() const noexcept -> const std::vector<Letter> & { return _letters; }
        auto to_string() const -> std::string;

        auto operator==(const Pattern &) const -> bool = default;
        auto operator<=>(const Pattern &) const = default;

    private:
        std::vector<Letter> _letters;
    };

    /// A strictly increasing subset of {1, ..., n - 1}.
    class BreakpointSet
    {
    public:
        BreakpointSet(int n, std::vector<int> points);

        auto n() const noexcept -> int { return _n; }
        auto points() const noexcept -> const std::vector<int> & { return _points; }
        auto size() const noexcept -> int { return static_cast<int>(_points.size()); }

        auto operator==(const BreakpointSet &) const -> bool = default;

    private:
        int _n;
        std::vector<int> _points;
    };

    auto contract(const Word & w) -> Pattern;

    /// { i in [n - 1] : w_i != w_{i+1} }.
    auto breakpoints(const Word & w) -> BreakpointSet;

    /// The unique word of length n with contraction `pattern` and breakpoint
    /// set `at`. Requires |at| = |pattern| - 1 and at.n() == n.
    auto realize(const Pattern & pattern, const BreakpointSet & at, int n) -> Word;
    auto realize(const Pattern & pattern, const std::vector<int> & at, int n) -> Word;
}
