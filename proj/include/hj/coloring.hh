#pragma once

#include <hj/line.hh>
#include <hj/word.hh>

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hj
{
    using Colour = std::uint8_t;

    /// A 2-colouring of [3]^n, packed one bit per word and indexed by rank.
    class Coloring
    {
    public:
        /// Every word gets `fill`. n is capped at 20 (3^20 bits is ~436 MB).
        explicit Coloring(int n, Colour fill = 0);
        /// From a string of '0'/'1' of length 3^n.
        static auto from_bits(int n, std::string_view bits) -> Coloring;

        auto n() const noexcept -> int { return _n; }
        auto size() const noexcept -> Rank { return _size; }

        auto at(Rank index) const -> Colour { return (_words[index >> 6] >> (index & 63)) & 1u; }
        auto at(const Word & word) const -> Colour;
        void set(Rank index, Colour colour);
        void flip(Rank index) { _words[index >> 6] ^= std::uint64_t{1} << (index & 63); }

        auto to_bits() const -> std::string;

        auto operator==(const Coloring &) const -> bool = default;
        /// Lexicographic in rank order, position 0 first.
        auto operator<(const Coloring & other) const -> bool;

    private:
        int _n;
        Rank _size;
        std::vector<std::uint64_t> _words;
    };

    inline constexpr int max_coloring_length = 20;

    /// Common colour of the line's three members, if they share one.
    /// Throws InvalidArgument if the lengths differ.
    auto is_monochromatic(const Coloring & c, const Line & line) -> std::optional<Colour>;

    /// "HJC 3 <n>\n" followed by 3^n characters '0'/'1' and an optional "\n".
    auto write_coloring(const Coloring & c) -> std::string;
    auto read_coloring(std::string_view text) -> Coloring;

    void save_coloring(const Coloring & c, const std::string & path);
    auto load_coloring(const std::string & path) -> Coloring;

    /// An element of the group generated by global letter permutations,
    /// coordinate reversal and colour swap. Acts on words by reversing (if
    /// set) and then relabelling every letter l as letter_map[l - 1].
    struct Symmetry
    {
        std::array<Letter, 3> letter_map { 1, 2, 3 };
        bool reverse = false;
        bool swap_colours = false;

        auto operator==(const Symmetry &) const -> bool = default;
    };

    auto apply(const Symmetry & g, const Word & w) -> Word;

    /// The colouring c' with c'(g w) = c(w), complemented if g swaps colours.
    auto apply_symmetry(const Coloring & c, const Symmetry & g) -> Coloring;

    /// All 24 group elements; the identity comes first.
    auto all_symmetries() -> std::vector<Symmetry>;

    /// rank(g w) for every rank of w, for the word action of g.
    auto rank_permutation(const Symmetry & g, int n) -> std::vector<Rank>;
}
