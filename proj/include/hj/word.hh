#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hj
{
    using Rank = std::uint64_t;
    using Letter = std::uint8_t;

    /// Largest word length whose ranks fit in a Rank.
    inline constexpr int max_word_length = 40;

    /// 3^n as a Rank; throws InvalidArgument if n is negative or too large.
    auto pow3(int n) -> Rank;

    /// A point of [3]^n. Letters are 1, 2 or 3; indexing is 0-based but
    /// coordinates elsewhere in the library (lines, breakpoints) are 1-based,
    /// so coordinate i is word[i - 1].
    class Word
    {
    public:
        Word() = default;
        explicit Word(std::vector<Letter> letters);

        /// Parses a string of '1', '2', '3' characters.
        static auto from_string(std::string_view text) -> Word;

        auto size() const noexcept -> int { return static_cast<int>(_letters.size()); }
        auto operator[](int index) const -> Letter { return _letters[index]; }
        auto letters() const noexcept -> const std::vector<Letter> & { return _letters; }

        auto to_string() const -> std::string;

        auto operator==(const Word &) const -> bool = default;
        auto operator<=>(const Word &) const = default;

    private:
        std::vector<Letter> _letters;
    };

    /// Coordinate 1 is the most significant base-3 digit; letter l is digit l - 1.
    auto rank(const Word & word) -> Rank;

    /// Inverse of rank; throws InvalidArgument unless index < 3^n.
    auto unrank(Rank index, int n) -> Word;
}
