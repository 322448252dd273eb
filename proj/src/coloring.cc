#include <hj/coloring.hh>
#include <hj/error.hh>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iterator>
#include <sstream>

using std::optional;
using std::string;
using std::string_view;
using std::to_string;
using std::vector;

namespace hj
{
    Coloring::Coloring(int n, Colour fill) :
        _n(n)
    {
        if (n < 1 || n > max_coloring_length)
            throw InvalidArgument("colouring length n=" + to_string(n) + " outside [1," + to_string(max_coloring_length) + "]");
        if (fill > 1)
            throw InvalidArgument("colour must be 0 or 1");
        _size = pow3(n);
        _words.assign((_size + 63) / 64, fill ? ~std::uint64_t{0} : 0);
        if (fill && _size % 64)
            _words.back() &= (std::uint64_t{1} << (_size % 64)) - 1;
    }

    auto Coloring::from_bits(int n, string_view bits) -> Coloring
    {
        Coloring result(n);
        if (bits.size() != result.size())
            throw FormatError("expected " + to_string(result.size()) + " colour characters, got " + to_string(bits.size()));
        for (Rank i = 0; i < result.size(); ++i) {
            if (bits[i] != '0' && bits[i] != '1')
                throw FormatError("bad colour character at position " + to_string(i));
            if (bits[i] == '1')
                result.flip(i);
        }
        return result;
    }

    auto Coloring::at(const Word & word) const -> Colour
    {
        if (word.size() != _n)
            throw InvalidArgument("word length " + to_string(word.size()) + " does not match colouring n=" + to_string(_n));
        return at(rank(word));
    }

    void Coloring::set(Rank index, Colour colour)
    {
        if (colour > 1)
            throw InvalidArgument("colour must be 0 or 1");
        if (at(index) != colour)
            flip(index);
    }

    auto Coloring::to_bits() const -> string
    {
        string result(_size, '0');
        for (Rank i = 0; i < _size; ++i)
            if (at(i))
                result[i] = '1';
        return result;
    }

    auto Coloring::operator<(const Coloring & other) const -> bool
    {
        if (_n != other._n)
            return _n < other._n;
        for (size_t w = 0; w < _words.size(); ++w)
            if (_words[w] != other._words[w]) {
                // Lowest differing bit is the first differing position.
                auto diff = _words[w] ^ other._words[w];
                auto bit = diff & (~diff + 1);
                return (_words[w] & bit) == 0;
            }
        return false;
    }

    auto is_monochromatic(const Coloring & c, const Line & line) -> optional<Colour>
    {
        if (c.n() != line.n())
            throw InvalidArgument("line length " + to_string(line.n()) + " does not match colouring n=" + to_string(c.n()));
        auto a = c.at(line.rank_at(1)), b = c.at(line.rank_at(2)), d = c.at(line.rank_at(3));
        if (a == b && b == d)
            return a;
        return std::nullopt;
    }

    auto write_coloring(const Coloring & c) -> string
    {
        return "HJC 3 " + to_string(c.n()) + "\n" + c.to_bits() + "\n";
    }

    auto read_coloring(string_view text) -> Coloring
    {
        auto newline = text.find('\n');
        if (newline == string_view::npos)
            throw FormatError("colouring file: missing header line");
        auto header = text.substr(0, newline);
        constexpr string_view prefix = "HJC 3 ";
        if (header.substr(0, prefix.size()) != prefix)
            throw FormatError("colouring file: header must start with \"HJC 3 \"");
        auto digits = header.substr(prefix.size());
        int n = 0;
        auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
        if (ec != std::errc{} || end != digits.data() + digits.size() || digits.empty() || digits[0] == '0')
            throw FormatError("colouring file: bad length in header \"" + string(header) + "\"");
        if (n < 1 || n > max_coloring_length)
            throw FormatError("colouring file: n=" + to_string(n) + " unsupported");

        auto body = text.substr(newline + 1);
        if (! body.empty() && body.back() == '\n')
            body.remove_suffix(1);
        return Coloring::from_bits(n, body);
    }

    void save_coloring(const Coloring & c, const string & path)
    {
        std::ofstream out(path, std::ios::binary);
        if (! out)
            throw Error("cannot open " + path + " for writing");
        out << write_coloring(c);
        if (! out)
            throw Error("failed writing " + path);
    }

    auto load_coloring(const string & path) -> Coloring
    {
        std::ifstream in(path, std::ios::binary);
        if (! in)
            throw Error("cannot open " + path);
        string text { std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>() };
        return read_coloring(text);
    }

    auto apply(const Symmetry & g, const Word & w) -> Word
    {
        auto letters = w.letters();
        if (g.reverse)
            std::reverse(letters.begin(), letters.end());
        for (auto & l : letters)
            l = g.letter_map[l - 1];
        return Word(std::move(letters));
    }

    auto rank_permutation(const Symmetry & g, int n) -> vector<Rank>
    {
        auto total = pow3(n);
        vector<Rank> result(total);
        vector<int> digits(n);
        for (Rank r = 0; r < total; ++r) {
            auto x = r;
            for (int i = n - 1; i >= 0; --i) {
                digits[i] = static_cast<int>(x % 3);
                x /= 3;
            }
            Rank image = 0;
            for (int i = 0; i < n; ++i) {
                int d = digits[g.reverse ? n - 1 - i : i];
                image = image * 3 + (g.letter_map[d] - 1);
            }
            result[r] = image;
        }
        return result;
    }

    auto apply_symmetry(const Coloring & c, const Symmetry & g) -> Coloring
    {
        auto perm = rank_permutation(g, c.n());
        Coloring result(c.n());
        for (Rank r = 0; r < c.size(); ++r)
            result.set(perm[r], c.at(r) ^ (g.swap_colours ? 1 : 0));
        return result;
    }

    auto all_symmetries() -> vector<Symmetry>
    {
        vector<Symmetry> result;
        std::array<Letter, 3> letters { 1, 2, 3 };
        for (bool swap : { false, true })
            for (bool reverse : { false, true }) {
                std::array<Letter, 3> map = letters;
                do
                    result.push_back(Symmetry { map, reverse, swap });
                while (std::next_permutation(map.begin(), map.end()));
            }
        return result;
    }
}
