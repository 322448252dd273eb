#include <hj/error.hh>
#include <hj/word.hh>

using std::string;
using std::string_view;
using std::to_string;
using std::vector;

namespace hj
{
    auto pow3(int n) -> Rank
    {
        if (n < 0 || n > max_word_length)
            throw InvalidArgument("pow3: exponent " + to_string(n) + " out of range");
        Rank result = 1;
        for (int i = 0; i < n; ++i)
            result *= 3;
        return result;
    }

    Word::Word(vector<Letter> letters) :
        _letters(std::move(letters))
    {
        if (_letters.empty())
            throw InvalidArgument("word must be nonempty");
        if (size() > max_word_length)
            throw InvalidArgument("word length " + std::to_string(size()) + " exceeds " + std::to_string(max_word_length));
        for (auto l : _letters)
            if (l < 1 || l > 3)
                throw InvalidArgument("letter " + std::to_string(int(l)) + " is not in {1,2,3}");
    }

    auto Word::from_string(string_view text) -> Word
    {
        vector<Letter> letters;
        letters.reserve(text.size());
        for (char ch : text) {
            if (ch < '1' || ch > '3')
                throw InvalidArgument("bad letter '" + string(1, ch) + "' in word \"" + string(text) + "\"");
            letters.push_back(static_cast<Letter>(ch - '0'));
        }
        return Word(std::move(letters));
    }

    auto Word::to_string() const -> string
    {
        string result;
        result.reserve(_letters.size());
        for (auto l : _letters)
            result.push_back(static_cast<char>('0' + l));
        return result;
    }

    auto rank(const Word & word) -> Rank
    {
        Rank result = 0;
        for (auto l : word.letters())
            result = result * 3 + (l - 1);
        return result;
    }

    auto unrank(Rank index, int n) -> Word
    {
        if (n < 1)
            throw InvalidArgument("unrank: length must be positive");
        if (index >= pow3(n))
            throw InvalidArgument("unrank: index " + to_string(index) + " out of range for n=" + to_string(n));
        vector<Letter> letters(n);
        for (int i = n - 1; i >= 0; --i) {
            letters[i] = static_cast<Letter>(index % 3 + 1);
            index /= 3;
        }
        return Word(std::move(letters));
    }
}
