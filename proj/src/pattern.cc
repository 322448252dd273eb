#include <hj/error.hh>
#include <hj/pattern.hh>

using std::string;
using std::string_view;
using std::to_string;
using std::vector;

namespace hj
{
    Pattern::Pattern(vector<Letter> letters) :
        _letters(std::move(letters))
    {
        if (_letters.empty())
            throw InvalidArgument("pattern must be nonempty");
        for (size_t i = 0; i < _letters.size(); ++i) {
            if (_letters[i] < 1 || _letters[i] > 3)
                throw InvalidArgument("pattern letter " + std::to_string(int(_letters[i])) + " is not in {1,2,3}");
            if (i > 0 && _letters[i] == _letters[i - 1])
                throw InvalidArgument("pattern has equal adjacent letters at position " + std::to_string(i));
        }
    }

    auto Pattern::from_string(string_view text) -> Pattern
    {
        return Pattern(Word::from_string(text).letters());
    }

    auto Pattern::to_string() const -> string
    {
        string result;
        for (auto l : _letters)
            result.push_back(static_cast<char>('0' + l));
        return result;
    }

    BreakpointSet::BreakpointSet(int n, vector<int> points) :
        _n(n), _points(std::move(points))
    {
        if (n < 1)
            throw InvalidArgument("breakpoint set: n must be positive");
        for (size_t i = 0; i < _points.size(); ++i) {
            if (_points[i] < 1 || _points[i] > n - 1)
                throw InvalidArgument("breakpoint " + to_string(_points[i]) + " outside [1," + to_string(n - 1) + "]");
            if (i > 0 && _points[i] <= _points[i - 1])
                throw InvalidArgument("breakpoints must be strictly increasing");
        }
    }

    auto contract(const Word & w) -> Pattern
    {
        vector<Letter> letters;
        for (auto l : w.letters())
            if (letters.empty() || letters.back() != l)
                letters.push_back(l);
        return Pattern(std::move(letters));
    }

    auto breakpoints(const Word & w) -> BreakpointSet
    {
        vector<int> points;
        for (int i = 1; i < w.size(); ++i)
            if (w[i - 1] != w[i])
                points.push_back(i);
        return BreakpointSet(w.size(), std::move(points));
    }

    auto realize(const Pattern & pattern, const BreakpointSet & at, int n) -> Word
    {
        if (at.n() != n)
            throw InvalidArgument("breakpoint set built for n=" + to_string(at.n()) + ", realizing at n=" + to_string(n));
        if (at.size() != pattern.size() - 1)
            throw InvalidArgument("pattern of length " + to_string(pattern.size()) + " needs "
                + to_string(pattern.size() - 1) + " breakpoints, got " + to_string(at.size()));
        vector<Letter> letters;
        letters.reserve(n);
        int block = 0;
        for (int i = 1; i <= n; ++i) {
            letters.push_back(pattern[block]);
            if (block < at.size() && at.points()[block] == i)
                ++block;
        }
        return Word(std::move(letters));
    }

    auto realize(const Pattern & pattern, const vector<int> & at, int n) -> Word
    {
        return realize(pattern, BreakpointSet(n, at), n);
    }
}
