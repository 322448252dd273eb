#include <hj/error.hh>
#include <hj/line.hh>

using std::array;
using std::function;
using std::optional;
using std::pair;
using std::string;
using std::to_string;
using std::vector;

namespace hj
{
    Line::Line(vector<Letter> cells) :
        _cells(std::move(cells))
    {
        if (_cells.empty() || n() > max_word_length)
            throw InvalidArgument("line length " + to_string(n()) + " out of range");
        bool any_active = false;
        for (auto c : _cells) {
            if (c > 3)
                throw InvalidArgument("fixed letter " + to_string(int(c)) + " is not in {1,2,3}");
            any_active = any_active || c == 0;
        }
        if (! any_active)
            throw InvalidArgument("line has an empty active set");
    }

    auto Line::from_parts(int n, const vector<int> & active, const vector<Letter> & fixed) -> Line
    {
        if (n < 1 || n > max_word_length)
            throw InvalidArgument("line length " + to_string(n) + " out of range");
        vector<bool> is_active(n, false);
        for (int a : active) {
            if (a < 1 || a > n)
                throw InvalidArgument("active coordinate " + to_string(a) + " outside [1," + to_string(n) + "]");
            if (is_active[a - 1])
                throw InvalidArgument("active coordinate " + to_string(a) + " repeated");
            is_active[a - 1] = true;
        }
        if (fixed.size() + active.size() != static_cast<size_t>(n))
            throw InvalidArgument("fixed part has " + to_string(fixed.size()) + " letters, expected "
                + to_string(n - static_cast<int>(active.size())));
        vector<Letter> cells(n, 0);
        size_t next = 0;
        for (int i = 0; i < n; ++i)
            if (! is_active[i]) {
                if (fixed[next] < 1 || fixed[next] > 3)
                    throw InvalidArgument("fixed letter " + to_string(int(fixed[next])) + " is not in {1,2,3}");
                cells[i] = fixed[next++];
            }
        return Line(std::move(cells));
    }

    auto Line::active() const -> vector<int>
    {
        vector<int> result;
        for (int i = 0; i < n(); ++i)
            if (_cells[i] == 0)
                result.push_back(i + 1);
        return result;
    }

    auto Line::intervals() const -> vector<pair<int, int>>
    {
        vector<pair<int, int>> result;
        for (int i = 0; i < n(); ++i) {
            if (_cells[i] != 0)
                continue;
            if (! result.empty() && result.back().second == i)
                result.back().second = i + 1;
            else
                result.emplace_back(i + 1, i + 1);
        }
        return result;
    }

    auto Line::fixed_rank() const -> Rank
    {
        Rank result = 0;
        for (auto c : _cells)
            if (c != 0)
                result = result * 3 + (c - 1);
        return result;
    }

    auto Line::word_at(Letter value) const -> Word
    {
        if (value < 1 || value > 3)
            throw InvalidArgument("active value must be in {1,2,3}");
        auto letters = _cells;
        for (auto & c : letters)
            if (c == 0)
                c = value;
        return Word(std::move(letters));
    }

    auto Line::rank_at(Letter value) const -> Rank
    {
        Rank result = 0;
        for (auto c : _cells)
            result = result * 3 + ((c == 0 ? value : c) - 1);
        return result;
    }

    IntervalLine::IntervalLine(Line line) :
        _line(std::move(line))
    {
        auto runs = _line.intervals();
        if (runs.size() != 1)
            throw InvalidArgument("active set is not an interval");
        _lo = runs.front().first;
        _hi = runs.front().second;
    }

    IntervalLine::IntervalLine(int n, int lo, int hi, const vector<Letter> & fixed) :
        _line(Line(vector<Letter>(1, 0))), _lo(lo), _hi(hi)
    {
        if (lo < 1 || hi < lo || hi > n)
            throw InvalidArgument("interval " + to_string(lo) + ".." + to_string(hi) + " invalid for n=" + to_string(n));
        vector<int> active;
        for (int i = lo; i <= hi; ++i)
            active.push_back(i);
        _line = Line::from_parts(n, active, fixed);
    }

    auto line_points(const Line & line) -> array<Word, 3>
    {
        return { line.word_at(1), line.word_at(2), line.word_at(3) };
    }

    auto line_ranks(const Line & line) -> array<Rank, 3>
    {
        return { line.rank_at(1), line.rank_at(2), line.rank_at(3) };
    }

    auto line_through(const Word & a, const Word & b, const Word & c) -> optional<Line>
    {
        if (a.size() != b.size() || a.size() != c.size())
            return std::nullopt;
        vector<Letter> cells(a.size());
        bool any_active = false;
        for (int i = 0; i < a.size(); ++i) {
            if (a[i] == b[i] && b[i] == c[i])
                cells[i] = a[i];
            else if (a[i] == 1 && b[i] == 2 && c[i] == 3) {
                cells[i] = 0;
                any_active = true;
            }
            else
                return std::nullopt;
        }
        if (! any_active)
            return std::nullopt;
        return Line(std::move(cells));
    }

    auto interval_line_count(int n) -> Rank
    {
        Rank total = 0;
        for (int len = 1; len <= n; ++len)
            total += static_cast<Rank>(n - len + 1) * pow3(n - len);
        return total;
    }

    namespace
    {
        // Fills the non-active cells of `cells` with the base-3 digits of
        // fixed_rank, most significant first.
        void fill_fixed(vector<Letter> & cells, const vector<bool> & active, Rank fixed_rank)
        {
            for (int i = static_cast<int>(cells.size()) - 1; i >= 0; --i) {
                if (active[i])
                    cells[i] = 0;
                else {
                    cells[i] = static_cast<Letter>(fixed_rank % 3 + 1);
                    fixed_rank /= 3;
                }
            }
        }

        void visit_active_set(int n, const vector<bool> & active, int active_count,
            const function<void (const Line &)> & visit)
        {
            vector<Letter> cells(n);
            auto total = pow3(n - active_count);
            for (Rank f = 0; f < total; ++f) {
                fill_fixed(cells, active, f);
                visit(Line(cells));
            }
        }
    }

    void for_each_interval_line(int n, const function<void (const IntervalLine &)> & visit)
    {
        if (n < 1 || n > max_word_length)
            throw InvalidArgument("interval lines: n=" + to_string(n) + " out of range");
        for (int lo = 1; lo <= n; ++lo)
            for (int hi = lo; hi <= n; ++hi) {
                vector<bool> active(n, false);
                for (int i = lo; i <= hi; ++i)
                    active[i - 1] = true;
                visit_active_set(n, active, hi - lo + 1, [&](const Line & line) { visit(IntervalLine(line)); });
            }
    }

    auto interval_lines(int n) -> vector<IntervalLine>
    {
        vector<IntervalLine> result;
        for_each_interval_line(n, [&](const IntervalLine & l) { result.push_back(l); });
        return result;
    }

    auto for_each_interval_line_ranks(int n,
        const function<bool (int, int, Rank, const array<Rank, 3> &)> & visit) -> bool
    {
        if (n < 1 || n > max_word_length)
            throw InvalidArgument("interval lines: n=" + to_string(n) + " out of range");
        vector<Rank> place(n + 1);
        for (int i = 1; i <= n; ++i)
            place[i] = pow3(n - i);
        for (int lo = 1; lo <= n; ++lo)
            for (int hi = lo; hi <= n; ++hi) {
                Rank step = 0;
                for (int i = lo; i <= hi; ++i)
                    step += place[i];
                // Fixed coordinates are 1..lo-1 then hi+1..n; the suffix has
                // n - hi digits.
                auto suffix_size = pow3(n - hi);
                auto total = pow3(n - (hi - lo + 1));
                for (Rank f = 0; f < total; ++f) {
                    Rank prefix = f / suffix_size, suffix = f % suffix_size;
                    Rank base = prefix * pow3(n - lo + 1) + suffix;
                    array<Rank, 3> members { base, base + step, base + 2 * step };
                    if (! visit(lo, hi, f, members))
                        return false;
                }
            }
        return true;
    }

    auto interval_line_from(int n, int lo, int hi, Rank fixed_rank) -> IntervalLine
    {
        int fixed_count = n - (hi - lo + 1);
        if (fixed_count < 0 || (fixed_count > 0 && fixed_rank >= pow3(fixed_count)) || (fixed_count == 0 && fixed_rank != 0))
            throw InvalidArgument("fixed rank " + to_string(fixed_rank) + " out of range");
        vector<Letter> fixed(fixed_count);
        for (int i = fixed_count - 1; i >= 0; --i) {
            fixed[i] = static_cast<Letter>(fixed_rank % 3 + 1);
            fixed_rank /= 3;
        }
        return IntervalLine(n, lo, hi, fixed);
    }

    void for_each_m_interval_line(int n, int m, const function<void (const Line &)> & visit)
    {
        if (n < 1 || n > max_word_length)
            throw InvalidArgument("m-interval lines: n=" + to_string(n) + " out of range");
        if (m < 1)
            throw InvalidArgument("m-interval lines: m must be positive");

        vector<bool> active(n, false);
        // Pre-order DFS over sorted active sets yields lexicographic order.
        function<void (int, int, int)> extend = [&](int last, int size, int runs) {
            for (int next = last + 1; next <= n; ++next) {
                int new_runs = runs + ((size > 0 && next == last + 1) ? 0 : 1);
                if (new_runs > m)
                    continue;
                active[next - 1] = true;
                visit_active_set(n, active, size + 1, visit);
                extend(next, size + 1, new_runs);
                active[next - 1] = false;
            }
        };
        extend(0, 0, 0);
    }

    auto m_interval_lines(int n, int m) -> vector<Line>
    {
        vector<Line> result;
        for_each_m_interval_line(n, m, [&](const Line & l) { result.push_back(l); });
        return result;
    }

    auto m_interval_line_ranks(int n, int m) -> vector<LineRanks>
    {
        vector<LineRanks> result;
        for_each_m_interval_line(n, m, [&](const Line & l) { result.push_back(line_ranks(l)); });
        return result;
    }

    auto format_active(const Line & line) -> string
    {
        string result;
        for (auto & [lo, hi] : line.intervals()) {
            if (! result.empty())
                result += ',';
            result += to_string(lo) + ".." + to_string(hi);
        }
        return result;
    }

    auto format_fixed(const Line & line) -> string
    {
        string result;
        for (int i = 1; i <= line.n(); ++i)
            if (! line.is_active(i)) {
                if (! result.empty())
                    result += ',';
                result += to_string(i) + ":" + to_string(int(line.fixed_letter(i)));
            }
        return result;
    }
}
