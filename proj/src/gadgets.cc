#include <hj/error.hh>
#include <hj/gadgets.hh>

#include <algorithm>
#include <sstream>

using std::array;
using std::function;
using std::optional;
using std::string;
using std::string_view;
using std::to_string;
using std::vector;

namespace hj
{
    namespace
    {
        auto join(const vector<int> & values) -> string
        {
            string result = "{";
            for (size_t i = 0; i < values.size(); ++i)
                result += (i ? "," : "") + to_string(values[i]);
            return result + "}";
        }

        // Visits k-subsets of {0..m-1} in colex order; stops when visit
        // returns false.
        auto for_each_combination(int m, int k, const function<bool (const vector<int> &)> & visit) -> bool
        {
            if (k < 0 || k > m)
                return true;
            vector<int> idx(k);
            for (int j = 0; j < k; ++j)
                idx[j] = j;
            while (true) {
                if (! visit(idx))
                    return false;
                int j = 0;
                while (j < k && idx[j] + 1 == (j + 1 < k ? idx[j + 1] : m))
                    ++j;
                if (j == k)
                    return true;
                ++idx[j];
                for (int i = 0; i < j; ++i)
                    idx[i] = i;
            }
        }

        void check_ground(const vector<int> & ground, int n)
        {
            for (size_t i = 0; i < ground.size(); ++i) {
                if (ground[i] < 1 || ground[i] > n - 1)
                    throw InvalidArgument("element " + to_string(ground[i]) + " of " + join(ground)
                        + " outside [1," + to_string(n - 1) + "]");
                if (i > 0 && ground[i] <= ground[i - 1])
                    throw InvalidArgument("set " + join(ground) + " is not strictly increasing");
            }
        }
    }

    auto gadget_patterns() -> const array<Pattern, 5> &
    {
        static const array<Pattern, 5> patterns {
            Pattern::from_string("132"),
            Pattern::from_string("1232"),
            Pattern::from_string("1312"),
            Pattern::from_string("13232"),
            Pattern::from_string("13132"),
        };
        return patterns;
    }

    Quadruple::Quadruple(int n, array<int, 4> a) :
        _n(n), _a(a)
    {
        if (a[0] < 1 || a[3] > n - 1 || ! (a[0] < a[1] && a[1] < a[2] && a[2] < a[3]))
            throw InvalidArgument("quadruple (" + to_string(a[0]) + "," + to_string(a[1]) + "," + to_string(a[2]) + ","
                + to_string(a[3]) + ") is not strictly increasing within [1," + to_string(n - 1) + "]");
    }

    void for_each_quadruple(int n, const function<bool (const Quadruple &)> & visit)
    {
        for (int a1 = 1; a1 <= n - 1; ++a1)
            for (int a2 = a1 + 1; a2 <= n - 1; ++a2)
                for (int a3 = a2 + 1; a3 <= n - 1; ++a3)
                    for (int a4 = a3 + 1; a4 <= n - 1; ++a4)
                        if (! visit(Quadruple(n, { a1, a2, a3, a4 })))
                            return;
    }

    auto bracket_word(string_view blocks, const Quadruple & q) -> Word
    {
        if (blocks.size() != 5)
            throw InvalidArgument("bracket word needs exactly five blocks, got \"" + string(blocks) + "\"");
        vector<Letter> letters;
        letters.reserve(q.n());
        int block = 0;
        for (int i = 1; i <= q.n(); ++i) {
            while (block < 4 && i > q.a(block + 1))
                ++block;
            char b = blocks[block];
            if (b < '1' || b > '3')
                throw InvalidArgument("bad block letter '" + string(1, b) + "'");
            letters.push_back(static_cast<Letter>(b - '0'));
        }
        return Word(std::move(letters));
    }

    auto gadget_words(const Quadruple & q) -> GadgetWords
    {
        return GadgetWords {
            .w = { bracket_word("13332", q), bracket_word("12232", q), bracket_word("13112", q),
                bracket_word("13232", q), bracket_word("13132", q) },
            .v = { bracket_word("11132", q), bracket_word("11232", q), bracket_word("13122", q) },
            .u1 = bracket_word("13222", q)
        };
    }

    auto gadget_lines(const Quadruple & q) -> array<GadgetLine, 5>
    {
        auto g = gadget_words(q);
        auto & w = g.w;
        auto & v = g.v;

        struct LineShape
        {
            array<Word, 3> members;
            int lo, hi;
        };
        array<LineShape, 5> shapes {
            LineShape { { v[0], w[1], w[0] }, q.a(1) + 1, q.a(3) },
            LineShape { { w[2], g.u1, w[0] }, q.a(2) + 1, q.a(4) },
            LineShape { { v[1], w[1], w[3] }, q.a(1) + 1, q.a(2) },
            LineShape { { w[2], v[2], w[4] }, q.a(3) + 1, q.a(4) },
            LineShape { { w[4], w[3], w[0] }, q.a(2) + 1, q.a(3) },
        };

        vector<GadgetLine> result;
        for (int i = 0; i < 5; ++i) {
            auto & s = shapes[i];
            vector<Letter> fixed;
            for (int pos = 1; pos <= q.n(); ++pos)
                if (pos < s.lo || pos > s.hi)
                    fixed.push_back(s.members[0][pos - 1]);
            IntervalLine line(q.n(), s.lo, s.hi, fixed);
            if (line_points(line.line()) != s.members)
                throw VerificationFailure("gadget line L" + to_string(i + 1) + " does not pass through its words");
            result.push_back(GadgetLine { i + 1, std::move(line), s.members });
        }
        return { result[0], result[1], result[2], result[3], result[4] };
    }

    auto nsets(const ColourVector & d) -> array<ColourSet, 5>
    {
        array<ColourSet, 5> n;
        auto add = [&](int i, std::initializer_list<int> js) {
            for (int j : js)
                n[i - 1].insert(d[j - 1]);
        };
        add(1, { 1, 2 });
        add(2, { 1, 3 });
        add(3, { 2, 4 });
        add(4, { 3, 5 });
        add(5, { 1, 4, 5 });
        return n;
    }

    auto first_singleton(const ColourVector & d) -> optional<int>
    {
        auto n = nsets(d);
        for (int i = 0; i < 5; ++i)
            if (n[i].size() == 1)
                return i + 1;
        return std::nullopt;
    }

    auto case_lemma_check() -> array<CaseRow, 32>
    {
        array<CaseRow, 32> rows;
        for (unsigned v = 0; v < 32; ++v) {
            ColourVector d;
            for (int j = 0; j < 5; ++j)
                d[j] = static_cast<Colour>(v >> (4 - j) & 1u);
            auto i = first_singleton(d);
            if (! i)
                throw VerificationFailure("colour vector " + format_colour_vector(d) + " has no singleton N_i");
            rows[v] = CaseRow { d, *i };
        }
        return rows;
    }

    auto binomial(int n, int k) -> std::uint64_t
    {
        if (k < 0 || n < 0 || k > n)
            return 0;
        k = std::min(k, n - k);
        std::uint64_t result = 1;
        for (int i = 1; i <= k; ++i)
            result = result * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
        return result;
    }

    auto colex_rank(const vector<int> & indices) -> std::uint64_t
    {
        std::uint64_t result = 0;
        for (size_t j = 0; j < indices.size(); ++j)
            result += binomial(indices[j], static_cast<int>(j) + 1);
        return result;
    }

    void for_each_colex_subset(int m, int k, const function<void (const vector<int> &)> & visit)
    {
        for_each_combination(m, k, [&](const vector<int> & idx) {
            visit(idx);
            return true;
        });
    }

    SubsetColouring::SubsetColouring(vector<int> ground, int t, vector<Colour> colours) :
        _ground(std::move(ground)), _t(t), _colours(std::move(colours))
    {
        if (t < 1)
            throw InvalidArgument("subset colouring: t must be positive");
        if (_colours.size() != binomial(static_cast<int>(_ground.size()), t))
            throw InvalidArgument("subset colouring: expected " + to_string(binomial(static_cast<int>(_ground.size()), t))
                + " colours, got " + to_string(_colours.size()));
        for (auto c : _colours)
            if (c > 1)
                throw InvalidArgument("subset colouring: colour must be 0 or 1");
    }

    auto SubsetColouring::at_indices(const vector<int> & indices) const -> Colour
    {
        return _colours[colex_rank(indices)];
    }

    auto induced_coloring(const Coloring & c, int gadget, const vector<int> & ground) -> SubsetColouring
    {
        if (gadget < 1 || gadget > 5)
            throw InvalidArgument("gadget index " + to_string(gadget) + " outside 1..5");
        int n = c.n();
        check_ground(ground, n);
        int t = gadget_lengths[gadget - 1] - 1;
        int m = static_cast<int>(ground.size());
        if (m < t)
            throw InvalidArgument("induced colouring for gadget " + to_string(gadget) + " needs at least "
                + to_string(t) + " elements, got " + to_string(m));

        auto & pattern = gadget_patterns()[gadget - 1];
        vector<Colour> colours;
        colours.reserve(binomial(m, t));
        vector<int> breaks(t);
        for_each_colex_subset(m, t, [&](const vector<int> & idx) {
            for (int j = 0; j < t; ++j)
                breaks[j] = ground[idx[j]];
            colours.push_back(c.at(realize(pattern, breaks, n)));
        });
        return SubsetColouring(ground, t, std::move(colours));
    }

    auto ramsey_refine(const SubsetColouring & colouring, int target) -> optional<Homogeneous>
    {
        int t = colouring.t();
        if (target < t)
            throw InvalidArgument("ramsey_refine: target " + to_string(target) + " below subset size " + to_string(t));
        int m = static_cast<int>(colouring.ground().size());
        if (target > m)
            return std::nullopt;

        vector<int> chosen;
        Colour colour = 0;
        vector<int> subset(t);

        // Every t-subset of `chosen` that contains its last element must
        // match `colour`; the first one reached fixes it.
        auto consistent = [&]() {
            int size = static_cast<int>(chosen.size());
            if (size < t)
                return true;
            subset[t - 1] = chosen.back();
            if (size == t) {
                for (int j = 0; j < t; ++j)
                    subset[j] = chosen[j];
                colour = colouring.at_indices(subset);
                return true;
            }
            return for_each_combination(size - 1, t - 1, [&](const vector<int> & idx) {
                for (int j = 0; j < t - 1; ++j)
                    subset[j] = chosen[idx[j]];
                return colouring.at_indices(subset) == colour;
            });
        };

        function<bool (int)> extend = [&](int start) -> bool {
            if (static_cast<int>(chosen.size()) == target)
                return true;
            for (int x = start; m - x >= target - static_cast<int>(chosen.size()); ++x) {
                chosen.push_back(x);
                if (consistent() && extend(x + 1))
                    return true;
                chosen.pop_back();
            }
            return false;
        };

        if (! extend(0))
            return std::nullopt;
        Homogeneous result { {}, colour };
        for (int x : chosen)
            result.subset.push_back(colouring.ground()[x]);
        return result;
    }

    void verify_chain(const Coloring & c, const HomogeneousChain & chain)
    {
        int n = c.n();
        for (int i = 0; i <= 5; ++i)
            check_ground(chain.sets[i], n);
        if (static_cast<int>(chain.sets[0].size()) < base_set_size)
            throw InvalidArgument("chain: |T0| = " + to_string(chain.sets[0].size()) + " < " + to_string(base_set_size));
        for (int i = 1; i <= 5; ++i)
            if (! std::includes(chain.sets[i].begin(), chain.sets[i].end(), chain.sets[i - 1].begin(), chain.sets[i - 1].end()))
                throw InvalidArgument("chain: T" + to_string(i - 1) + " = " + join(chain.sets[i - 1]) + " is not contained in T"
                    + to_string(i) + " = " + join(chain.sets[i]));
        for (auto d : chain.d)
            if (d > 1)
                throw InvalidArgument("chain: colour must be 0 or 1");

        for (int i = 1; i <= 5; ++i) {
            auto & ground = chain.sets[i - 1];
            auto induced = induced_coloring(c, i, ground);
            auto & colours = induced.colours();
            auto to_values = [&](const vector<int> & idx) {
                vector<int> values;
                for (int x : idx)
                    values.push_back(ground[x]);
                return values;
            };
            vector<int> first, bad;
            optional<Colour> first_colour, bad_colour;
            size_t k = 0;
            for_each_combination(static_cast<int>(ground.size()), induced.t(), [&](const vector<int> & idx) {
                auto colour = colours[k++];
                if (! first_colour) {
                    first_colour = colour;
                    first = to_values(idx);
                }
                if (colour != chain.d[i - 1]) {
                    bad_colour = colour;
                    bad = to_values(idx);
                    return false;
                }
                return true;
            });
            if (bad_colour) {
                if (*first_colour != *bad_colour)
                    throw InvalidArgument("chain: c" + to_string(i) + " is not constant on T" + to_string(i - 1) + ": "
                        + join(first) + " has colour " + to_string(int(*first_colour)) + " but " + join(bad)
                        + " has colour " + to_string(int(*bad_colour)));
                throw InvalidArgument("chain: c" + to_string(i) + " on T" + to_string(i - 1) + " has colour "
                    + to_string(int(*bad_colour)) + " at " + join(bad) + ", expected d" + to_string(i) + " = "
                    + to_string(int(chain.d[i - 1])));
            }
        }
    }

    auto refine_chain(const Coloring & c) -> optional<HomogeneousChain>
    {
        int n = c.n();
        if (n - 1 < base_set_size)
            return std::nullopt;
        HomogeneousChain chain;
        for (int i = 1; i <= n - 1; ++i)
            chain.sets[5].push_back(i);
        for (int i = 5; i >= 1; --i) {
            auto induced = induced_coloring(c, i, chain.sets[i]);
            optional<Homogeneous> found;
            for (int target = static_cast<int>(chain.sets[i].size()); target >= base_set_size && ! found; --target)
                found = ramsey_refine(induced, target);
            if (! found)
                return std::nullopt;
            chain.sets[i - 1] = found->subset;
            chain.d[i - 1] = found->colour;
        }
        return chain;
    }

    auto verify_certificate(const Coloring & c, const LineCertificate & cert) -> bool
    {
        auto & line = cert.line.line();
        if (line.n() != c.n() || cert.colour > 1 || ! line.is_interval())
            return false;
        for (auto & w : cert.witnesses)
            if (w.size() != c.n() || c.at(w) != cert.colour)
                return false;
        auto through = line_through(cert.witnesses[0], cert.witnesses[1], cert.witnesses[2]);
        return through && *through == line;
    }

    auto extract_line(const Coloring & c, const HomogeneousChain & chain) -> Extraction
    {
        verify_chain(c, chain);
        auto & t0 = chain.sets[0];
        Quadruple q(c.n(), { t0[0], t0[1], t0[2], t0[3] });
        auto i = first_singleton(chain.d);
        if (! i)
            throw VerificationFailure("colour vector " + format_colour_vector(chain.d) + " has no singleton N_i");
        auto colour = nsets(chain.d)[*i - 1].contains(0) ? Colour { 0 } : Colour { 1 };
        auto lines = gadget_lines(q);
        auto & chosen = lines[*i - 1];
        LineCertificate cert { chosen.line, colour, chosen.members };
        if (! verify_certificate(c, cert))
            throw VerificationFailure("extracted line L" + to_string(*i) + " is not monochromatic despite a verified chain");
        return Extraction { cert, q, *i };
    }

    auto method_name(Method m) -> string
    {
        switch (m) {
            case Method::direct: return "direct";
            case Method::gadget: return "gadget";
            case Method::pipeline: return "pipeline";
        }
        throw InvalidArgument("unknown method");
    }

    auto parse_method(string_view name) -> Method
    {
        if (name == "direct")
            return Method::direct;
        if (name == "gadget")
            return Method::gadget;
        if (name == "pipeline")
            return Method::pipeline;
        throw InvalidArgument("unknown method \"" + string(name) + "\"");
    }

    auto find_interval_line(const Coloring & c, Method method) -> FindResult
    {
        FindResult result { method, std::nullopt, std::nullopt, 0, std::nullopt };
        int n = c.n();

        switch (method) {
            case Method::direct:
                for_each_interval_line_ranks(n, [&](int lo, int hi, Rank fixed, const array<Rank, 3> & m) {
                    auto colour = c.at(m[0]);
                    if (c.at(m[1]) != colour || c.at(m[2]) != colour)
                        return true;
                    auto line = interval_line_from(n, lo, hi, fixed);
                    result.certificate = LineCertificate { line, colour, line_points(line.line()) };
                    return false;
                });
                break;

            case Method::gadget:
                for_each_quadruple(n, [&](const Quadruple & q) {
                    for (auto & gl : gadget_lines(q))
                        if (auto colour = is_monochromatic(c, gl.line.line())) {
                            result.certificate = LineCertificate { gl.line, *colour, gl.members };
                            result.quadruple = q;
                            result.gadget = gl.index;
                            return false;
                        }
                    return true;
                });
                break;

            case Method::pipeline:
                if (auto chain = refine_chain(c)) {
                    auto extraction = extract_line(c, *chain);
                    result.certificate = extraction.certificate;
                    result.quadruple = extraction.quadruple;
                    result.gadget = extraction.gadget;
                    result.chain = std::move(chain);
                }
                break;
        }

        if (result.certificate && ! verify_certificate(c, *result.certificate))
            throw VerificationFailure(method_name(method) + " search produced a certificate that fails re-verification");
        return result;
    }

    auto pattern_coloring(int n, const ColourVector & d) -> Coloring
    {
        Coloring c(n);
        auto & patterns = gadget_patterns();
        for (Rank r = 0; r < c.size(); ++r) {
            auto p = contract(unrank(r, n));
            Colour colour = d[0];
            for (int i = 0; i < 5; ++i)
                if (p == patterns[i])
                    colour = d[i];
            c.set(r, colour);
        }
        return c;
    }

    auto parse_colour_vector(string_view text) -> ColourVector
    {
        if (text.size() != 5)
            throw InvalidArgument("colour vector must have five digits, got \"" + string(text) + "\"");
        ColourVector d;
        for (int j = 0; j < 5; ++j) {
            if (text[j] != '0' && text[j] != '1')
                throw InvalidArgument("colour vector digit must be 0 or 1, got \"" + string(text) + "\"");
            d[j] = static_cast<Colour>(text[j] - '0');
        }
        return d;
    }

    auto format_colour_vector(const ColourVector & d) -> string
    {
        string result;
        for (auto x : d)
            result.push_back(static_cast<char>('0' + x));
        return result;
    }

    auto write_certificate(const CertificateDocument & doc) -> string
    {
        if (auto none = std::get_if<NoLine>(&doc))
            return "NONE method=" + method_name(none->method) + "\n";
        auto & cert = std::get<LineCertificate>(doc);
        auto & line = cert.line.line();
        string result = "MONO-LINE n=" + to_string(line.n()) + " color=" + to_string(int(cert.colour))
            + " active=" + to_string(cert.line.lo()) + ".." + to_string(cert.line.hi()) + " fixed=" + format_fixed(line) + "\n";
        for (int i = 0; i < 3; ++i)
            result += "W" + to_string(i + 1) + " " + cert.witnesses[i].to_string() + "\n";
        return result;
    }

    namespace
    {
        auto split(string_view text, char sep) -> vector<string_view>
        {
            vector<string_view> parts;
            size_t start = 0;
            while (true) {
                auto pos = text.find(sep, start);
                parts.push_back(text.substr(start, pos == string_view::npos ? string_view::npos : pos - start));
                if (pos == string_view::npos)
                    return parts;
                start = pos + 1;
            }
        }

        auto parse_int(string_view text, const string & what) -> int
        {
            if (text.empty() || text.size() > 9 || ! std::all_of(text.begin(), text.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
                throw FormatError("certificate: bad " + what + " \"" + string(text) + "\"");
            return std::stoi(string(text));
        }

        auto expect_key(string_view token, string_view key) -> string_view
        {
            if (token.substr(0, key.size()) != key)
                throw FormatError("certificate: expected \"" + string(key) + "\", got \"" + string(token) + "\"");
            return token.substr(key.size());
        }
    }

    auto read_certificate(string_view text) -> CertificateDocument
    {
        if (! text.empty() && text.back() == '\n')
            text.remove_suffix(1);
        auto lines = split(text, '\n');

        if (lines[0].substr(0, 5) == "NONE ") {
            if (lines.size() != 1)
                throw FormatError("certificate: trailing data after NONE line");
            try {
                return NoLine { parse_method(expect_key(lines[0].substr(5), "method=")) };
            }
            catch (const InvalidArgument & e) {
                throw FormatError(string("certificate: ") + e.what());
            }
        }

        auto fields = split(lines[0], ' ');
        if (fields.size() != 5 || fields[0] != "MONO-LINE")
            throw FormatError("certificate: first line must be MONO-LINE with four fields or NONE");
        if (lines.size() != 4)
            throw FormatError("certificate: expected three witness lines");

        int n = parse_int(expect_key(fields[1], "n="), "n");
        int colour = parse_int(expect_key(fields[2], "color="), "colour");
        auto range = expect_key(fields[3], "active=");
        auto dots = range.find("..");
        if (dots == string_view::npos)
            throw FormatError("certificate: active must be lo..hi");
        int lo = parse_int(range.substr(0, dots), "lo"), hi = parse_int(range.substr(dots + 2), "hi");
        auto fixed_text = expect_key(fields[4], "fixed=");

        if (n < 1 || n > max_word_length || colour > 1 || lo < 1 || hi < lo || hi > n)
            throw FormatError("certificate: header values out of range");

        vector<Letter> fixed;
        if (! fixed_text.empty()) {
            int expected = 1;
            for (auto entry : split(fixed_text, ',')) {
                auto colon = entry.find(':');
                if (colon == string_view::npos)
                    throw FormatError("certificate: fixed entry must be pos:letter");
                if (expected == lo)
                    expected = hi + 1;
                int pos = parse_int(entry.substr(0, colon), "position");
                int letter = parse_int(entry.substr(colon + 1), "letter");
                if (pos != expected || letter < 1 || letter > 3)
                    throw FormatError("certificate: fixed entry \"" + string(entry) + "\" out of order or out of range");
                fixed.push_back(static_cast<Letter>(letter));
                ++expected;
            }
        }
        if (static_cast<int>(fixed.size()) != n - (hi - lo + 1))
            throw FormatError("certificate: fixed part does not cover the complement of the active interval");

        IntervalLine line(n, lo, hi, fixed);
        array<Word, 3> witnesses;
        for (int i = 0; i < 3; ++i) {
            auto body = expect_key(lines[i + 1], "W" + to_string(i + 1) + " ");
            try {
                witnesses[i] = Word::from_string(body);
            }
            catch (const InvalidArgument & e) {
                throw FormatError(string("certificate: ") + e.what());
            }
        }
        if (witnesses != line_points(line.line()))
            throw FormatError("certificate: witnesses are not the members of the stated line");
        return LineCertificate { line, static_cast<Colour>(colour), witnesses };
    }
}
