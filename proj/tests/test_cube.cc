#include "oracle.hh"

#include <hj/coloring.hh>
#include <hj/error.hh>
#include <hj/line.hh>
#include <hj/search.hh>
#include <hj/word.hh>

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

using namespace hj;

namespace
{
    auto sorted(std::array<Rank, 3> r) -> oracle::Triple
    {
        std::sort(r.begin(), r.end());
        return { r[0], r[1], r[2] };
    }
}

TEST_SUITE("cube")
{
    TEST_CASE("rank and unrank agree with digit arithmetic")
    {
        CHECK(rank(Word::from_string("111")) == 0);
        CHECK(rank(Word::from_string("333")) == 26);
        CHECK(rank(Word::from_string("213")) == 9 + 0 + 2);
        for (int n = 1; n <= 5; ++n)
            for (Rank r = 0; r < pow3(n); ++r) {
                auto w = unrank(r, n);
                REQUIRE(rank(w) == r);
                auto d = oracle::digits_of(r, n);
                for (int i = 0; i < n; ++i)
                    REQUIRE(w[i] == d[i]);
            }
        CHECK_THROWS_AS(unrank(27, 3), InvalidArgument);
        CHECK_THROWS_AS(Word::from_string("1204"), InvalidArgument);
        CHECK_THROWS_AS(Word::from_string(""), InvalidArgument);
    }

    TEST_CASE("interval line counts match closed form and the triple scan")
    {
        const Rank expected[] = { 1, 7, 34, 142 };
        for (int n = 1; n <= 4; ++n) {
            Rank closed = 0;
            for (int len = 1; len <= n; ++len)
                closed += static_cast<Rank>(n - len + 1) * pow3(n - len);
            CHECK(interval_line_count(n) == closed);
            CHECK(interval_line_count(n) == expected[n - 1]);
            CHECK(interval_lines(n).size() == closed);
            CHECK(m_interval_lines(n, 1).size() == closed);
            CHECK(m_interval_line_ranks(n, 1).size() == closed);
        }
        for (int n = 1; n <= 3; ++n) {
            auto scanned = oracle::scan_lines(n);
            std::set<oracle::Triple> from_lib;
            for (auto & l : interval_lines(n))
                from_lib.insert(sorted(line_ranks(l.line())));
            CHECK(from_lib.size() == scanned.size());
            CHECK(std::equal(from_lib.begin(), from_lib.end(), scanned.begin(), scanned.end()));
        }
    }

    TEST_CASE("enumerators agree on order")
    {
        for (int n = 1; n <= 5; ++n) {
            auto lines = interval_lines(n);
            auto m1 = m_interval_lines(n, 1);
            auto ranks = m_interval_line_ranks(n, 1);
            size_t i = 0;
            for_each_interval_line_ranks(n, [&](int lo, int hi, Rank fixed_rank, const std::array<Rank, 3> & members) {
                REQUIRE(i < lines.size());
                CHECK(lines[i].lo() == lo);
                CHECK(lines[i].hi() == hi);
                CHECK(lines[i].line().fixed_rank() == fixed_rank);
                CHECK(line_ranks(lines[i].line()) == members);
                CHECK(m1[i] == lines[i].line());
                CHECK(ranks[i] == members);
                CHECK(interval_line_from(n, lo, hi, fixed_rank) == lines[i]);
                ++i;
                return true;
            });
            CHECK(i == lines.size());
        }
    }

    TEST_CASE("every active set allowed when m = n")
    {
        for (int n = 1; n <= 4; ++n) {
            auto all = m_interval_lines(n, n);
            CHECK(all.size() == static_cast<size_t>(std::pow(4, n) - std::pow(3, n)));
            std::set<std::vector<Letter>> distinct;
            for (auto & l : all)
                distinct.insert(l.cells());
            CHECK(distinct.size() == all.size());
        }
        for (int n = 1; n <= 3; ++n)
            for (int m = 1; m <= n; ++m)
                CHECK(m_interval_lines(n, m).size() == oracle::scan_lines(n, m).size());
    }

    TEST_CASE("lines through three words")
    {
        auto l = line_through(Word::from_string("1121"), Word::from_string("2122"), Word::from_string("3123"));
        REQUIRE(l);
        CHECK(l->active() == std::vector<int> { 1, 4 });
        CHECK(! l->is_interval());
        CHECK(format_active(*l) == "1..1,4..4");
        CHECK(format_fixed(*l) == "2:1,3:2");
        CHECK(! line_through(Word::from_string("12"), Word::from_string("22"), Word::from_string("12")));
        CHECK(! line_through(Word::from_string("11"), Word::from_string("22"), Word::from_string("31")));
        CHECK(! line_through(Word::from_string("11"), Word::from_string("11"), Word::from_string("11")));

        IntervalLine il(4, 2, 3, { 3, 1 });
        auto pts = line_points(il.line());
        CHECK(pts[0].to_string() == "3111");
        CHECK(pts[1].to_string() == "3221");
        CHECK(pts[2].to_string() == "3331");
        CHECK_THROWS_AS(IntervalLine(Line(std::vector<Letter> { 0, 1, 0 })), InvalidArgument);
        CHECK_THROWS_AS(Line(std::vector<Letter> { 1, 2 }), InvalidArgument);
    }

    TEST_CASE("is_monochromatic")
    {
        Coloring c(2);
        IntervalLine diag(2, 1, 2, {});
        CHECK(is_monochromatic(c, diag.line()) == Colour(0));
        c.set(rank(Word::from_string("22")), 1);
        CHECK(! is_monochromatic(c, diag.line()));
        CHECK_THROWS_AS(is_monochromatic(Coloring(3), diag.line()), InvalidArgument);
    }

    TEST_CASE("all 512 colourings of [3]^2 against the triple scan")
    {
        auto lines = oracle::scan_lines(2);
        for (unsigned mask = 0; mask < 512; ++mask) {
            std::vector<int> colours(9);
            for (int i = 0; i < 9; ++i)
                colours[i] = mask >> i & 1u;
            auto c = Coloring::from_bits(2, oracle::bits_of(colours));
            REQUIRE(violation_count(c) == oracle::count_monochromatic(lines, colours));
        }
    }

    TEST_CASE("colouring file round trip and strict reading")
    {
        std::mt19937_64 rng(7);
        for (int n = 1; n <= 6; ++n) {
            auto bits = oracle::bits_of(oracle::random_colours(rng, pow3(n)));
            auto c = Coloring::from_bits(n, bits);
            CHECK(c.to_bits() == bits);
            auto text = write_coloring(c);
            CHECK(text == "HJC 3 " + std::to_string(n) + "\n" + bits + "\n");
            CHECK(read_coloring(text) == c);
        }
        CHECK(read_coloring("HJC 3 1\n010") == Coloring::from_bits(1, "010"));
        CHECK_THROWS_AS(read_coloring("HJC 3 1\n01\n"), FormatError);
        CHECK_THROWS_AS(read_coloring("HJC 3 1\n0102\n"), FormatError);
        CHECK_THROWS_AS(read_coloring("HJC 3 1\n012\n"), FormatError);
        CHECK_THROWS_AS(read_coloring("HJC 2 1\n010\n"), FormatError);
        CHECK_THROWS_AS(read_coloring("HJC 3 1\n010\n\n"), FormatError);
        CHECK_THROWS_AS(read_coloring(""), FormatError);
    }

    TEST_CASE("symmetry group")
    {
        auto group = all_symmetries();
        REQUIRE(group.size() == 24);
        CHECK(group[0] == Symmetry {});
        for (size_t i = 0; i < group.size(); ++i)
            for (size_t j = i + 1; j < group.size(); ++j)
                CHECK(! (group[i] == group[j]));

        // Every element permutes interval lines, so violation counts are
        // invariant on random colourings.
        std::mt19937_64 rng(11);
        for (int n = 1; n <= 4; ++n)
            for (int trial = 0; trial < 20; ++trial) {
                auto c = Coloring::from_bits(n, oracle::bits_of(oracle::random_colours(rng, pow3(n))));
                for (auto & g : group) {
                    auto image = apply_symmetry(c, g);
                    REQUIRE(violation_count(image) == violation_count(c));
                    auto perm = rank_permutation(g, n);
                    for (Rank r = 0; r < c.size(); ++r)
                        REQUIRE(image.at(perm[r]) == (c.at(r) ^ Colour(g.swap_colours)));
                }
            }
    }
}
