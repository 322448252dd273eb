#include "oracle.hh"

#include <hj/error.hh>
#include <hj/gadgets.hh>
#include <hj/search.hh>

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace hj;

namespace
{
    auto digits(const Word & w) -> std::vector<int>
    {
        return { w.letters().begin(), w.letters().end() };
    }

    // The active intervals each gadget line must have, written out per line.
    auto expected_interval(const Quadruple & q, int index) -> std::pair<int, int>
    {
        switch (index) {
            case 1: return { q.a(1) + 1, q.a(3) };
            case 2: return { q.a(2) + 1, q.a(4) };
            case 3: return { q.a(1) + 1, q.a(2) };
            case 4: return { q.a(3) + 1, q.a(4) };
            default: return { q.a(2) + 1, q.a(3) };
        }
    }

    // Member words are built by hand from the block letters, then checked as
    // a line with the oracle's coordinate test.
    auto expand(const std::string & blocks, const Quadruple & q) -> std::vector<int>
    {
        std::vector<int> w;
        int bounds[6] = { 0, q.a(1), q.a(2), q.a(3), q.a(4), q.n() };
        for (int j = 0; j < 5; ++j)
            for (int i = bounds[j] + 1; i <= bounds[j + 1]; ++i)
                w.push_back(blocks[j] - '0');
        return w;
    }

    const char * const member_blocks[5][3] = {
        { "11132", "12232", "13332" },
        { "13112", "13222", "13332" },
        { "11232", "12232", "13232" },
        { "13112", "13122", "13132" },
        { "13132", "13232", "13332" },
    };

    auto geometry_holds(const Quadruple & q) -> bool
    {
        auto lines = gadget_lines(q);
        for (int i = 0; i < 5; ++i) {
            auto & gl = lines[i];
            if (gl.index != i + 1)
                return false;
            std::vector<int> m[3];
            for (int k = 0; k < 3; ++k) {
                m[k] = expand(member_blocks[i][k], q);
                if (digits(gl.members[k]) != m[k])
                    return false;
            }
            auto active = oracle::active_set(m[0], m[1], m[2]);
            auto [lo, hi] = expected_interval(q, i + 1);
            std::vector<int> want;
            for (int x = lo; x <= hi; ++x)
                want.push_back(x);
            if (active != want || gl.line.lo() != lo || gl.line.hi() != hi)
                return false;
            if (line_points(gl.line.line()) != gl.members)
                return false;
        }
        return true;
    }

    auto random_quadruple(std::mt19937_64 & rng, int n) -> Quadruple
    {
        std::vector<int> pool;
        for (int i = 1; i <= n - 1; ++i)
            pool.push_back(i);
        std::shuffle(pool.begin(), pool.end(), rng);
        std::array<int, 4> a { pool[0], pool[1], pool[2], pool[3] };
        std::sort(a.begin(), a.end());
        return Quadruple(n, a);
    }

    // Sets as plain std::set, straight from the listed definitions.
    auto reference_nsets(const ColourVector & d) -> std::array<std::set<int>, 5>
    {
        return { { { d[0], d[1] }, { d[0], d[2] }, { d[1], d[3] }, { d[2], d[4] }, { d[0], d[3], d[4] } } };
    }

    auto vector_of(unsigned mask) -> ColourVector
    {
        ColourVector d;
        for (int j = 0; j < 5; ++j)
            d[j] = mask >> (4 - j) & 1u;
        return d;
    }
}

TEST_SUITE("gadgets")
{
    TEST_CASE("constants")
    {
        std::vector<std::string> names;
        for (auto & p : gadget_patterns())
            names.push_back(p.to_string());
        CHECK(names == std::vector<std::string> { "132", "1232", "1312", "13232", "13132" });
        for (int i = 0; i < 5; ++i)
            CHECK(gadget_lengths[i] == gadget_patterns()[i].size());
        CHECK(base_set_size == 4);
    }

    TEST_CASE("bracket words")
    {
        CHECK(bracket_word("13332", Quadruple(5, { 1, 2, 3, 4 })).to_string() == "13332");
        CHECK(bracket_word("13232", Quadruple(9, { 2, 4, 5, 7 })).to_string() == "113323322");
        CHECK(contract(bracket_word("11132", Quadruple(5, { 1, 2, 3, 4 }))).to_string() == "132");
        auto q = Quadruple(10, { 2, 4, 6, 8 });
        auto words = gadget_words(q);
        CHECK(contract(words.u1).to_string() == "132");
        for (int i = 0; i < 5; ++i)
            CHECK(contract(words.w[i]) == gadget_patterns()[i]);
        for (int i = 0; i < 3; ++i)
            CHECK(contract(words.v[i]) == gadget_patterns()[i]);
        CHECK(gadget_words(Quadruple(5, { 1, 2, 3, 4 })).w[3].to_string() == "13232");
        CHECK_THROWS_AS(Quadruple(5, { 1, 2, 3, 5 }), InvalidArgument);
        CHECK_THROWS_AS(Quadruple(6, { 1, 3, 2, 4 }), InvalidArgument);
        CHECK_THROWS_AS(bracket_word("1234", q), InvalidArgument);
    }

    TEST_CASE("sample gadget lines")
    {
        auto lines = gadget_lines(Quadruple(5, { 1, 2, 3, 4 }));
        CHECK(lines[4].members[0].to_string() == "13132");
        CHECK(lines[4].members[1].to_string() == "13232");
        CHECK(lines[4].members[2].to_string() == "13332");
        CHECK(lines[4].line.lo() == 3);
        CHECK(lines[4].line.hi() == 3);
        CHECK(lines[2].line.lo() == 2);
        CHECK(lines[2].line.hi() == 2);
        CHECK(geometry_holds(Quadruple(8, { 1, 3, 4, 6 })));
    }

    TEST_CASE("gadget geometry over every quadruple for n <= 6")
    {
        int count = 0;
        for (int n = 5; n <= 6; ++n)
            for_each_quadruple(n, [&](const Quadruple & q) {
                REQUIRE(geometry_holds(q));
                ++count;
                return true;
            });
        CHECK(count == 1 + 5);
    }

    TEST_CASE("gadget geometry on random quadruples for n <= 12")
    {
        std::mt19937_64 rng(2024);
        for (int trial = 0; trial < 10000; ++trial) {
            int n = 5 + static_cast<int>(rng() % 8);
            REQUIRE(geometry_holds(random_quadruple(rng, n)));
        }
    }

    TEST_CASE("quadruple enumeration order and count")
    {
        std::vector<Quadruple> seen;
        for_each_quadruple(8, [&](const Quadruple & q) {
            seen.push_back(q);
            return true;
        });
        CHECK(seen.size() == binomial(7, 4));
        CHECK(std::is_sorted(seen.begin(), seen.end()));
        int visited = 0;
        for_each_quadruple(8, [&](const Quadruple &) { return ++visited < 3; });
        CHECK(visited == 3);
    }

    TEST_CASE("colour sets and the case lemma")
    {
        int reach_five = 0;
        auto rows = case_lemma_check();
        for (unsigned mask = 0; mask < 32; ++mask) {
            auto d = vector_of(mask);
            auto ref = reference_nsets(d);
            auto sets = nsets(d);
            std::optional<int> first;
            for (int i = 0; i < 5; ++i) {
                CHECK(sets[i].size() == static_cast<int>(ref[i].size()));
                for (Colour c = 0; c < 2; ++c)
                    CHECK(sets[i].contains(c) == (ref[i].count(c) == 1));
                if (! first && ref[i].size() == 1)
                    first = i + 1;
            }
            REQUIRE(first);
            CHECK(first_singleton(d) == first);
            CHECK(rows[mask].d == d);
            CHECK(rows[mask].first_singleton == *first);
            if (*first == 5) {
                ++reach_five;
                CHECK(d[1] == d[2]);
                CHECK(d[0] != d[1]);
                CHECK(d[0] == d[3]);
                CHECK(d[3] == d[4]);
            }
        }
        CHECK(reach_five == 2);
        CHECK(first_singleton(parse_colour_vector("00000")) == 1);
        CHECK(first_singleton(parse_colour_vector("01100")) == 5);
        CHECK(first_singleton(parse_colour_vector("01010")) == 2);
        CHECK_THROWS_AS(parse_colour_vector("0110"), InvalidArgument);
        CHECK_THROWS_AS(parse_colour_vector("01102"), InvalidArgument);
    }

    TEST_CASE("colex subsets")
    {
        std::vector<std::vector<int>> seen;
        for_each_colex_subset(5, 3, [&](const std::vector<int> & s) { seen.push_back(s); });
        REQUIRE(seen.size() == 10);
        CHECK(seen[0] == std::vector<int> { 0, 1, 2 });
        CHECK(seen[1] == std::vector<int> { 0, 1, 3 });
        CHECK(seen[3] == std::vector<int> { 1, 2, 3 });
        for (size_t i = 0; i < seen.size(); ++i)
            CHECK(colex_rank(seen[i]) == i);
        CHECK(binomial(20, 10) == 184756);
        CHECK(binomial(3, 5) == 0);
    }

    TEST_CASE("induced colourings")
    {
        // parity of rank on n = 6, gadget 1, ground {1,2,3}
        Coloring c(6);
        for (Rank r = 0; r < c.size(); ++r)
            c.set(r, r & 1u);
        auto induced = induced_coloring(c, 1, { 1, 2, 3 });
        CHECK(induced.t() == 2);
        std::vector<std::vector<int>> subsets { { 1, 2 }, { 1, 3 }, { 2, 3 } };
        for (size_t k = 0; k < subsets.size(); ++k) {
            // s1 = 132 with breakpoints A, built by hand.
            std::vector<int> w;
            for (int i = 1; i <= 6; ++i)
                w.push_back(i <= subsets[k][0] ? 1 : i <= subsets[k][1] ? 3 : 2);
            CHECK(induced.colours()[k] == (oracle::rank_of(w) & 1u));
        }
        for (int i = 1; i <= 5; ++i) {
            auto zero = induced_coloring(Coloring(7), i, { 1, 2, 3, 4, 5, 6 });
            CHECK(std::all_of(zero.colours().begin(), zero.colours().end(), [](Colour x) { return x == 0; }));
        }
        CHECK_THROWS_AS(induced_coloring(Coloring(6), 5, { 1, 2, 3 }), InvalidArgument);
        CHECK_THROWS_AS(induced_coloring(Coloring(6), 6, { 1, 2, 3, 4, 5 }), InvalidArgument);
    }

    TEST_CASE("ramsey refinement")
    {
        SUBCASE("constant colouring gives the first subset")
        {
            SubsetColouring flat({ 2, 3, 5, 7, 11 }, 2, std::vector<Colour>(10, 1));
            auto h = ramsey_refine(flat, 3);
            REQUIRE(h);
            CHECK(h->subset == std::vector<int> { 2, 3, 5 });
            CHECK(h->colour == 1);
        }

        SUBCASE("points: seven always contain four of one colour")
        {
            for (unsigned mask = 0; mask < 128; ++mask) {
                std::vector<Colour> colours;
                for (int i = 0; i < 7; ++i)
                    colours.push_back(mask >> i & 1u);
                SubsetColouring points({ 1, 2, 3, 4, 5, 6, 7 }, 1, colours);
                auto h = ramsey_refine(points, 4);
                REQUIRE(h);
                for (int x : h->subset)
                    CHECK(colours[x - 1] == h->colour);
            }
        }

        SUBCASE("alternating six-cycle against brute force")
        {
            // Edges of the cycle 0-1-2-3-4-5-0 alternate colours 0/1; other
            // pairs get colour 1.
            auto edge_colour = [](int a, int b) -> Colour {
                int d = (b - a + 6) % 6;
                if (d != 1 && d != 5)
                    return 1;
                int low = d == 1 ? a : b;
                return low % 2;
            };
            std::vector<int> ground { 0, 1, 2, 3, 4, 5 };
            std::vector<Colour> colours;
            for_each_colex_subset(6, 2, [&](const std::vector<int> & s) { colours.push_back(edge_colour(s[0], s[1])); });
            SubsetColouring cycle(ground, 2, colours);

            std::optional<std::vector<int>> first;
            for (int a = 0; a < 6 && ! first; ++a)
                for (int b = a + 1; b < 6 && ! first; ++b)
                    for (int c = b + 1; c < 6 && ! first; ++c)
                        if (edge_colour(a, b) == edge_colour(a, c) && edge_colour(a, c) == edge_colour(b, c))
                            first = std::vector<int> { a, b, c };
            auto h = ramsey_refine(cycle, 3);
            REQUIRE(h.has_value() == first.has_value());
            if (first) {
                CHECK(h->subset == *first);
                CHECK(h->colour == edge_colour((*first)[0], (*first)[1]));
            }
        }

        SUBCASE("no homogeneous subset")
        {
            // Triangle-free colouring of K5: the 5-cycle and its complement.
            std::vector<Colour> colours;
            for_each_colex_subset(5, 2, [&](const std::vector<int> & s) {
                int d = s[1] - s[0];
                colours.push_back(d == 1 || d == 4 ? 0 : 1);
            });
            CHECK(! ramsey_refine(SubsetColouring({ 1, 2, 3, 4, 5 }, 2, colours), 3));
        }

        CHECK_THROWS_AS(ramsey_refine(SubsetColouring({ 1, 2, 3 }, 2, { 0, 0, 0 }), 1), InvalidArgument);
        CHECK_THROWS_AS(SubsetColouring({ 1, 2, 3 }, 2, { 0, 0 }), InvalidArgument);
    }

    TEST_CASE("chains and extraction on pattern colourings")
    {
        auto d0 = parse_colour_vector("00000");
        auto c0 = pattern_coloring(5, d0);
        HomogeneousChain chain;
        for (auto & s : chain.sets)
            s = { 1, 2, 3, 4 };
        chain.d = d0;
        auto ex = extract_line(c0, chain);
        CHECK(ex.gadget == 1);
        CHECK(ex.certificate.colour == 0);
        CHECK(verify_certificate(c0, ex.certificate));

        auto c = pattern_coloring(6, parse_colour_vector("01100"));
        auto refined = refine_chain(c);
        REQUIRE(refined);
        CHECK(refined->d == parse_colour_vector("01100"));
        auto ex5 = extract_line(c, *refined);
        CHECK(ex5.gadget == 5);
        CHECK(ex5.certificate.colour == 0);

        auto wrong = chain;
        wrong.d = parse_colour_vector("10000");
        CHECK_THROWS_WITH_AS(verify_chain(c0, wrong), doctest::Contains("c1"), InvalidArgument);
        auto small = chain;
        small.sets[0] = { 1, 2, 3 };
        CHECK_THROWS_AS(verify_chain(c0, small), InvalidArgument);
        auto loose = chain;
        loose.sets[1] = { 1, 2, 3 };
        CHECK_THROWS_WITH_AS(verify_chain(c0, loose), doctest::Contains("not contained"), InvalidArgument);
    }

    TEST_CASE("colour transfer in the homogeneous world")
    {
        std::mt19937_64 rng(5);
        for (unsigned mask = 0; mask < 32; ++mask) {
            auto d = vector_of(mask);
            auto ref = reference_nsets(d);
            for (int trial = 0; trial < 20; ++trial) {
                int n = 5 + static_cast<int>(rng() % 6);
                auto c = pattern_coloring(n, d);
                auto q = random_quadruple(rng, n);
                for (auto & gl : gadget_lines(q)) {
                    std::set<int> colours;
                    for (auto & w : gl.members)
                        colours.insert(c.at(w));
                    REQUIRE(colours == ref[gl.index - 1]);
                }
            }
        }
    }

    TEST_CASE("every pattern colouring of [3]^5 yields verified lines")
    {
        for (unsigned mask = 0; mask < 32; ++mask) {
            auto d = vector_of(mask);
            auto c = pattern_coloring(5, d);
            auto viaGadget = find_interval_line(c, Method::gadget);
            REQUIRE(viaGadget.certificate);
            CHECK(verify_certificate(c, *viaGadget.certificate));
            auto viaPipeline = find_interval_line(c, Method::pipeline);
            REQUIRE(viaPipeline.certificate);
            CHECK(viaPipeline.gadget == *first_singleton(d));
            CHECK(verify_certificate(c, *viaPipeline.certificate));
        }
    }

    TEST_CASE("direct search is complete on [3]^2")
    {
        auto lines = oracle::scan_lines(2);
        for (unsigned mask = 0; mask < 512; ++mask) {
            std::vector<int> colours(9);
            for (int i = 0; i < 9; ++i)
                colours[i] = mask >> i & 1u;
            auto c = Coloring::from_bits(2, oracle::bits_of(colours));
            auto found = find_interval_line(c, Method::direct);
            REQUIRE(found.certificate.has_value() == (oracle::count_monochromatic(lines, colours) > 0));
            if (found.certificate)
                CHECK(verify_certificate(c, *found.certificate));
        }
        auto first = find_interval_line(Coloring(2), Method::direct);
        REQUIRE(first.certificate);
        CHECK(first.certificate->line == interval_lines(2).front());
    }

    TEST_CASE("gadget finds imply direct finds")
    {
        std::mt19937_64 rng(99);
        int gadget_hits = 0;
        for (int trial = 0; trial < 200; ++trial) {
            int n = 5 + static_cast<int>(rng() % 2);
            auto c = Coloring::from_bits(n, oracle::bits_of(oracle::random_colours(rng, pow3(n))));
            auto g = find_interval_line(c, Method::gadget);
            if (g.certificate) {
                ++gadget_hits;
                CHECK(verify_certificate(c, *g.certificate));
                CHECK(find_interval_line(c, Method::direct).certificate);
            }
        }
        CHECK(gadget_hits > 0);
    }

    TEST_CASE("certificate text")
    {
        auto c = pattern_coloring(6, parse_colour_vector("01100"));
        auto found = find_interval_line(c, Method::gadget);
        REQUIRE(found.certificate);
        auto text = write_certificate(*found.certificate);
        CHECK(text.rfind("MONO-LINE n=6 color=", 0) == 0);
        auto back = read_certificate(text);
        REQUIRE(std::holds_alternative<LineCertificate>(back));
        CHECK(std::get<LineCertificate>(back) == *found.certificate);
        CHECK(write_certificate(back) == text);

        CHECK(write_certificate(NoLine { Method::pipeline }) == "NONE method=pipeline\n");
        CHECK(std::get<NoLine>(read_certificate("NONE method=direct\n")).method == Method::direct);
        CHECK_THROWS_AS(read_certificate("NONE method=magic\n"), FormatError);
        CHECK_THROWS_AS(read_certificate("MONO-LINE n=2 color=0 active=1..2 fixed=\nW1 11\nW2 22\n"), FormatError);
        CHECK_THROWS_AS(read_certificate("something else\n"), FormatError);
    }
}
