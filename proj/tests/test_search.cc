#include "oracle.hh"

#include <hj/error.hh>
#include <hj/gadgets.hh>
#include <hj/report.hh>
#include <hj/search.hh>

#include <doctest.h>

#include <random>
#include <set>

using namespace hj;

namespace
{
    auto all_avoiders(int n) -> std::vector<std::string>
    {
        auto lines = oracle::scan_lines(n);
        auto size = oracle::power3(n);
        std::vector<std::string> found;
        for (std::uint64_t mask = 0; mask < (std::uint64_t { 1 } << size); ++mask) {
            std::vector<int> colours(size);
            for (std::uint64_t i = 0; i < size; ++i)
                colours[i] = mask >> i & 1u;
            if (oracle::count_monochromatic(lines, colours) == 0)
                found.push_back(oracle::bits_of(colours));
        }
        return found;
    }
}

TEST_SUITE("search")
{
    TEST_CASE("violation count matches the naive scan")
    {
        CHECK(violation_count(Coloring(2)) == 7);
        CHECK(violation_count(Coloring(3, 1)) == 34);
        std::mt19937_64 rng(3);
        for (int n = 1; n <= 3; ++n) {
            auto lines = oracle::scan_lines(n);
            for (int trial = 0; trial < 1000; ++trial) {
                auto colours = oracle::random_colours(rng, oracle::power3(n));
                auto c = Coloring::from_bits(n, oracle::bits_of(colours));
                REQUIRE(violation_count(c) == oracle::count_monochromatic(lines, colours));
            }
        }
    }

    TEST_CASE("tally tracks flips within the locality bound")
    {
        std::mt19937_64 rng(8);
        for (int n = 1; n <= 4; ++n) {
            auto c = Coloring::from_bits(n, oracle::bits_of(oracle::random_colours(rng, pow3(n))));
            LineTally tally(c);
            CHECK(tally.monochromatic() == violation_count(c));
            for (int step = 0; step < 200; ++step) {
                Rank cell = rng() % c.size();
                auto before = tally.monochromatic();
                auto predicted = tally.delta(cell);
                tally.flip(cell);
                c.flip(cell);
                REQUIRE(tally.coloring() == c);
                REQUIRE(static_cast<long>(tally.monochromatic()) == static_cast<long>(before) + predicted);
                REQUIRE(tally.monochromatic() == violation_count(c));
                REQUIRE(std::abs(predicted) <= static_cast<int>(tally.lines_through(cell).size()));
            }
        }
    }

    TEST_CASE("exhaustive search for n <= 3")
    {
        for (int n = 1; n <= 3; ++n)
            for (bool symmetry : { true, false }) {
                ExhaustiveOptions options;
                options.symmetry = symmetry;
                auto report = exhaustive_search(n, options);
                CHECK(report.outcome == Outcome::avoider_found);
                REQUIRE(report.avoider);
                CHECK(violation_count(*report.avoider) == 0);
                CHECK(! find_interval_line(*report.avoider, Method::direct).certificate);
                CHECK_NOTHROW(check_report(report));
            }
        CHECK_THROWS_AS(exhaustive_search(4), InvalidArgument);
    }

    TEST_CASE("least avoider and counts agree with brute force on n <= 2")
    {
        for (int n = 1; n <= 2; ++n) {
            auto brute = all_avoiders(n);
            std::set<std::string> brute_set(brute.begin(), brute.end());

            ExhaustiveOptions plain;
            plain.symmetry = false;
            plain.count_avoiders = true;
            auto full = exhaustive_search(n, plain);
            CHECK(full.stats.avoiders == brute.size());
            CHECK(full.avoider->to_bits() == *brute_set.begin());

            // Orbit sizes of the canonical avoiders must add up to the total.
            ExhaustiveOptions reduced;
            reduced.count_avoiders = true;
            auto canon = exhaustive_search(n, reduced);
            std::set<std::string> covered;
            for (auto & bits : brute) {
                auto c = Coloring::from_bits(n, bits);
                std::string least = bits;
                for (auto & g : all_symmetries())
                    least = std::min(least, apply_symmetry(c, g).to_bits());
                covered.insert(least);
            }
            CHECK(canon.stats.avoiders == covered.size());
            CHECK(canon.avoider->to_bits() == *brute_set.begin());
        }
        CHECK(all_avoiders(2).size() == 66);
    }

    TEST_CASE("exhaustive result does not depend on job count")
    {
        for (int n = 2; n <= 3; ++n) {
            ExhaustiveOptions one;
            one.jobs = 1;
            one.count_avoiders = true;
            ExhaustiveOptions four = one;
            four.jobs = 4;
            auto a = exhaustive_search(n, one);
            auto b = exhaustive_search(n, four);
            CHECK(a == b);
        }
    }

    TEST_CASE("local search")
    {
        LocalOptions options;
        options.seed = 17;
        auto one = local_search(1, options);
        CHECK(one.outcome == Outcome::avoider_found);
        CHECK(one.stats.flips <= 3);
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            options.seed = seed;
            auto two = local_search(2, options);
            CHECK(two.outcome == Outcome::avoider_found);
            CHECK(violation_count(*two.avoider) == 0);
        }

        options.seed = 5;
        options.budget = 20000;
        auto a = local_search(4, options);
        auto b = local_search(4, options);
        CHECK(a == b);
        CHECK(render_search_report(a, false) == render_search_report(b, false));
        options.jobs = 3;
        CHECK(local_search(4, options) == a);

        options.budget = 50;
        auto starved = local_search(6, options);
        CHECK(starved.outcome == Outcome::inconclusive);
        CHECK(! starved.avoider);
        CHECK(starved.stats.best_violations > 0);
        CHECK_THROWS_AS(local_search(2, LocalOptions { 0, 0 }), InvalidArgument);
    }

    TEST_CASE("report text and verification")
    {
        auto report = exhaustive_search(2);
        auto text = render_search_report(report);
        CHECK(text.rfind("report=search\n", 0) == 0);
        auto back = parse_search_report(text);
        CHECK(back == report);
        CHECK(render_search_report(back) == text);
        CHECK(std::holds_alternative<SearchReport>(read_document(text)));

        auto forged = report;
        forged.avoider = Coloring(2);
        CHECK_THROWS_AS(check_report(forged), VerificationFailure);
        auto wrong_mode = report;
        wrong_mode.mode = SearchMode::local;
        wrong_mode.outcome = Outcome::refuted;
        wrong_mode.avoider.reset();
        CHECK_THROWS_AS(check_report(wrong_mode), VerificationFailure);

        CHECK_THROWS_AS(parse_search_report("report=search\nn=2\n"), FormatError);
        CHECK_THROWS_AS(read_document("report=histogram\n"), FormatError);
    }
}
