#include <hj/error.hh>
#include <hj/gadgets.hh>
#include <hj/search.hh>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <limits>
#include <mutex>
#include <random>
#include <thread>

using std::optional;
using std::string;
using std::to_string;
using std::uint64_t;
using std::vector;

namespace hj
{
    auto violation_count(const Coloring & c) -> uint64_t
    {
        uint64_t count = 0;
        for_each_interval_line_ranks(c.n(), [&](int, int, Rank, const LineRanks & m) {
            auto a = c.at(m[0]);
            if (c.at(m[1]) == a && c.at(m[2]) == a)
                ++count;
            return true;
        });
        return count;
    }

    LineTally::LineTally(const Coloring & c) :
        _coloring(c),
        _lines(m_interval_line_ranks(c.n(), 1)),
        _incidence(c.size()),
        _ones(_lines.size(), 0)
    {
        for (std::uint32_t l = 0; l < _lines.size(); ++l) {
            for (auto r : _lines[l]) {
                _incidence[r].push_back(l);
                _ones[l] += c.at(r);
            }
            if (_ones[l] == 0 || _ones[l] == 3)
                ++_monochromatic;
        }
    }

    auto LineTally::delta(Rank cell) const -> int
    {
        int change = 0;
        int step = _coloring.at(cell) ? -1 : 1;
        for (auto l : _incidence[cell]) {
            int before = _ones[l], after = before + step;
            change += (after == 0 || after == 3) - (before == 0 || before == 3);
        }
        return change;
    }

    void LineTally::flip(Rank cell)
    {
        int step = _coloring.at(cell) ? -1 : 1;
        for (auto l : _incidence[cell]) {
            int before = _ones[l], after = before + step;
            _monochromatic -= (before == 0 || before == 3);
            _monochromatic += (after == 0 || after == 3);
            _ones[l] = static_cast<std::uint8_t>(after);
        }
        _coloring.flip(cell);
    }

    auto mode_name(SearchMode m) -> string
    {
        return m == SearchMode::exhaustive ? "exhaustive" : "local";
    }

    auto outcome_name(Outcome o) -> string
    {
        switch (o) {
            case Outcome::avoider_found: return "avoider-found";
            case Outcome::refuted: return "refuted";
            case Outcome::inconclusive: return "inconclusive";
        }
        throw InvalidArgument("unknown outcome");
    }

    auto SearchStats::operator==(const SearchStats & o) const -> bool
    {
        return nodes == o.nodes && line_prunes == o.line_prunes && symmetry_prunes == o.symmetry_prunes
            && avoiders == o.avoiders && flips == o.flips && restarts == o.restarts && best_violations == o.best_violations;
    }

    namespace
    {
        using Clock = std::chrono::steady_clock;

        auto elapsed_ms(Clock::time_point start) -> double
        {
            return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
        }

        auto worker_count(unsigned requested, uint64_t tasks) -> unsigned
        {
            unsigned jobs = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
            return static_cast<unsigned>(std::min<uint64_t>(jobs, std::max<uint64_t>(tasks, 1)));
        }

        template <typename F>
        void run_parallel(unsigned workers, F && work)
        {
            if (workers <= 1) {
                work();
                return;
            }
            vector<std::thread> threads;
            for (unsigned w = 0; w < workers; ++w)
                threads.emplace_back(work);
            for (auto & t : threads)
                t.join();
        }

        auto colouring_from_cells(int n, const vector<std::uint8_t> & cells) -> Coloring
        {
            Coloring c(n);
            for (Rank r = 0; r < cells.size(); ++r)
                if (cells[r])
                    c.flip(r);
            return c;
        }

        // Shared read-only data for the exhaustive workers.
        struct ExhaustiveModel
        {
            Rank cells;
            vector<vector<LineRanks>> closing;      // lines whose largest member is the cell
            vector<vector<Rank>> sources;           // per non-identity symmetry: (g c)(i) = c(src[i]) ^ swap
            vector<std::uint8_t> swaps;

            ExhaustiveModel(int n, bool symmetry) :
                cells(pow3(n)), closing(cells)
            {
                for (auto & m : m_interval_line_ranks(n, 1))
                    closing[m[2]].push_back(m);
                if (! symmetry)
                    return;
                bool first = true;
                for (auto & g : all_symmetries()) {
                    if (first) {
                        first = false;
                        continue;
                    }
                    auto perm = rank_permutation(g, n);
                    vector<Rank> src(cells);
                    for (Rank r = 0; r < cells; ++r)
                        src[perm[r]] = r;
                    sources.push_back(std::move(src));
                    swaps.push_back(g.swap_colours ? 1 : 0);
                }
            }
        };

        struct BlockResult
        {
            optional<vector<std::uint8_t>> avoider;
            SearchStats stats;
        };

        class BlockSearch
        {
        public:
            BlockSearch(const ExhaustiveModel & model, const vector<std::uint8_t> & prefix, bool count_all) :
                _model(model), _prefix(prefix), _count_all(count_all), _cells(model.cells, 0)
            {
            }

            auto run() -> BlockResult
            {
                dfs(0);
                return std::move(_result);
            }

        private:
            const ExhaustiveModel & _model;
            const vector<std::uint8_t> & _prefix;
            bool _count_all;
            vector<std::uint8_t> _cells;
            BlockResult _result;

            auto closes_monochromatic(Rank cell) const -> bool
            {
                for (auto & m : _model.closing[cell])
                    if (_cells[m[0]] == _cells[m[1]] && _cells[m[1]] == _cells[m[2]])
                        return true;
                return false;
            }

            // False if some group element maps every completion of the
            // first k cells to a lexicographically smaller colouring.
            auto lex_leader(Rank k) const -> bool
            {
                for (size_t g = 0; g < _model.sources.size(); ++g) {
                    auto & src = _model.sources[g];
                    auto swap = _model.swaps[g];
                    for (Rank i = 0; i < k; ++i) {
                        auto s = src[i];
                        if (s >= k)
                            break;
                        auto image = _cells[s] ^ swap;
                        if (image < _cells[i])
                            return false;
                        if (image > _cells[i])
                            break;
                    }
                }
                return true;
            }

            auto dfs(Rank k) -> bool
            {
                if (k == _model.cells) {
                    ++_result.stats.avoiders;
                    if (! _result.avoider)
                        _result.avoider = _cells;
                    return ! _count_all;
                }
                for (std::uint8_t colour = 0; colour <= 1; ++colour) {
                    if (k < _prefix.size() && colour != _prefix[k])
                        continue;
                    _cells[k] = colour;
                    ++_result.stats.nodes;
                    if (closes_monochromatic(k)) {
                        ++_result.stats.line_prunes;
                        continue;
                    }
                    if (! lex_leader(k + 1)) {
                        ++_result.stats.symmetry_prunes;
                        continue;
                    }
                    if (dfs(k + 1))
                        return true;
                }
                _cells[k] = 0;
                return false;
            }
        };

        auto splitmix64(uint64_t x) -> uint64_t
        {
            x += 0x9E3779B97F4A7C15ULL;
            x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
            x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
            return x ^ (x >> 31);
        }

        struct SliceResult
        {
            bool success = false;
            optional<Coloring> avoider;
            uint64_t flips = 0, restarts = 0, best = std::numeric_limits<uint64_t>::max();
        };

        auto run_slice(int n, uint64_t seed, uint64_t budget, unsigned max_sideways) -> SliceResult
        {
            std::mt19937_64 rng(seed);
            auto randomize = [&](Coloring & c) {
                for (Rank r = 0; r < c.size(); ++r)
                    c.set(r, static_cast<Colour>(rng() & 1u));
            };
            Coloring start(n);
            randomize(start);
            LineTally tally(start);

            SliceResult result;
            result.best = tally.monochromatic();
            uint64_t used = 0;
            unsigned sideways = 0;
            vector<Rank> candidates;
            while (tally.monochromatic() > 0 && used < budget) {
                int best_delta = std::numeric_limits<int>::max();
                candidates.clear();
                for (Rank r = 0; r < start.size(); ++r) {
                    int d = tally.delta(r);
                    if (d < best_delta) {
                        best_delta = d;
                        candidates.clear();
                    }
                    if (d == best_delta)
                        candidates.push_back(r);
                }
                ++used;
                if (best_delta < 0 || (best_delta == 0 && sideways < max_sideways)) {
                    sideways = best_delta == 0 ? sideways + 1 : 0;
                    tally.flip(candidates[rng() % candidates.size()]);
                    ++result.flips;
                }
                else {
                    Coloring fresh(n);
                    randomize(fresh);
                    tally = LineTally(fresh);
                    sideways = 0;
                    ++result.restarts;
                }
                result.best = std::min(result.best, tally.monochromatic());
            }
            if (tally.monochromatic() == 0) {
                result.success = true;
                result.best = 0;
                result.avoider = tally.coloring();
            }
            return result;
        }
    }

    auto exhaustive_search(int n, const ExhaustiveOptions & options) -> SearchReport
    {
        if (n < 1)
            throw InvalidArgument("exhaustive search: n must be positive");
        if (n > options.cap)
            throw InvalidArgument("exhaustive search: n=" + to_string(n) + " exceeds cap " + to_string(options.cap));
        auto start = Clock::now();

        ExhaustiveModel model(n, options.symmetry);
        auto prefix_bits = static_cast<int>(std::min<Rank>(model.cells, 6));
        auto blocks = uint64_t{1} << prefix_bits;
        vector<BlockResult> results(blocks);
        std::atomic<uint64_t> next { 0 };

        run_parallel(worker_count(options.jobs, blocks), [&] {
            for (uint64_t b; (b = next.fetch_add(1)) < blocks;) {
                vector<std::uint8_t> prefix(prefix_bits);
                for (int j = 0; j < prefix_bits; ++j)
                    prefix[j] = static_cast<std::uint8_t>(b >> (prefix_bits - 1 - j) & 1u);
                results[b] = BlockSearch(model, prefix, options.count_avoiders).run();
            }
        });

        SearchReport report;
        report.n = n;
        report.mode = SearchMode::exhaustive;
        report.symmetry = options.symmetry;
        report.counted = options.count_avoiders;
        for (auto & r : results) {
            report.stats.nodes += r.stats.nodes;
            report.stats.line_prunes += r.stats.line_prunes;
            report.stats.symmetry_prunes += r.stats.symmetry_prunes;
            report.stats.avoiders += r.stats.avoiders;
            if (r.avoider && ! report.avoider)
                report.avoider = colouring_from_cells(n, *r.avoider);
        }
        report.outcome = report.avoider ? Outcome::avoider_found : Outcome::refuted;
        if (! options.count_avoiders)
            report.stats.avoiders = report.avoider ? 1 : 0;
        report.stats.best_violations = report.avoider ? 0 : 1;
        report.stats.elapsed_ms = elapsed_ms(start);
        check_report(report);
        return report;
    }

    auto local_search(int n, const LocalOptions & options) -> SearchReport
    {
        if (options.budget == 0)
            throw InvalidArgument("local search: budget must be positive");
        auto start = Clock::now();
        auto cells = pow3(n);
        Coloring probe(n);      // validates n
        uint64_t slice = options.slice ? options.slice : std::max<uint64_t>(2000, 50 * cells);
        unsigned max_sideways = options.max_sideways ? options.max_sideways : static_cast<unsigned>(std::min<Rank>(cells, 1000));
        uint64_t slices = (options.budget + slice - 1) / slice;

        vector<optional<SliceResult>> results(slices);
        std::atomic<uint64_t> next { 0 };
        std::atomic<uint64_t> first_success { std::numeric_limits<uint64_t>::max() };

        run_parallel(worker_count(options.jobs, slices), [&] {
            for (uint64_t s; (s = next.fetch_add(1)) < slices;) {
                if (s > first_success.load())
                    break;
                auto budget = std::min(slice, options.budget - s * slice);
                auto r = run_slice(n, splitmix64(options.seed ^ splitmix64(s)), budget, max_sideways);
                if (r.success) {
                    auto current = first_success.load();
                    while (s < current && ! first_success.compare_exchange_weak(current, s))
                        ;
                }
                results[s] = std::move(r);
            }
        });

        SearchReport report;
        report.n = n;
        report.mode = SearchMode::local;
        report.seed = options.seed;
        report.budget = options.budget;
        report.symmetry = false;
        report.stats.best_violations = std::numeric_limits<uint64_t>::max();
        for (uint64_t s = 0; s < slices && s <= first_success.load(); ++s) {
            auto & r = *results[s];
            report.stats.flips += r.flips;
            report.stats.restarts += r.restarts;
            report.stats.best_violations = std::min(report.stats.best_violations, r.best);
            if (r.success) {
                report.avoider = r.avoider;
                break;
            }
        }
        report.outcome = report.avoider ? Outcome::avoider_found : Outcome::inconclusive;
        report.stats.avoiders = report.avoider ? 1 : 0;
        report.stats.elapsed_ms = elapsed_ms(start);
        check_report(report);
        return report;
    }

    void check_report(const SearchReport & report)
    {
        if (report.outcome == Outcome::refuted && report.mode != SearchMode::exhaustive)
            throw VerificationFailure("only exhaustive search may report refuted");
        if ((report.outcome == Outcome::avoider_found) != report.avoider.has_value())
            throw VerificationFailure("avoider presence does not match the reported outcome");
        if (report.avoider) {
            if (report.avoider->n() != report.n)
                throw VerificationFailure("avoider length does not match the report");
            if (find_interval_line(*report.avoider, Method::direct).certificate)
                throw VerificationFailure("reported avoider has a monochromatic interval line");
        }
    }
}
