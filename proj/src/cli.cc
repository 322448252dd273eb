#include <hj/bounds.hh>
#include <hj/cli.hh>
#include <hj/cnf.hh>
#include <hj/coloring.hh>
#include <hj/error.hh>
#include <hj/gadgets.hh>
#include <hj/report.hh>
#include <hj/search.hh>

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iterator>
#include <ostream>
#include <random>

using std::ostream;
using std::string;
using std::to_string;
using std::vector;

namespace hj
{
    namespace
    {
        auto read_file(const string & path) -> string
        {
            std::ifstream in(path, std::ios::binary);
            if (! in)
                throw Error("cannot open " + path);
            return string { std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>() };
        }

        void write_file(const string & path, const string & text)
        {
            std::ofstream out(path, std::ios::binary);
            if (! out)
                throw Error("cannot open " + path + " for writing");
            out << text;
            if (! out)
                throw Error("failed writing " + path);
        }

        auto parse_quadruple(const string & text, int n) -> Quadruple
        {
            std::array<int, 4> a {};
            size_t start = 0;
            for (int j = 0; j < 4; ++j) {
                auto end = text.find(',', start);
                if ((j < 3) == (end == string::npos))
                    throw InvalidArgument("--quadruple expects a1,a2,a3,a4");
                auto part = text.substr(start, end == string::npos ? string::npos : end - start);
                if (part.empty() || part.find_first_not_of("0123456789") != string::npos || part.size() > 6)
                    throw InvalidArgument("--quadruple: bad number \"" + part + "\"");
                a[j] = std::stoi(part);
                start = end + 1;
            }
            return Quadruple(n, a);
        }

        // Checks one quadruple's lines against the intervals they must have,
        // using line_through rather than the construction itself.
        auto gadget_geometry_ok(const Quadruple & q, ostream * out) -> bool
        {
            const std::array<std::pair<int, int>, 5> expected { {
                { q.a(1) + 1, q.a(3) },
                { q.a(2) + 1, q.a(4) },
                { q.a(1) + 1, q.a(2) },
                { q.a(3) + 1, q.a(4) },
                { q.a(2) + 1, q.a(3) },
            } };
            bool all_ok = true;
            for (auto & gl : gadget_lines(q)) {
                auto through = line_through(gl.members[0], gl.members[1], gl.members[2]);
                bool ok = through && through->is_interval() && *through == gl.line.line()
                    && through->intervals().front() == expected[gl.index - 1];
                all_ok = all_ok && ok;
                if (out)
                    *out << "L" << gl.index << " active=" << gl.line.lo() << ".." << gl.line.hi() << " members="
                         << gl.members[0].to_string() << "," << gl.members[1].to_string() << "," << gl.members[2].to_string()
                         << " valid=" << (ok ? 1 : 0) << "\n";
            }
            auto words = gadget_words(q);
            auto & patterns = gadget_patterns();
            for (int i = 0; i < 5; ++i)
                all_ok = all_ok && contract(words.w[i]) == patterns[i];
            for (int i = 0; i < 3; ++i)
                all_ok = all_ok && contract(words.v[i]) == patterns[i];
            return all_ok && contract(words.u1) == patterns[0];
        }

        auto cmd_verify_gadgets(const RunConfig & cfg, ostream & out) -> int
        {
            int n = cfg.n ? cfg.n : 5;
            bool ok = true;
            if (cfg.exhaustive_quadruples) {
                std::uint64_t count = 0, good = 0;
                for_each_quadruple(n, [&](const Quadruple & q) {
                    ++count;
                    good += gadget_geometry_ok(q, nullptr);
                    return true;
                });
                out << "n=" << n << "\nquadruples=" << count << "\nquadruples_valid=" << good << "\n";
                ok = count == good;
            }
            else {
                auto q = parse_quadruple(cfg.quadruple.empty() ? "1,2,3,4" : cfg.quadruple, n);
                out << "n=" << n << "\nquadruple=" << q.a(1) << "," << q.a(2) << "," << q.a(3) << "," << q.a(4) << "\n";
                ok = gadget_geometry_ok(q, &out);
            }
            int singleton_rows = 0;
            for (auto & row : case_lemma_check()) {
                out << "case d=" << format_colour_vector(row.d) << " singleton=N" << row.first_singleton << "\n";
                ++singleton_rows;
            }
            out << "case_lemma=" << singleton_rows << "/32\n";
            out << "gadgets_valid=" << (ok ? 1 : 0) << "\n";
            if (! ok)
                throw VerificationFailure("gadget geometry check failed");
            return exit_definitive;
        }

        auto cmd_find_line(const RunConfig & cfg, ostream & out) -> int
        {
            auto c = load_coloring(cfg.coloring_path);
            auto method = parse_method(cfg.method);
            auto result = find_interval_line(c, method);
            CertificateDocument doc = result.certificate ? CertificateDocument(*result.certificate) : CertificateDocument(NoLine { method });
            out << render_find_report(result);
            if (cfg.out_path.empty())
                out << write_certificate(doc);
            else
                write_file(cfg.out_path, write_certificate(doc));
            if (result.certificate || method == Method::direct)
                return exit_definitive;
            return exit_inconclusive;
        }

        auto cmd_search(const RunConfig & cfg, ostream & out) -> int
        {
            SearchReport report;
            if (cfg.mode == "exhaustive") {
                ExhaustiveOptions options;
                options.symmetry = ! cfg.no_symmetry;
                options.cap = cfg.exhaustive_cap;
                options.jobs = cfg.jobs;
                options.count_avoiders = cfg.count;
                report = exhaustive_search(cfg.n, options);
            }
            else if (cfg.mode == "local") {
                LocalOptions options;
                options.seed = cfg.seed;
                options.budget = cfg.budget;
                options.jobs = cfg.jobs;
                report = local_search(cfg.n, options);
            }
            else
                throw InvalidArgument("unknown mode \"" + cfg.mode + "\"");

            out << render_search_report(report);
            if (report.avoider) {
                auto path = cfg.out_path.empty() ? "avoider_n" + to_string(cfg.n) + ".hjc" : cfg.out_path;
                save_coloring(*report.avoider, path);
                out << "avoider_file=" << path << "\n";
            }
            return report.outcome == Outcome::inconclusive ? exit_inconclusive : exit_definitive;
        }

        auto cmd_encode(const RunConfig & cfg, ostream & out) -> int
        {
            auto inst = encode(cfg.n, cfg.max_intervals, cfg.sym_break);
            write_file(cfg.out_path, write_dimacs(inst));
            out << "n=" << inst.n << "\nmax_intervals=" << inst.max_intervals << "\nsym_break=" << (inst.sym_break ? 1 : 0)
                << "\nvariables=" << inst.variables << "\nclauses=" << inst.clauses.size() << "\nout=" << cfg.out_path << "\n";
            return exit_definitive;
        }

        auto cmd_solve(const RunConfig & cfg, ostream & out) -> int
        {
            auto dimacs = read_dimacs(read_file(cfg.cnf_path));
            string command = cfg.solver;
            if (command.empty())
                if (auto env = std::getenv("HJ_SOLVER"))
                    command = env;

            std::optional<std::chrono::milliseconds> timeout;
            if (cfg.timeout_seconds) {
                if (*cfg.timeout_seconds <= 0)
                    throw InvalidArgument("--timeout must be positive");
                timeout = std::chrono::milliseconds(static_cast<long long>(*cfg.timeout_seconds * 1000));
            }

            SolverResult result;
            if (command.empty()) {
                result = dpll(dimacs.variables, dimacs.clauses, DpllLimits { 0, timeout });
                out << "solver=builtin\n";
            }
            else {
                result = run_solver(cfg.cnf_path, command, timeout);
                out << "solver=" << command << "\n";
            }

            auto n = dimacs.n ? dimacs.n : length_for_variables(dimacs.variables);
            if (result.status == SolverStatus::sat && n && static_cast<Rank>(dimacs.variables) == pow3(*n)) {
                Coloring avoider(*n);
                try {
                    avoider = decode_model(result.model, *n, dimacs.max_intervals.value_or(1));
                }
                catch (const InvalidArgument & e) {
                    out << "status=UNKNOWN\ndiagnostics=" << e.what() << "\n";
                    return exit_inconclusive;
                }
                out << "status=SAT\nverified=1\nn=" << *n << "\n";
                if (! cfg.out_path.empty()) {
                    save_coloring(avoider, cfg.out_path);
                    out << "avoider_file=" << cfg.out_path << "\n";
                }
                return exit_definitive;
            }
            out << "status=" << status_name(result.status) << "\n";
            if (! result.diagnostics.empty())
                out << "diagnostics=" << result.diagnostics << "\n";
            return result.status == SolverStatus::unknown ? exit_inconclusive : exit_definitive;
        }

        auto cmd_bound(const RunConfig & cfg, ostream & out) -> int
        {
            out << render_tower(tower(cfg.cap_digits));
            return exit_definitive;
        }

        auto cmd_gen(const RunConfig & cfg, ostream & out) -> int
        {
            Coloring c(cfg.n);
            if (cfg.kind == "pattern") {
                if (cfg.d.empty())
                    throw InvalidArgument("gen --kind pattern needs --d");
                c = pattern_coloring(cfg.n, parse_colour_vector(cfg.d));
            }
            else if (cfg.kind == "random") {
                std::mt19937_64 rng(cfg.seed);
                for (Rank r = 0; r < c.size(); ++r)
                    c.set(r, static_cast<Colour>(rng() & 1u));
            }
            else if (cfg.kind == "constant")
                c = Coloring(cfg.n, static_cast<Colour>(cfg.colour));
            else
                throw InvalidArgument("unknown kind \"" + cfg.kind + "\"");
            save_coloring(c, cfg.out_path);
            out << "n=" << cfg.n << "\nkind=" << cfg.kind << "\nout=" << cfg.out_path << "\n";
            return exit_definitive;
        }

        auto cmd_check(const RunConfig & cfg, ostream & out) -> int
        {
            auto c = load_coloring(cfg.coloring_path);
            if (cfg.cert_path.empty()) {
                auto count = violation_count(c);
                out << "n=" << c.n() << "\nviolations=" << count << "\navoider=" << (count == 0 ? 1 : 0) << "\n";
                return exit_definitive;
            }
            auto doc = read_document(read_file(cfg.cert_path));
            bool valid = false;
            if (auto report = std::get_if<SearchReport>(&doc)) {
                check_report(*report);
                valid = report->avoider && *report->avoider == c;
                out << "document=search-report\n";
            }
            else {
                auto & cert = std::get<CertificateDocument>(doc);
                if (auto line = std::get_if<LineCertificate>(&cert)) {
                    valid = verify_certificate(c, *line);
                    out << "document=mono-line\n";
                }
                else {
                    auto method = std::get<NoLine>(cert).method;
                    // Only the direct method's absence is a claim about c.
                    valid = method != Method::direct || ! find_interval_line(c, Method::direct).certificate;
                    out << "document=none\n";
                }
            }
            out << "valid=" << (valid ? 1 : 0) << "\n";
            return valid ? exit_definitive : exit_inconclusive;
        }
    }

    auto run_cli(int argc, const char * const * argv, ostream & out, ostream & err) -> int
    {
        RunConfig cfg;
        CLI::App app { "Interval Hales-Jewett laboratory for [3]^n", "hj" };
        app.require_subcommand(1);
        app.add_option("--jobs", cfg.jobs, "Worker threads (default: all cores)");

        auto nrange = CLI::Range(1, max_coloring_length);

        auto verify = app.add_subcommand("verify-gadgets", "Check the five gadget lines and the 32-case colour lemma");
        verify->add_option("--n", cfg.n, "Word length (default 5)")->check(CLI::Range(5, max_word_length));
        auto quad = verify->add_option("--quadruple", cfg.quadruple, "a1,a2,a3,a4");
        auto all_quads = verify->add_flag("--exhaustive-quadruples", cfg.exhaustive_quadruples, "Check every quadruple");
        quad->excludes(all_quads);

        auto find = app.add_subcommand("find-line", "Find a monochromatic interval line");
        find->add_option("--coloring", cfg.coloring_path, "Colouring file")->required();
        find->add_option("--method", cfg.method, "direct|gadget|pipeline")->check(CLI::IsMember({ "direct", "gadget", "pipeline" }));
        find->add_option("--out", cfg.out_path, "Certificate output file");

        auto search = app.add_subcommand("search", "Search for an avoider");
        search->add_option("--n", cfg.n, "Word length")->required()->check(nrange);
        search->add_option("--mode", cfg.mode, "exhaustive|local")->check(CLI::IsMember({ "exhaustive", "local" }));
        search->add_option("--seed", cfg.seed, "Local search seed");
        search->add_option("--budget", cfg.budget, "Local search move budget")->check(CLI::PositiveNumber);
        search->add_flag("--no-symmetry", cfg.no_symmetry, "Disable symmetry pruning");
        search->add_option("--cap", cfg.exhaustive_cap, "Largest n allowed for exhaustive search")->check(CLI::Range(1, 6));
        search->add_flag("--count", cfg.count, "Count every canonical avoider");
        search->add_option("--out", cfg.out_path, "Avoider output file (default avoider_n<N>.hjc)");

        auto enc = app.add_subcommand("encode", "Write the avoider CNF");
        enc->add_option("--n", cfg.n, "Word length")->required()->check(CLI::Range(1, 12));
        enc->add_option("--max-intervals", cfg.max_intervals, "Largest number of intervals in an active set")->check(CLI::PositiveNumber);
        enc->add_flag("--sym-break", cfg.sym_break, "Fix rank 0 to colour 0");
        enc->add_option("--out", cfg.out_path, "DIMACS output file")->required();

        auto solve = app.add_subcommand("solve", "Solve a CNF and verify the model");
        solve->add_option("--cnf", cfg.cnf_path, "DIMACS file")->required();
        solve->add_option("--solver", cfg.solver, "Solver command (default $HJ_SOLVER, else built-in)");
        solve->add_option("--timeout", cfg.timeout_seconds, "Seconds");
        solve->add_option("--out", cfg.out_path, "Avoider output file");

        auto bound = app.add_subcommand("bound", "Print upper bounds for the Ramsey tower");
        bound->add_option("--cap", cfg.cap_digits, "Largest number of decimal digits evaluated exactly")->check(CLI::Range(1L, 10000000L));

        auto gen = app.add_subcommand("gen", "Generate a colouring file");
        gen->add_option("--n", cfg.n, "Word length")->required()->check(CLI::Range(1, 16));
        gen->add_option("--kind", cfg.kind, "pattern|random|constant")->required()->check(CLI::IsMember({ "pattern", "random", "constant" }));
        gen->add_option("--d", cfg.d, "d1d2d3d4d5 for pattern colourings");
        gen->add_option("--seed", cfg.seed, "Seed for random colourings");
        gen->add_option("--color", cfg.colour, "Colour for constant colourings")->check(CLI::Range(0, 1));
        gen->add_option("--out", cfg.out_path, "Output file")->required();

        auto check = app.add_subcommand("check", "Re-verify a colouring, certificate or report");
        check->add_option("--coloring", cfg.coloring_path, "Colouring file")->required();
        check->add_option("--cert", cfg.cert_path, "Certificate or search report");

        try {
            app.parse(argc, argv);
        }
        catch (const CLI::ParseError & e) {
            if (e.get_exit_code() == 0)
                return app.exit(e, out, err);
            err << "error: " << e.what() << "\n\n" << app.help();
            return exit_usage;
        }

        auto * chosen = app.get_subcommands().front();
        cfg.subcommand = chosen->get_name();
        try {
            if (cfg.subcommand == "verify-gadgets")
                return cmd_verify_gadgets(cfg, out);
            if (cfg.subcommand == "find-line")
                return cmd_find_line(cfg, out);
            if (cfg.subcommand == "search")
                return cmd_search(cfg, out);
            if (cfg.subcommand == "encode")
                return cmd_encode(cfg, out);
            if (cfg.subcommand == "solve")
                return cmd_solve(cfg, out);
            if (cfg.subcommand == "bound")
                return cmd_bound(cfg, out);
            if (cfg.subcommand == "gen")
                return cmd_gen(cfg, out);
            if (cfg.subcommand == "check")
                return cmd_check(cfg, out);
        }
        catch (const VerificationFailure & e) {
            err << "verification failure: " << e.what() << "\n";
            return exit_verification;
        }
        catch (const Error & e) {
            err << "error: " << e.what() << "\n";
            return exit_usage;
        }
        err << "error: unknown subcommand\n" << app.help();
        return exit_usage;
    }

    auto run_cli(const vector<string> & args, ostream & out, ostream & err) -> int
    {
        vector<const char *> argv;
        for (auto & a : args)
            argv.push_back(a.c_str());
        return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    }
}
