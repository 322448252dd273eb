#include <hj/cnf.hh>
#include <hj/error.hh>

#include <algorithm>

#include <cerrno>
#include <charconv>
#include <csignal>
#include <cstring>
#include <sstream>

#include <fcntl.h>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

using std::optional;
using std::string;
using std::string_view;
using std::to_string;
using std::vector;

namespace hj
{
    auto encode(int n, int max_intervals, bool sym_break) -> CnfInstance
    {
        if (n < 1 || n > max_coloring_length)
            throw InvalidArgument("encode: n=" + to_string(n) + " out of range");
        if (max_intervals < 1 || max_intervals > n)
            throw InvalidArgument("encode: max intervals must lie in [1," + to_string(n) + "]");

        CnfInstance inst;
        inst.n = n;
        inst.max_intervals = max_intervals;
        inst.sym_break = sym_break;
        inst.variables = static_cast<int>(pow3(n));
        for_each_m_interval_line(n, max_intervals, [&](const Line & line) {
            auto r = line_ranks(line);
            int p = static_cast<int>(r[0]) + 1, q = static_cast<int>(r[1]) + 1, s = static_cast<int>(r[2]) + 1;
            inst.clauses.push_back({ p, q, s });
            inst.clauses.push_back({ -p, -q, -s });
            inst.provenance.emplace_back(line);
            inst.provenance.emplace_back(line);
        });
        if (sym_break) {
            inst.clauses.push_back({ -1 });
            inst.provenance.emplace_back(std::nullopt);
        }
        return inst;
    }

    auto write_dimacs(const CnfInstance & inst) -> string
    {
        std::ostringstream out;
        out << "c hj-interval n=" << inst.n << " max_intervals=" << inst.max_intervals
            << " sym_break=" << (inst.sym_break ? 1 : 0) << "\n";
        out << "p cnf " << inst.variables << " " << inst.clauses.size() << "\n";
        for (size_t i = 0; i < inst.clauses.size(); ++i) {
            auto & origin = inst.provenance[i];
            if (origin && (i == 0 || inst.provenance[i - 1] != origin)) {
                auto fixed = format_fixed(*origin);
                out << "c line " << format_active(*origin) << " " << (fixed.empty() ? "-" : fixed) << "\n";
            }
            else if (! origin)
                out << "c sym-break rank 0 colour 0\n";
            for (int lit : inst.clauses[i])
                out << lit << " ";
            out << "0\n";
        }
        return out.str();
    }

    namespace
    {
        auto parse_number(string_view token, const string & context) -> long long
        {
            long long value = 0;
            auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
            if (ec != std::errc{} || end != token.data() + token.size())
                throw FormatError(context + ": bad number \"" + string(token) + "\"");
            return value;
        }

        auto tokens(string_view line) -> vector<string_view>
        {
            vector<string_view> result;
            size_t i = 0;
            while (i < line.size()) {
                while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
                    ++i;
                size_t start = i;
                while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r')
                    ++i;
                if (i > start)
                    result.push_back(line.substr(start, i - start));
            }
            return result;
        }

        template <typename F>
        void for_each_line(string_view text, F && f)
        {
            size_t start = 0;
            while (start < text.size()) {
                auto end = text.find('\n', start);
                if (end == string_view::npos)
                    end = text.size();
                f(text.substr(start, end - start));
                start = end + 1;
            }
        }
    }

    auto read_dimacs(string_view text) -> Dimacs
    {
        Dimacs result;
        bool header = false;
        long long declared_clauses = 0;
        Clause current;
        for_each_line(text, [&](string_view line) {
            auto t = tokens(line);
            if (t.empty())
                return;
            if (t[0] == "c") {
                if (t.size() == 5 && t[1] == "hj-interval") {
                    auto value = [&](string_view token, string_view key) {
                        if (token.substr(0, key.size()) != key)
                            throw FormatError("dimacs: malformed hj-interval comment");
                        return static_cast<int>(parse_number(token.substr(key.size()), "dimacs"));
                    };
                    result.n = value(t[2], "n=");
                    result.max_intervals = value(t[3], "max_intervals=");
                    result.sym_break = value(t[4], "sym_break=") != 0;
                }
                return;
            }
            if (t[0] == "p") {
                if (header || t.size() != 4 || t[1] != "cnf")
                    throw FormatError("dimacs: malformed or repeated problem line");
                auto vars = parse_number(t[2], "dimacs"), clauses = parse_number(t[3], "dimacs");
                if (vars < 0 || clauses < 0 || vars > (1 << 30))
                    throw FormatError("dimacs: problem line out of range");
                result.variables = static_cast<int>(vars);
                declared_clauses = clauses;
                header = true;
                return;
            }
            if (! header)
                throw FormatError("dimacs: clause before problem line");
            for (auto token : t) {
                auto lit = parse_number(token, "dimacs");
                if (lit == 0) {
                    result.clauses.push_back(std::move(current));
                    current.clear();
                }
                else {
                    if (lit > result.variables || -lit > result.variables)
                        throw FormatError("dimacs: literal " + string(token) + " exceeds variable count");
                    current.push_back(static_cast<int>(lit));
                }
            }
        });
        if (! header)
            throw FormatError("dimacs: missing problem line");
        if (! current.empty())
            throw FormatError("dimacs: last clause is not 0-terminated");
        if (static_cast<long long>(result.clauses.size()) != declared_clauses)
            throw FormatError("dimacs: header declares " + to_string(declared_clauses) + " clauses, found "
                + to_string(result.clauses.size()));
        return result;
    }

    auto status_name(SolverStatus s) -> string
    {
        switch (s) {
            case SolverStatus::sat: return "SAT";
            case SolverStatus::unsat: return "UNSAT";
            case SolverStatus::unknown: return "UNKNOWN";
        }
        throw InvalidArgument("unknown solver status");
    }

    auto parse_solver_output(string_view output) -> SolverResult
    {
        SolverResult result;
        optional<SolverStatus> status;
        bool bad = false;
        for_each_line(output, [&](string_view line) {
            auto t = tokens(line);
            if (t.empty())
                return;
            if (t[0] == "s" && t.size() == 2) {
                if (t[1] == "SATISFIABLE")
                    status = SolverStatus::sat;
                else if (t[1] == "UNSATISFIABLE")
                    status = SolverStatus::unsat;
                else
                    status = SolverStatus::unknown;
            }
            else if (t[0] == "v") {
                for (size_t i = 1; i < t.size(); ++i) {
                    long long lit = 0;
                    auto [end, ec] = std::from_chars(t[i].data(), t[i].data() + t[i].size(), lit);
                    if (ec != std::errc{} || end != t[i].data() + t[i].size()) {
                        bad = true;
                        return;
                    }
                    if (lit != 0)
                        result.model.push_back(static_cast<int>(lit));
                }
            }
        });
        if (bad) {
            result.diagnostics = "unparsable value line";
            result.model.clear();
            return result;
        }
        if (! status) {
            result.diagnostics = "no status line in solver output";
            result.model.clear();
            return result;
        }
        result.status = *status;
        if (result.status != SolverStatus::sat)
            result.model.clear();
        return result;
    }

    auto run_solver(const string & cnf_path, const string & command, optional<std::chrono::milliseconds> timeout) -> SolverResult
    {
        SolverResult failed;
        int out_pipe[2];
        if (pipe(out_pipe) != 0) {
            failed.diagnostics = string("pipe failed: ") + std::strerror(errno);
            return failed;
        }

        pid_t pid = fork();
        if (pid < 0) {
            close(out_pipe[0]);
            close(out_pipe[1]);
            failed.diagnostics = string("fork failed: ") + std::strerror(errno);
            return failed;
        }
        if (pid == 0) {
            setpgid(0, 0);
            dup2(out_pipe[1], STDOUT_FILENO);
            close(out_pipe[0]);
            close(out_pipe[1]);
            int devnull = open("/dev/null", O_RDONLY);
            if (devnull >= 0)
                dup2(devnull, STDIN_FILENO);
            string script = command + " \"$1\"";
            execl("/bin/sh", "sh", "-c", script.c_str(), "hj-solver", cnf_path.c_str(), static_cast<char *>(nullptr));
            _exit(127);
        }
        close(out_pipe[1]);

        using Clock = std::chrono::steady_clock;
        auto deadline = timeout ? optional<Clock::time_point>(Clock::now() + *timeout) : std::nullopt;
        string output;
        bool timed_out = false;
        char buffer[65536];
        while (true) {
            int wait_ms = -1;
            if (deadline) {
                auto left = std::chrono::duration_cast<std::chrono::milliseconds>(*deadline - Clock::now()).count();
                if (left <= 0) {
                    timed_out = true;
                    break;
                }
                wait_ms = static_cast<int>(std::min<long long>(left, 1000 * 60 * 60));
            }
            pollfd fd { out_pipe[0], POLLIN, 0 };
            int ready = poll(&fd, 1, wait_ms);
            if (ready < 0 && errno == EINTR)
                continue;
            if (ready == 0)
                continue;
            auto got = read(out_pipe[0], buffer, sizeof(buffer));
            if (got < 0 && errno == EINTR)
                continue;
            if (got <= 0)
                break;
            output.append(buffer, static_cast<size_t>(got));
        }
        close(out_pipe[0]);
        if (timed_out)
            kill(-pid, SIGKILL);

        int status = 0;
        while (waitpid(pid, &status, 0) < 0 && errno == EINTR)
            ;

        if (timed_out) {
            failed.diagnostics = "solver timed out";
            return failed;
        }
        if (WIFSIGNALED(status)) {
            failed.diagnostics = "solver killed by signal " + to_string(WTERMSIG(status));
            return failed;
        }
        auto result = parse_solver_output(output);
        if (WIFEXITED(status) && WEXITSTATUS(status) == 127 && result.status == SolverStatus::unknown)
            result.diagnostics = "solver command not found: " + command;
        // The shell reports a child killed by signal s as exit status 128 + s.
        else if (WIFEXITED(status) && WEXITSTATUS(status) > 128 && result.status == SolverStatus::unknown)
            result.diagnostics = "solver killed by signal " + to_string(WEXITSTATUS(status) - 128);
        else if (result.status == SolverStatus::unknown && result.diagnostics.empty())
            result.diagnostics = "solver reported unknown";
        return result;
    }

    namespace
    {
        class Dpll
        {
        public:
            Dpll(int variables, const vector<Clause> & clauses) :
                _values(variables + 1, -1), _watches(2 * (variables + 1))
            {
                for (auto & c : clauses) {
                    Clause clause;
                    for (int lit : c)
                        if (std::find(clause.begin(), clause.end(), lit) == clause.end())
                            clause.push_back(lit);
                    bool tautology = false;
                    for (int lit : clause)
                        tautology = tautology || std::find(clause.begin(), clause.end(), -lit) != clause.end();
                    if (tautology)
                        continue;
                    if (clause.empty())
                        _trivially_unsat = true;
                    else if (clause.size() == 1)
                        _units.push_back(clause[0]);
                    else {
                        auto index = static_cast<int>(_clauses.size());
                        _watches[code(clause[0])].push_back(index);
                        _watches[code(clause[1])].push_back(index);
                        _clauses.push_back(std::move(clause));
                    }
                }
            }

            auto solve(const DpllLimits & limits) -> SolverResult
            {
                SolverResult result;
                if (_trivially_unsat) {
                    result.status = SolverStatus::unsat;
                    return result;
                }
                for (int lit : _units) {
                    if (value(lit) == 0) {
                        result.status = SolverStatus::unsat;
                        return result;
                    }
                    if (value(lit) < 0)
                        assign(lit);
                }

                auto start = std::chrono::steady_clock::now();
                std::uint64_t decisions = 0;
                int next_var = 1;
                while (true) {
                    if (! propagate()) {
                        if (! backtrack()) {
                            result.status = SolverStatus::unsat;
                            return result;
                        }
                        next_var = 1;
                        continue;
                    }
                    while (next_var < static_cast<int>(_values.size()) && _values[next_var] >= 0)
                        ++next_var;
                    if (next_var == static_cast<int>(_values.size())) {
                        result.status = SolverStatus::sat;
                        for (int v = 1; v < static_cast<int>(_values.size()); ++v)
                            result.model.push_back(_values[v] ? v : -v);
                        return result;
                    }
                    ++decisions;
                    if ((limits.max_decisions && decisions > limits.max_decisions)
                        || (limits.timeout && (decisions & 1023) == 0 && std::chrono::steady_clock::now() - start > *limits.timeout)) {
                        result.diagnostics = "built-in solver limit reached after " + to_string(decisions) + " decisions";
                        return result;
                    }
                    _levels.push_back(Level { _trail.size(), false });
                    assign(-next_var);
                }
            }

        private:
            struct Level
            {
                size_t trail_start;
                bool flipped;
            };

            vector<Clause> _clauses;
            vector<int> _units;
            vector<int> _values;                // -1 unassigned, else 0/1
            vector<vector<int>> _watches;       // by literal code: clauses watching that literal
            vector<int> _trail;
            vector<Level> _levels;
            size_t _propagated = 0;
            bool _trivially_unsat = false;

            static auto code(int lit) -> size_t { return 2 * static_cast<size_t>(lit > 0 ? lit : -lit) + (lit < 0); }

            auto value(int lit) const -> int
            {
                int v = _values[lit > 0 ? lit : -lit];
                if (v < 0)
                    return -1;
                return lit > 0 ? v : 1 - v;
            }

            void assign(int lit)
            {
                _values[lit > 0 ? lit : -lit] = lit > 0 ? 1 : 0;
                _trail.push_back(lit);
            }

            auto propagate() -> bool
            {
                while (_propagated < _trail.size()) {
                    int falsified = -_trail[_propagated++];
                    auto & watchers = _watches[code(falsified)];
                    for (size_t w = 0; w < watchers.size();) {
                        auto & clause = _clauses[watchers[w]];
                        if (clause[0] == falsified)
                            std::swap(clause[0], clause[1]);
                        if (value(clause[0]) == 1) {
                            ++w;
                            continue;
                        }
                        bool moved = false;
                        for (size_t k = 2; k < clause.size(); ++k)
                            if (value(clause[k]) != 0) {
                                std::swap(clause[1], clause[k]);
                                _watches[code(clause[1])].push_back(watchers[w]);
                                watchers[w] = watchers.back();
                                watchers.pop_back();
                                moved = true;
                                break;
                            }
                        if (moved)
                            continue;
                        if (value(clause[0]) == 0)
                            return false;
                        assign(clause[0]);
                        ++w;
                    }
                }
                return true;
            }

            auto backtrack() -> bool
            {
                while (! _levels.empty()) {
                    auto level = _levels.back();
                    _levels.pop_back();
                    int decision = _trail[level.trail_start];
                    while (_trail.size() > level.trail_start) {
                        int lit = _trail.back();
                        _values[lit > 0 ? lit : -lit] = -1;
                        _trail.pop_back();
                    }
                    _propagated = _trail.size();
                    if (! level.flipped) {
                        _levels.push_back(Level { _trail.size(), true });
                        assign(-decision);
                        return true;
                    }
                }
                return false;
            }
        };
    }

    auto dpll(int variables, const vector<Clause> & clauses, const DpllLimits & limits) -> SolverResult
    {
        if (variables < 0)
            throw InvalidArgument("dpll: negative variable count");
        for (auto & c : clauses)
            for (int lit : c)
                if (lit == 0 || lit > variables || -lit > variables)
                    throw InvalidArgument("dpll: literal " + to_string(lit) + " out of range");
        return Dpll(variables, clauses).solve(limits);
    }

    auto format_solver_output(const SolverResult & result) -> string
    {
        switch (result.status) {
            case SolverStatus::sat: {
                string out = "s SATISFIABLE\nv";
                for (int lit : result.model)
                    out += " " + to_string(lit);
                return out + " 0\n";
            }
            case SolverStatus::unsat:
                return "s UNSATISFIABLE\n";
            case SolverStatus::unknown:
                return "s UNKNOWN\n";
        }
        return "s UNKNOWN\n";
    }

    auto decode_model(const vector<int> & model, int n, int max_intervals) -> Coloring
    {
        Coloring c(n);
        auto cells = c.size();
        vector<int> seen(cells, -1);
        for (int lit : model) {
            auto var = static_cast<Rank>(lit > 0 ? lit : -lit);
            if (var < 1 || var > cells)
                throw InvalidArgument("model literal " + to_string(lit) + " outside 1.." + to_string(cells));
            int v = lit > 0 ? 1 : 0;
            if (seen[var - 1] >= 0 && seen[var - 1] != v)
                throw InvalidArgument("model assigns variable " + to_string(var) + " both ways");
            seen[var - 1] = v;
        }
        for (Rank i = 0; i < cells; ++i) {
            if (seen[i] < 0)
                throw InvalidArgument("incomplete model: variable " + to_string(i + 1) + " unassigned");
            c.set(i, static_cast<Colour>(seen[i]));
        }
        for (auto & m : m_interval_line_ranks(n, max_intervals)) {
            auto a = c.at(m[0]);
            if (c.at(m[1]) == a && c.at(m[2]) == a)
                throw VerificationFailure("decoded model has a monochromatic line through ranks " + to_string(m[0]) + ","
                    + to_string(m[1]) + "," + to_string(m[2]) + " (encoder bug)");
        }
        return c;
    }

    auto length_for_variables(int variables) -> optional<int>
    {
        Rank v = 1;
        for (int n = 1; n <= max_coloring_length; ++n) {
            v *= 3;
            if (v == static_cast<Rank>(variables))
                return n;
        }
        return std::nullopt;
    }
}
