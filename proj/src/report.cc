#include <hj/error.hh>
#include <hj/report.hh>

#include <charconv>
#include <cstdio>
#include <map>

using std::string;
using std::string_view;
using std::to_string;

namespace hj
{
    auto render_search_report(const SearchReport & r, bool include_timing) -> string
    {
        string out = "report=search\n";
        auto put = [&](const string & key, const string & value) { out += key + "=" + value + "\n"; };
        put("n", to_string(r.n));
        put("mode", mode_name(r.mode));
        put("outcome", outcome_name(r.outcome));
        put("symmetry", r.symmetry ? "1" : "0");
        put("counted", r.counted ? "1" : "0");
        put("seed", to_string(r.seed));
        put("budget", to_string(r.budget));
        put("nodes", to_string(r.stats.nodes));
        put("line_prunes", to_string(r.stats.line_prunes));
        put("symmetry_prunes", to_string(r.stats.symmetry_prunes));
        put("avoiders", to_string(r.stats.avoiders));
        put("flips", to_string(r.stats.flips));
        put("restarts", to_string(r.stats.restarts));
        put("best_violations", to_string(r.stats.best_violations));
        if (include_timing) {
            char buffer[64];
            std::snprintf(buffer, sizeof(buffer), "%.3f", r.stats.elapsed_ms);
            put("elapsed_ms", buffer);
        }
        put("avoider", r.avoider ? r.avoider->to_bits() : "-");
        return out;
    }

    namespace
    {
        auto parse_u64(const string & key, string_view text) -> std::uint64_t
        {
            std::uint64_t value = 0;
            auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
            if (ec != std::errc{} || end != text.data() + text.size() || text.empty())
                throw FormatError("report: bad value for " + key + ": \"" + string(text) + "\"");
            return value;
        }

        auto key_values(string_view text) -> std::map<string, string>
        {
            std::map<string, string> result;
            size_t start = 0;
            while (start < text.size()) {
                auto end = text.find('\n', start);
                if (end == string_view::npos)
                    end = text.size();
                auto line = text.substr(start, end - start);
                start = end + 1;
                auto eq = line.find('=');
                if (eq == string_view::npos)
                    throw FormatError("report: line without '=': \"" + string(line) + "\"");
                if (! result.emplace(string(line.substr(0, eq)), string(line.substr(eq + 1))).second)
                    throw FormatError("report: repeated key " + string(line.substr(0, eq)));
            }
            return result;
        }

        auto first_line(string_view text) -> string_view
        {
            return text.substr(0, text.find('\n'));
        }
    }

    auto parse_search_report(string_view text) -> SearchReport
    {
        auto kv = key_values(text);
        auto take = [&](const string & key) -> string {
            auto it = kv.find(key);
            if (it == kv.end())
                throw FormatError("report: missing key " + key);
            auto value = it->second;
            kv.erase(it);
            return value;
        };
        if (take("report") != "search")
            throw FormatError("report: not a search report");

        SearchReport r;
        r.n = static_cast<int>(parse_u64("n", take("n")));
        auto mode = take("mode");
        if (mode == "exhaustive")
            r.mode = SearchMode::exhaustive;
        else if (mode == "local")
            r.mode = SearchMode::local;
        else
            throw FormatError("report: unknown mode " + mode);
        auto outcome = take("outcome");
        if (outcome == "avoider-found")
            r.outcome = Outcome::avoider_found;
        else if (outcome == "refuted")
            r.outcome = Outcome::refuted;
        else if (outcome == "inconclusive")
            r.outcome = Outcome::inconclusive;
        else
            throw FormatError("report: unknown outcome " + outcome);
        r.symmetry = parse_u64("symmetry", take("symmetry")) != 0;
        r.counted = parse_u64("counted", take("counted")) != 0;
        r.seed = parse_u64("seed", take("seed"));
        r.budget = parse_u64("budget", take("budget"));
        r.stats.nodes = parse_u64("nodes", take("nodes"));
        r.stats.line_prunes = parse_u64("line_prunes", take("line_prunes"));
        r.stats.symmetry_prunes = parse_u64("symmetry_prunes", take("symmetry_prunes"));
        r.stats.avoiders = parse_u64("avoiders", take("avoiders"));
        r.stats.flips = parse_u64("flips", take("flips"));
        r.stats.restarts = parse_u64("restarts", take("restarts"));
        r.stats.best_violations = parse_u64("best_violations", take("best_violations"));
        if (kv.count("elapsed_ms")) {
            auto text_ms = take("elapsed_ms");
            try {
                r.stats.elapsed_ms = std::stod(text_ms);
            }
            catch (const std::exception &) {
                throw FormatError("report: bad elapsed_ms");
            }
        }
        auto avoider = take("avoider");
        if (avoider != "-")
            r.avoider = Coloring::from_bits(r.n, avoider);
        if (! kv.empty())
            throw FormatError("report: unknown key " + kv.begin()->first);
        return r;
    }

    auto render_find_report(const FindResult & result) -> string
    {
        string out = "report=find\n";
        out += "method=" + method_name(result.method) + "\n";
        out += string("found=") + (result.certificate ? "1" : "0") + "\n";
        if (result.certificate) {
            out += "color=" + to_string(int(result.certificate->colour)) + "\n";
            out += "active=" + to_string(result.certificate->line.lo()) + ".." + to_string(result.certificate->line.hi()) + "\n";
        }
        if (result.gadget) {
            out += "gadget=L" + to_string(result.gadget) + "\n";
            auto & a = result.quadruple->values();
            out += "quadruple=" + to_string(a[0]) + "," + to_string(a[1]) + "," + to_string(a[2]) + "," + to_string(a[3]) + "\n";
        }
        if (result.chain) {
            for (int i = 0; i <= 5; ++i) {
                out += "T" + to_string(i) + "=";
                auto & set = result.chain->sets[i];
                for (size_t j = 0; j < set.size(); ++j)
                    out += (j ? "," : "") + to_string(set[j]);
                out += "\n";
            }
            out += "d=" + format_colour_vector(result.chain->d) + "\n";
        }
        return out;
    }

    auto read_document(string_view text) -> Document
    {
        auto head = first_line(text);
        if (head.substr(0, 9) == "MONO-LINE" || head.substr(0, 4) == "NONE")
            return read_certificate(text);
        if (head.substr(0, 7) == "report=") {
            auto type = head.substr(7);
            if (type == "search")
                return parse_search_report(text);
            throw FormatError("unknown report type \"" + string(type) + "\"");
        }
        throw FormatError("unrecognized document: first line \"" + string(head) + "\"");
    }
}
