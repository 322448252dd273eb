#pragma once

#include <hj/gadgets.hh>
#include <hj/search.hh>

#include <string>
#include <string_view>
#include <variant>

namespace hj
{
    /// Line-oriented key=value text, starting with "report=search". The
    /// avoider, if any, is embedded as its bit string. elapsed_ms is the only
    /// field that varies between identical runs and can be left out.
    auto render_search_report(const SearchReport & report, bool include_timing = true) -> std::string;
    auto parse_search_report(std::string_view text) -> SearchReport;

    /// "report=find" followed by method, found, and (for gadget-based finds)
    /// the gadget index and quadruple.
    auto render_find_report(const FindResult & result) -> std::string;

    using Document = std::variant<SearchReport, CertificateDocument>;

    /// Recognizes search reports and certificates by their first line. Any
    /// other report type is a FormatError.
    auto read_document(std::string_view text) -> Document;
}
