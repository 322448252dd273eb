#pragma once

#include <hj/coloring.hh>
#include <hj/line.hh>
#include <hj/pattern.hh>
#include <hj/word.hh>

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace hj
{
    // The five patterns the interval argument is built from, their lengths,
    // and the size of the final breakpoint set.
    auto gadget_patterns() -> const std::array<Pattern, 5> &;
    inline constexpr std::array<int, 5> gadget_lengths { 3, 4, 4, 5, 5 };
    inline constexpr int base_set_size = 4;

    /// Four block boundaries 1 <= a1 < a2 < a3 < a4 <= n - 1 of a word of length n.
    class Quadruple
    {
    public:
        Quadruple(int n, std::array<int, 4> a);

        auto n() const noexcept -> int { return _n; }
        /// 1-based: a(1) .. a(4).
        auto a(int j) const -> int { return _a[j - 1]; }
        auto values() const noexcept -> const std::array<int, 4> & { return _a; }

        auto operator==(const Quadruple &) const -> bool = default;
        auto operator<=>(const Quadruple &) const = default;

    private:
        int _n;
        std::array<int, 4> _a;
    };

    /// Visits every quadruple over [n - 1] in lexicographic order.
    void for_each_quadruple(int n, const std::function<bool (const Quadruple &)> & visit);

    /// The word whose j-th block (a_{j-1}, a_j] holds blocks[j - 1], with
    /// a_0 = 0 and a_5 = n. Adjacent blocks may repeat a letter.
    auto bracket_word(std::string_view blocks, const Quadruple & q) -> Word;

    struct GadgetWords
    {
        std::array<Word, 5> w;
        std::array<Word, 3> v;
        Word u1;
    };

    auto gadget_words(const Quadruple & q) -> GadgetWords;

    struct GadgetLine
    {
        int index;                      // 1..5
        IntervalLine line;
        std::array<Word, 3> members;    // active values 1, 2, 3 in order
    };

    /// The five interval lines L1..L5 through the gadget words.
    auto gadget_lines(const Quadruple & q) -> std::array<GadgetLine, 5>;

    using ColourVector = std::array<Colour, 5>;

    /// A subset of {0, 1}.
    struct ColourSet
    {
        std::uint8_t mask = 0;

        void insert(Colour c) { mask |= static_cast<std::uint8_t>(1u << c); }
        auto contains(Colour c) const -> bool { return mask >> c & 1u; }
        auto size() const -> int { return (mask & 1u) + (mask >> 1 & 1u); }
        auto operator==(const ColourSet &) const -> bool = default;
    };

    /// N1 = {d1,d2}, N2 = {d1,d3}, N3 = {d2,d4}, N4 = {d3,d5}, N5 = {d1,d4,d5}.
    auto nsets(const ColourVector & d) -> std::array<ColourSet, 5>;

    /// Smallest i with |N_i| = 1.
    auto first_singleton(const ColourVector & d) -> std::optional<int>;

    struct CaseRow
    {
        ColourVector d;
        int first_singleton;
    };

    /// All 32 colour vectors (d1 most significant) with their smallest
    /// singleton index. Throws VerificationFailure if some vector has none.
    auto case_lemma_check() -> std::array<CaseRow, 32>;

    /// A 2-colouring of the t-subsets of `ground`. Subsets are addressed by
    /// the colex rank of their index sets into `ground`.
    class SubsetColouring
    {
    public:
        SubsetColouring(std::vector<int> ground, int t, std::vector<Colour> colours);

        auto ground() const noexcept -> const std::vector<int> & { return _ground; }
        auto t() const noexcept -> int { return _t; }
        auto colours() const noexcept -> const std::vector<Colour> & { return _colours; }

        /// Colour of the subset given by strictly increasing indices into ground.
        auto at_indices(const std::vector<int> & indices) const -> Colour;

    private:
        std::vector<int> _ground;
        int _t;
        std::vector<Colour> _colours;
    };

    auto binomial(int n, int k) -> std::uint64_t;
    auto colex_rank(const std::vector<int> & indices) -> std::uint64_t;

    /// Visits every k-subset of {0..m-1} as sorted indices, in colex order.
    void for_each_colex_subset(int m, int k, const std::function<void (const std::vector<int> &)> & visit);

    /// c_i(A) = c(realize(s_i, A, n)) for every (t_i - 1)-subset A of T.
    auto induced_coloring(const Coloring & c, int gadget, const std::vector<int> & ground) -> SubsetColouring;

    struct Homogeneous
    {
        std::vector<int> subset;
        Colour colour;

        auto operator==(const Homogeneous &) const -> bool = default;
    };

    /// Lexicographically least subset of the ground set of size `target` all
    /// of whose t-subsets share one colour.
    auto ramsey_refine(const SubsetColouring & colouring, int target) -> std::optional<Homogeneous>;

    /// T0 within T1 within ... within T5, with c_i constant (= d_i) on the
    /// (t_i - 1)-subsets of T_{i-1}.
    struct HomogeneousChain
    {
        std::array<std::vector<int>, 6> sets;
        ColourVector d;
    };

    /// Throws InvalidArgument naming the first failed requirement (size of T0,
    /// an inclusion, or for some i a pair of subsets whose colours disagree).
    void verify_chain(const Coloring & c, const HomogeneousChain & chain);

    /// Refines [n - 1] down to T0 by repeated ramsey_refine, taking the largest
    /// homogeneous subset available at each step. Empty if some step fails.
    auto refine_chain(const Coloring & c) -> std::optional<HomogeneousChain>;

    struct LineCertificate
    {
        IntervalLine line;
        Colour colour;
        std::array<Word, 3> witnesses;

        auto operator==(const LineCertificate &) const -> bool = default;
    };

    /// Independent re-check: the witnesses are the line's members in order,
    /// the line is an interval line, and each witness has the stated colour.
    auto verify_certificate(const Coloring & c, const LineCertificate & cert) -> bool;

    struct Extraction
    {
        LineCertificate certificate;
        Quadruple quadruple;
        int gadget;
    };

    /// Applies the colour-case argument on the four smallest elements of T0.
    auto extract_line(const Coloring & c, const HomogeneousChain & chain) -> Extraction;

    enum class Method
    {
        direct,
        gadget,
        pipeline
    };

    auto method_name(Method m) -> std::string;
    auto parse_method(std::string_view name) -> Method;

    struct FindResult
    {
        Method method;
        std::optional<LineCertificate> certificate;
        // Set by the gadget and pipeline methods when a line is found.
        std::optional<Quadruple> quadruple;
        int gadget = 0;
        std::optional<HomogeneousChain> chain;
    };

    /// direct: first monochromatic interval line in enumeration order (finds
    /// one iff one exists). gadget: first monochromatic L1..L5 over quadruples
    /// in lexicographic order. pipeline: refine_chain then extract_line.
    /// Every returned certificate has passed verify_certificate.
    auto find_interval_line(const Coloring & c, Method method) -> FindResult;

    /// c(w) = d_i if w contracts to s_i, else d_1.
    auto pattern_coloring(int n, const ColourVector & d) -> Coloring;

    auto parse_colour_vector(std::string_view text) -> ColourVector;
    auto format_colour_vector(const ColourVector & d) -> std::string;

    struct NoLine
    {
        Method method;
        auto operator==(const NoLine &) const -> bool = default;
    };

    using CertificateDocument = std::variant<LineCertificate, NoLine>;

    /// MONO-LINE n=<n> color=<c> active=<lo>..<hi> fixed=<pos>:<letter>,...
    /// then W1/W2/W3 lines; or NONE method=<m>.
    auto write_certificate(const CertificateDocument & doc) -> std::string;
    auto read_certificate(std::string_view text) -> CertificateDocument;
}
