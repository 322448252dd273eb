#pragma once

#include <gmpxx.h>

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace hj
{
    class BoundExpr;
    using BoundPtr = std::shared_ptr<const BoundExpr>;

    /// An upper bound: either an exact integer, or a formula over child bounds
    /// that was too large to evaluate under the digit cap.
    class BoundExpr
    {
    public:
        enum class Kind
        {
            exact,
            pigeonhole,         // t = 1: p + q - 1
            binomial,           // t = 2: C(p + q - 2, p - 1)
            erdos_rado_step,    // t >= 3: R^(t-1)(R^(t)(p-1,q), R^(t)(p,q-1)) + 1
            successor           // x + 1
        };

        BoundExpr(Kind kind, int t, std::vector<BoundPtr> args, std::optional<mpz_class> value, std::string name = {});

        static auto exact(const mpz_class & value, std::string name = {}) -> BoundPtr;

        auto kind() const noexcept -> Kind { return _kind; }
        auto t() const noexcept -> int { return _t; }
        auto args() const noexcept -> const std::vector<BoundPtr> & { return _args; }
        auto value() const noexcept -> const std::optional<mpz_class> & { return _value; }
        auto is_exact() const noexcept -> bool { return _value.has_value(); }
        auto name() const noexcept -> const std::string & { return _name; }

        auto named(std::string name) const -> BoundPtr;

        /// Decimal if exact; otherwise the formula, with named children
        /// printed by name.
        auto to_string() const -> std::string;

    private:
        Kind _kind;
        int _t;
        std::vector<BoundPtr> _args;
        std::optional<mpz_class> _value;
        std::string _name;
    };

    inline constexpr long default_cap_digits = 10000;

    /// Upper bounds for the two-colour t-set Ramsey numbers R^(t)(p, q).
    /// Values with more than cap_digits decimal digits stay symbolic.
    /// Thread-safe; results are memoized.
    class RamseyBounds
    {
    public:
        explicit RamseyBounds(long cap_digits = default_cap_digits);

        auto cap_digits() const noexcept -> long { return _cap; }

        /// t = 1: p + q - 1; t = 2: C(p + q - 2, p - 1); t >= 3: the stepping
        /// recursion with R^(t)(t, q) = q and R^(t)(p, t) = p. Requires
        /// t >= 1 and p, q >= t (when exact).
        auto upper(int t, const BoundPtr & p, const BoundPtr & q) -> BoundPtr;
        auto upper(int t, long p, long q) -> BoundPtr;

    private:
        using Key = std::tuple<int, unsigned long, unsigned long>;

        long _cap;
        std::mutex _mutex;
        std::map<Key, std::optional<mpz_class>> _memo;
        std::map<int, unsigned long> _first_symbolic_row;   // per t: least q with U_t(t+1, q) over the cap

        auto within_cap(mpz_class v) const -> std::optional<mpz_class>;
        auto eval(int t, const mpz_class & p, const mpz_class & q) -> std::optional<mpz_class>;
        auto eval_binomial(const mpz_class & p, const mpz_class & q) -> std::optional<mpz_class>;
        auto row_exceeds_cap(int t, const mpz_class & q) -> bool;
        auto eval_small(int t, unsigned long p, unsigned long q) -> std::optional<mpz_class>;
    };

    /// Convenience wrapper with a fresh calculator.
    auto ramsey_upper(int t, long p, long q, long cap_digits = default_cap_digits) -> BoundPtr;

    /// n0 = 4, n_i = R^(t_i - 1)(n_{i-1}, n_{i-1}) for t = (3, 4, 4, 5, 5),
    /// n = n5 + 1.
    struct Tower
    {
        std::array<int, 5> t;
        std::array<BoundPtr, 6> levels;     // n0 .. n5
        BoundPtr n;
        long cap_digits;
    };

    auto tower(long cap_digits = default_cap_digits) -> Tower;

    /// Key=value lines: cap, t-sequence, n0..n5 and n.
    auto render_tower(const Tower & tower) -> std::string;

    /// HJ(k, r) where the value is a stated fact: only HJ(2, r) = r.
    auto known_hj(int k, int r) -> std::optional<int>;
}
