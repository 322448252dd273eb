#include <hj/bounds.hh>
#include <hj/error.hh>
#include <hj/gadgets.hh>

#include <cmath>

using std::optional;
using std::string;
using std::to_string;
using std::vector;

namespace hj
{
    BoundExpr::BoundExpr(Kind kind, int t, vector<BoundPtr> args, optional<mpz_class> value, string name) :
        _kind(kind), _t(t), _args(std::move(args)), _value(std::move(value)), _name(std::move(name))
    {
    }

    auto BoundExpr::exact(const mpz_class & value, string name) -> BoundPtr
    {
        return std::make_shared<const BoundExpr>(Kind::exact, 0, vector<BoundPtr>{}, value, std::move(name));
    }

    auto BoundExpr::named(string name) const -> BoundPtr
    {
        return std::make_shared<const BoundExpr>(_kind, _t, _args, _value, std::move(name));
    }

    auto BoundExpr::to_string() const -> string
    {
        if (_value)
            return _value->get_str();

        auto arg = [&](size_t i) -> string {
            auto & a = _args[i];
            return a->name().empty() ? a->to_string() : a->name();
        };
        switch (_kind) {
            case Kind::exact:
                return "?";
            case Kind::pigeonhole:
                return "(" + arg(0) + "+" + arg(1) + "-1)";
            case Kind::binomial:
                return "C(" + arg(0) + "+" + arg(1) + "-2," + arg(0) + "-1)";
            case Kind::erdos_rado_step:
                return "R^(" + std::to_string(_t) + ")(" + arg(0) + "," + arg(1) + ")";
            case Kind::successor:
                return arg(0) + "+1";
        }
        return "?";
    }

    RamseyBounds::RamseyBounds(long cap_digits) :
        _cap(cap_digits)
    {
        if (cap_digits < 1)
            throw InvalidArgument("digit cap must be positive");
    }

    auto RamseyBounds::within_cap(mpz_class v) const -> optional<mpz_class>
    {
        auto approx = static_cast<long>(mpz_sizeinbase(v.get_mpz_t(), 10));
        if (approx > _cap + 1)
            return std::nullopt;
        if (approx >= _cap) {
            auto digits = static_cast<long>(v.get_str().size()) - (v < 0 ? 1 : 0);
            if (digits > _cap)
                return std::nullopt;
        }
        return v;
    }

    namespace
    {
        auto log10_of(const mpz_class & v) -> double
        {
            long exponent = 0;
            double mantissa = mpz_get_d_2exp(&exponent, v.get_mpz_t());
            return std::log10(mantissa) + static_cast<double>(exponent) * std::log10(2.0);
        }
    }

    auto RamseyBounds::eval_binomial(const mpz_class & p, const mpz_class & q) -> optional<mpz_class>
    {
        mpz_class top = p + q - 2;
        mpz_class k = (p < q ? p : q) - 1;
        if (k == 0)
            return within_cap(1);
        if (! k.fits_ulong_p())
            return std::nullopt;
        // top >= 2k, so C(top, k) >= (top / k)^k.
        double lower_digits = k.get_d() * (log10_of(top) - log10_of(k));
        if (lower_digits > static_cast<double>(_cap) + 1)
            return std::nullopt;
        mpz_class result;
        mpz_bin_ui(result.get_mpz_t(), top.get_mpz_t(), k.get_ui());
        return within_cap(result);
    }

    // U_t(t + 1, q) grows monotonically in q, so once one value leaves the
    // cap every later one does too.
    auto RamseyBounds::row_exceeds_cap(int t, const mpz_class & q) -> bool
    {
        auto known = _first_symbolic_row.find(t);
        if (known != _first_symbolic_row.end())
            return q >= known->second;
        unsigned long y = t + 1;
        while (true) {
            if (q < y)
                return false;
            if (! eval_small(t, t + 1, y)) {
                _first_symbolic_row[t] = y;
                return true;
            }
            ++y;
        }
    }

    auto RamseyBounds::eval_small(int t, unsigned long p, unsigned long q) -> optional<mpz_class>
    {
        if (p == static_cast<unsigned long>(t))
            return within_cap(mpz_class(q));
        if (q == static_cast<unsigned long>(t))
            return within_cap(mpz_class(p));
        Key key { t, p, q };
        if (auto it = _memo.find(key); it != _memo.end())
            return it->second;
        optional<mpz_class> result;
        auto left = eval(t, mpz_class(p - 1), mpz_class(q));
        auto right = left ? eval(t, mpz_class(p), mpz_class(q - 1)) : std::nullopt;
        if (left && right) {
            if (auto inner = eval(t - 1, *left, *right))
                result = within_cap(*inner + 1);
        }
        _memo.emplace(key, result);
        return result;
    }

    auto RamseyBounds::eval(int t, const mpz_class & p, const mpz_class & q) -> optional<mpz_class>
    {
        if (t == 1)
            return within_cap(p + q - 1);
        if (t == 2)
            return eval_binomial(p, q);
        if (p == t)
            return within_cap(q);
        if (q == t)
            return within_cap(p);

        // For p, q >= t + 1 the bound is at least 2^(p + q - 2t).
        mpz_class exponent = p + q - 2 * t;
        if (exponent.get_d() * std::log10(2.0) > static_cast<double>(_cap) + 1)
            return std::nullopt;
        if (row_exceeds_cap(t, q) || row_exceeds_cap(t, p))
            return std::nullopt;
        return eval_small(t, p.get_ui(), q.get_ui());
    }

    auto RamseyBounds::upper(int t, const BoundPtr & p, const BoundPtr & q) -> BoundPtr
    {
        if (t < 1)
            throw InvalidArgument("ramsey bound: t must be at least 1");
        auto kind = t == 1 ? BoundExpr::Kind::pigeonhole
            : t == 2       ? BoundExpr::Kind::binomial
                           : BoundExpr::Kind::erdos_rado_step;
        optional<mpz_class> value;
        if (p->is_exact() && q->is_exact()) {
            if (*p->value() < t || *q->value() < t)
                throw InvalidArgument("ramsey bound: R^(" + to_string(t) + ")(" + p->value()->get_str() + ","
                    + q->value()->get_str() + ") is below the base cases");
            std::lock_guard lock(_mutex);
            value = eval(t, *p->value(), *q->value());
        }
        return std::make_shared<const BoundExpr>(kind, t, vector<BoundPtr>{ p, q }, std::move(value));
    }

    auto RamseyBounds::upper(int t, long p, long q) -> BoundPtr
    {
        return upper(t, BoundExpr::exact(p), BoundExpr::exact(q));
    }

    auto ramsey_upper(int t, long p, long q, long cap_digits) -> BoundPtr
    {
        RamseyBounds bounds(cap_digits);
        return bounds.upper(t, p, q);
    }

    auto tower(long cap_digits) -> Tower
    {
        RamseyBounds bounds(cap_digits);
        Tower result;
        result.t = gadget_lengths;
        result.cap_digits = cap_digits;
        result.levels[0] = BoundExpr::exact(base_set_size, "n0");
        for (int i = 1; i <= 5; ++i) {
            auto & previous = result.levels[i - 1];
            result.levels[i] = bounds.upper(result.t[i - 1] - 1, previous, previous)->named("n" + to_string(i));
        }
        auto & top = result.levels[5];
        optional<mpz_class> value;
        if (top->is_exact())
            value = *top->value() + 1;
        result.n = std::make_shared<const BoundExpr>(BoundExpr::Kind::successor, 0, vector<BoundPtr>{ top }, value, "n");
        return result;
    }

    auto render_tower(const Tower & tower) -> string
    {
        string out = "cap_digits=" + to_string(tower.cap_digits) + "\n";
        out += "t=";
        for (size_t i = 0; i < tower.t.size(); ++i)
            out += (i ? "," : "") + to_string(tower.t[i]);
        out += "\n";
        for (size_t i = 0; i < tower.levels.size(); ++i)
            out += "n" + to_string(i) + "=" + tower.levels[i]->to_string() + "\n";
        out += "n=" + tower.n->to_string() + "\n";
        return out;
    }

    auto known_hj(int k, int r) -> optional<int>
    {
        if (r < 1)
            throw InvalidArgument("HJ: number of colours must be positive");
        if (k == 2)
            return r;
        return std::nullopt;
    }
}
