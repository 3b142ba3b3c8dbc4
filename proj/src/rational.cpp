#include "dagsched/rational.hpp"

#include <cctype>
#include <cstdlib>
#include <stdexcept>

namespace dagsched {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

BigInt digits_to_int(std::string_view s) {
    BigInt v = 0;
    for (char c : s) v = v * 10 + (c - '0');
    return v;
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view text) {
    if (text.empty()) return std::nullopt;
    bool negative = false;
    if (text.front() == '+' || text.front() == '-') {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    if (text.empty()) return std::nullopt;

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        auto num = text.substr(0, slash);
        auto den = text.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) return std::nullopt;
        BigInt d = digits_to_int(den);
        if (d == 0) return std::nullopt;
        Rational r(digits_to_int(num), d);
        return negative ? -r : r;
    }

    std::string_view int_part = text;
    std::string_view frac_part;
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        int_part = text.substr(0, dot);
        frac_part = text.substr(dot + 1);
        if (frac_part.empty()) return std::nullopt;
        if (!all_digits(frac_part)) return std::nullopt;
    }
    if (!int_part.empty() && !all_digits(int_part)) return std::nullopt;
    if (int_part.empty() && frac_part.empty()) return std::nullopt;

    BigInt whole = int_part.empty() ? BigInt(0) : digits_to_int(int_part);
    Rational r(whole, 1);
    if (!frac_part.empty()) {
        BigInt scale = 1;
        for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
        r += Rational(digits_to_int(frac_part), scale);
    }
    return negative ? -r : r;
}

BigInt floor_to_int(const Rational& r) {
    BigInt num = numerator(r);
    BigInt den = denominator(r);  // always > 0
    BigInt q = num / den;
    if (num < 0 && q * den != num) --q;
    return q;
}

BigInt ceil_to_int(const Rational& r) {
    BigInt num = numerator(r);
    BigInt den = denominator(r);
    BigInt q = num / den;
    if (num > 0 && q * den != num) ++q;
    return q;
}

long long to_int64(const BigInt& v) { return v.convert_to<long long>(); }

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::string format_exact(const Rational& r) {
    BigInt den = denominator(r);
    if (den == 1) return numerator(r).str();
    return numerator(r).str() + "/" + den.str();
}

std::string format_fixed(const Rational& r, int digits) {
    BigInt scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    Rational scaled = r * Rational(scale, 1);
    // round half away from zero
    BigInt num = numerator(scaled);
    BigInt den = denominator(scaled);
    BigInt whole = num / den;
    BigInt rem = num - whole * den;
    if (rem < 0) rem = -rem;
    if (rem * 2 >= den) whole += (num < 0) ? -1 : 1;

    bool negative = whole < 0;
    if (negative) whole = -whole;
    std::string units = (whole / scale).str();
    std::string frac = (whole % scale).str();
    if (digits == 0) return (negative ? "-" : "") + units;
    frac.insert(frac.begin(), digits - frac.size(), '0');
    return (negative ? "-" : "") + units + "." + frac;
}

}  // namespace dagsched
