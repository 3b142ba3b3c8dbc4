#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace dagsched {

namespace mp = boost::multiprecision;

// Exact arithmetic keeps every bound and simulated event time
// bit-reproducible. 128-bit checked integers throw on overflow instead of
// silently wrapping; the denominators seen in practice (lcm of SM counts
// and load grids) stay far below that limit.
using BigInt = mp::number<
    mp::cpp_int_backend<128, 128, mp::signed_magnitude, mp::checked, void>>;
using Rational = mp::number<mp::rational_adaptor<
    mp::cpp_int_backend<128, 128, mp::signed_magnitude, mp::checked, void>>>;

inline Rational make_rational(long long num, long long den = 1) {
    return Rational(BigInt(num), BigInt(den));
}

// Accepts "12", "-3.25" and "7/3". Returns nullopt on malformed input.
std::optional<Rational> parse_rational(std::string_view text);

BigInt floor_to_int(const Rational& r);
BigInt ceil_to_int(const Rational& r);

long long to_int64(const BigInt& v);
double to_double(const Rational& r);

// "5" for integers, "5/3" otherwise. Round-trips through parse_rational.
std::string format_exact(const Rational& r);

// Fixed-point decimal with the given number of fraction digits, rounded
// half away from zero. Used for CSV output so reruns are byte-identical.
std::string format_fixed(const Rational& r, int digits);

}  // namespace dagsched
